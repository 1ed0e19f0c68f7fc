import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entity_framing.corpus import (
    ArticleDocument,
    ConversionReport,
    CorpusError,
    GoldAnnotation,
    LabeledSpan,
    bio_tags,
    is_valid_bio,
    load_dataset,
    repair_bio,
    resolve_overlaps,
    spans_from_bio,
    to_bio,
    tokenize,
    write_annotations_tsv,
)
from entity_framing.taxonomy import FineRole, MainRole


def ann(doc, start, end, main=MainRole.PROTAGONIST, fines=(FineRole.GUARDIAN,)):
    return GoldAnnotation(
        article_id=doc.id,
        mention=doc.text[start:end],
        start=start,
        end=end,
        main_role=main,
        fine_roles=frozenset(fines),
    )


# ---------------------------------------------------------------------------
# tokenize

def test_tokenize_splits_trailing_punctuation():
    tok = tokenize("NATO supports Ukraine.")
    assert tok.surfaces() == ["NATO", "supports", "Ukraine", "."]
    assert [(t.start, t.end) for t in tok.tokens] == [
        (0, 4), (5, 13), (14, 21), (21, 22),
    ]


def test_tokenize_empty():
    assert len(tokenize("")) == 0
    assert len(tokenize("   \n\t ")) == 0


def test_tokenize_cyrillic_code_points():
    # "Зеленский" is 9 code points, "прибыл" is 6.
    tok = tokenize("Зеленский прибыл")
    assert [(t.start, t.end) for t in tok.tokens] == [(0, 9), (10, 16)]


def test_tokenize_leading_punctuation_and_quotes():
    tok = tokenize("«Привет», сказал он")
    assert tok.surfaces()[:4] == ["«", "Привет", "»", ","]


def test_tokenize_offsets_are_exact_slices():
    text = "The U.S. said: «stop» now!"
    for t in tokenize(text).tokens:
        assert text[t.start : t.end] == t.surface


# ---------------------------------------------------------------------------
# BIO tag space helpers

def test_bio_tag_sets():
    assert bio_tags() == (
        "O",
        "B-Protagonist", "I-Protagonist",
        "B-Antagonist", "I-Antagonist",
        "B-Innocent", "I-Innocent",
    )
    assert len(bio_tags(unknown_variant=True)) == 9
    assert bio_tags(unknown_variant=True)[7:] == ("B-Unknown", "I-Unknown")


def test_repair_bio_orphans():
    assert repair_bio(["I-Innocent", "O"]) == ["B-Innocent", "O"]
    assert repair_bio(["B-Innocent", "I-Protagonist"]) == [
        "B-Innocent", "B-Protagonist",
    ]
    assert is_valid_bio(repair_bio(["O", "I-Antagonist", "I-Antagonist"]))


# ---------------------------------------------------------------------------
# to_bio

def make_doc(text, doc_id="EN_1.txt"):
    return ArticleDocument(id=doc_id, text=text, language="en")


def test_to_bio_single_token_span():
    doc = make_doc("NATO supports Ukraine")
    tok = tokenize(doc.text)
    tags = to_bio(doc, [ann(doc, 0, 4)], tok)
    assert tags == ["B-Protagonist", "O", "O"]


def test_to_bio_multi_token_span():
    doc = make_doc("Volodymyr Zelensky spoke")
    tok = tokenize(doc.text)
    tags = to_bio(doc, [ann(doc, 0, 18)], tok)
    assert tags == ["B-Protagonist", "I-Protagonist", "O"]


def test_to_bio_overlap_keeps_longer():
    doc = make_doc("President Vladimir Putin spoke")
    tok = tokenize(doc.text)
    a_long = ann(doc, 0, 24, MainRole.ANTAGONIST, (FineRole.TYRANT,))
    a_short = ann(doc, 10, 24, MainRole.ANTAGONIST, (FineRole.TYRANT,))
    report = ConversionReport()
    tags = to_bio(doc, [a_short, a_long], tok, report)
    assert tags == ["B-Antagonist", "I-Antagonist", "I-Antagonist", "O"]
    assert report.overlaps_dropped == 1


def test_to_bio_equal_length_tie_keeps_earlier():
    doc = make_doc("aaa bbb ccc")
    overlapping = [ann(doc, 4, 11), ann(doc, 0, 7, MainRole.INNOCENT, (FineRole.VICTIM,))]
    kept = resolve_overlaps(overlapping)
    assert [(a.start, a.end) for a in kept] == [(0, 7)]


def test_to_bio_never_emits_orphan_inside():
    doc = make_doc("a b c d e")
    tok = tokenize(doc.text)
    tags = to_bio(doc, [ann(doc, 2, 5)], tok)
    assert is_valid_bio(tags)


def test_to_bio_span_over_no_token_reports_skip():
    doc = make_doc("word    word")
    tok = tokenize(doc.text)
    report = ConversionReport()
    broken = GoldAnnotation(
        article_id=doc.id, mention=" ", start=5, end=6,
        main_role=MainRole.PROTAGONIST, fine_roles=frozenset({FineRole.GUARDIAN}),
    )
    tags = to_bio(doc, [broken], tok, report)
    assert tags == ["O", "O"]
    assert report.skipped_no_token == 1


# ---------------------------------------------------------------------------
# spans_from_bio

def test_spans_from_bio_basic():
    text = "Vladimir Putin said"
    tok = tokenize(text)
    spans = spans_from_bio(["B-Antagonist", "I-Antagonist", "O"], tok, text)
    assert len(spans) == 1
    assert spans[0].text == "Vladimir Putin"
    assert spans[0].main_role is MainRole.ANTAGONIST
    assert (spans[0].start, spans[0].end) == (0, 14)


def test_spans_from_bio_all_o():
    text = "nothing here"
    assert spans_from_bio(["O", "O"], tokenize(text), text) == []


def test_spans_from_bio_orphan_repair():
    text = "alpha beta"
    spans = spans_from_bio(["I-Innocent", "O"], tokenize(text), text)
    assert len(spans) == 1
    assert spans[0].main_role is MainRole.INNOCENT
    assert spans[0].text == "alpha"


def test_spans_from_bio_confidences_mean():
    text = "alpha beta gamma"
    spans = spans_from_bio(
        ["B-Innocent", "I-Innocent", "O"], tokenize(text), text,
        token_confidences=[0.8, 0.6, 0.1],
    )
    assert spans[0].confidence == pytest.approx(0.7)


def test_span_text_matches_slice():
    text = "one two three four"
    tok = tokenize(text)
    spans = spans_from_bio(
        ["O", "B-Protagonist", "I-Protagonist", "O"], tok, text
    )
    assert spans[0].text == text[spans[0].start : spans[0].end] == "two three"


# ---------------------------------------------------------------------------
# round trip property

ROLES = [MainRole.PROTAGONIST, MainRole.ANTAGONIST, MainRole.INNOCENT]
ROLE_FINES = {
    MainRole.PROTAGONIST: FineRole.GUARDIAN,
    MainRole.ANTAGONIST: FineRole.TYRANT,
    MainRole.INNOCENT: FineRole.VICTIM,
}


@st.composite
def aligned_annotation_case(draw):
    n_tokens = draw(st.integers(min_value=1, max_value=30))
    words = [f"w{i}" for i in range(n_tokens)]
    text = " ".join(words)
    doc = ArticleDocument(id="EN_prop.txt", text=text, language="en")
    tok = tokenize(text)
    # Non-overlapping token ranges, aligned to token boundaries.
    anns = []
    i = 0
    while i < n_tokens:
        make_span = draw(st.booleans())
        if make_span:
            length = draw(st.integers(min_value=1, max_value=min(3, n_tokens - i)))
            role = draw(st.sampled_from(ROLES))
            start = tok.tokens[i].start
            end = tok.tokens[i + length - 1].end
            anns.append(
                GoldAnnotation(
                    article_id=doc.id,
                    mention=text[start:end],
                    start=start,
                    end=end,
                    main_role=role,
                    fine_roles=frozenset({ROLE_FINES[role]}),
                )
            )
            i += length + 1  # gap token keeps spans separable in BIO
        else:
            i += 1
    return doc, tok, anns


@settings(max_examples=120, deadline=None)
@given(aligned_annotation_case())
def test_bio_round_trip(case):
    doc, tok, anns = case
    tags = to_bio(doc, anns, tok)
    assert is_valid_bio(tags)
    spans = spans_from_bio(tags, tok, doc.text)
    assert {(s.start, s.end, s.main_role) for s in spans} == {
        (a.start, a.end, a.main_role) for a in anns
    }


# ---------------------------------------------------------------------------
# dataset I/O

def test_load_dataset_round_trip(tmp_path):
    articles = tmp_path / "articles"
    articles.mkdir()
    (articles / "EN_10.txt").write_text("NATO supports Ukraine today.", encoding="utf-8")
    (articles / "RU_1.txt").write_text("Зеленский прибыл в Киев.", encoding="utf-8")
    tsv = tmp_path / "gold.tsv"
    tsv.write_text(
        "EN_10.txt\tNATO\t0\t4\tProtagonist\tGuardian\n"
        "RU_1.txt\tЗеленский\t0\t9\tProtagonist\tGuardian,Martyr\n",
        encoding="utf-8",
    )
    dataset = load_dataset(articles, tsv)
    assert [doc.id for doc, _ in dataset] == ["EN_10.txt", "RU_1.txt"]
    (doc_en, anns_en), (doc_ru, anns_ru) = dataset
    assert doc_en.language == "en" and doc_ru.language == "ru"
    assert anns_en[0].mention == "NATO"
    assert anns_ru[0].fine_roles == {FineRole.GUARDIAN, FineRole.MARTYR}


def test_load_dataset_rejects_bad_span(tmp_path):
    articles = tmp_path / "articles"
    articles.mkdir()
    (articles / "EN_1.txt").write_text("abc def", encoding="utf-8")
    tsv = tmp_path / "gold.tsv"
    tsv.write_text("EN_1.txt\tabc\t3\t3\tProtagonist\tGuardian\n", encoding="utf-8")
    with pytest.raises(CorpusError, match="invalid span"):
        load_dataset(articles, tsv)


def test_load_dataset_rejects_mention_mismatch(tmp_path):
    articles = tmp_path / "articles"
    articles.mkdir()
    (articles / "EN_1.txt").write_text("abc def", encoding="utf-8")
    tsv = tmp_path / "gold.tsv"
    tsv.write_text("EN_1.txt\tzzz\t0\t3\tProtagonist\tGuardian\n", encoding="utf-8")
    with pytest.raises(CorpusError, match="mention/offset mismatch"):
        load_dataset(articles, tsv)


def test_load_dataset_rejects_unknown_role(tmp_path):
    articles = tmp_path / "articles"
    articles.mkdir()
    (articles / "EN_1.txt").write_text("abc def", encoding="utf-8")
    tsv = tmp_path / "gold.tsv"
    tsv.write_text("EN_1.txt\tabc\t0\t3\tHero\tGuardian\n", encoding="utf-8")
    with pytest.raises(CorpusError, match="Hero"):
        load_dataset(articles, tsv)


def test_write_annotations_tsv_round_trips(tmp_path):
    articles = tmp_path / "articles"
    articles.mkdir()
    (articles / "EN_1.txt").write_text("NATO acted.", encoding="utf-8")
    doc = ArticleDocument(id="EN_1.txt", text="NATO acted.", language="en")
    original = [ann(doc, 0, 4)]
    out = tmp_path / "out.tsv"
    write_annotations_tsv(original, out, confidences=[0.75])
    reloaded = load_dataset(articles, out)
    assert reloaded[0][1] == original
    assert out.read_text().strip().endswith("0.750000")


def test_labeled_span_invariants():
    with pytest.raises(CorpusError):
        LabeledSpan(start=3, end=3, text="", main_role=MainRole.INNOCENT)
    with pytest.raises(CorpusError):
        LabeledSpan(
            start=0, end=1, text="x", main_role=MainRole.INNOCENT, confidence=1.2
        )
