"""Articles, gold annotations, and the span <-> token-level BIO reformulation.

All offsets are Unicode code points into the article text (Python string
indices), never bytes. The BIO tag order is fixed with O first, then B/I
pairs per main role; the Unknown variant appends B/I-Unknown.
"""

from __future__ import annotations

import csv
import json
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .taxonomy import (
    CANONICAL_MAIN_ROLES,
    FINE_ROLE_INDEX,
    FineRole,
    MainRole,
    TaxonomyError,
    parse_fine_role,
    parse_main_role,
    validate_assignment,
)
from .textnorm import is_punctuation

LANGUAGES = ("bg", "en", "hi", "pt", "ru")


class CorpusError(ValueError):
    """A document or annotation violates the dataset contract."""


@dataclass(frozen=True)
class ArticleDocument:
    id: str
    text: str
    language: str = "other"
    domain_tag: str = ""

    def __post_init__(self) -> None:
        if not self.text:
            raise CorpusError(f"article {self.id!r} has empty text")
        if self.language not in LANGUAGES and self.language != "other":
            raise CorpusError(
                f"article {self.id!r}: unsupported language {self.language!r}"
            )


@dataclass(frozen=True)
class GoldAnnotation:
    article_id: str
    mention: str
    start: int
    end: int
    main_role: MainRole
    fine_roles: frozenset[FineRole] = frozenset()

    def validate(self, doc: ArticleDocument) -> None:
        if not (0 <= self.start < self.end <= len(doc.text)):
            raise CorpusError(
                f"{self.article_id}: invalid span [{self.start}, {self.end})"
            )
        sliced = doc.text[self.start : self.end]
        if sliced != self.mention:
            raise CorpusError(
                f"{self.article_id}: mention/offset mismatch at "
                f"[{self.start}, {self.end}): {self.mention!r} != {sliced!r}"
            )
        # Empty fine-role sets are legal only for Unknown augmentation spans.
        if self.main_role is MainRole.UNKNOWN:
            if self.fine_roles:
                raise CorpusError(
                    f"{self.article_id}: Unknown spans carry no fine roles"
                )
        else:
            validate_assignment(self.main_role, self.fine_roles)


class Token(NamedTuple):
    surface: str
    start: int
    end: int


@dataclass(frozen=True)
class Tokenization:
    tokens: tuple[Token, ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]


# ---------------------------------------------------------------------------
# BIO tag space

TAG_O = "O"


def bio_tags(unknown_variant: bool = False) -> tuple[str, ...]:
    """The 7-tag set (9 with B/I-Unknown), O first, fixed order."""
    mains = list(CANONICAL_MAIN_ROLES) + (
        [MainRole.UNKNOWN] if unknown_variant else []
    )
    tags = [TAG_O]
    for main in mains:
        tags.append(f"B-{main.value}")
        tags.append(f"I-{main.value}")
    return tuple(tags)


def tag_role(tag: str) -> MainRole | None:
    """Main role of a B-/I- tag, None for O."""
    if tag == TAG_O:
        return None
    return parse_main_role(tag[2:])


def is_valid_bio(tags: Sequence[str]) -> bool:
    prev = TAG_O
    for tag in tags:
        if tag.startswith("I-") and prev != f"B-{tag[2:]}" and prev != tag:
            return False
        prev = tag
    return True


def repair_bio(tags: Sequence[str]) -> list[str]:
    """Rewrite orphan I-X tags (no preceding B-X/I-X) to B-X."""
    repaired: list[str] = []
    prev = TAG_O
    for tag in tags:
        if tag.startswith("I-") and prev != f"B-{tag[2:]}" and prev != tag:
            tag = "B-" + tag[2:]
        repaired.append(tag)
        prev = tag
    return repaired


# ---------------------------------------------------------------------------
# Tokenization

def tokenize(text: str) -> Tokenization:
    """Whitespace tokenizer that splits leading/trailing punctuation off.

    Fallback desk-scale tokenizer; encoder-native subword tokenizers plug in
    through the same (surface, start, end) interface.
    """
    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not text[j].isspace():
            j += 1
        tokens.extend(_split_punctuation(text, i, j))
        i = j
    return Tokenization(tuple(tokens))


def _split_punctuation(text: str, start: int, end: int) -> list[Token]:
    lead: list[Token] = []
    trail: list[Token] = []
    while start < end and is_punctuation(text[start]):
        lead.append(Token(text[start], start, start + 1))
        start += 1
    while end > start and is_punctuation(text[end - 1]):
        trail.append(Token(text[end - 1], end - 1, end))
        end -= 1
    core = [Token(text[start:end], start, end)] if start < end else []
    return lead + core + list(reversed(trail))


# ---------------------------------------------------------------------------
# Span <-> BIO conversion

@dataclass
class ConversionReport:
    """Audit counters for the span -> BIO -> span reformulation."""

    overlaps_dropped: int = 0
    skipped_no_token: int = 0
    repaired_orphans: int = 0
    skipped_details: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "overlaps_dropped": self.overlaps_dropped,
            "skipped_no_token": self.skipped_no_token,
            "repaired_orphans": self.repaired_orphans,
            "skipped_details": list(self.skipped_details),
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.as_dict(), indent=2))


def resolve_overlaps(
    annotations: Sequence[GoldAnnotation], report: ConversionReport | None = None
) -> list[GoldAnnotation]:
    """Drop overlapping spans, keeping the longer one (tie: earlier start)."""
    kept: list[GoldAnnotation] = []
    by_priority = sorted(
        annotations, key=lambda a: (-(a.end - a.start), a.start, a.end)
    )
    for ann in by_priority:
        if any(ann.start < k.end and k.start < ann.end for k in kept):
            if report is not None:
                report.overlaps_dropped += 1
            continue
        kept.append(ann)
    kept.sort(key=lambda a: (a.start, a.end))
    return kept


def to_bio(
    doc: ArticleDocument,
    annotations: Sequence[GoldAnnotation],
    tok: Tokenization,
    report: ConversionReport | None = None,
) -> list[str]:
    """Token-level BIO tags: B-X on the first token intersecting a span of
    main role X, I-X on the rest, O elsewhere."""
    tags = [TAG_O] * len(tok)
    for ann in resolve_overlaps(annotations, report):
        hit = [
            i
            for i, t in enumerate(tok.tokens)
            if t.start < ann.end and ann.start < t.end
        ]
        hit = [i for i in hit if tags[i] == TAG_O]
        if not hit:
            if report is not None:
                report.skipped_no_token += 1
                report.skipped_details.append(
                    f"{doc.id}: span [{ann.start},{ann.end}) {ann.mention!r} "
                    "does not intersect any token"
                )
            continue
        tags[hit[0]] = f"B-{ann.main_role.value}"
        for i in hit[1:]:
            tags[i] = f"I-{ann.main_role.value}"
    return tags


@dataclass(frozen=True)
class LabeledSpan:
    """A reconstructed character span with its coarse role and confidence."""

    start: int
    end: int
    text: str
    main_role: MainRole
    confidence: float = 1.0

    def __post_init__(self) -> None:
        if not (self.start < self.end):
            raise CorpusError(f"invalid span [{self.start}, {self.end})")
        if not (0.0 <= self.confidence <= 1.0):
            raise CorpusError(f"confidence {self.confidence} outside [0, 1]")


def spans_from_bio(
    tags: Sequence[str],
    tok: Tokenization,
    text: str,
    token_confidences: Sequence[float] | None = None,
    report: ConversionReport | None = None,
) -> list[LabeledSpan]:
    """Maximal B-X (I-X)* runs as character spans; orphan I-X starts a new span."""
    if len(tags) != len(tok):
        raise CorpusError(
            f"tag/token length mismatch: {len(tags)} != {len(tok)}"
        )
    if report is not None:
        repaired = repair_bio(tags)
        report.repaired_orphans += sum(a != b for a, b in zip(tags, repaired))
        tags = repaired
    else:
        tags = repair_bio(tags)
    spans: list[LabeledSpan] = []
    run: list[int] = []
    run_role: MainRole | None = None

    def flush() -> None:
        if not run:
            return
        first, last = tok.tokens[run[0]], tok.tokens[run[-1]]
        conf = 1.0
        if token_confidences is not None:
            conf = float(sum(token_confidences[i] for i in run) / len(run))
            conf = min(1.0, max(0.0, conf))
        spans.append(
            LabeledSpan(
                start=first.start,
                end=last.end,
                text=text[first.start : last.end],
                main_role=run_role,
                confidence=conf,
            )
        )

    for i, tag in enumerate(tags):
        if tag.startswith("B-"):
            flush()
            run, run_role = [i], tag_role(tag)
        elif tag.startswith("I-"):
            run.append(i)
        else:
            flush()
            run, run_role = [], None
    flush()
    return spans


# ---------------------------------------------------------------------------
# Dataset I/O: directory of UTF-8 .txt articles + one TSV annotation file

TSV_COLUMNS = ("article_id", "mention", "start", "end", "main_role", "fine_roles")


def _language_from_id(article_id: str) -> str:
    prefix = article_id[:2].lower()
    return prefix if prefix in LANGUAGES else "other"


def _parse_row(row: list[str], lineno: int, path: str) -> GoldAnnotation:
    if len(row) < 6:
        raise CorpusError(f"{path}:{lineno}: expected 6 columns, got {len(row)}")
    article_id, mention, start_s, end_s, main_s, fines_s = row[:6]
    try:
        start, end = int(start_s), int(end_s)
    except ValueError:
        raise CorpusError(
            f"{path}:{lineno}: non-integer offsets {start_s!r}/{end_s!r}"
        ) from None
    if end <= start:
        raise CorpusError(f"{path}:{lineno}: invalid span [{start}, {end})")
    try:
        main = parse_main_role(main_s)
        fines = frozenset(
            parse_fine_role(f.strip()) for f in fines_s.split(",") if f.strip()
        )
    except TaxonomyError as exc:
        raise CorpusError(f"{path}:{lineno}: {exc}") from None
    return GoldAnnotation(
        article_id=article_id,
        mention=mention,
        start=start,
        end=end,
        main_role=main,
        fine_roles=fines,
    )


def read_annotation_rows(path: str | Path) -> list[GoldAnnotation]:
    """Parse a TSV annotation file without article-text validation."""
    path = Path(path)
    annotations: list[GoldAnnotation] = []
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t", quoting=csv.QUOTE_NONE)
        for lineno, row in enumerate(reader, start=1):
            if not row or (lineno == 1 and tuple(row[:6]) == TSV_COLUMNS):
                continue
            annotations.append(_parse_row(row, lineno, str(path)))
    return annotations


def read_prediction_rows(
    path: str | Path,
) -> list[tuple[GoldAnnotation, float]]:
    """Parse a prediction TSV (corpus format + optional trailing confidence)."""
    path = Path(path)
    rows: list[tuple[GoldAnnotation, float]] = []
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t", quoting=csv.QUOTE_NONE)
        for lineno, row in enumerate(reader, start=1):
            if not row or (lineno == 1 and tuple(row[:6]) == TSV_COLUMNS):
                continue
            ann = _parse_row(row, lineno, str(path))
            confidence = 1.0
            if len(row) > 6 and row[6]:
                try:
                    confidence = float(row[6])
                except ValueError:
                    raise CorpusError(
                        f"{path}:{lineno}: non-numeric confidence {row[6]!r}"
                    ) from None
            rows.append((ann, confidence))
    return rows


def load_dataset(
    articles_dir: str | Path, annotations_file: str | Path
) -> list[tuple[ArticleDocument, list[GoldAnnotation]]]:
    """Load and validate a dataset; every annotation must reference an
    existing article and match its text slice."""
    articles_dir = Path(articles_dir)
    docs: dict[str, ArticleDocument] = {}
    for txt in sorted(articles_dir.glob("*.txt")):
        text = txt.read_text(encoding="utf-8")
        text = unicodedata.normalize("NFC", text)
        docs[txt.name] = ArticleDocument(
            id=txt.name, text=text, language=_language_from_id(txt.name)
        )
    grouped: dict[str, list[GoldAnnotation]] = {doc_id: [] for doc_id in docs}
    for ann in read_annotation_rows(annotations_file):
        doc = docs.get(ann.article_id)
        if doc is None:
            raise CorpusError(
                f"annotation references unknown article {ann.article_id!r}"
            )
        ann.validate(doc)
        grouped[ann.article_id].append(ann)
    return [(docs[doc_id], grouped[doc_id]) for doc_id in sorted(docs)]


def write_annotations_tsv(
    annotations: Iterable[GoldAnnotation],
    path: str | Path,
    confidences: Iterable[float] | None = None,
) -> None:
    """Write annotations in the corpus TSV format, optionally with a trailing
    confidence column (the prediction export format)."""
    rows = list(annotations)
    confs = list(confidences) if confidences is not None else None
    if confs is not None and len(confs) != len(rows):
        raise CorpusError("confidence column length mismatch")
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        for i, ann in enumerate(rows):
            if "\t" in ann.mention or "\n" in ann.mention:
                raise CorpusError(
                    f"{ann.article_id}: mention contains tab/newline, not TSV-safe"
                )
            row = [
                ann.article_id,
                ann.mention,
                str(ann.start),
                str(ann.end),
                ann.main_role.value,
                ",".join(sort_fine_roles(ann.fine_roles)),
            ]
            if confs is not None:
                row.append(f"{confs[i]:.6f}")
            fh.write("\t".join(row) + "\n")


def sort_fine_roles(fines: Iterable[FineRole]) -> list[str]:
    """Fine-role names in the global taxonomy order (the serialization order)."""
    return [f.value for f in sorted(fines, key=FINE_ROLE_INDEX.__getitem__)]
