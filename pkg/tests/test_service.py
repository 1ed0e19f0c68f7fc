import json

import pytest
from fastapi.testclient import TestClient

from entity_framing.corpus import ArticleDocument, LabeledSpan
from entity_framing.role_classifier import FineRolePrediction
from entity_framing.service import (
    AnnotatedEntity,
    SessionStore,
    StoredArticle,
    aggregate_graph,
    annotations_view,
    compare_view,
    create_app,
    html_to_text,
    search_articles,
    sentence_index,
    sentences_for_label,
    timeline_view,
)
from entity_framing.synthetic import CUE_PHRASES, entity_pool
from entity_framing.taxonomy import FineRole, MainRole, main_of


# ---------------------------------------------------------------------------
# hand-built stored articles for precise view tests

def entity(text, start, fines, conf=0.9, sentence=0, repeat=False):
    role_probs = tuple((role, p) for role, p in fines)
    main = main_of(role_probs[0][0])
    return AnnotatedEntity(
        span=LabeledSpan(
            start=start, end=start + len(text), text=text,
            main_role=main, confidence=conf,
        ),
        fine=FineRolePrediction(roles=role_probs),
        sentence_ordinal=sentence,
        is_repeat=repeat,
    )


def article(filename, text, entities):
    return StoredArticle(
        filename=filename,
        document=ArticleDocument(id=filename, text=text, language="en"),
        entities=entities,
        sentences=sentence_index(text),
        created_at="2026-01-01T00:00:00Z",
    )


@pytest.fixture
def zelensky_article():
    text = (
        "Zelensky visited the front. Zelensky spoke to troops. "
        "Zelensky thanked medics. Putin objected loudly."
    )
    ents = [
        entity("Zelensky", 0, [(FineRole.GUARDIAN, 0.9)], sentence=0),
        entity("Zelensky", 28, [(FineRole.GUARDIAN, 0.6)], sentence=1, repeat=True),
        entity("Zelensky", 54, [(FineRole.GUARDIAN, 0.3)], sentence=2, repeat=True),
        entity("Putin", 79, [(FineRole.TYRANT, 0.8)], sentence=3),
    ]
    return article("a_1", text, ents)


# ---------------------------------------------------------------------------
# sentence segmentation

def test_sentence_index_covers_text_without_overlap():
    text = "One. Two! Three? चार। Trailing"
    idx = sentence_index(text)
    assert idx[0] == (0, 4)
    assert [text[s:e] for s, e in idx][-1].strip() == "Trailing"
    # full cover, no overlap
    covered = []
    for s, e in idx:
        covered.extend(range(s, e))
    assert covered == list(range(len(text)))


def test_sentence_index_danda():
    text = "राम आया। वह गया।"
    idx = sentence_index(text)
    assert len(idx) == 2


# ---------------------------------------------------------------------------
# annotations view

def test_annotations_view_threshold_zero_returns_all(zelensky_article):
    view = annotations_view(zelensky_article, min_confidence=0.0)
    assert len(view["entities"]) == 4
    assert view["text"] == zelensky_article.document.text


def test_annotations_view_above_one_returns_none(zelensky_article):
    view = annotations_view(zelensky_article, min_confidence=1.01)
    assert view["entities"] == []
    assert view["text"] == zelensky_article.document.text


def test_annotations_view_threshold_subset_property(zelensky_article):
    thresholds = [0.0, 0.2, 0.5, 0.7, 0.95]
    previous = None
    for t in thresholds:
        ids = {
            (e["start"], e["end"])
            for e in annotations_view(zelensky_article, min_confidence=t)["entities"]
        }
        if previous is not None:
            assert ids <= previous
        previous = ids


def test_annotations_view_hide_repeats(zelensky_article):
    view = annotations_view(zelensky_article, hide_repeats=True)
    surfaces = [e["text"] for e in view["entities"]]
    assert surfaces.count("Zelensky") == 1
    assert view["n_hidden_repeats"] == 2


# ---------------------------------------------------------------------------
# sentences / search / graph / timeline / compare views

def test_sentences_for_fine_label(zelensky_article):
    rows = sentences_for_label([zelensky_article], "Tyrant")
    assert len(rows) == 1
    assert rows[0]["sentence"] == "Putin objected loudly."


def test_sentences_for_main_label_includes_children(zelensky_article):
    rows = sentences_for_label([zelensky_article], "Protagonist")
    assert {r["sentence_ordinal"] for r in rows} == {0, 1, 2}


def test_sentences_label_missing_roles_empty(zelensky_article):
    assert sentences_for_label([zelensky_article], "Victim") == []


def test_sentences_dedup_one_row_with_both_entities():
    text = "Mira Vane met Petro Oblak."
    ents = [
        entity("Mira Vane", 0, [(FineRole.GUARDIAN, 0.9)]),
        entity("Petro Oblak", 14, [(FineRole.GUARDIAN, 0.8)]),
    ]
    rows = sentences_for_label([article("a", text, ents)], "Guardian")
    assert len(rows) == 1
    assert len(rows[0]["entities"]) == 2


def test_search_case_insensitive(zelensky_article):
    hits = search_articles([zelensky_article], "zelensky")
    assert [h["start"] for h in hits] == [0, 28, 54]
    assert all(h["match"] == "Zelensky" for h in hits)


def test_search_no_hits(zelensky_article):
    assert search_articles([zelensky_article], "absent-term") == []


def test_search_non_overlapping_scan():
    text = "aaaa bbbb."
    hits = search_articles([article("a", text, [])], "aaa")
    assert [(h["start"], h["end"]) for h in hits] == [(0, 3)]


def test_graph_single_entity_single_role():
    text = "Mira Vane acted."
    graph = aggregate_graph([article("a", text, [entity("Mira Vane", 0, [(FineRole.GUARDIAN, 0.9)])])])
    assert len(graph["nodes"]) == 2
    assert len(graph["edges"]) == 1
    assert graph["edges"][0]["kind"] == "assigned"
    assert graph["edges"][0]["weight"] == 1


def test_graph_weight_counts_articles():
    ents = lambda: [entity("Mira Vane", 0, [(FineRole.GUARDIAN, 0.9)])]
    a1 = article("a1", "Mira Vane acted.", ents())
    a2 = article("a2", "Mira Vane acted.", ents())
    graph = aggregate_graph([a1, a2])
    edge = graph["edges"][0]
    assert edge["weight"] == 2
    assert edge["articles"] == ["a1", "a2"]


def test_graph_empty_selection():
    assert aggregate_graph([]) == {"nodes": [], "edges": []}


def test_graph_cooccurrence_edges():
    text = "Mira Vane met Petro Oblak."
    ents = [
        entity("Mira Vane", 0, [(FineRole.GUARDIAN, 0.9)]),
        entity("Petro Oblak", 14, [(FineRole.TYRANT, 0.8)]),
    ]
    graph = aggregate_graph([article("a", text, ents)])
    kinds = {e["kind"] for e in graph["edges"]}
    assert kinds == {"assigned", "entity_cooccurrence", "role_cooccurrence"}


def test_graph_weights_equal_recount(zelensky_article):
    graph = aggregate_graph([zelensky_article])
    for edge in graph["edges"]:
        assert edge["weight"] == len(edge["articles"])
    for node in graph["nodes"]:
        assert node["weight"] == len(node["articles"])


def test_timeline_single_occurrence_no_transition(zelensky_article):
    items = timeline_view(zelensky_article, "Putin")
    assert len(items) == 1
    assert items[0]["transition"] is False


def test_timeline_transition_on_role_change():
    text = "Ilka Ferro suffered. Ilka Ferro endured."
    ents = [
        entity("Ilka Ferro", 0, [(FineRole.VICTIM, 0.9)], sentence=0),
        entity("Ilka Ferro", 21, [(FineRole.MARTYR, 0.8)], sentence=1),
    ]
    items = timeline_view(article("a", text, ents), "Ilka Ferro")
    assert [i["transition"] for i in items] == [False, True]


def test_timeline_alias_occurrences_counted():
    text = "Volodymyr Zelensky spoke. Zelensky left."
    ents = [
        entity("Volodymyr Zelensky", 0, [(FineRole.GUARDIAN, 0.9)], sentence=0),
        entity("Zelensky", 26, [(FineRole.GUARDIAN, 0.9)], sentence=1),
    ]
    items = timeline_view(article("a", text, ents), "Volodymyr Zelensky")
    assert len(items) == 2
    assert items[0]["transition"] is False and items[1]["transition"] is False


def test_timeline_absent_entity_empty(zelensky_article):
    assert timeline_view(zelensky_article, "Nobody Here") == []


def test_timeline_order_is_document_order(zelensky_article):
    items = timeline_view(zelensky_article, "Zelensky")
    starts = [i["start"] for i in items]
    assert starts == sorted(starts) == [0, 28, 54]


def test_compare_rejects_five(zelensky_article):
    with pytest.raises(ValueError):
        compare_view([zelensky_article] * 5)


def test_compare_single_article_matches_annotations(zelensky_article):
    payload = compare_view([zelensky_article])
    assert payload["articles"][0] == annotations_view(zelensky_article)
    assert payload["cumulative"]["main_roles"]["Protagonist"] == 3


def test_compare_cumulative_counts():
    a1 = article("a1", "Mira Vane acted.", [entity("Mira Vane", 0, [(FineRole.TYRANT, 0.9)])])
    a2 = article("a2", "Petro Oblak acted.", [entity("Petro Oblak", 0, [(FineRole.TYRANT, 0.9)])])
    payload = compare_view([a1, a2])
    assert payload["cumulative"]["main_roles"] == {"Antagonist": 2}
    assert payload["cumulative"]["fine_roles"] == {"Tyrant": 2}


# ---------------------------------------------------------------------------
# html extraction

def test_html_to_text_keeps_headline_and_paragraphs():
    html = (
        "<html><head><title>T</title><script>var x=1;</script></head>"
        "<body><h1>Big Headline</h1><p>First para.</p>"
        "<div><p>Second para.</p></div><script>skip()</script></body></html>"
    )
    text = html_to_text(html)
    assert text.startswith("Big Headline")
    assert "First para." in text and "Second para." in text
    assert "var x" not in text and "skip()" not in text
    assert "\n\n" in text


def test_html_to_text_falls_back_to_title():
    assert html_to_text("<title>Only Title</title>") == "Only Title"


# ---------------------------------------------------------------------------
# HTTP API against the overfit pipeline

FAKE_HTML = (
    "<html><body><h1>Front Report</h1>"
    "<p>PLACEHOLDER</p></body></html>"
)


@pytest.fixture
def client(pipeline, tmp_path):
    def fake_fetcher(url: str, timeout: float) -> str:
        if "bad" in url:
            raise OSError("connection refused")
        name = entity_pool()[FineRole.GUARDIAN][0]
        return FAKE_HTML.replace(
            "PLACEHOLDER", f"{name} {CUE_PHRASES[FineRole.GUARDIAN]}."
        )

    app = create_app(pipeline, SessionStore(tmp_path / "store"), fetcher=fake_fetcher)
    with TestClient(app) as c:
        yield c


def make_session(client) -> str:
    response = client.post("/sessions")
    assert response.status_code == 201
    return response.json()["id"]


def sample_text() -> str:
    pool = entity_pool()
    guardian = pool[FineRole.GUARDIAN][0]
    tyrant = pool[FineRole.TYRANT][0]
    return (
        f"{guardian} {CUE_PHRASES[FineRole.GUARDIAN]}. "
        f"{tyrant} {CUE_PHRASES[FineRole.TYRANT]}."
    )


def ingest(client, sid, text=None, filename="report", url=None):
    body = {"filename": filename}
    if text is not None:
        body["text"] = text
    if url is not None:
        body["url"] = url
    return client.post(f"/sessions/{sid}/articles", json=body)


def test_taxonomy_endpoint(client):
    payload = client.get("/taxonomy").json()
    assert list(payload) == ["Protagonist", "Antagonist", "Innocent"]
    assert len(payload["Antagonist"]) == 12


def test_ingest_paste_returns_entities(client):
    sid = make_session(client)
    response = ingest(client, sid, text=sample_text())
    assert response.status_code == 201
    payload = response.json()
    assert payload["filename"].startswith("report_")
    assert len(payload["entities"]) >= 1
    roles = {e["main_role"] for e in payload["entities"]}
    assert roles <= {"Protagonist", "Antagonist", "Innocent"}


def test_ingest_empty_body_is_400(client):
    sid = make_session(client)
    assert ingest(client, sid, text="   ").status_code == 400
    assert ingest(client, sid).status_code == 400


def test_ingest_text_and_url_is_400(client):
    sid = make_session(client)
    assert ingest(client, sid, text="x", url="http://x").status_code == 400


def test_ingest_empty_filename_is_400(client):
    sid = make_session(client)
    assert ingest(client, sid, text=sample_text(), filename=" ").status_code == 400


def test_ingest_unknown_session_is_404(client):
    assert ingest(client, "session_nope", text=sample_text()).status_code == 404


def test_ingest_duplicate_filenames_stay_distinct(client):
    sid = make_session(client)
    n1 = ingest(client, sid, text=sample_text()).json()["filename"]
    n2 = ingest(client, sid, text=sample_text()).json()["filename"]
    assert n1 != n2
    listed = client.get(f"/sessions/{sid}/articles").json()
    assert {it["filename"] for it in listed} == {n1, n2}


def test_ingest_url_uses_fetcher_and_extracts(client):
    sid = make_session(client)
    response = ingest(client, sid, url="http://good.example/x")
    assert response.status_code == 201
    assert "Front Report" in response.json()["text"]


def test_ingest_unreachable_url_is_502(client):
    sid = make_session(client)
    assert ingest(client, sid, url="http://bad.example/x").status_code == 502


def test_annotations_endpoint_threshold_subset(client):
    sid = make_session(client)
    name = ingest(client, sid, text=sample_text()).json()["filename"]
    url = f"/sessions/{sid}/articles/{name}/annotations"
    low = client.get(url, params={"min_confidence": 0.0}).json()
    high = client.get(url, params={"min_confidence": 0.9}).json()
    low_ids = {(e["start"], e["end"]) for e in low["entities"]}
    high_ids = {(e["start"], e["end"]) for e in high["entities"]}
    assert high_ids <= low_ids
    over = client.get(url, params={"min_confidence": 1.01}).json()
    assert over["entities"] == [] and over["text"] == low["text"]


def test_annotations_unknown_article_is_404(client):
    sid = make_session(client)
    response = client.get(f"/sessions/{sid}/articles/missing/annotations")
    assert response.status_code == 404


def test_sentences_endpoint_unknown_label_is_400(client):
    sid = make_session(client)
    ingest(client, sid, text=sample_text())
    response = client.get(f"/sessions/{sid}/sentences", params={"label": "Hero"})
    assert response.status_code == 400


def test_search_endpoint_requires_selection(client):
    sid = make_session(client)
    ingest(client, sid, text=sample_text())
    response = client.get(
        f"/sessions/{sid}/search", params={"q": "x", "files": ""}
    )
    assert response.status_code == 400


def test_search_endpoint_case_insensitive(client):
    sid = make_session(client)
    name = ingest(client, sid, text=sample_text()).json()["filename"]
    pool_name = entity_pool()[FineRole.GUARDIAN][0]
    response = client.get(
        f"/sessions/{sid}/search",
        params={"q": pool_name.lower(), "files": name},
    )
    assert response.status_code == 200
    assert len(response.json()) >= 1


def test_graph_endpoint_fixture_shape(client):
    sid = make_session(client)
    pool_name = entity_pool()[FineRole.GUARDIAN][0]
    text = f"{pool_name} {CUE_PHRASES[FineRole.GUARDIAN]}."
    name = ingest(client, sid, text=text).json()["filename"]
    graph = client.get(f"/sessions/{sid}/graph", params={"files": name}).json()
    entity_nodes = [n for n in graph["nodes"] if n["type"] == "entity"]
    role_nodes = [n for n in graph["nodes"] if n["type"] == "role"]
    assert entity_nodes and role_nodes
    for edge in graph["edges"]:
        assert edge["weight"] == len(edge["articles"])


def test_compare_endpoint_rejects_five(client):
    sid = make_session(client)
    names = [
        ingest(client, sid, text=sample_text(), filename=f"a{i}").json()["filename"]
        for i in range(5)
    ]
    response = client.get(
        f"/sessions/{sid}/compare", params={"files": ",".join(names)}
    )
    assert response.status_code == 400
    ok = client.get(
        f"/sessions/{sid}/compare", params={"files": ",".join(names[:4])}
    )
    assert ok.status_code == 200
    assert len(ok.json()["articles"]) == 4


def test_timeline_endpoint(client):
    sid = make_session(client)
    pool_name = entity_pool()[FineRole.GUARDIAN][0]
    text = (
        f"{pool_name} {CUE_PHRASES[FineRole.GUARDIAN]}. "
        f"{pool_name} {CUE_PHRASES[FineRole.GUARDIAN]}."
    )
    name = ingest(client, sid, text=text).json()["filename"]
    items = client.get(
        f"/sessions/{sid}/timeline", params={"file": name, "entity": pool_name}
    ).json()
    assert len(items) >= 1
    starts = [i["start"] for i in items]
    assert starts == sorted(starts)
    absent = client.get(
        f"/sessions/{sid}/timeline", params={"file": name, "entity": "Nobody Q"}
    ).json()
    assert absent == []


def test_stored_article_persisted_on_disk(client, tmp_path):
    sid = make_session(client)
    name = ingest(client, sid, text=sample_text()).json()["filename"]
    store_dir = tmp_path / "store" / sid
    assert (store_dir / f"{name}.txt").exists()
    payload = json.loads((store_dir / f"{name}.json").read_text())
    assert payload["filename"] == name
    assert payload["entities"]


def test_failed_analysis_persists_nothing(tmp_path):
    class ExplodingPipeline:
        def analyze(self, doc):
            raise RuntimeError("model blew up")

    app = create_app(ExplodingPipeline(), SessionStore(tmp_path / "s"))
    with TestClient(app, raise_server_exceptions=False) as c:
        sid = c.post("/sessions").json()["id"]
        response = c.post(
            f"/sessions/{sid}/articles", json={"filename": "x", "text": "Some text."}
        )
        assert response.status_code == 500
        assert c.get(f"/sessions/{sid}/articles").json() == []
        leftovers = [
            p for p in (tmp_path / "s" / sid).iterdir() if p.name != "meta.json"
        ]
        assert leftovers == []


def test_graph_edge_weights_equal_recount_from_annotations(client):
    sid = make_session(client)
    names = [
        ingest(client, sid, text=sample_text(), filename=f"g{i}").json()["filename"]
        for i in range(2)
    ]
    graph = client.get(
        f"/sessions/{sid}/graph", params={"files": ",".join(names)}
    ).json()
    # Independent recount: rebuild (entity, role) -> supporting articles from
    # each stored article's annotation payload.
    from entity_framing.evaluation import normalize_text

    support: dict[tuple[str, str], set[str]] = {}
    for name in names:
        payload = client.get(
            f"/sessions/{sid}/articles/{name}/annotations"
        ).json()
        for ent in payload["entities"]:
            key_e = "entity:" + normalize_text(ent["text"])
            for fine in ent["fine_roles"]:
                key_r = "role:" + fine["role"]
                support.setdefault((key_e, key_r), set()).add(name)
    assigned = {
        (e["source"], e["target"]): e for e in graph["edges"] if e["kind"] == "assigned"
    }
    assert set(assigned) == {
        (min(a, b), max(a, b)) for (a, b) in support
    }
    for (a, b), files in support.items():
        edge = assigned[(min(a, b), max(a, b))]
        assert edge["weight"] == len(files)
        assert set(edge["articles"]) == files
