"""Analysis pipeline and the pure view computations behind the HTTP API."""

from __future__ import annotations

import re
from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence

from ..augmentation import alias_related
from ..corpus import ArticleDocument, LabeledSpan
from ..role_classifier import FineRolePrediction, RoleClassifier, classify_span
from ..sequence_labeler import SequenceTagger, label_article
from ..taxonomy import (
    FineRole,
    MainRole,
    TaxonomyError,
    main_of,
    parse_fine_role,
    parse_main_role,
)
from ..textnorm import normalize_text

SENTENCE_TERMINATORS = ".!?।"  # includes the Devanagari danda


def sentence_index(text: str) -> list[tuple[int, int]]:
    """Half-open sentence segments covering the text without overlap.

    A sentence ends right after a terminator followed by whitespace or EOF;
    inter-sentence whitespace belongs to the following segment.
    """
    bounds: list[tuple[int, int]] = []
    start = 0
    for i, ch in enumerate(text):
        at_eof = i + 1 == len(text)
        if ch in SENTENCE_TERMINATORS and (at_eof or text[i + 1].isspace()):
            bounds.append((start, i + 1))
            start = i + 1
    if start < len(text):
        bounds.append((start, len(text)))
    return bounds


def sentence_ordinal(sentences: Sequence[tuple[int, int]], pos: int) -> int:
    starts = [s for s, _ in sentences]
    return max(0, bisect_right(starts, pos) - 1)


@dataclass(frozen=True)
class AnnotatedEntity:
    span: LabeledSpan
    fine: FineRolePrediction
    sentence_ordinal: int
    is_repeat: bool

    def as_payload(self) -> dict:
        return {
            "start": self.span.start,
            "end": self.span.end,
            "text": self.span.text,
            "main_role": self.span.main_role.value,
            "confidence": round(self.span.confidence, 6),
            "fine_roles": self.fine.as_payload(),
            "sentence_ordinal": self.sentence_ordinal,
            "is_repeat": self.is_repeat,
        }

    @staticmethod
    def from_payload(payload: dict) -> "AnnotatedEntity":
        span = LabeledSpan(
            start=payload["start"],
            end=payload["end"],
            text=payload["text"],
            main_role=parse_main_role(payload["main_role"]),
            confidence=payload["confidence"],
        )
        fine = FineRolePrediction(
            roles=tuple(
                (parse_fine_role(r["role"]), float(r["p"]))
                for r in payload["fine_roles"]
            )
        )
        return AnnotatedEntity(
            span=span,
            fine=fine,
            sentence_ordinal=payload["sentence_ordinal"],
            is_repeat=payload["is_repeat"],
        )


class AnalysisPipeline:
    """Runs both trained stages over one article."""

    def __init__(self, tagger: SequenceTagger, classifier: RoleClassifier):
        self.tagger = tagger
        self.classifier = classifier

    def analyze(
        self, doc: ArticleDocument
    ) -> tuple[list[AnnotatedEntity], list[tuple[int, int]]]:
        sentences = sentence_index(doc.text)
        seen: set[tuple[str, frozenset[FineRole]]] = set()
        entities: list[AnnotatedEntity] = []
        for span in label_article(doc, self.tagger):
            fine = classify_span(doc, span, self.classifier)
            key = (normalize_text(span.text), fine.role_set())
            entities.append(
                AnnotatedEntity(
                    span=span,
                    fine=fine,
                    sentence_ordinal=sentence_ordinal(sentences, span.start),
                    is_repeat=key in seen,
                )
            )
            seen.add(key)
        return entities, sentences


# ---------------------------------------------------------------------------
# View computations over stored articles (imported lazily to avoid cycles)

def annotations_view(article, min_confidence: float = 0.0, hide_repeats: bool = False) -> dict:
    """Article text plus entities whose top fine-role probability clears the
    threshold; repeats optionally hidden."""
    kept = []
    hidden_repeats = 0
    for ent in article.entities:
        if ent.fine.top_probability() < min_confidence:
            continue
        if hide_repeats and ent.is_repeat:
            hidden_repeats += 1
            continue
        kept.append(ent.as_payload())
    return {
        "filename": article.filename,
        "language": article.document.language,
        "text": article.document.text,
        "entities": kept,
        "n_entities_total": len(article.entities),
        "n_hidden_repeats": hidden_repeats,
        "sentences": [list(s) for s in article.sentences],
    }


def _sentence_text(article, ordinal: int) -> str:
    start, end = article.sentences[ordinal]
    return article.document.text[start:end].strip()


def _parse_label(label: str) -> MainRole | FineRole:
    try:
        return parse_main_role(label)
    except TaxonomyError:
        return parse_fine_role(label)  # raises TaxonomyError with the name


def _entity_has_label(entity: AnnotatedEntity, label: MainRole | FineRole) -> bool:
    if isinstance(label, MainRole):
        return entity.span.main_role is label
    return label in entity.fine.role_set()


def sentences_for_label(articles, label: str) -> list[dict]:
    """Every sentence containing an entity carrying the label, once per
    (article, sentence), with all matching entities attached."""
    parsed = _parse_label(label)
    rows: dict[tuple[str, int], dict] = {}
    for article in articles:
        for ent in article.entities:
            if not _entity_has_label(ent, parsed):
                continue
            key = (article.filename, ent.sentence_ordinal)
            row = rows.setdefault(
                key,
                {
                    "filename": article.filename,
                    "sentence_ordinal": ent.sentence_ordinal,
                    "sentence": _sentence_text(article, ent.sentence_ordinal),
                    "entities": [],
                },
            )
            row["entities"].append(ent.as_payload())
    return [rows[key] for key in sorted(rows)]


def search_articles(articles, query: str) -> list[dict]:
    """Case-insensitive, non-overlapping substring matches with sentence context."""
    if not query:
        raise ValueError("empty search query")
    rx = re.compile(re.escape(query), re.IGNORECASE)
    out: list[dict] = []
    for article in articles:
        sentences = article.sentences
        for m in rx.finditer(article.document.text):
            ordinal = sentence_ordinal(sentences, m.start())
            out.append(
                {
                    "filename": article.filename,
                    "start": m.start(),
                    "end": m.end(),
                    "match": m.group(0),
                    "sentence_ordinal": ordinal,
                    "sentence": _sentence_text(article, ordinal),
                }
            )
    return out


def aggregate_graph(articles) -> dict:
    """Entity and fine-role nodes; edges for assignment and article-level
    co-occurrence, weighted by the number of supporting articles."""
    node_articles: dict[str, set[str]] = {}
    node_meta: dict[str, dict] = {}
    edge_articles: dict[tuple[str, str, str], set[str]] = {}

    for article in articles:
        entity_keys: set[str] = set()
        role_keys: set[str] = set()
        for ent in article.entities:
            surface_key = "entity:" + normalize_text(ent.span.text)
            entity_keys.add(surface_key)
            meta = node_meta.setdefault(
                surface_key,
                {"id": surface_key, "type": "entity", "label": ent.span.text},
            )
            if len(ent.span.text) > len(meta["label"]):
                meta["label"] = ent.span.text
            for role in ent.fine.role_set():
                role_key = "role:" + role.value
                role_keys.add(role_key)
                node_meta.setdefault(
                    role_key,
                    {
                        "id": role_key,
                        "type": "role",
                        "label": role.value,
                        "main_role": main_of(role).value,
                    },
                )
                _add_edge(edge_articles, surface_key, role_key, "assigned", article.filename)
        for a, b in _pairs(sorted(entity_keys)):
            _add_edge(edge_articles, a, b, "entity_cooccurrence", article.filename)
        for a, b in _pairs(sorted(role_keys)):
            _add_edge(edge_articles, a, b, "role_cooccurrence", article.filename)
        for key in entity_keys | role_keys:
            node_articles.setdefault(key, set()).add(article.filename)

    nodes = []
    for key, meta in sorted(node_meta.items()):
        files = sorted(node_articles.get(key, ()))
        nodes.append({**meta, "articles": files, "weight": len(files)})
    edges = [
        {
            "source": a,
            "target": b,
            "kind": kind,
            "articles": sorted(files),
            "weight": len(files),
        }
        for (a, b, kind), files in sorted(edge_articles.items())
    ]
    return {"nodes": nodes, "edges": edges}


def _pairs(items):
    for i, a in enumerate(items):
        for b in items[i + 1 :]:
            yield a, b


def _add_edge(edges, a: str, b: str, kind: str, filename: str) -> None:
    key = (min(a, b), max(a, b), kind)
    edges.setdefault(key, set()).add(filename)


def timeline_view(article, entity_surface: str) -> list[dict]:
    """Role sequence for one entity, with transition flags between
    consecutive occurrences; alias surfaces count as the same entity."""
    if not entity_surface:
        raise ValueError("empty entity surface")
    query_norm = normalize_text(entity_surface)
    occurrences = [
        ent
        for ent in sorted(article.entities, key=lambda e: e.span.start)
        if normalize_text(ent.span.text) == query_norm
        or alias_related(ent.span.text, entity_surface)
    ]
    items: list[dict] = []
    previous: frozenset[FineRole] | None = None
    for ent in occurrences:
        roles = ent.fine.role_set()
        items.append(
            {
                "sentence_ordinal": ent.sentence_ordinal,
                "start": ent.span.start,
                "end": ent.span.end,
                "surface": ent.span.text,
                "main_role": ent.span.main_role.value,
                "fine_roles": ent.fine.as_payload(),
                "sentence": _sentence_text(article, ent.sentence_ordinal),
                "transition": previous is not None and roles != previous,
            }
        )
        previous = roles
    return items


MAX_COMPARE_ARTICLES = 4


def compare_view(articles) -> dict:
    """Per-article annotation payloads plus pooled role distributions."""
    if not (1 <= len(articles) <= MAX_COMPARE_ARTICLES):
        raise ValueError(
            f"compare accepts 1 to {MAX_COMPARE_ARTICLES} articles, got {len(articles)}"
        )
    main_counts: dict[str, int] = {}
    fine_counts: dict[str, int] = {}
    for article in articles:
        for ent in article.entities:
            main = ent.span.main_role.value
            main_counts[main] = main_counts.get(main, 0) + 1
            for role in ent.fine.role_set():
                fine_counts[role.value] = fine_counts.get(role.value, 0) + 1
    return {
        "articles": [annotations_view(a) for a in articles],
        "cumulative": {"main_roles": main_counts, "fine_roles": fine_counts},
    }
