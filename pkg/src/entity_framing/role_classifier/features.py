"""Classification instances: context extraction, input rendering, and the
desk-scale hashed bag-of-words text encoder."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, Sequence, runtime_checkable

import numpy as np

from ..corpus import ArticleDocument, GoldAnnotation, LabeledSpan
from ..sequence_labeler.encoder import stable_bucket
from ..taxonomy import FineRole, MainRole, TaxonomyError, main_of

CONTEXT_WINDOW = 150
MENTION_START = "[ENT]"
MENTION_END = "[/ENT]"


def extract_context(
    text: str, start: int, end: int, window: int = CONTEXT_WINDOW
) -> tuple[str, str, str]:
    """(left, mention, right): exact document slices, clipped, no padding."""
    if not (0 <= start < end <= len(text)):
        raise ValueError(f"invalid span [{start}, {end}) for text of length {len(text)}")
    left = text[max(0, start - window) : start]
    right = text[end : min(len(text), end + window)]
    return left, text[start:end], right


@dataclass(frozen=True)
class ClassificationInstance:
    mention: str
    left_context: str
    right_context: str
    main_role: MainRole
    gold_fine: frozenset[FineRole] | None = None
    language: str = "other"

    def validate(self) -> None:
        if self.main_role is MainRole.UNKNOWN:
            raise TaxonomyError("classification instances need a canonical main role")
        if self.gold_fine is not None:
            if not self.gold_fine:
                raise TaxonomyError("gold fine-role set must be non-empty")
            outside = sorted(
                f.value for f in self.gold_fine if main_of(f) != self.main_role
            )
            if outside:
                raise TaxonomyError(
                    f"gold roles {outside} outside the {self.main_role} mask"
                )

    def rendered(self) -> str:
        return (
            f"{self.left_context} {MENTION_START} {self.mention} "
            f"{MENTION_END} {self.right_context}"
        )


def instance_from_annotation(
    doc: ArticleDocument, ann: GoldAnnotation, window: int = CONTEXT_WINDOW
) -> ClassificationInstance:
    left, mention, right = extract_context(doc.text, ann.start, ann.end, window)
    return ClassificationInstance(
        mention=mention,
        left_context=left,
        right_context=right,
        main_role=ann.main_role,
        gold_fine=ann.fine_roles or None,
        language=doc.language,
    )


def instance_from_span(
    doc: ArticleDocument, span: LabeledSpan, window: int = CONTEXT_WINDOW
) -> ClassificationInstance:
    left, mention, right = extract_context(doc.text, span.start, span.end, window)
    return ClassificationInstance(
        mention=mention,
        left_context=left,
        right_context=right,
        main_role=span.main_role,
        language=doc.language,
    )


@runtime_checkable
class TextEncoder(Protocol):
    """Maps rendered instance strings to fixed-size feature vectors."""

    dim: int

    def encode(self, texts: Sequence[str]) -> np.ndarray:
        """(len(texts), dim) float32 features."""
        ...


class HashTextEncoder:
    """Deterministic mean-pooled hash-bucket embeddings over whitespace tokens."""

    def __init__(self, dim: int = 256, buckets: int = 8192, seed: int = 1):
        self.dim = dim
        self.buckets = buckets
        self.seed = seed
        rng = np.random.default_rng(seed)
        self._table = rng.standard_normal((buckets, dim)).astype(np.float32)

    def config(self) -> dict:
        return {
            "type": "hash_text",
            "dim": self.dim,
            "buckets": self.buckets,
            "seed": self.seed,
        }

    def encode(self, texts: Sequence[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dim), dtype=np.float32)
        for i, text in enumerate(texts):
            tokens = text.split()
            if not tokens:
                continue
            rows = [self._table[stable_bucket(t, self.buckets)] for t in tokens]
            out[i] = np.mean(rows, axis=0)
        return out
