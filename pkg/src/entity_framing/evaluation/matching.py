"""Exact + fuzzy span matching.

A prediction matches a gold span when the main roles agree and the first of
six rules fires: identical offsets, normalized string equality, acronym,
substring containment (both sides >= 3 chars), token overlap >= 67% of the
smaller span, or character-range overlap >= 80% of the shorter span. Rule
order only affects which rule gets recorded, never whether a pair matches.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..corpus import GoldAnnotation, LabeledSpan
from ..textnorm import is_acronym, normalize_text

MATCH_RULES = (
    "exact",
    "normalized",
    "acronym",
    "substring",
    "token_overlap",
    "char_overlap",
)
NO_MATCH = "none"

SUBSTRING_MIN_CHARS = 3
TOKEN_OVERLAP_MIN = 0.67
CHAR_OVERLAP_MIN = 0.80


@dataclass(frozen=True)
class SpanPair:
    predicted: LabeledSpan
    gold: GoldAnnotation
    match_rule: str

    @property
    def matched(self) -> bool:
        return self.match_rule != NO_MATCH


def _surface(span) -> str:
    return span.text if hasattr(span, "text") else span.mention


def _match_rule(pred, gold) -> str:
    if pred.main_role != gold.main_role:
        return NO_MATCH
    if pred.start == gold.start and pred.end == gold.end:
        return "exact"
    a, b = normalize_text(_surface(pred)), normalize_text(_surface(gold))
    if a and b and a == b:
        return "normalized"
    if is_acronym(_surface(pred), _surface(gold)):
        return "acronym"
    if (
        len(a) >= SUBSTRING_MIN_CHARS
        and len(b) >= SUBSTRING_MIN_CHARS
        and (a in b or b in a)
    ):
        return "substring"
    ta, tb = set(a.split()), set(b.split())
    if ta and tb:
        overlap = len(ta & tb) / min(len(ta), len(tb))
        if overlap >= TOKEN_OVERLAP_MIN:
            return "token_overlap"
    inter = min(pred.end, gold.end) - max(pred.start, gold.start)
    shorter = min(pred.end - pred.start, gold.end - gold.start)
    if shorter > 0 and inter / shorter >= CHAR_OVERLAP_MIN:
        return "char_overlap"
    return NO_MATCH


def fuzzy_match(pred: LabeledSpan, gold: GoldAnnotation) -> SpanPair:
    """First satisfied rule, or a non-match pair."""
    return SpanPair(predicted=pred, gold=gold, match_rule=_match_rule(pred, gold))


def spans_match(a, b) -> bool:
    """Rule-agnostic match predicate (symmetric in the two spans)."""
    return _match_rule(a, b) != NO_MATCH


def best_match(
    preds: Sequence[LabeledSpan], gold: GoldAnnotation
) -> SpanPair | None:
    """The matching pair with the highest-priority rule (ties: earliest
    prediction), or None when nothing matches."""
    best: SpanPair | None = None
    best_rank = len(MATCH_RULES)
    for pred in preds:
        rule = _match_rule(pred, gold)
        if rule == NO_MATCH:
            continue
        rank = MATCH_RULES.index(rule)
        if rank < best_rank:
            best = SpanPair(pred, gold, rule)
            best_rank = rank
    return best


def exact_match_accuracy(
    pred_docs: Sequence[Sequence[LabeledSpan]],
    gold_docs: Sequence[Sequence[GoldAnnotation]],
) -> float | None:
    """Fraction of gold spans matched by at least one prediction; None when
    there are no gold spans (not applicable, never a division by zero)."""
    if len(pred_docs) != len(gold_docs):
        raise ValueError("per-document prediction/gold lists must align")
    matched = total = 0
    for preds, golds in zip(pred_docs, gold_docs):
        for gold in golds:
            total += 1
            if best_match(preds, gold) is not None:
                matched += 1
    if total == 0:
        return None
    return matched / total


def match_rule_counts(
    pred_docs: Sequence[Sequence[LabeledSpan]],
    gold_docs: Sequence[Sequence[GoldAnnotation]],
) -> dict[str, int]:
    """How many gold spans were credited by each rule (fuzzy-only = non-exact)."""
    counts = {rule: 0 for rule in MATCH_RULES}
    for preds, golds in zip(pred_docs, gold_docs):
        for gold in golds:
            pair = best_match(preds, gold)
            if pair is not None:
                counts[pair.match_rule] += 1
    return counts
