"""Deduplicated span P/R/F1 and multi-label classifier metrics.

Span metrics count at most one true positive and one false positive per
unique (normalized surface, main role) key per document, mirroring the
first-mention annotation policy. Classifier metrics are computed over the
22 fine roles with micro pooling and macro averaging over roles present in
gold or predictions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Collection, Sequence

from ..corpus import GoldAnnotation, LabeledSpan
from ..taxonomy import CANONICAL_MAIN_ROLES, FINE_ROLES, FineRole, MainRole
from ..textnorm import normalize_text
from .matching import best_match, spans_match


@dataclass(frozen=True)
class Prf:
    precision: float
    recall: float
    f1: float

    @staticmethod
    def from_rates(precision: float, recall: float) -> "Prf":
        if precision <= 0.0 or recall <= 0.0:
            return Prf(precision, recall, 0.0)
        return Prf(precision, recall, 2 * precision * recall / (precision + recall))

    def as_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1}


@dataclass
class _KeyCounts:
    gold_keys: int = 0
    matched_gold: int = 0
    pred_keys: int = 0
    matched_pred: int = 0

    def add(self, other: "_KeyCounts") -> None:
        self.gold_keys += other.gold_keys
        self.matched_gold += other.matched_gold
        self.pred_keys += other.pred_keys
        self.matched_pred += other.matched_pred

    def prf(self) -> Prf:
        precision = self.matched_pred / self.pred_keys if self.pred_keys else 0.0
        recall = self.matched_gold / self.gold_keys if self.gold_keys else 0.0
        return Prf.from_rates(precision, recall)


@dataclass
class DedupReport:
    per_role: dict[str, Prf]
    macro: Prf
    micro: Prf
    counts: dict[str, dict]

    def as_dict(self) -> dict:
        return {
            "per_role": {r: p.as_dict() for r, p in self.per_role.items()},
            "macro": self.macro.as_dict(),
            "micro": self.micro.as_dict(),
            "counts": self.counts,
        }


def _doc_key_counts(
    preds: Sequence[LabeledSpan],
    golds: Sequence[GoldAnnotation],
    role: MainRole,
) -> _KeyCounts:
    counts = _KeyCounts()
    golds_r = [g for g in golds if g.main_role == role]
    preds_r = [p for p in preds if p.main_role == role]
    gold_keys = {normalize_text(g.mention) for g in golds_r}
    pred_keys = {normalize_text(p.text) for p in preds_r}
    matched_gold = {
        normalize_text(g.mention)
        for g in golds_r
        if any(spans_match(p, g) for p in preds_r)
    }
    matched_pred = {
        normalize_text(p.text)
        for p in preds_r
        if any(spans_match(p, g) for g in golds_r)
    }
    counts.gold_keys = len(gold_keys)
    counts.matched_gold = len(matched_gold)
    counts.pred_keys = len(pred_keys)
    counts.matched_pred = len(matched_pred)
    return counts


def dedup_prf(
    pred_docs: Sequence[Sequence[LabeledSpan]],
    gold_docs: Sequence[Sequence[GoldAnnotation]],
) -> DedupReport:
    """Deduplicated precision/recall/F1, per main role plus macro and micro."""
    if len(pred_docs) != len(gold_docs):
        raise ValueError("per-document prediction/gold lists must align")
    role_counts = {role: _KeyCounts() for role in CANONICAL_MAIN_ROLES}
    for preds, golds in zip(pred_docs, gold_docs):
        for role in CANONICAL_MAIN_ROLES:
            role_counts[role].add(_doc_key_counts(preds, golds, role))
    per_role = {role.value: counts.prf() for role, counts in role_counts.items()}
    pooled = _KeyCounts()
    for counts in role_counts.values():
        pooled.add(counts)
    macro = Prf(
        precision=_mean([p.precision for p in per_role.values()]),
        recall=_mean([p.recall for p in per_role.values()]),
        f1=_mean([p.f1 for p in per_role.values()]),
    )
    return DedupReport(
        per_role=per_role,
        macro=macro,
        micro=pooled.prf(),
        counts={
            role.value: vars(counts).copy() for role, counts in role_counts.items()
        },
    )


def _mean(values: Sequence[float]) -> float:
    return sum(values) / len(values) if values else 0.0


# ---------------------------------------------------------------------------
# Fine-grained classifier metrics

@dataclass
class ClassifierMetrics:
    precision: float
    recall: float
    micro_f1: float
    macro_f1: float
    recall_accuracy: float
    exact_match_accuracy: float
    per_role: dict[str, Prf] = field(default_factory=dict)
    n_instances: int = 0

    def as_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "micro_f1": self.micro_f1,
            "macro_f1": self.macro_f1,
            "recall_accuracy": self.recall_accuracy,
            "exact_match_accuracy": self.exact_match_accuracy,
            "per_role": {r: p.as_dict() for r, p in self.per_role.items()},
            "n_instances": self.n_instances,
        }


def classification_metrics(
    pred_sets: Sequence[Collection[FineRole]],
    gold_sets: Sequence[Collection[FineRole]],
) -> ClassifierMetrics:
    """Multi-label metrics over the 22 fine roles.

    recall_accuracy counts an instance as correct when the prediction hits
    at least one gold role; exact_match_accuracy requires set equality.
    """
    if len(pred_sets) != len(gold_sets):
        raise ValueError(
            f"misaligned instance lists: {len(pred_sets)} != {len(gold_sets)}"
        )
    if not pred_sets:
        raise ValueError("no instances to evaluate")
    preds = [frozenset(p) for p in pred_sets]
    golds = [frozenset(g) for g in gold_sets]

    tp = {role: 0 for role in FINE_ROLES}
    fp = {role: 0 for role in FINE_ROLES}
    fn = {role: 0 for role in FINE_ROLES}
    hit = exact = 0
    for pred, gold in zip(preds, golds):
        for role in pred & gold:
            tp[role] += 1
        for role in pred - gold:
            fp[role] += 1
        for role in gold - pred:
            fn[role] += 1
        if pred & gold:
            hit += 1
        if pred == gold:
            exact += 1

    present = [
        role for role in FINE_ROLES if tp[role] + fp[role] + fn[role] > 0
    ]
    per_role: dict[str, Prf] = {}
    for role in present:
        precision = tp[role] / (tp[role] + fp[role]) if tp[role] + fp[role] else 0.0
        recall = tp[role] / (tp[role] + fn[role]) if tp[role] + fn[role] else 0.0
        per_role[role.value] = Prf.from_rates(precision, recall)

    tp_sum = sum(tp.values())
    fp_sum = sum(fp.values())
    fn_sum = sum(fn.values())
    micro_p = tp_sum / (tp_sum + fp_sum) if tp_sum + fp_sum else 0.0
    micro_r = tp_sum / (tp_sum + fn_sum) if tp_sum + fn_sum else 0.0
    micro = Prf.from_rates(micro_p, micro_r)
    macro_f1 = _mean([p.f1 for p in per_role.values()])

    return ClassifierMetrics(
        precision=micro.precision,
        recall=micro.recall,
        micro_f1=micro.f1,
        macro_f1=macro_f1,
        recall_accuracy=hit / len(preds),
        exact_match_accuracy=exact / len(preds),
        per_role=per_role,
        n_instances=len(preds),
    )


@dataclass
class OverlapReport:
    """Classifier metrics restricted to golds recovered by stage 1."""

    n_gold: int
    n_overlap: int
    empty: bool
    metrics: ClassifierMetrics | None

    def as_dict(self) -> dict:
        return {
            "n_gold": self.n_gold,
            "n_overlap": self.n_overlap,
            "empty": self.empty,
            "metrics": self.metrics.as_dict() if self.metrics else None,
        }


def overlap_set_eval(
    stage1_docs: Sequence[Sequence[LabeledSpan]],
    stage2_docs: Sequence[Sequence[Collection[FineRole]]],
    gold_docs: Sequence[Sequence[GoldAnnotation]],
) -> OverlapReport:
    """Pair each gold span with the first fuzzy-matching prediction and score
    the matched predictions' fine-role sets against the gold sets."""
    if not (len(stage1_docs) == len(stage2_docs) == len(gold_docs)):
        raise ValueError("per-document lists must align across stages and gold")
    pred_sets: list[frozenset[FineRole]] = []
    gold_sets: list[frozenset[FineRole]] = []
    n_gold = 0
    for spans, fines, golds in zip(stage1_docs, stage2_docs, gold_docs):
        if len(spans) != len(fines):
            raise ValueError("stage-2 predictions must align with stage-1 spans")
        for gold in golds:
            if gold.main_role is MainRole.UNKNOWN or not gold.fine_roles:
                continue
            n_gold += 1
            for span, fine in zip(spans, fines):
                if spans_match(span, gold):
                    pred_sets.append(frozenset(fine))
                    gold_sets.append(gold.fine_roles)
                    break
    if not pred_sets:
        return OverlapReport(n_gold=n_gold, n_overlap=0, empty=True, metrics=None)
    return OverlapReport(
        n_gold=n_gold,
        n_overlap=len(pred_sets),
        empty=False,
        metrics=classification_metrics(pred_sets, gold_sets),
    )
