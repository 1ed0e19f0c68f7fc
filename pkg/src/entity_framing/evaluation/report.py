"""Full evaluation report: span metrics, classifier metrics on the overlap
set, optional chance baselines, and a human-readable table."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from ..corpus import GoldAnnotation, LabeledSpan
from ..taxonomy import MainRole
from .baselines import (
    fit_label_count_distribution,
    freq_weighted_baseline,
    random_baseline,
    topk_baseline,
)
from .matching import exact_match_accuracy, match_rule_counts
from .metrics import (
    ClassifierMetrics,
    DedupReport,
    OverlapReport,
    classification_metrics,
    dedup_prf,
    overlap_set_eval,
)


@dataclass
class EvaluationReport:
    n_documents: int
    n_gold_spans: int
    n_predicted_spans: int
    exact_match_accuracy: float | None
    match_rule_counts: dict[str, int]
    fuzzy_only_matches: int
    span_metrics: DedupReport
    classifier: OverlapReport | None
    baselines: dict[str, ClassifierMetrics] | None = None

    def as_dict(self) -> dict:
        return {
            "n_documents": self.n_documents,
            "n_gold_spans": self.n_gold_spans,
            "n_predicted_spans": self.n_predicted_spans,
            "exact_match_accuracy": self.exact_match_accuracy,
            "match_rule_counts": self.match_rule_counts,
            "fuzzy_only_matches": self.fuzzy_only_matches,
            "span_metrics": self.span_metrics.as_dict(),
            "classifier": self.classifier.as_dict() if self.classifier else None,
            "baselines": (
                {name: m.as_dict() for name, m in self.baselines.items()}
                if self.baselines
                else None
            ),
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.as_dict(), indent=2))


def build_report(
    pred_docs: Sequence[Sequence[LabeledSpan]],
    pred_fine_docs: Sequence[Sequence[frozenset]] | None,
    gold_docs: Sequence[Sequence[GoldAnnotation]],
    baselines_seed: int | None = None,
) -> EvaluationReport:
    """Score span predictions (and, when provided, aligned fine-role sets)
    against gold annotations; baselines run when a seed is given."""
    rule_counts = match_rule_counts(pred_docs, gold_docs)
    fuzzy_only = sum(v for k, v in rule_counts.items() if k != "exact")
    classifier = None
    if pred_fine_docs is not None:
        classifier = overlap_set_eval(pred_docs, pred_fine_docs, gold_docs)

    baselines: dict[str, ClassifierMetrics] | None = None
    gold_sets = [
        g.fine_roles
        for golds in gold_docs
        for g in golds
        if g.main_role is not MainRole.UNKNOWN and g.fine_roles
    ]
    if baselines_seed is not None and gold_sets:
        dist = fit_label_count_distribution(gold_sets)
        freqs = dist.marginal_array()
        n = len(gold_sets)
        baselines = {
            "random": classification_metrics(
                random_baseline(dist, n, baselines_seed), gold_sets
            ),
            "top_k": classification_metrics(
                topk_baseline(dist, freqs, n, baselines_seed), gold_sets
            ),
            "freq_weighted": classification_metrics(
                freq_weighted_baseline(dist, freqs, n, baselines_seed), gold_sets
            ),
        }

    return EvaluationReport(
        n_documents=len(gold_docs),
        n_gold_spans=sum(len(g) for g in gold_docs),
        n_predicted_spans=sum(len(p) for p in pred_docs),
        exact_match_accuracy=exact_match_accuracy(pred_docs, gold_docs),
        match_rule_counts=rule_counts,
        fuzzy_only_matches=fuzzy_only,
        span_metrics=dedup_prf(pred_docs, gold_docs),
        classifier=classifier,
        baselines=baselines,
    )


def _pct(x: float | None) -> str:
    return "  n/a" if x is None else f"{100 * x:5.1f}"


def format_report(report: EvaluationReport) -> str:
    """Compact fixed-width tables for terminal output."""
    lines = [
        f"documents: {report.n_documents}   gold spans: {report.n_gold_spans}"
        f"   predicted spans: {report.n_predicted_spans}",
        f"exact-match accuracy (fuzzy): {_pct(report.exact_match_accuracy)}%"
        f"   fuzzy-only matches: {report.fuzzy_only_matches}",
        "",
        "span metrics (deduplicated)",
        f"{'role':<14} {'P':>6} {'R':>6} {'F1':>6}",
    ]
    for role, prf in report.span_metrics.per_role.items():
        lines.append(
            f"{role:<14} {_pct(prf.precision)} {_pct(prf.recall)} {_pct(prf.f1)}"
        )
    for name, prf in (("macro", report.span_metrics.macro), ("micro", report.span_metrics.micro)):
        lines.append(
            f"{name:<14} {_pct(prf.precision)} {_pct(prf.recall)} {_pct(prf.f1)}"
        )
    if report.classifier is not None:
        lines.append("")
        lines.append(
            f"classifier (overlap set: {report.classifier.n_overlap}"
            f"/{report.classifier.n_gold} gold spans)"
        )
        lines.append(
            f"{'':<14} {'Prec':>6} {'Rec':>6} {'Mic':>6} {'Mac':>6} {'Acc':>6} {'EMC':>6}"
        )
        rows: list[tuple[str, ClassifierMetrics]] = []
        if report.classifier.metrics is not None:
            rows.append(("pipeline", report.classifier.metrics))
        for name, metrics in (report.baselines or {}).items():
            rows.append((name, metrics))
        for name, m in rows:
            lines.append(
                f"{name:<14} {_pct(m.precision)} {_pct(m.recall)} {_pct(m.micro_f1)}"
                f" {_pct(m.macro_f1)} {_pct(m.recall_accuracy)}"
                f" {_pct(m.exact_match_accuracy)}"
            )
        if report.classifier.empty:
            lines.append("(empty overlap set: classifier metrics not applicable)")
    return "\n".join(lines)
