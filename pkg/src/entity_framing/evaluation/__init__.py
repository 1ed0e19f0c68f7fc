"""Span matching, deduplicated P/R/F1, classifier metrics, and baselines."""

from ..textnorm import is_acronym, normalize_text
from .baselines import (
    LabelCountDistribution,
    fit_label_count_distribution,
    freq_weighted_baseline,
    random_baseline,
    topk_baseline,
)
from .matching import (
    CHAR_OVERLAP_MIN,
    MATCH_RULES,
    NO_MATCH,
    SUBSTRING_MIN_CHARS,
    TOKEN_OVERLAP_MIN,
    SpanPair,
    best_match,
    exact_match_accuracy,
    fuzzy_match,
    match_rule_counts,
    spans_match,
)
from .metrics import (
    ClassifierMetrics,
    DedupReport,
    OverlapReport,
    Prf,
    classification_metrics,
    dedup_prf,
    overlap_set_eval,
)
from .report import EvaluationReport, build_report, format_report

__all__ = [
    "is_acronym",
    "normalize_text",
    "LabelCountDistribution",
    "fit_label_count_distribution",
    "freq_weighted_baseline",
    "random_baseline",
    "topk_baseline",
    "CHAR_OVERLAP_MIN",
    "MATCH_RULES",
    "NO_MATCH",
    "SUBSTRING_MIN_CHARS",
    "TOKEN_OVERLAP_MIN",
    "SpanPair",
    "best_match",
    "exact_match_accuracy",
    "fuzzy_match",
    "match_rule_counts",
    "spans_match",
    "ClassifierMetrics",
    "DedupReport",
    "OverlapReport",
    "Prf",
    "classification_metrics",
    "dedup_prf",
    "overlap_set_eval",
    "EvaluationReport",
    "build_report",
    "format_report",
]
