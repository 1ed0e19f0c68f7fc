"""Entity framing: detect entity mentions in news text, assign coarse
narrative roles with a CRF sequence labeler, refine them with a
taxonomy-masked multi-label classifier, and evaluate with a fuzzy,
deduplication-aware protocol."""

__version__ = "0.1.0"

from . import augmentation, corpus, evaluation, role_classifier, sequence_labeler, taxonomy

__all__ = [
    "augmentation",
    "corpus",
    "evaluation",
    "role_classifier",
    "sequence_labeler",
    "taxonomy",
    "__version__",
]
