"""Stage 2: taxonomy-masked fine-grained role classification."""

from .decoding import DECODE_MARGIN, DECODE_THRESHOLD, FineRolePrediction, margin_decode
from .features import (
    CONTEXT_WINDOW,
    ClassificationInstance,
    HashTextEncoder,
    TextEncoder,
    extract_context,
    instance_from_annotation,
    instance_from_span,
)
from .loss import EPSILON, compute_class_weights, masked_weighted_bce
from .model import (
    ClsTrainConfig,
    ClsTrainingReport,
    RoleClassifier,
    classify_span,
    load_role_classifier,
    prediction_record,
    save_role_classifier,
    train_role_classifier,
)

__all__ = [
    "DECODE_MARGIN",
    "DECODE_THRESHOLD",
    "FineRolePrediction",
    "margin_decode",
    "CONTEXT_WINDOW",
    "ClassificationInstance",
    "HashTextEncoder",
    "TextEncoder",
    "extract_context",
    "instance_from_annotation",
    "instance_from_span",
    "EPSILON",
    "compute_class_weights",
    "masked_weighted_bce",
    "ClsTrainConfig",
    "ClsTrainingReport",
    "RoleClassifier",
    "classify_span",
    "load_role_classifier",
    "prediction_record",
    "save_role_classifier",
    "train_role_classifier",
]
