"""Stage 1: windowed CRF sequence labeling for span detection and main roles."""

from ..corpus import LabeledSpan
from .crf import InvalidGoldSequence, LinearChainCRF, NEG_INF, crf_nll, viterbi_decode
from .encoder import HashTokenEncoder, TokenEncoder, stable_bucket
from .model import (
    INFERENCE_SHIFT,
    INIT_NON_O_BIAS,
    SeqTrainConfig,
    SequenceTagger,
    TrainingReport,
    apply_inference_shift,
    label_article,
    load_sequence_labeler,
    save_sequence_labeler,
    train_sequence_labeler,
)
from .postprocess import MERGE_THRESHOLD, STOPWORDS, filter_spans, merge_spans, stopwords_for
from .windows import TokenWindow, merge_window_predictions, merge_window_rows, split_windows

__all__ = [
    "LabeledSpan",
    "InvalidGoldSequence",
    "LinearChainCRF",
    "NEG_INF",
    "crf_nll",
    "viterbi_decode",
    "HashTokenEncoder",
    "TokenEncoder",
    "stable_bucket",
    "INFERENCE_SHIFT",
    "INIT_NON_O_BIAS",
    "SeqTrainConfig",
    "SequenceTagger",
    "TrainingReport",
    "apply_inference_shift",
    "label_article",
    "load_sequence_labeler",
    "save_sequence_labeler",
    "train_sequence_labeler",
    "MERGE_THRESHOLD",
    "STOPWORDS",
    "filter_spans",
    "merge_spans",
    "stopwords_for",
    "TokenWindow",
    "merge_window_predictions",
    "merge_window_rows",
    "split_windows",
]
