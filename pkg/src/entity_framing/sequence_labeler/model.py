"""Stage 1: windowed emission scoring, CRF training, and article labeling."""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
import torch
from torch import nn

from ..corpus import (
    ArticleDocument,
    GoldAnnotation,
    LabeledSpan,
    TAG_O,
    Tokenization,
    bio_tags,
    to_bio,
    tokenize,
    spans_from_bio,
)
from ..taxonomy import MainRole
from .crf import LinearChainCRF
from .encoder import HashTokenEncoder, TokenEncoder
from .postprocess import filter_spans, merge_spans
from .windows import TokenWindow, merge_window_predictions, merge_window_rows, split_windows

INIT_NON_O_BIAS = 0.2
INFERENCE_SHIFT = 1.0


@dataclass
class SeqTrainConfig:
    epochs: int = 20
    peak_lr: float = 1e-5
    batch_size: int = 2
    non_o_loss_weight: float = 2.0
    dropout: float = 0.1
    window: int = 1024
    stride_overlap: int = 256
    warmup_fraction: float = 0.1
    weight_decay: float = 0.01
    hidden_size: int = 128
    seed: int = 0
    selection_metric: str = "dev_dedup_micro_f1"

    def validate(self) -> None:
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        positive = {
            "peak_lr": self.peak_lr,
            "batch_size": self.batch_size,
            "non_o_loss_weight": self.non_o_loss_weight,
            "window": self.window,
            "hidden_size": self.hidden_size,
        }
        for name, value in positive.items():
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
        if not (0 <= self.stride_overlap < self.window):
            raise ValueError("need 0 <= stride_overlap < window")
        if not (0 <= self.dropout < 1):
            raise ValueError("dropout must be in [0, 1)")


@dataclass
class TrainingReport:
    selection_metric: str
    epochs: list[dict] = field(default_factory=list)
    best_epoch: int | None = None

    def as_dict(self) -> dict:
        return {
            "selection_metric": self.selection_metric,
            "epochs": self.epochs,
            "best_epoch": self.best_epoch,
        }


def apply_inference_shift(
    emissions: torch.Tensor | np.ndarray, shift: float = INFERENCE_SHIFT
) -> torch.Tensor | np.ndarray:
    """Add `shift` to every non-O logit (column 0 is O and stays unchanged)."""
    if isinstance(emissions, torch.Tensor):
        shifted = emissions.clone()
        shifted[:, 1:] += shift
        return shifted
    shifted = np.array(emissions, copy=True)
    shifted[:, 1:] += shift
    return shifted


class SequenceTagger(nn.Module):
    """Encoder features -> MLP emission head -> linear-chain CRF."""

    def __init__(
        self,
        encoder: TokenEncoder,
        unknown_variant: bool = False,
        hidden_size: int = 128,
        dropout: float = 0.1,
        init_bias: float = INIT_NON_O_BIAS,
        inference_shift: float = INFERENCE_SHIFT,
        window: int = 1024,
        stride_overlap: int = 256,
    ):
        super().__init__()
        self.encoder = encoder
        self.unknown_variant = unknown_variant
        self.tags = bio_tags(unknown_variant)
        self.inference_shift = inference_shift
        self.window = window
        self.stride_overlap = stride_overlap
        self.proj = nn.Linear(encoder.dim, hidden_size)
        self.act = nn.Tanh()
        self.dropout = nn.Dropout(dropout)
        self.head = nn.Linear(hidden_size, len(self.tags))
        with torch.no_grad():
            self.head.bias.zero_()
            self.head.bias[1:] += init_bias  # class-imbalance prior on non-O
        self.crf = LinearChainCRF(self.tags)

    def emissions(self, features: np.ndarray) -> torch.Tensor:
        x = torch.from_numpy(np.ascontiguousarray(features)).float()
        return self.head(self.dropout(self.act(self.proj(x))))

    def decode_window(self, features: np.ndarray) -> tuple[list[str], np.ndarray]:
        """(tags, per-token marginal rows) for one window, inference mode."""
        self.eval()
        with torch.no_grad():
            em = apply_inference_shift(self.emissions(features), self.inference_shift)
        tags = self.crf.viterbi(em)
        marg = self.crf.marginals(em)
        return tags, marg


def label_article(doc: ArticleDocument, model: SequenceTagger) -> list[LabeledSpan]:
    """Tokenize, window, decode, merge, and filter one article into spans."""
    tok = tokenize(doc.text)
    if len(tok) == 0:
        return []
    windows = split_windows(tok, model.window, model.stride_overlap)
    surfaces = tok.surfaces()
    feats = model.encoder.encode([surfaces[w.start : w.end] for w in windows])
    window_tags: list[list[str]] = []
    window_margs: list[np.ndarray] = []
    for f in feats:
        tags, marg = model.decode_window(f)
        window_tags.append(tags)
        window_margs.append(marg)
    tags = merge_window_predictions(window_tags, windows, len(tok))
    marg_rows = merge_window_rows(window_margs, windows, len(tok))
    tag_index = model.crf.tag_index
    confidences = [
        float(marg_rows[i][tag_index[tags[i]]]) for i in range(len(tok))
    ]
    spans = spans_from_bio(tags, tok, doc.text, token_confidences=confidences)
    spans = merge_spans(spans, doc.text)
    spans = filter_spans(spans, doc.language)
    return [s for s in spans if s.main_role is not MainRole.UNKNOWN]


@dataclass
class _TrainWindow:
    surfaces: list[str]
    tags: list[str]
    weight: float
    features: np.ndarray | None = None


def _prepare_windows(
    data: Sequence[tuple[ArticleDocument, Sequence[GoldAnnotation]]],
    config: SeqTrainConfig,
    unknown_variant: bool,
) -> list[_TrainWindow]:
    items: list[_TrainWindow] = []
    for doc, anns in data:
        tok = tokenize(doc.text)
        if len(tok) == 0:
            continue
        if not unknown_variant:
            anns = [a for a in anns if a.main_role is not MainRole.UNKNOWN]
        tags = to_bio(doc, list(anns), tok)
        surfaces = tok.surfaces()
        for w in split_windows(tok, config.window, config.stride_overlap):
            w_tags = tags[w.start : w.end]
            weight = float(
                np.mean([config.non_o_loss_weight if t != TAG_O else 1.0 for t in w_tags])
            )
            items.append(_TrainWindow(surfaces[w.start : w.end], w_tags, weight))
    return items


def _cosine_warmup(step: int, total: int, warmup: int) -> float:
    if total <= 0:
        return 1.0
    if step < warmup:
        return (step + 1) / max(1, warmup)
    progress = (step - warmup) / max(1, total - warmup)
    return 0.5 * (1.0 + math.cos(math.pi * min(1.0, progress)))


def train_sequence_labeler(
    train_data: Sequence[tuple[ArticleDocument, Sequence[GoldAnnotation]]],
    encoder: TokenEncoder,
    config: SeqTrainConfig | None = None,
    dev_data: Sequence[tuple[ArticleDocument, Sequence[GoldAnnotation]]] | None = None,
    unknown_variant: bool = False,
) -> tuple[SequenceTagger, TrainingReport]:
    """Train the stage-1 tagger, selecting the checkpoint with the best dev
    span F1 (deduplicated micro F1 from the evaluation protocol)."""
    from ..evaluation import dedup_prf  # local import: evaluation is a leaf

    config = config or SeqTrainConfig()
    config.validate()
    torch.manual_seed(config.seed)
    rng = np.random.default_rng(config.seed)

    model = SequenceTagger(
        encoder,
        unknown_variant=unknown_variant,
        hidden_size=config.hidden_size,
        dropout=config.dropout,
        window=config.window,
        stride_overlap=config.stride_overlap,
    )
    report = TrainingReport(selection_metric=config.selection_metric)
    items = _prepare_windows(train_data, config, unknown_variant)
    if config.epochs == 0 or not items:
        return model, report

    for item in items:
        item.features = encoder.encode([item.surfaces])[0]

    eval_data = dev_data if dev_data is not None else train_data
    eval_docs = [doc for doc, _ in eval_data]
    eval_golds = [
        [a for a in anns if a.main_role is not MainRole.UNKNOWN]
        for _, anns in eval_data
    ]

    optimizer = torch.optim.AdamW(
        model.parameters(), lr=config.peak_lr, weight_decay=config.weight_decay
    )
    steps_per_epoch = math.ceil(len(items) / config.batch_size)
    total_steps = steps_per_epoch * config.epochs
    scheduler = torch.optim.lr_scheduler.LambdaLR(
        optimizer,
        lambda step: _cosine_warmup(
            step, total_steps, int(config.warmup_fraction * total_steps)
        ),
    )

    best_state: dict | None = None
    best_f1 = -1.0
    for epoch in range(config.epochs):
        model.train()
        order = rng.permutation(len(items))
        losses: list[float] = []
        for b in range(0, len(order), config.batch_size):
            batch = [items[i] for i in order[b : b + config.batch_size]]
            optimizer.zero_grad()
            batch_loss = torch.stack(
                [
                    model.crf.nll(model.emissions(item.features), item.tags)
                    * item.weight
                    for item in batch
                ]
            ).mean()
            if not torch.isfinite(batch_loss):
                raise RuntimeError(
                    f"non-finite loss at epoch {epoch}, batch {b}: {batch_loss}"
                )
            batch_loss.backward()
            optimizer.step()
            scheduler.step()
            losses.append(float(batch_loss.detach()))

        preds = [label_article(doc, model) for doc in eval_docs]
        dev_f1 = dedup_prf(preds, eval_golds).micro.f1
        report.epochs.append(
            {"epoch": epoch, "train_loss": float(np.mean(losses)), "dev_f1": dev_f1}
        )
        if dev_f1 > best_f1:
            best_f1 = dev_f1
            best_state = copy.deepcopy(model.state_dict())
            report.best_epoch = epoch

    if best_state is not None:
        model.load_state_dict(best_state)
    model.eval()
    return model, report


# ---------------------------------------------------------------------------
# Checkpoint directory: config JSON + weights

def save_sequence_labeler(model: SequenceTagger, directory: str | Path) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    if not isinstance(model.encoder, HashTokenEncoder):
        raise ValueError("only hash-encoder models support directory checkpoints")
    config = {
        "unknown_variant": model.unknown_variant,
        "hidden_size": model.proj.out_features,
        "dropout": float(model.dropout.p),
        "inference_shift": model.inference_shift,
        "window": model.window,
        "stride_overlap": model.stride_overlap,
        "encoder": model.encoder.config(),
        "tags": list(model.tags),
    }
    (directory / "config.json").write_text(json.dumps(config, indent=2))
    torch.save(model.state_dict(), directory / "weights.pt")


def load_sequence_labeler(directory: str | Path) -> SequenceTagger:
    directory = Path(directory)
    config = json.loads((directory / "config.json").read_text())
    enc_cfg = config["encoder"]
    if enc_cfg.get("type") != "hash":
        raise ValueError(f"unsupported encoder type {enc_cfg.get('type')!r}")
    encoder = HashTokenEncoder(
        dim=enc_cfg["dim"], buckets=enc_cfg["buckets"], seed=enc_cfg["seed"]
    )
    model = SequenceTagger(
        encoder,
        unknown_variant=config["unknown_variant"],
        hidden_size=config["hidden_size"],
        dropout=config["dropout"],
        inference_shift=config["inference_shift"],
        window=config["window"],
        stride_overlap=config["stride_overlap"],
    )
    model.load_state_dict(torch.load(directory / "weights.pt", weights_only=True))
    model.eval()
    return model
