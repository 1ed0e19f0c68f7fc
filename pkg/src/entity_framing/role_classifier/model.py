"""Stage 2: taxonomy-masked multi-label training and span classification."""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
import torch
from torch import nn

from ..corpus import ArticleDocument, LabeledSpan
from ..taxonomy import (
    FINE_ROLES,
    FINE_ROLE_INDEX,
    FineRole,
    MainRole,
    N_FINE_ROLES,
    mask_vector,
)
from .decoding import FineRolePrediction, margin_decode
from .features import (
    CONTEXT_WINDOW,
    ClassificationInstance,
    HashTextEncoder,
    TextEncoder,
    instance_from_span,
)
from .loss import compute_class_weights, masked_weighted_bce


@dataclass
class ClsTrainConfig:
    peak_lr: float = 2e-5
    batch_size: int = 3
    epochs: int = 10
    weight_decay: float = 0.01
    early_stopping_patience: int = 3
    seed: int = 42
    context_window: int = CONTEXT_WINDOW
    hidden_size: int = 128

    def validate(self) -> None:
        positive = {
            "peak_lr": self.peak_lr,
            "batch_size": self.batch_size,
            "early_stopping_patience": self.early_stopping_patience,
            "context_window": self.context_window,
            "hidden_size": self.hidden_size,
        }
        for name, value in positive.items():
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")


@dataclass
class ClsTrainingReport:
    selection_metric: str = "dev_micro_f1"
    epochs: list[dict] = field(default_factory=list)
    best_epoch: int | None = None
    stopped_early: bool = False

    def as_dict(self) -> dict:
        return {
            "selection_metric": self.selection_metric,
            "epochs": self.epochs,
            "best_epoch": self.best_epoch,
            "stopped_early": self.stopped_early,
        }


class RoleClassifier(nn.Module):
    """Text-encoder features -> MLP -> 22 logits, masked by the main role."""

    def __init__(
        self,
        encoder: TextEncoder,
        hidden_size: int = 128,
        class_weights: np.ndarray | None = None,
        context_window: int = CONTEXT_WINDOW,
    ):
        super().__init__()
        self.encoder = encoder
        self.context_window = context_window
        self.proj = nn.Linear(encoder.dim, hidden_size)
        self.act = nn.ReLU()
        self.head = nn.Linear(hidden_size, N_FINE_ROLES)
        weights = (
            np.ones(N_FINE_ROLES) if class_weights is None else class_weights
        )
        self.register_buffer(
            "class_weights", torch.as_tensor(weights, dtype=torch.float32)
        )

    def logits(self, instances: Sequence[ClassificationInstance]) -> torch.Tensor:
        feats = self.encoder.encode([inst.rendered() for inst in instances])
        x = torch.from_numpy(np.ascontiguousarray(feats)).float()
        return self.head(self.act(self.proj(x)))

    def probabilities(self, instance: ClassificationInstance) -> np.ndarray:
        """Masked sigmoid probabilities over the 22 fine roles."""
        self.eval()
        with torch.no_grad():
            logits = self.logits([instance])[0]
        probs = torch.sigmoid(logits).double().numpy()
        return probs * mask_vector(instance.main_role)

    def predict(self, instance: ClassificationInstance) -> FineRolePrediction:
        return margin_decode(self.probabilities(instance), instance.main_role)


def classify_span(
    doc: ArticleDocument, span: LabeledSpan, model: RoleClassifier
) -> FineRolePrediction:
    """Fine-grained roles for one stage-1 span (Unknown spans are rejected)."""
    if span.main_role is MainRole.UNKNOWN:
        raise ValueError("stage 1 must filter Unknown spans before classification")
    instance = instance_from_span(doc, span, model.context_window)
    return model.predict(instance)


def _instance_tensors(
    instances: Sequence[ClassificationInstance],
) -> tuple[torch.Tensor, torch.Tensor]:
    targets = torch.zeros(len(instances), N_FINE_ROLES)
    masks = torch.zeros(len(instances), N_FINE_ROLES)
    for i, inst in enumerate(instances):
        masks[i] = torch.from_numpy(mask_vector(inst.main_role).astype(np.float32))
        for role in inst.gold_fine or ():
            targets[i, FINE_ROLE_INDEX[role]] = 1.0
    return targets, masks


def train_role_classifier(
    instances: Sequence[ClassificationInstance],
    encoder: TextEncoder,
    config: ClsTrainConfig | None = None,
    dev_instances: Sequence[ClassificationInstance] | None = None,
) -> tuple[RoleClassifier, ClsTrainingReport]:
    """Minimize the masked weighted BCE; early-stop on dev micro F1 with the
    configured patience and return the best checkpoint."""
    from ..evaluation import classification_metrics  # leaf import

    config = config or ClsTrainConfig()
    config.validate()
    if not instances:
        raise ValueError("empty training set")
    for inst in instances:
        inst.validate()
        if inst.gold_fine is None:
            raise ValueError("training instances need gold fine roles")
    torch.manual_seed(config.seed)
    rng = np.random.default_rng(config.seed)

    label_counts: dict[FineRole, int] = {}
    for inst in instances:
        for role in inst.gold_fine:
            label_counts[role] = label_counts.get(role, 0) + 1
    class_weights = compute_class_weights(label_counts)

    model = RoleClassifier(
        encoder,
        hidden_size=config.hidden_size,
        class_weights=class_weights,
        context_window=config.context_window,
    )
    report = ClsTrainingReport()
    if config.epochs == 0:
        return model, report

    targets, masks = _instance_tensors(instances)
    optimizer = torch.optim.AdamW(
        model.parameters(), lr=config.peak_lr, weight_decay=config.weight_decay
    )

    def dev_f1() -> float:
        data = dev_instances if dev_instances is not None else instances
        preds = [model.predict(inst).role_set() for inst in data]
        golds = [inst.gold_fine for inst in data]
        return classification_metrics(preds, golds).micro_f1

    best_state: dict | None = None
    best_f1 = -1.0
    epochs_since_best = 0
    for epoch in range(config.epochs):
        model.train()
        order = rng.permutation(len(instances))
        losses: list[float] = []
        for b in range(0, len(order), config.batch_size):
            idx = order[b : b + config.batch_size]
            batch = [instances[i] for i in idx]
            optimizer.zero_grad()
            loss = masked_weighted_bce(
                model.logits(batch),
                targets[idx],
                masks[idx],
                weights=model.class_weights,
            )
            if not torch.isfinite(loss):
                raise RuntimeError(f"non-finite loss at epoch {epoch}, batch {b}")
            loss.backward()
            optimizer.step()
            losses.append(float(loss.detach()))

        f1 = dev_f1()
        report.epochs.append(
            {"epoch": epoch, "train_loss": float(np.mean(losses)), "dev_micro_f1": f1}
        )
        if f1 > best_f1:
            best_f1 = f1
            best_state = copy.deepcopy(model.state_dict())
            report.best_epoch = epoch
            epochs_since_best = 0
        else:
            epochs_since_best += 1
            if epochs_since_best >= config.early_stopping_patience:
                report.stopped_early = True
                break

    if best_state is not None:
        model.load_state_dict(best_state)
    model.eval()
    return model, report


# ---------------------------------------------------------------------------
# Checkpoints and prediction serialization

def save_role_classifier(model: RoleClassifier, directory: str | Path) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    if not isinstance(model.encoder, HashTextEncoder):
        raise ValueError("only hash-encoder models support directory checkpoints")
    config = {
        "hidden_size": model.proj.out_features,
        "context_window": model.context_window,
        "encoder": model.encoder.config(),
    }
    (directory / "config.json").write_text(json.dumps(config, indent=2))
    (directory / "class_weights.json").write_text(
        json.dumps(
            {f.value: float(w) for f, w in zip(FINE_ROLES, model.class_weights)},
            indent=2,
        )
    )
    torch.save(model.state_dict(), directory / "weights.pt")


def load_role_classifier(directory: str | Path) -> RoleClassifier:
    directory = Path(directory)
    config = json.loads((directory / "config.json").read_text())
    enc_cfg = config["encoder"]
    if enc_cfg.get("type") != "hash_text":
        raise ValueError(f"unsupported encoder type {enc_cfg.get('type')!r}")
    encoder = HashTextEncoder(
        dim=enc_cfg["dim"], buckets=enc_cfg["buckets"], seed=enc_cfg["seed"]
    )
    model = RoleClassifier(
        encoder,
        hidden_size=config["hidden_size"],
        context_window=config["context_window"],
    )
    model.load_state_dict(torch.load(directory / "weights.pt", weights_only=True))
    model.eval()
    return model


def prediction_record(
    article_id: str, span: LabeledSpan, prediction: FineRolePrediction
) -> dict:
    """The JSON wire record for one classified mention."""
    return {
        "article_id": article_id,
        "start": span.start,
        "end": span.end,
        "main_role": span.main_role.value,
        "fine_roles": prediction.as_payload(),
    }
