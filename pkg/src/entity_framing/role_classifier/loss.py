"""Taxonomy-masked, class-weighted multi-label loss and class weights.

Per instance the loss is sum_i BCE(y_i, yhat_i) * w_i * m_i / (sum_i m_i + eps)
with BCE in numerically stable logit form; masked classes contribute exactly
zero, so logits outside the instance's main-role mask never affect the value.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np
import torch

from ..taxonomy import FINE_ROLE_INDEX, FineRole, N_FINE_ROLES

EPSILON = 1e-8


def masked_weighted_bce(
    logits: torch.Tensor,
    targets: torch.Tensor,
    mask: torch.Tensor,
    weights: torch.Tensor | None = None,
    eps: float = EPSILON,
) -> torch.Tensor:
    """Mean over instances of the masked, class-weighted BCE-with-logits.

    Accepts (C,) or (B, C) tensors; targets must lie inside the mask.
    """
    if logits.dim() == 1:
        logits, targets, mask = (
            logits.unsqueeze(0), targets.unsqueeze(0), mask.unsqueeze(0),
        )
    if not torch.isfinite(logits).all():
        raise ValueError("non-finite logits")
    targets = targets.to(logits.dtype)
    mask = mask.to(logits.dtype)
    if bool((targets > mask).any()):
        raise ValueError("gold targets fall outside the taxonomy mask")
    if weights is None:
        weights = torch.ones(logits.shape[-1], dtype=logits.dtype)
    weights = weights.to(logits.dtype)
    if bool((weights <= 0).any()):
        raise ValueError("class weights must be positive")
    # Stable logit-form BCE: max(x,0) - x*y + log(1 + exp(-|x|)).
    bce = (
        torch.clamp(logits, min=0)
        - logits * targets
        + torch.log1p(torch.exp(-torch.abs(logits)))
    )
    per_instance = (bce * weights * mask).sum(dim=-1) / (mask.sum(dim=-1) + eps)
    return per_instance.mean()


def compute_class_weights(label_counts: Mapping[FineRole, int]) -> np.ndarray:
    """w_c = ln(1 + N / count_c), zero counts smoothed to 1, rescaled to mean 1."""
    total = sum(label_counts.values())
    if total <= 0:
        raise ValueError("need a positive total label count")
    counts = np.ones(N_FINE_ROLES, dtype=np.float64)
    for role, count in label_counts.items():
        if count > 0:
            counts[FINE_ROLE_INDEX[role]] = count
    weights = np.log1p(total / counts)
    return weights / weights.mean()
