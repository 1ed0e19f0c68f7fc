"""Margin-based decoding of fine-grained role probabilities.

Keep roles with probability above the floor that also sit within the margin
of the best role; if nothing clears the floor, fall back to the single
argmax so the output is never empty.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..taxonomy import FINE_ROLES, FineRole, MainRole, mask_vector

DECODE_THRESHOLD = 0.01
DECODE_MARGIN = 0.05


@dataclass(frozen=True)
class FineRolePrediction:
    """Non-empty, probability-descending fine-role scores for one mention."""

    roles: tuple[tuple[FineRole, float], ...]
    decode_threshold: float = DECODE_THRESHOLD
    margin: float = DECODE_MARGIN

    def role_set(self) -> frozenset[FineRole]:
        return frozenset(r for r, _ in self.roles)

    def top_probability(self) -> float:
        return self.roles[0][1]

    def as_payload(self) -> list[dict]:
        return [{"role": r.value, "p": round(float(p), 6)} for r, p in self.roles]


def margin_decode(
    probs: np.ndarray,
    main_role: MainRole,
    threshold: float = DECODE_THRESHOLD,
    margin: float = DECODE_MARGIN,
) -> FineRolePrediction:
    probs = np.asarray(probs, dtype=np.float64)
    if probs.shape != (len(FINE_ROLES),):
        raise ValueError(f"expected a length-{len(FINE_ROLES)} probability vector")
    mask = mask_vector(main_role)
    if not mask.any():
        raise ValueError(f"main role {main_role} has no fine-grained children")
    masked = probs * mask
    candidates = np.flatnonzero(masked > threshold)
    if candidates.size:
        best = masked[candidates].max()
        keep = [int(i) for i in candidates if masked[i] >= best - margin]
    else:
        keep = [int(np.flatnonzero(mask)[np.argmax(masked[mask == 1])])]
    keep.sort(key=lambda i: (-masked[i], i))
    return FineRolePrediction(
        roles=tuple((FINE_ROLES[i], float(masked[i])) for i in keep),
        decode_threshold=threshold,
        margin=margin,
    )
