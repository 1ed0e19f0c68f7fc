"""Chance-level baselines for fine-grained role prediction.

All three sample the per-instance label count k from the empirical training
distribution, then pick roles: uniformly at random, always the top-k most
frequent, or frequency-weighted without replacement. Fixed seeds make every
baseline bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Iterable, Mapping, Sequence

import numpy as np

from ..taxonomy import FINE_ROLES, FINE_ROLE_INDEX, FineRole, N_FINE_ROLES


@dataclass(frozen=True)
class LabelCountDistribution:
    """P(k) over labels-per-instance plus marginal per-role counts."""

    k_values: tuple[int, ...]
    k_probs: tuple[float, ...]
    marginal_counts: tuple[float, ...]  # length 22, global role order

    def __post_init__(self) -> None:
        if not self.k_values or min(self.k_values) < 1:
            raise ValueError("label-count support must be non-empty with k >= 1")
        if abs(sum(self.k_probs) - 1.0) > 1e-9:
            raise ValueError("label-count probabilities must sum to 1")

    def probability_of(self, k: int) -> float:
        try:
            return self.k_probs[self.k_values.index(k)]
        except ValueError:
            return 0.0

    def sample_k(self, rng: np.random.Generator) -> int:
        k = int(rng.choice(self.k_values, p=self.k_probs))
        return min(k, N_FINE_ROLES)

    def marginal_array(self) -> np.ndarray:
        return np.asarray(self.marginal_counts, dtype=np.float64)

    def as_dict(self) -> dict:
        return {
            "k_probs": {str(k): p for k, p in zip(self.k_values, self.k_probs)},
            "marginal_counts": {
                f.value: c for f, c in zip(FINE_ROLES, self.marginal_counts)
            },
        }


def fit_label_count_distribution(
    gold_sets: Iterable[Collection[FineRole]],
) -> LabelCountDistribution:
    """Empirical P(k) and marginal role frequencies from training label sets.

    Sets without fine roles (Unknown augmentation rows) are ignored.
    """
    k_counts: dict[int, int] = {}
    marginals = np.zeros(N_FINE_ROLES, dtype=np.float64)
    total = 0
    for roles in gold_sets:
        roles = frozenset(roles)
        if not roles:
            continue
        total += 1
        k_counts[len(roles)] = k_counts.get(len(roles), 0) + 1
        for role in roles:
            marginals[FINE_ROLE_INDEX[role]] += 1
    if total == 0:
        raise ValueError("no labeled instances to fit the distribution from")
    ks = sorted(k_counts)
    return LabelCountDistribution(
        k_values=tuple(ks),
        k_probs=tuple(k_counts[k] / total for k in ks),
        marginal_counts=tuple(marginals),
    )


def _as_freq_array(freqs: Mapping[FineRole, float] | Sequence[float] | np.ndarray) -> np.ndarray:
    if isinstance(freqs, Mapping):
        arr = np.zeros(N_FINE_ROLES, dtype=np.float64)
        for role, value in freqs.items():
            arr[FINE_ROLE_INDEX[role]] = value
        return arr
    arr = np.asarray(freqs, dtype=np.float64)
    if arr.shape != (N_FINE_ROLES,):
        raise ValueError(f"expected {N_FINE_ROLES} frequencies, got {arr.shape}")
    return arr


def random_baseline(
    dist: LabelCountDistribution, n_instances: int, seed: int
) -> list[frozenset[FineRole]]:
    """k from the count distribution, then k distinct roles uniformly."""
    rng = np.random.default_rng(seed)
    out: list[frozenset[FineRole]] = []
    for _ in range(n_instances):
        k = dist.sample_k(rng)
        picks = rng.choice(N_FINE_ROLES, size=k, replace=False)
        out.append(frozenset(FINE_ROLES[int(i)] for i in picks))
    return out


def topk_baseline(
    dist: LabelCountDistribution,
    freqs: Mapping[FineRole, float] | Sequence[float] | np.ndarray,
    n_instances: int,
    seed: int,
) -> list[frozenset[FineRole]]:
    """k from the count distribution, always the k most frequent roles
    (frequency ties broken by global role order)."""
    arr = _as_freq_array(freqs)
    ranked = sorted(range(N_FINE_ROLES), key=lambda i: (-arr[i], i))
    rng = np.random.default_rng(seed)
    out: list[frozenset[FineRole]] = []
    for _ in range(n_instances):
        k = dist.sample_k(rng)
        out.append(frozenset(FINE_ROLES[i] for i in ranked[:k]))
    return out


def freq_weighted_baseline(
    dist: LabelCountDistribution,
    freqs: Mapping[FineRole, float] | Sequence[float] | np.ndarray,
    n_instances: int,
    seed: int,
) -> list[frozenset[FineRole]]:
    """k distinct roles per instance, drawn without replacement with
    probability proportional to marginal frequency."""
    arr = _as_freq_array(freqs)
    if arr.sum() <= 0:
        raise ValueError("all-zero label frequencies")
    p = arr / arr.sum()
    nonzero = int(np.count_nonzero(p))
    rng = np.random.default_rng(seed)
    out: list[frozenset[FineRole]] = []
    for _ in range(n_instances):
        k = min(dist.sample_k(rng), nonzero)
        picks = rng.choice(N_FINE_ROLES, size=k, replace=False, p=p)
        out.append(frozenset(FINE_ROLES[int(i)] for i in picks))
    return out
