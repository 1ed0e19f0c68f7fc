"""First-order linear-chain CRF over BIO tags with hard transition constraints.

Scores: score(y) = start[y_0] + sum_t emissions[t, y_t]
                 + sum_t transitions[y_{t-1}, y_t] + end[y_L].
Training loss is nll = log Z - score(gold) with Z from the log-space forward
algorithm. Decoding and marginals run in numpy: np.argmax breaks ties at the
lowest tag index, which is the documented backtracking tie rule.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
import torch
from torch import nn

from ..corpus import TAG_O, is_valid_bio

# Forbidden-transition score. Finite so autograd never sees inf arithmetic,
# yet exp(-1e4) underflows to exactly 0.0 in float64, so the forbidden mass
# is identically zero in both the forward algorithm and brute-force sums.
NEG_INF = -1.0e4


class InvalidGoldSequence(ValueError):
    """Training data contained a BIO-invalid gold tag sequence."""


def _allowed_transitions(tags: Sequence[str]) -> tuple[np.ndarray, np.ndarray]:
    """(T, T) transition mask and (T,) start mask; I-X reachable only from
    B-X / I-X, never from the start state."""
    n = len(tags)
    trans = np.ones((n, n), dtype=bool)
    start = np.ones(n, dtype=bool)
    for j, to_tag in enumerate(tags):
        if not to_tag.startswith("I-"):
            continue
        role = to_tag[2:]
        start[j] = False
        for i, from_tag in enumerate(tags):
            if from_tag not in (f"B-{role}", f"I-{role}"):
                trans[i, j] = False
    return trans, start


class LinearChainCRF(nn.Module):
    """Transition parameters plus scoring/decoding over a fixed tag set."""

    def __init__(self, tags: Sequence[str]):
        super().__init__()
        if tags[0] != TAG_O:
            raise ValueError("tag order must put O first")
        self.tags = tuple(tags)
        self.tag_index = {t: i for i, t in enumerate(self.tags)}
        n = len(self.tags)
        self.transitions = nn.Parameter(torch.zeros(n, n))
        self.start_transitions = nn.Parameter(torch.zeros(n))
        self.end_transitions = nn.Parameter(torch.zeros(n))
        trans_mask, start_mask = _allowed_transitions(self.tags)
        self.register_buffer("_trans_allowed", torch.from_numpy(trans_mask))
        self.register_buffer("_start_allowed", torch.from_numpy(start_mask))

    @property
    def num_tags(self) -> int:
        return len(self.tags)

    def effective_transitions(self) -> torch.Tensor:
        return torch.where(
            self._trans_allowed, self.transitions,
            torch.full_like(self.transitions, NEG_INF),
        )

    def effective_start(self) -> torch.Tensor:
        return torch.where(
            self._start_allowed, self.start_transitions,
            torch.full_like(self.start_transitions, NEG_INF),
        )

    def sequence_score(
        self, emissions: torch.Tensor, tag_ids: Sequence[int]
    ) -> torch.Tensor:
        trans = self.effective_transitions()
        score = self.effective_start()[tag_ids[0]] + emissions[0, tag_ids[0]]
        for t in range(1, len(tag_ids)):
            score = score + trans[tag_ids[t - 1], tag_ids[t]]
            score = score + emissions[t, tag_ids[t]]
        return score + self.end_transitions[tag_ids[-1]]

    def log_partition(self, emissions: torch.Tensor) -> torch.Tensor:
        trans = self.effective_transitions()
        alpha = self.effective_start() + emissions[0]
        for t in range(1, emissions.shape[0]):
            # alpha[i] + trans[i, j], reduced over i.
            alpha = torch.logsumexp(alpha.unsqueeze(1) + trans, dim=0) + emissions[t]
        return torch.logsumexp(alpha + self.end_transitions, dim=0)

    def nll(
        self,
        emissions: torch.Tensor,
        gold_tags: Sequence[str],
        mask: Sequence[bool] | None = None,
    ) -> torch.Tensor:
        """log Z - score(gold). `mask` flags valid positions; padding must be
        a contiguous suffix and is dropped before scoring."""
        if mask is not None:
            n_valid = int(np.sum(np.asarray(mask, dtype=bool)))
            if n_valid and not all(mask[:n_valid]):
                raise ValueError("padding mask must be a contiguous suffix")
            emissions = emissions[:n_valid]
            gold_tags = list(gold_tags)[:n_valid]
        if len(gold_tags) != emissions.shape[0]:
            raise ValueError(
                f"gold length {len(gold_tags)} != emissions length "
                f"{emissions.shape[0]}"
            )
        if emissions.shape[0] == 0:
            return emissions.new_zeros(())
        if not is_valid_bio(gold_tags):
            raise InvalidGoldSequence(f"gold sequence violates BIO: {gold_tags}")
        tag_ids = [self.tag_index[t] for t in gold_tags]
        return self.log_partition(emissions) - self.sequence_score(emissions, tag_ids)

    # ---- inference (numpy) -------------------------------------------------

    def _numpy_params(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        with torch.no_grad():
            return (
                self.effective_transitions().double().numpy(),
                self.effective_start().double().numpy(),
                self.end_transitions.double().numpy(),
            )

    def viterbi(self, emissions: np.ndarray | torch.Tensor) -> list[str]:
        """Maximum-score BIO-valid tag sequence; ties resolved toward the
        lowest tag index at every backtracking step."""
        em = _as_double(emissions)
        if em.shape[0] == 0:
            return []
        trans, start, end = self._numpy_params()
        L = em.shape[0]
        delta = start + em[0]
        back = np.zeros((L, self.num_tags), dtype=np.int64)
        for t in range(1, L):
            scores = delta[:, None] + trans
            back[t] = np.argmax(scores, axis=0)
            delta = scores[back[t], np.arange(self.num_tags)] + em[t]
        last = int(np.argmax(delta + end))
        path = [last]
        for t in range(L - 1, 0, -1):
            path.append(int(back[t, path[-1]]))
        return [self.tags[i] for i in reversed(path)]

    def marginals(self, emissions: np.ndarray | torch.Tensor) -> np.ndarray:
        """(L, T) per-token tag posteriors via forward-backward in log space."""
        em = _as_double(emissions)
        L = em.shape[0]
        if L == 0:
            return np.zeros((0, self.num_tags))
        trans, start, end = self._numpy_params()
        log_alpha = np.zeros((L, self.num_tags))
        log_alpha[0] = start + em[0]
        for t in range(1, L):
            log_alpha[t] = (
                _logsumexp_rows(log_alpha[t - 1][:, None] + trans) + em[t]
            )
        log_beta = np.zeros((L, self.num_tags))
        log_beta[-1] = end
        for t in range(L - 2, -1, -1):
            log_beta[t] = _logsumexp_rows(
                (trans + em[t + 1] + log_beta[t + 1]).T
            )
        log_z = _logsumexp(log_alpha[-1] + end)
        return np.exp(log_alpha + log_beta - log_z)


def _as_double(emissions: np.ndarray | torch.Tensor) -> np.ndarray:
    if isinstance(emissions, torch.Tensor):
        return emissions.detach().double().numpy()
    return np.asarray(emissions, dtype=np.float64)


def _logsumexp(x: np.ndarray) -> float:
    m = np.max(x)
    return float(m + np.log(np.sum(np.exp(x - m))))


def _logsumexp_rows(x: np.ndarray) -> np.ndarray:
    # logsumexp over axis 0 of a (T, T) score matrix.
    m = np.max(x, axis=0)
    return m + np.log(np.sum(np.exp(x - m), axis=0))


def crf_nll(
    emissions: torch.Tensor | np.ndarray,
    crf: LinearChainCRF,
    gold_tags: Sequence[str],
    mask: Sequence[bool] | None = None,
) -> torch.Tensor:
    """Negative log-likelihood of a gold tag sequence (non-negative)."""
    if not isinstance(emissions, torch.Tensor):
        emissions = torch.as_tensor(np.asarray(emissions), dtype=torch.float64)
    return crf.nll(emissions, gold_tags, mask=mask)


def viterbi_decode(
    emissions: torch.Tensor | np.ndarray, crf: LinearChainCRF
) -> list[str]:
    return crf.viterbi(emissions)
