"""Token encoders for the sequence labeler.

The production system plugs a pretrained multilingual transformer in through
the same protocol; this package ships the desk-scale deterministic hash
encoder (fixed hash-bucket embeddings for the previous/current/next token,
with the trainable projection living in the tagger head).
"""

from __future__ import annotations

import hashlib
from typing import Protocol, Sequence, runtime_checkable

import numpy as np


@runtime_checkable
class TokenEncoder(Protocol):
    """Maps token windows to per-token feature vectors of fixed dimension."""

    dim: int

    def encode(self, windows: Sequence[Sequence[str]]) -> list[np.ndarray]:
        """One (len(window), dim) float32 array per window."""
        ...


def stable_bucket(token: str, buckets: int) -> int:
    digest = hashlib.blake2b(token.casefold().encode("utf-8"), digest_size=8)
    return int.from_bytes(digest.digest(), "little") % buckets


class HashTokenEncoder:
    """Deterministic hash-bucket embeddings with a one-token context window.

    Each token's feature vector concatenates the bucket embeddings of the
    previous, current, and next surface form, so identical surfaces in
    different local contexts stay distinguishable.
    """

    def __init__(self, dim: int = 48, buckets: int = 4096, seed: int = 0):
        self.slot_dim = dim
        self.buckets = buckets
        self.seed = seed
        self.dim = 3 * dim
        rng = np.random.default_rng(seed)
        self._table = rng.standard_normal((buckets + 1, dim)).astype(np.float32)
        self._boundary = buckets  # row used beyond window edges

    def config(self) -> dict:
        return {
            "type": "hash",
            "dim": self.slot_dim,
            "buckets": self.buckets,
            "seed": self.seed,
        }

    def _rows(self, surfaces: Sequence[str]) -> np.ndarray:
        idx = np.fromiter(
            (stable_bucket(s, self.buckets) for s in surfaces),
            dtype=np.int64,
            count=len(surfaces),
        )
        return self._table[idx]

    def encode(self, windows: Sequence[Sequence[str]]) -> list[np.ndarray]:
        out: list[np.ndarray] = []
        boundary = self._table[self._boundary]
        for window in windows:
            cur = self._rows(window)
            prev = np.vstack([boundary, cur[:-1]]) if len(window) else cur
            nxt = np.vstack([cur[1:], boundary]) if len(window) else cur
            out.append(np.concatenate([prev, cur, nxt], axis=1))
        return out
