"""Overlapping token windows over long articles and window-vote merging."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..corpus import Tokenization, repair_bio


@dataclass(frozen=True)
class TokenWindow:
    """Half-open token-index range [start, end) into the document."""

    start: int
    end: int

    def __len__(self) -> int:
        return self.end - self.start


def split_windows(
    tok: Tokenization, max_len: int = 1024, overlap: int = 256
) -> list[TokenWindow]:
    """Windows starting at multiples of (max_len - overlap); the final window
    is clipped to the document end, and every token lands in >= 1 window."""
    if not (max_len > overlap >= 0):
        raise ValueError(f"need max_len > overlap >= 0, got {max_len}, {overlap}")
    n = len(tok)
    if n == 0:
        return []
    step = max_len - overlap
    windows: list[TokenWindow] = []
    start = 0
    while True:
        end = min(start + max_len, n)
        windows.append(TokenWindow(start, end))
        if end == n:
            return windows
        start += step


def merge_window_predictions(
    window_tags: Sequence[Sequence[str]],
    windows: Sequence[TokenWindow],
    n_tokens: int,
) -> list[str]:
    """Document-level tags: each token takes the prediction from the window
    where it sits farthest from either edge; orphan I tags are repaired."""
    if len(window_tags) != len(windows):
        raise ValueError("one tag sequence per window required")
    tags: list[str | None] = [None] * n_tokens
    best_depth = [-1] * n_tokens
    for tag_seq, window in zip(window_tags, windows):
        if len(tag_seq) != len(window):
            raise ValueError("window tag length mismatch")
        for offset, tag in enumerate(tag_seq):
            pos = window.start + offset
            depth = min(pos - window.start, window.end - pos)
            if depth > best_depth[pos]:
                best_depth[pos] = depth
                tags[pos] = tag
    if any(t is None for t in tags):
        raise ValueError("windows do not cover all tokens")
    return repair_bio(tags)


def merge_window_rows(
    window_rows: Sequence[Sequence[float]] | Sequence,
    windows: Sequence[TokenWindow],
    n_tokens: int,
) -> list:
    """Same farthest-from-edge vote for per-token payloads (e.g. marginals)."""
    rows: list = [None] * n_tokens
    best_depth = [-1] * n_tokens
    for payload, window in zip(window_rows, windows):
        for offset in range(len(window)):
            pos = window.start + offset
            depth = min(pos - window.start, window.end - pos)
            if depth > best_depth[pos]:
                best_depth[pos] = depth
                rows[pos] = payload[offset]
    return rows
