"""Surface-form normalization shared by matching, aliasing, and dedup."""

from __future__ import annotations

import unicodedata


def is_punctuation(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def normalize_text(s: str) -> str:
    """Lowercase, strip punctuation, collapse whitespace runs, trim.

    "U.S.A. " -> "usa", "  United   Nations" -> "united nations".
    """
    chars = (ch for ch in s.lower() if not is_punctuation(ch))
    return " ".join("".join(chars).split())


def is_acronym(a: str, b: str) -> bool:
    """True iff one string is the ordered-initials acronym of the other.

    The expanded side must have at least two tokens after normalization;
    comparison is case-insensitive and ignores punctuation ("U.N." works).
    """
    na, nb = normalize_text(a), normalize_text(b)
    if not na or not nb:
        return False
    return _acronym_of(na, nb) or _acronym_of(nb, na)


def _acronym_of(short: str, long: str) -> bool:
    tokens = long.split()
    if len(tokens) < 2:
        return False
    return short.replace(" ", "") == "".join(t[0] for t in tokens)
