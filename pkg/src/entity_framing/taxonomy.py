"""The fixed two-level narrative-role taxonomy: 3 main roles, 22 fine-grained.

The global fine-role ordering (Protagonist children, then Antagonist, then
Innocent) is the label index space used everywhere: loss masks, classifier
logits, serialization, and the web UI all rely on it being stable.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable

import numpy as np


class TaxonomyError(ValueError):
    """A role name or role assignment violates the taxonomy."""


class MainRole(str, Enum):
    PROTAGONIST = "Protagonist"
    ANTAGONIST = "Antagonist"
    INNOCENT = "Innocent"
    # Coarse-only auxiliary class used by the Unknown augmentation variant;
    # it has no fine-grained children and never appears in classifier masks.
    UNKNOWN = "Unknown"

    def __str__(self) -> str:  # serialize as the plain role name
        return self.value


class FineRole(str, Enum):
    # Protagonist
    GUARDIAN = "Guardian"
    MARTYR = "Martyr"
    PEACEMAKER = "Peacemaker"
    REBEL = "Rebel"
    UNDERDOG = "Underdog"
    VIRTUOUS = "Virtuous"
    # Antagonist
    INSTIGATOR = "Instigator"
    CONSPIRATOR = "Conspirator"
    TYRANT = "Tyrant"
    FOREIGN_ADVERSARY = "Foreign Adversary"
    TRAITOR = "Traitor"
    SPY = "Spy"
    SABOTEUR = "Saboteur"
    CORRUPT = "Corrupt"
    INCOMPETENT = "Incompetent"
    TERRORIST = "Terrorist"
    DECEIVER = "Deceiver"
    BIGOT = "Bigot"
    # Innocent
    FORGOTTEN = "Forgotten"
    EXPLOITED = "Exploited"
    VICTIM = "Victim"
    SCAPEGOAT = "Scapegoat"

    def __str__(self) -> str:
        return self.value


CANONICAL_MAIN_ROLES: tuple[MainRole, ...] = (
    MainRole.PROTAGONIST,
    MainRole.ANTAGONIST,
    MainRole.INNOCENT,
)

FINE_ROLES: tuple[FineRole, ...] = tuple(FineRole)
N_FINE_ROLES = len(FINE_ROLES)

_CHILDREN: dict[MainRole, tuple[FineRole, ...]] = {
    MainRole.PROTAGONIST: FINE_ROLES[0:6],
    MainRole.ANTAGONIST: FINE_ROLES[6:18],
    MainRole.INNOCENT: FINE_ROLES[18:22],
    MainRole.UNKNOWN: (),
}

_PARENT: dict[FineRole, MainRole] = {
    fine: main for main, fines in _CHILDREN.items() for fine in fines
}

FINE_ROLE_INDEX: dict[FineRole, int] = {f: i for i, f in enumerate(FINE_ROLES)}


def parse_main_role(name: str | MainRole) -> MainRole:
    if isinstance(name, MainRole):
        return name
    try:
        return MainRole(name)
    except ValueError:
        raise TaxonomyError(f"unknown main role: {name!r}") from None


def parse_fine_role(name: str | FineRole) -> FineRole:
    if isinstance(name, FineRole):
        return name
    try:
        return FineRole(name)
    except ValueError:
        raise TaxonomyError(f"unknown fine role: {name!r}") from None


def fine_roles_of(main: MainRole | str) -> list[FineRole]:
    """Children of a main role in global order; Unknown has none."""
    return list(_CHILDREN[parse_main_role(main)])


def main_of(fine: FineRole | str) -> MainRole:
    """The unique parent of a fine-grained role."""
    return _PARENT[parse_fine_role(fine)]


def mask_vector(main: MainRole | str) -> np.ndarray:
    """Length-22 binary vector with ones at the main role's children."""
    mask = np.zeros(N_FINE_ROLES, dtype=np.int64)
    for fine in _CHILDREN[parse_main_role(main)]:
        mask[FINE_ROLE_INDEX[fine]] = 1
    return mask


def validate_assignment(
    main: MainRole | str, fines: Iterable[FineRole | str]
) -> tuple[MainRole, frozenset[FineRole]]:
    """Check that every fine role is a child of `main` and the set is non-empty."""
    main = parse_main_role(main)
    fine_set = frozenset(parse_fine_role(f) for f in fines)
    if not fine_set:
        raise TaxonomyError(f"empty fine-role set for main role {main}")
    violating = sorted(f.value for f in fine_set if _PARENT.get(f) != main)
    if violating:
        raise TaxonomyError(
            f"fine roles {violating} do not belong to main role {main}"
        )
    return main, fine_set


def taxonomy_as_dict() -> dict[str, list[str]]:
    """Static main -> ordered fine-role-name mapping (the webapp's taxonomy JSON)."""
    return {
        main.value: [f.value for f in _CHILDREN[main]]
        for main in CANONICAL_MAIN_ROLES
    }
