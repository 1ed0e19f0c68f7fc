"""Training-data variants: propagate gold roles to co-referent surface
mentions, and mark remaining named entities as Unknown.

Aliasing is purely surface-form based: normalized equality, token-subset
containment ("Volodymyr Zelensky" ~ "Zelensky"), or acronym expansion
("UN" ~ "United Nations"). No true coreference resolution.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from .corpus import ArticleDocument, GoldAnnotation, Token, tokenize
from .taxonomy import FineRole, MainRole
from .textnorm import is_acronym, normalize_text

NerProvider = Callable[[str], list[tuple[int, int]]]


@dataclass
class AliasCluster:
    canonical: str
    members: set[str]
    main_role: MainRole
    fine_roles: frozenset[FineRole]

    def role_key(self) -> tuple:
        return (self.main_role, self.fine_roles)


@dataclass
class AugmentationLog:
    """Per-document audit trail for the propagation/Unknown variants."""

    clusters: list[dict] = field(default_factory=list)
    conflicting_clusters: int = 0
    added_propagated: int = 0
    added_unknown: int = 0
    skipped_ambiguous: int = 0

    def as_dict(self) -> dict:
        return {
            "clusters": self.clusters,
            "conflicting_clusters": self.conflicting_clusters,
            "added_propagated": self.added_propagated,
            "added_unknown": self.added_unknown,
            "skipped_ambiguous": self.skipped_ambiguous,
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.as_dict(), indent=2))


def alias_related(a: str, b: str) -> bool:
    """True iff the two mentions are surface-form aliases."""
    na, nb = normalize_text(a), normalize_text(b)
    if not na or not nb:
        return False
    if na == nb:
        return True
    ta, tb = set(na.split()), set(nb.split())
    if ta and tb and (ta <= tb or tb <= ta):
        return True
    return is_acronym(a, b)


def build_alias_clusters(
    annotations: Sequence[GoldAnnotation], log: AugmentationLog | None = None
) -> list[AliasCluster]:
    """Union mentions related by the alias rules; clusters whose gold seeds
    disagree on roles are flagged and excluded from propagation."""
    mentions = sorted({a.mention for a in annotations})
    parent = list(range(len(mentions)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(mentions)):
        for j in range(i + 1, len(mentions)):
            if alias_related(mentions[i], mentions[j]):
                parent[find(i)] = find(j)

    groups: dict[int, list[str]] = {}
    for i, mention in enumerate(mentions):
        groups.setdefault(find(i), []).append(mention)

    clusters: list[AliasCluster] = []
    for members in groups.values():
        seeds = [a for a in annotations if a.mention in set(members)]
        role_keys = {(a.main_role, a.fine_roles) for a in seeds}
        canonical = max(members, key=lambda m: (len(m), m))
        if len(role_keys) != 1:
            if log is not None:
                log.conflicting_clusters += 1
                log.clusters.append(
                    {"canonical": canonical, "members": sorted(members),
                     "conflict": True}
                )
            continue
        main_role, fine_roles = next(iter(role_keys))
        cluster = AliasCluster(
            canonical=canonical,
            members=set(members),
            main_role=main_role,
            fine_roles=fine_roles,
        )
        clusters.append(cluster)
        if log is not None:
            log.clusters.append(
                {
                    "canonical": canonical,
                    "members": sorted(members),
                    "main_role": main_role.value,
                    "fine_roles": sorted(f.value for f in fine_roles),
                }
            )
    return clusters


def _cluster_patterns(cluster: AliasCluster) -> set[str]:
    patterns = set(cluster.members)
    canon_tokens = cluster.canonical.split()
    # Suffix token runs of the canonical form ("Volodymyr Zelensky" -> "Zelensky").
    for k in range(1, len(canon_tokens)):
        patterns.add(" ".join(canon_tokens[k:]))
    return {p for p in patterns if normalize_text(p)}


def _find_occurrences(text: str, pattern: str) -> list[tuple[int, int]]:
    # Word-boundary anchored so "US" never fires inside "USSR".
    rx = re.compile(
        r"(?<!\w)" + re.escape(pattern) + r"(?!\w)", re.IGNORECASE | re.UNICODE
    )
    return [m.span() for m in rx.finditer(text)]


def propagate_labels(
    doc: ArticleDocument,
    gold: Sequence[GoldAnnotation],
    log: AugmentationLog | None = None,
) -> list[GoldAnnotation]:
    """Copy gold roles to further occurrences of clustered mention surfaces.

    Original annotations are preserved verbatim; added spans never overlap
    existing ones; occurrences claimed by clusters with conflicting roles
    are skipped.
    """
    gold = list(gold)
    clusters = build_alias_clusters(gold, log)

    candidates: dict[tuple[int, int], list[AliasCluster]] = {}
    for cluster in clusters:
        for pattern in _cluster_patterns(cluster):
            for span in _find_occurrences(doc.text, pattern):
                claimants = candidates.setdefault(span, [])
                if cluster not in claimants:
                    claimants.append(cluster)

    occupied: list[tuple[int, int]] = [(a.start, a.end) for a in gold]

    def overlaps(span: tuple[int, int]) -> bool:
        return any(span[0] < e and s < span[1] for s, e in occupied)

    added: list[GoldAnnotation] = []
    # Longest span first so a full-name occurrence beats its own suffix match.
    for span in sorted(candidates, key=lambda s: (-(s[1] - s[0]), s[0])):
        if overlaps(span):
            continue
        claimants = candidates[span]
        role_keys = {c.role_key() for c in claimants}
        if len(role_keys) > 1:
            if log is not None:
                log.skipped_ambiguous += 1
            continue
        cluster = claimants[0]
        added.append(
            GoldAnnotation(
                article_id=doc.id,
                mention=doc.text[span[0] : span[1]],
                start=span[0],
                end=span[1],
                main_role=cluster.main_role,
                fine_roles=cluster.fine_roles,
            )
        )
        occupied.append(span)

    if log is not None:
        log.added_propagated += len(added)
    return sorted(gold + added, key=lambda a: (a.start, a.end))


def add_unknown(
    doc: ArticleDocument,
    annotations: Sequence[GoldAnnotation],
    ner_spans: Sequence[tuple[int, int]],
    log: AugmentationLog | None = None,
) -> list[GoldAnnotation]:
    """Label NER spans not covered by any annotation as Unknown (no fine roles)."""
    out = list(annotations)
    occupied = [(a.start, a.end) for a in annotations]
    added = 0
    for start, end in sorted(ner_spans):
        if any(start < e and s < end for s, e in occupied):
            continue
        out.append(
            GoldAnnotation(
                article_id=doc.id,
                mention=doc.text[start:end],
                start=start,
                end=end,
                main_role=MainRole.UNKNOWN,
                fine_roles=frozenset(),
            )
        )
        occupied.append((start, end))
        added += 1
    if log is not None:
        log.added_unknown += added
    return sorted(out, key=lambda a: (a.start, a.end))


def capitalized_entity_spans(text: str) -> list[tuple[int, int]]:
    """Desk-scale NER provider: maximal runs of capitalized tokens, skipping
    sentence-initial single words."""
    tokens = tokenize(text).tokens
    spans: list[tuple[int, int]] = []
    run: list[Token] = []
    for tok in tokens:
        if tok.surface[:1].isupper() and any(c.isalpha() for c in tok.surface):
            run.append(tok)
            continue
        _flush_capitalized_run(text, run, spans)
        run = []
    _flush_capitalized_run(text, run, spans)
    return spans


def _flush_capitalized_run(
    text: str, run: list[Token], spans: list[tuple[int, int]]
) -> None:
    if not run:
        return
    if len(run) == 1 and _is_sentence_initial(text, run[0].start):
        return
    spans.append((run[0].start, run[-1].end))


def _is_sentence_initial(text: str, pos: int) -> bool:
    i = pos - 1
    while i >= 0 and text[i].isspace():
        i -= 1
    return i < 0 or text[i] in ".!?।\"'«»“”‘’"
