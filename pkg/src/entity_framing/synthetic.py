"""Deterministic synthetic corpora for desk-scale training and tests.

Every fine-grained role gets a pool of invented entity names and a cue
phrase with distinctive vocabulary, so tiny hash-feature models can overfit
the generated articles and classification instances.
"""

from __future__ import annotations

import itertools

import numpy as np

from .corpus import ArticleDocument, GoldAnnotation
from .role_classifier.features import ClassificationInstance
from .taxonomy import FINE_ROLES, FineRole, main_of

CUE_PHRASES: dict[FineRole, str] = {
    FineRole.GUARDIAN: "shielded refugees from the shelling",
    FineRole.MARTYR: "died defending the besieged town",
    FineRole.PEACEMAKER: "brokered a ceasefire between the factions",
    FineRole.REBEL: "defied the regional directorate openly",
    FineRole.UNDERDOG: "fought the lawsuit with no funding",
    FineRole.VIRTUOUS: "returned the missing funds untouched",
    FineRole.INSTIGATOR: "incited the riots near the depot",
    FineRole.CONSPIRATOR: "plotted secretly with offshore brokers",
    FineRole.TYRANT: "crushed dissent across the province",
    FineRole.FOREIGN_ADVERSARY: "massed troops along the disputed border",
    FineRole.TRAITOR: "leaked the garrison plans to rivals",
    FineRole.SPY: "passed encrypted files to foreign handlers",
    FineRole.SABOTEUR: "disabled the pipeline valves overnight",
    FineRole.CORRUPT: "pocketed bribes from road contractors",
    FineRole.INCOMPETENT: "botched the evacuation rollout badly",
    FineRole.TERRORIST: "bombed the crowded rail station",
    FineRole.DECEIVER: "falsified the casualty reports",
    FineRole.BIGOT: "vilified minority workers on air",
    FineRole.FORGOTTEN: "waited unheard in the transit camps",
    FineRole.EXPLOITED: "toiled unpaid in the copper mines",
    FineRole.VICTIM: "lost everything in the missile strikes",
    FineRole.SCAPEGOAT: "was blamed for the power grid failure",
}

FILLER_SENTENCES = (
    "The committee met again on Tuesday.",
    "Officials released a short statement.",
    "Regional markets stayed mostly flat.",
    "The weather delayed several flights.",
    "A new survey will be published soon.",
)

_FIRST = (
    "Maren", "Ilka", "Dovan", "Petra", "Soren", "Alda", "Rustam", "Vela",
    "Otso", "Nadia", "Kiran", "Zofia", "Bora", "Elio", "Tamsin", "Yaro",
    "Selm", "Orla", "Davit", "Runa", "Casso", "Mira",
)
_LAST = (
    "Volt", "Ardenne", "Kestrel", "Marun", "Oblak", "Ferro", "Stanev",
    "Quill", "Harmaa", "Petrov", "Saule", "Drav", "Lindqvist", "Moreno",
    "Talvik", "Zhurov", "Accord", "Benedek", "Chandra", "Ostrov", "Vane",
    "Rekka",
)


def entity_pool(per_role: int = 2) -> dict[FineRole, list[str]]:
    """Unique two-token entity names per fine role, deterministic."""
    pool: dict[FineRole, list[str]] = {}
    for batch, (i, role) in itertools.product(
        range(per_role), enumerate(FINE_ROLES)
    ):
        first = _FIRST[(i + 7 * batch) % len(_FIRST)]
        last = _LAST[(i + 12 * batch) % len(_LAST)]
        # Numeric suffix guarantees no surface collides across roles.
        pool.setdefault(role, []).append(f"{first} {last}-{batch}{i:02d}")
    return pool


def make_corpus(
    n_articles: int = 20,
    seed: int = 7,
    entities_per_article: tuple[int, int] = (2, 4),
    mentions_per_entity: tuple[int, int] = (1, 2),
) -> list[tuple[ArticleDocument, list[GoldAnnotation]]]:
    """Synthetic labeled articles with token-aligned gold spans."""
    rng = np.random.default_rng(seed)
    pool = entity_pool()
    roles = list(FINE_ROLES)
    corpus: list[tuple[ArticleDocument, list[GoldAnnotation]]] = []
    for idx in range(n_articles):
        parts: list[str] = []
        anns: list[GoldAnnotation] = []
        article_id = f"EN_synth_{idx}.txt"
        pos = 0

        def push(sentence: str) -> None:
            nonlocal pos
            parts.append(sentence)
            pos += len(sentence) + 1  # joined with a single space

        n_entities = int(rng.integers(entities_per_article[0], entities_per_article[1] + 1))
        chosen = rng.choice(len(roles), size=n_entities, replace=False)
        push(FILLER_SENTENCES[int(rng.integers(len(FILLER_SENTENCES)))])
        for role_i in chosen:
            role = roles[int(role_i)]
            name = pool[role][int(rng.integers(len(pool[role])))]
            n_mentions = int(
                rng.integers(mentions_per_entity[0], mentions_per_entity[1] + 1)
            )
            for _ in range(n_mentions):
                sentence = f"{name} {CUE_PHRASES[role]}."
                anns.append(
                    GoldAnnotation(
                        article_id=article_id,
                        mention=name,
                        start=pos,
                        end=pos + len(name),
                        main_role=main_of(role),
                        fine_roles=frozenset({role}),
                    )
                )
                push(sentence)
        text = " ".join(parts)
        doc = ArticleDocument(id=article_id, text=text, language="en")
        for ann in anns:
            ann.validate(doc)
        corpus.append((doc, anns))
    return corpus


def make_instances(
    n_instances: int = 200, seed: int = 11
) -> list[ClassificationInstance]:
    """Separable classification instances: cue vocabulary determines the role."""
    rng = np.random.default_rng(seed)
    pool = entity_pool()
    out: list[ClassificationInstance] = []
    for i in range(n_instances):
        role = FINE_ROLES[i % len(FINE_ROLES)]
        name = pool[role][int(rng.integers(len(pool[role])))]
        filler = FILLER_SENTENCES[int(rng.integers(len(FILLER_SENTENCES)))]
        out.append(
            ClassificationInstance(
                mention=name,
                left_context=f"{filler} Witnesses said that",
                right_context=f"{CUE_PHRASES[role]} according to the report.",
                main_role=main_of(role),
                gold_fine=frozenset({role}),
                language="en",
            )
        )
    return out
