"""Span-level post-processing: confidence-scaled merging of fragmented
spans and discarding of punctuation/stop-word/too-short spans."""

from __future__ import annotations

from typing import Sequence

from ..corpus import LabeledSpan
from ..textnorm import is_punctuation

MERGE_THRESHOLD = 0.5
MAX_GAP_CHARS = 3
GAP_SCALE = 0.8  # applied whenever the gap is non-empty

# Small bundled stop-word lists per supported language.
STOPWORDS: dict[str, frozenset[str]] = {
    "en": frozenset(
        """a an the and or but if then else of in on at by for with to from
        as is are was were be been being it its this that these those he she
        they we you i his her their our your not no yes do does did done have
        has had will would can could should may might""".split()
    ),
    "bg": frozenset(
        """и в на с за от по до не да се е са бе ще това този тази тези то
        той тя те ние вие аз ми ти си ги им му й ни ви а но или ако като при
        след пред между около защото който която което които""".split()
    ),
    "hi": frozenset(
        """और का की के में से पर को है हैं था थे थी हो ही भी तो यह वह ये वे हम
        आप मैं तुम उनका उनकी उनके इस उस इन उन एक दो नहीं हाँ कि जो जब तब अगर
        लेकिन या क्योंकि साथ बाद पहले""".split()
    ),
    "pt": frozenset(
        """o a os as um uma uns umas de do da dos das em no na nos nas por
        para com sem sob sobre e ou mas se que não sim é são era eram foi
        foram ser sendo ele ela eles elas nós vós eu tu você vocês seu sua
        seus suas este esta isto esse essa isso aquele aquela""".split()
    ),
    "ru": frozenset(
        """и в во не что он на я с со как а то все она так его но да ты к у
        же вы за бы по только ее мне было вот от меня еще нет о из ему теперь
        когда даже ну вдруг ли если уже или ни быть был него до вас нибудь
        опять уж вам ведь там потом себя ничего ей может они тут где есть
        надо ней для мы тебя их чем была сам чтоб без будто чего раз тоже
        себе под будет""".split()
    ),
}


def stopwords_for(language: str | None) -> frozenset[str]:
    if language in STOPWORDS:
        return STOPWORDS[language]
    return frozenset().union(*STOPWORDS.values())


def merge_spans(
    spans: Sequence[LabeledSpan],
    text: str,
    threshold: float = MERGE_THRESHOLD,
) -> list[LabeledSpan]:
    """Merge adjacent same-role spans separated by <= 3 characters when the
    gap-scaled lower confidence clears the threshold.

    Scale factor is 1.0 for a zero-character gap and 0.8 otherwise; the
    merged confidence is the span-length-weighted mean.
    """
    ordered = sorted(spans, key=lambda s: (s.start, s.end))
    merged: list[LabeledSpan] = []
    for span in ordered:
        if merged:
            prev = merged[-1]
            gap = span.start - prev.end
            if span.main_role == prev.main_role and 0 <= gap <= MAX_GAP_CHARS:
                scale = 1.0 if gap == 0 else GAP_SCALE
                if min(prev.confidence, span.confidence) * scale >= threshold:
                    len_a = prev.end - prev.start
                    len_b = span.end - span.start
                    conf = (
                        prev.confidence * len_a + span.confidence * len_b
                    ) / (len_a + len_b)
                    merged[-1] = LabeledSpan(
                        start=prev.start,
                        end=span.end,
                        text=text[prev.start : span.end],
                        main_role=prev.main_role,
                        confidence=conf,
                    )
                    continue
        merged.append(span)
    return merged


def filter_spans(
    spans: Sequence[LabeledSpan], language: str | None = None
) -> list[LabeledSpan]:
    """Drop spans that are all punctuation, a single stop word, or shorter
    than two characters after trimming."""
    stop = stopwords_for(language)
    kept: list[LabeledSpan] = []
    for span in spans:
        trimmed = span.text.strip()
        if len(trimmed) < 2:
            continue
        if all(is_punctuation(c) or c.isspace() for c in trimmed):
            continue
        if trimmed.lower() in stop:
            continue
        kept.append(span)
    return kept
