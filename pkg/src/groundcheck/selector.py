"""Split a response into sentences and purge hypotheses unfit for judgment.

The splitter is a deterministic rule-based segmenter (terminators ``.!?``
and newline, abbreviation- and decimal-aware) so runs are reproducible
without external tooling. Purging drops sentences that carry no factual
content to judge; short responses bypass purging entirely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .model import Hypothesis, RawResponse

DEFAULT_ABBREVIATIONS = frozenset(
    {
        "dr.", "mr.", "mrs.", "ms.", "prof.", "sr.", "jr.", "st.", "rev.",
        "gen.", "sgt.", "capt.", "lt.", "col.", "gov.", "sen.", "rep.",
        "u.s.", "u.s.a.", "u.k.", "u.n.", "e.g.", "i.e.", "etc.", "vs.",
        "cf.", "al.", "inc.", "ltd.", "co.", "corp.", "no.", "fig.", "eq.",
        "dept.", "est.", "approx.", "jan.", "feb.", "mar.", "apr.", "jun.",
        "jul.", "aug.", "sep.", "sept.", "oct.", "nov.", "dec.", "a.m.", "p.m.",
    }
)

_TERMINATORS = ".!?"
# closing punctuation that stays attached to the sentence it ends
_TRAILERS = "\"')]}’”"

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)
# short label ending in a colon, e.g. "Summary:" or "Final Answer:"
_BOILERPLATE_RE = re.compile(r"^[A-Za-z][A-Za-z ]{0,30}:$")


@dataclass(frozen=True)
class SelectorConfig:
    min_tokens: int = 3
    bypass_max_sentences: int = 1
    abbreviation_list: frozenset[str] = DEFAULT_ABBREVIATIONS
    purge_enabled: bool = True

    def __post_init__(self) -> None:
        if self.min_tokens < 1:
            raise ValueError("min_tokens must be >= 1")
        if self.bypass_max_sentences < 0:
            raise ValueError("bypass_max_sentences must be >= 0")


def load_abbreviations(path: str | Path) -> frozenset[str]:
    """Load an abbreviation list, one entry per line, case-insensitive."""
    entries = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line:
            entries.add(line.lower())
    return frozenset(entries)


_OPENERS = "\"'([{‘“"


def _is_abbreviation(text: str, dot_index: int, abbreviations: frozenset[str]) -> bool:
    # token = maximal non-whitespace run ending at the period, inclusive
    start = dot_index
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    token = text[start : dot_index + 1].lstrip(_OPENERS)
    return token.lower() in abbreviations


def split_sentences(
    text: str, abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS
) -> tuple[tuple[int, int], ...]:
    """Segment text into ordered, non-overlapping sentence spans.

    Every non-whitespace character lands in exactly one span, so joining
    the spans with the original inter-span whitespace reproduces the
    input. A period inside a decimal number or after a known
    abbreviation does not end a sentence.
    """
    spans: list[tuple[int, int]] = []
    n = len(text)
    start = 0
    i = 0

    def emit(lo: int, hi: int) -> None:
        while lo < hi and text[lo].isspace():
            lo += 1
        while hi > lo and text[hi - 1].isspace():
            hi -= 1
        if lo < hi:
            spans.append((lo, hi))

    while i < n:
        ch = text[i]
        if ch == "\n":
            emit(start, i)
            start = i + 1
            i += 1
            continue
        if ch in _TERMINATORS:
            if ch == "." and 0 < i < n - 1 and text[i - 1].isdigit() and text[i + 1].isdigit():
                i += 1  # decimal point
                continue
            if ch == "." and i + 1 < n and not text[i + 1].isspace():
                i += 1  # mid-token period, e.g. "U.S.A" or a file name
                continue
            if ch == "." and _is_abbreviation(text, i, abbreviations):
                i += 1
                continue
            # absorb runs like "?!" or "..." plus attached closing quotes
            j = i + 1
            while j < n and text[j] in _TERMINATORS:
                j += 1
            while j < n and text[j] in _TRAILERS:
                j += 1
            emit(start, j)
            start = j
            i = j
            continue
        i += 1
    emit(start, n)
    return tuple(spans)


def _alphabetic_token_count(text: str) -> int:
    return sum(1 for tok in _TOKEN_RE.findall(text) if any(c.isalpha() for c in tok))


def _has_alpha(text: str) -> bool:
    return any(c.isalpha() for c in text)


def should_bypass_selection(response: RawResponse, cfg: SelectorConfig) -> bool:
    """Short responses are judged whole: no purging when the sentence count
    is at or below the configured ceiling."""
    return len(response.sentences) <= cfg.bypass_max_sentences


def select_hypotheses(response: RawResponse, cfg: SelectorConfig) -> list[Hypothesis]:
    """Turn every sentence into a hypothesis, purging the unjudgeable ones.

    Purge criteria (skipped with a reason, in this precedence):
    no alphabetic content at all; fewer alphabetic tokens than the floor;
    boilerplate such as a bare "Summary:" header. Purging is disabled
    when the config says so or the response is short enough to bypass.
    """
    purge = cfg.purge_enabled and not should_bypass_selection(response, cfg)
    hypotheses = []
    for index, span in enumerate(response.sentences):
        sentence = response.sentence_text(index)
        skip_reason = None
        if purge:
            if not _has_alpha(sentence):
                skip_reason = "no alphabetic content"
            elif _alphabetic_token_count(sentence) < cfg.min_tokens:
                skip_reason = "below token floor"
            elif _BOILERPLATE_RE.match(sentence.strip()):
                skip_reason = "boilerplate"
        hypotheses.append(
            Hypothesis(
                index=index,
                response_span=span,
                text=sentence,
                selected=skip_reason is None,
                skip_reason=skip_reason,
            )
        )
    return hypotheses
