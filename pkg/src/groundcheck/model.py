"""Core domain types for grounding verification.

A source text is the premise; each sentence of a model response is a
hypothesis judged against it. Judgments arrive at two levels (whole
sentence, single tagged entity) and are merged into one verdict per
sentence: a sentence is clean only if every judgment votes clean.

All types here are immutable values and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class NliLabel(str, Enum):
    """Three-way natural-language-inference outcome."""

    ENTAILMENT = "entailment"
    CONTRADICTION = "contradiction"
    NEUTRAL = "neutral"


class Judgment(str, Enum):
    """Binary grounding verdict for one hypothesis."""

    HALLUCINATION = "hallucination"
    NON_HALLUCINATION = "non_hallucination"


class DetectionLevel(str, Enum):
    SENTENCE = "sentence"
    ENTITY = "entity"


class EditAction(str, Enum):
    KEPT = "kept"
    REWRITTEN = "rewritten"
    REMOVED = "removed"


class ContractError(ValueError):
    """An operation was called in violation of its stated contract."""


@dataclass(frozen=True)
class SourceText:
    """The grounding document a response must be supported by."""

    id: str
    text: str

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise ValueError("source text must be non-empty")


@dataclass(frozen=True)
class RawResponse:
    """A model response plus its sentence segmentation.

    ``sentences`` holds (start, end) character spans into ``text``,
    non-overlapping and in order. Offsets are Unicode code points so
    spans stay meaningful regardless of encoding.
    """

    id: str
    text: str
    sentences: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        prev_end = 0
        for start, end in self.sentences:
            if start < prev_end or end <= start or end > len(self.text):
                raise ValueError(f"bad sentence span ({start}, {end})")
            if not self.text[start:end].strip():
                raise ValueError(f"empty sentence span ({start}, {end})")
            prev_end = end

    def sentence_text(self, index: int) -> str:
        start, end = self.sentences[index]
        return self.text[start:end]


@dataclass(frozen=True)
class Hypothesis:
    """One response sentence staged for judgment.

    ``index`` is the hypothesis's position in the selection output;
    unselected (purged) hypotheses keep their position so every sentence
    stays addressable downstream, and carry a ``skip_reason``.
    """

    index: int
    response_span: tuple[int, int]
    text: str
    selected: bool = True
    skip_reason: str | None = None

    def __post_init__(self) -> None:
        if self.selected == (self.skip_reason is not None):
            raise ValueError("skip_reason must be present exactly when unselected")
        if not self.text:
            raise ValueError("hypothesis text must be non-empty")


@dataclass(frozen=True)
class EntitySpan:
    """A recognized entity mention, offsets relative to the hypothesis text."""

    category: str
    surface: str
    start: int
    end: int

    def __post_init__(self) -> None:
        if not (0 <= self.start < self.end):
            raise ValueError(f"bad entity offsets ({self.start}, {self.end})")

    def length(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class TaggedHypothesis:
    """A hypothesis rendered with one entity wrapped as ``[ surface ]``."""

    base: int
    entity: EntitySpan
    rendered: str


@dataclass(frozen=True)
class DetectionRecord:
    """One (hypothesis, reason, judgment) triple at a given level.

    ``reason`` is None only for hypotheses that bypassed detection, and a
    bypassed hypothesis is always recorded as clean.
    """

    hypothesis_index: int
    level: DetectionLevel
    judgment: Judgment
    reason: str | None = None
    entity: EntitySpan | None = None

    def __post_init__(self) -> None:
        if self.level is DetectionLevel.ENTITY and self.entity is None:
            raise ValueError("entity-level record requires an entity")
        if self.reason is None and self.judgment is not Judgment.NON_HALLUCINATION:
            raise ValueError("a reasonless record must be non_hallucination")


@dataclass(frozen=True)
class DetectionReport:
    """Merged detection output for one (source, response) pair."""

    source_id: str
    response_id: str
    records: tuple[DetectionRecord, ...]
    final: dict[int, Judgment]
    diagnostics: tuple[dict, ...] = ()

    def hallucinated_indices(self) -> list[int]:
        return [i for i, j in sorted(self.final.items()) if j is Judgment.HALLUCINATION]

    def hallucination_reasons(self, index: int) -> list[str]:
        """Reasons behind a hallucination verdict: the single sentence-level
        reason, or every entity-level reason that voted hallucination."""
        return [
            r.reason
            for r in self.records
            if r.hypothesis_index == index
            and r.judgment is Judgment.HALLUCINATION
            and r.reason is not None
        ]

    def is_clean(self) -> bool:
        return all(j is Judgment.NON_HALLUCINATION for j in self.final.values())


@dataclass(frozen=True)
class RefinedResponse:
    """Post-edited response and the per-sentence edit ledger."""

    text: str
    edits: tuple[tuple[int, EditAction, str | None], ...]
    all_removed: bool = False

    def __post_init__(self) -> None:
        for index, action, new_text in self.edits:
            if action is EditAction.REMOVED and new_text is not None:
                raise ValueError(f"removed sentence {index} must not carry new text")
            if action is EditAction.REWRITTEN and new_text is None:
                raise ValueError(f"rewritten sentence {index} must carry new text")


@dataclass(frozen=True)
class GenerationParams:
    """Decoding parameters sent with every completion request.

    Defaults are the deterministic settings used for benchmarking:
    temperature 0, top_p 0.6, 4096 completion tokens, no penalties.
    """

    temperature: float = 0.0
    top_p: float = 0.6
    max_tokens: int = 4096
    frequency_penalty: float = 0.0
    presence_penalty: float = 0.0

    def __post_init__(self) -> None:
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if not 0 < self.top_p <= 1:
            raise ValueError("top_p must be in (0, 1]")
        if self.max_tokens <= 0:
            raise ValueError("max_tokens must be positive")

    def as_dict(self) -> dict:
        return {
            "temperature": self.temperature,
            "top_p": self.top_p,
            "max_tokens": self.max_tokens,
            "frequency_penalty": self.frequency_penalty,
            "presence_penalty": self.presence_penalty,
        }


def judgment_from_nli(label: NliLabel) -> Judgment:
    """Map an NLI outcome to the binary verdict.

    Only entailment counts as grounded; both contradiction and neutral
    mean the hypothesis is unsupported by the premise.
    """
    if label is NliLabel.ENTAILMENT:
        return Judgment.NON_HALLUCINATION
    return Judgment.HALLUCINATION


def final_judgment(records: list[DetectionRecord] | tuple[DetectionRecord, ...]) -> Judgment:
    """Combine all records for one hypothesis: any hallucination vote wins."""
    if not records:
        raise ContractError("final_judgment requires at least one record")
    indices = {r.hypothesis_index for r in records}
    if len(indices) != 1:
        raise ContractError(f"records span multiple hypotheses: {sorted(indices)}")
    if any(r.judgment is Judgment.HALLUCINATION for r in records):
        return Judgment.HALLUCINATION
    return Judgment.NON_HALLUCINATION
