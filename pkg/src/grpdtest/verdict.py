"""Three-valued answers with attached evidence."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable


class Answer(str, Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    answer: Answer
    evidence: dict[str, Any] = field(default_factory=dict, compare=False)

    @classmethod
    def yes(cls, **evidence) -> "Verdict":
        return cls(Answer.YES, evidence)

    @classmethod
    def no(cls, **evidence) -> "Verdict":
        return cls(Answer.NO, evidence)

    @classmethod
    def unknown(cls, **evidence) -> "Verdict":
        return cls(Answer.UNKNOWN, evidence)

    @property
    def is_yes(self) -> bool:
        return self.answer is Answer.YES

    @property
    def is_no(self) -> bool:
        return self.answer is Answer.NO

    @property
    def is_unknown(self) -> bool:
        return self.answer is Answer.UNKNOWN

    def to_dict(self) -> dict[str, Any]:
        return {"answer": self.answer.value, "evidence": self.evidence}


def conjunction(parts: Iterable[tuple[str, Verdict]], **extra) -> Verdict:
    """No if any part is No (first failing part named), Unknown if any part is
    Unknown, Yes otherwise."""
    parts = list(parts)
    for label, v in parts:
        if v.is_no:
            return Verdict.no(failing=label, cause=v.evidence, **extra)
    unknown = [label for label, v in parts if v.is_unknown]
    if unknown:
        return Verdict.unknown(undecided=unknown, **extra)
    return Verdict.yes(checked=len(parts), **extra)
