"""The five content classes a wall message can belong to.

Declaration order matters: argmax ties are broken by this order, with
``neutral`` first.
"""

from __future__ import annotations

from enum import Enum


class ClassLabel(Enum):
    NEUTRAL = "neutral"
    SEXUAL = "sexual"
    HATRED = "hatred"
    OFFENSIVE = "offensive"
    PUN_INTENDED = "pun_intended"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_string(cls, value: str) -> "ClassLabel":
        for label in cls:
            if label.value == value:
                return label
        raise ValueError(f"unknown class label: {value!r}")


#: All labels in declaration order (the tie-break order).
LABELS: tuple[ClassLabel, ...] = tuple(ClassLabel)

#: The four classes that mark a message as non-neutral.
NON_NEUTRAL: tuple[ClassLabel, ...] = tuple(
    label for label in ClassLabel if label is not ClassLabel.NEUTRAL
)
