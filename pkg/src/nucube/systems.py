"""The eight rule sets of the cube and the lambda/nu mode switch."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .terms import Sort

S, B = Sort.STAR, Sort.BOX

RuleSet = frozenset  # frozenset[tuple[Sort, Sort]]

RULE_SETS: dict[str, frozenset] = {
    "arrow": frozenset({(S, S)}),
    "2": frozenset({(S, S), (B, S)}),
    "P": frozenset({(S, S), (S, B)}),
    "P2": frozenset({(S, S), (B, S), (S, B)}),
    "w_": frozenset({(S, S), (B, B)}),
    "w": frozenset({(S, S), (B, S), (B, B)}),
    "Pw_": frozenset({(S, S), (S, B), (B, B)}),
    "C": frozenset({(S, S), (B, S), (S, B), (B, B)}),
}

DISPLAY = {
    "arrow": "λ→",
    "2": "λ2",
    "P": "λP",
    "P2": "λP2",
    "w_": "λω_",
    "w": "λω",
    "Pw_": "λPω_",
    "C": "λC",
}


class Mode(enum.Enum):
    LAMBDA = "lambda"
    NU = "nu"


@dataclass(frozen=True)
class SystemId:
    name: str = "C"
    mode: Mode = Mode.NU

    def __post_init__(self):
        if self.name not in RULE_SETS:
            raise ValueError(f"unknown system {self.name!r}; choose from {', '.join(RULE_SETS)}")

    def __str__(self) -> str:
        return f"{DISPLAY[self.name]} ({self.mode.value}-cube)"


def rule_set_of(system) -> frozenset:
    name = system.name if isinstance(system, SystemId) else system
    try:
        return RULE_SETS[name]
    except KeyError:
        raise ValueError(f"unknown system {name!r}") from None
