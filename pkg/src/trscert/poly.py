"""Linear polynomial interpretations over the naturals.

Constants may be negative in weak mode; values are then clamped at zero at
every application node, and rules are compared through a pair of linear
bounds (a lower bound for the left-hand side, an upper bound for the right).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .terms import Rule, Symbol, Var


class Mode(enum.Enum):
    STRICT = "strict"
    WEAK = "weak"


@dataclass(frozen=True)
class LinearPoly:
    const: int = 0
    coeffs: Mapping[str, int] = field(default_factory=dict)

    @classmethod
    def var(cls, name: str) -> "LinearPoly":
        return cls(0, {name: 1})

    def __add__(self, other: "LinearPoly") -> "LinearPoly":
        coeffs = dict(self.coeffs)
        for x, c in other.coeffs.items():
            coeffs[x] = coeffs.get(x, 0) + c
        return LinearPoly(self.const + other.const, _nonzero(coeffs))

    def __sub__(self, other: "LinearPoly") -> "LinearPoly":
        return self + other.scale(-1)

    def scale(self, k: int) -> "LinearPoly":
        if k == 0:
            return LinearPoly()
        return LinearPoly(self.const * k, {x: c * k for x, c in self.coeffs.items()})

    def evaluate(self, assignment: Mapping[str, int]) -> int:
        return self.const + sum(c * assignment[x] for x, c in self.coeffs.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearPoly):
            return NotImplemented
        return self.const == other.const and _nonzero(self.coeffs) == _nonzero(other.coeffs)

    def __hash__(self) -> int:
        return hash((self.const, frozenset(_nonzero(self.coeffs).items())))

    def __str__(self) -> str:
        parts = [x if c == 1 else f"{c}*{x}" for x, c in sorted(self.coeffs.items()) if c]
        if self.const or not parts:
            parts.append(str(self.const))
        return " + ".join(parts).replace("+ -", "- ")


def _nonzero(coeffs: Mapping[str, int]) -> dict[str, int]:
    return {x: c for x, c in coeffs.items() if c != 0}


@dataclass(frozen=True)
class SymbolInterpretation:
    symbol: Symbol
    const: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.symbol.arity:
            raise ValueError(
                f"interpretation of {self.symbol} needs {self.symbol.arity} coefficients, "
                f"got {len(self.coeffs)}"
            )
        if any(c < 0 for c in self.coeffs):
            raise ValueError(f"negative coefficient in interpretation of {self.symbol}")

    def __str__(self) -> str:
        terms = [f"x{i}" if c == 1 else f"{c}*x{i}" for i, c in enumerate(self.coeffs, 1)]
        poly = " + ".join(terms + [str(self.const)]).replace("+ -", "- ")
        return f"{self.symbol} |-> {poly}"


@dataclass(frozen=True)
class LinearInterpretation:
    """Per-symbol linear interpretation.

    Unmapped symbols get constant 0 and all coefficients 1 (in both modes).
    """

    entries: Mapping[Symbol, SymbolInterpretation]
    mode: Mode = Mode.WEAK

    @classmethod
    def of(cls, items, mode: Mode = Mode.WEAK) -> "LinearInterpretation":
        """Build from ``(symbol, const, coeffs)`` triples."""
        entries = {}
        for sym, const, coeffs in items:
            entries[sym] = SymbolInterpretation(sym, const, tuple(coeffs))
        return cls(entries, mode)

    def get(self, symbol: Symbol) -> SymbolInterpretation:
        entry = self.entries.get(symbol)
        if entry is None:
            return SymbolInterpretation(symbol, 0, (1,) * symbol.arity)
        return entry

    def with_mode(self, mode: Mode) -> "LinearInterpretation":
        return LinearInterpretation(self.entries, mode)


@dataclass(frozen=True)
class MonotonicityViolation:
    symbol: Symbol
    index: int  # argument position, 0 for the constant

    def __str__(self) -> str:
        if self.index == 0:
            return f"negative constant in strict interpretation of {self.symbol}"
        return f"interpretation of {self.symbol} is not strictly monotone in argument {self.index}"


def check_monotonicity(interp: LinearInterpretation) -> Optional[MonotonicityViolation]:
    for sym, entry in interp.entries.items():
        for i, c in enumerate(entry.coeffs, 1):
            if c < 0 or (interp.mode is Mode.STRICT and c < 1):
                return MonotonicityViolation(sym, i)
        if interp.mode is Mode.STRICT and entry.const < 0:
            return MonotonicityViolation(sym, 0)
    return None


def lower_poly(t, interp: LinearInterpretation) -> LinearPoly:
    if isinstance(t, Var):
        return LinearPoly.var(t.name)
    entry = interp.get(t.symbol)
    result = LinearPoly(entry.const)
    for c, arg in zip(entry.coeffs, t.args):
        if c:
            result = result + lower_poly(arg, interp).scale(c)
    return result


def upper_poly(t, interp: LinearInterpretation) -> LinearPoly:
    if isinstance(t, Var):
        return LinearPoly.var(t.name)
    entry = interp.get(t.symbol)
    result = LinearPoly(max(0, entry.const))
    for c, arg in zip(entry.coeffs, t.args):
        if c:
            result = result + upper_poly(arg, interp).scale(c)
    return result


def orientation_slack(rule: Rule, interp: LinearInterpretation) -> LinearPoly:
    """lower(lhs) - upper(rhs)."""
    return lower_poly(rule.lhs, interp) - upper_poly(rule.rhs, interp)


def orient(rule: Rule, interp: LinearInterpretation, strictness: Mode) -> bool:
    d = orientation_slack(rule, interp)
    if any(c < 0 for c in d.coeffs.values()):
        return False
    return d.const >= (1 if strictness is Mode.STRICT else 0)
