"""Proof trees, one class per production of the certificate grammar."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Union

from .poly import LinearInterpretation
from .terms import Context, Rule, Term
from .xmltree import Attributes


@dataclass(frozen=True)
class RIsEmpty:
    label = "rIsEmpty"


@dataclass(frozen=True)
class RuleRemoval:
    label = "ruleRemoval"
    red_pair: LinearInterpretation
    trs: tuple[Rule, ...]
    proof: "TrsProof"


@dataclass(frozen=True)
class DpTrans:
    label = "dpTrans"
    dps: tuple[Rule, ...]
    proof: "DpProof"


@dataclass(frozen=True)
class PIsEmpty:
    label = "pIsEmpty"


@dataclass(frozen=True)
class Component:
    label = "component"
    pairs: tuple[Rule, ...]
    real_scc: bool
    proof: Optional["DpProof"] = None

    def __post_init__(self) -> None:
        if self.real_scc != (self.proof is not None):
            raise ValueError("a component carries a subproof exactly when it is a real SCC")


@dataclass(frozen=True)
class DepGraphProc:
    label = "depGraphProc"
    components: tuple[Component, ...]


@dataclass(frozen=True)
class RedPairUrProc:
    label = "redPairUrProc"
    red_pair: LinearInterpretation
    dps: tuple[Rule, ...]
    usable_rules: tuple[Rule, ...]
    proof: "DpProof"


@dataclass(frozen=True)
class MonoRedPairUrProc:
    label = "monoRedPairUrProc"
    red_pair: LinearInterpretation
    dps: tuple[Rule, ...]
    trs: tuple[Rule, ...]
    usable_rules: tuple[Rule, ...]
    proof: "DpProof"


@dataclass(frozen=True)
class Loop:
    label = "loop"
    substitution: Mapping[str, Term]
    context: Context
    terms: tuple[Term, ...]


@dataclass(frozen=True)
class NotWellFormed:
    label = "notWellFormed"


TrsProof = Union[RuleRemoval, DpTrans, RIsEmpty]
DpProof = Union[DepGraphProc, RedPairUrProc, MonoRedPairUrProc, PIsEmpty]
TrsDisproof = Union[Loop, NotWellFormed]
ProofStep = Union[TrsProof, DpProof, TrsDisproof, Component]


@dataclass(frozen=True)
class Proof:
    label = "proof"
    body: Union[TrsProof, TrsDisproof]
    declaration: Optional[Attributes] = None

    @property
    def is_disproof(self) -> bool:
        return isinstance(self.body, (Loop, NotWellFormed))


def child_steps(node) -> list[tuple[str, object]]:
    """(path label, child) pairs below ``node``."""
    if isinstance(node, Proof):
        return [(node.body.label, node.body)]
    if isinstance(node, DepGraphProc):
        return [(f"component[{i}]", c) for i, c in enumerate(node.components, 1)]
    sub = getattr(node, "proof", None)
    return [(sub.label, sub)] if sub is not None else []


def walk(node, path: tuple[str, ...] = ("proof",)) -> Iterator[tuple[tuple[str, ...], object]]:
    """Every (path, node) pair of the tree, root first."""
    yield path, node
    for label, child in child_steps(node):
        yield from walk(child, path + (label,))


def resolve(root, path: tuple[str, ...]):
    """Node at ``path``; raises KeyError if the path does not exist."""
    if not path or path[0] != "proof":
        raise KeyError(path)
    node = root
    for label in path[1:]:
        for child_label, child in child_steps(node):
            if child_label == label:
                node = child
                break
        else:
            raise KeyError(path)
    return node
