"""Dependency pairs, usable rules, graph estimation and SCC-decomposition checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .poly import LinearInterpretation
from .terms import (
    RESERVED_PREFIX,
    FreshVars,
    Fun,
    Rule,
    Symbol,
    Tcap,
    Term,
    Var,
    apply_subst,
    defined_symbols,
    subterms,
    unifiable,
    variables,
)


def mark(t: Term) -> Term:
    assert isinstance(t, Fun)
    return Fun(t.symbol.mark(), t.args)


def canonical_rule(rule: Rule) -> Rule:
    """Rename variables to a fixed sequence in order of first occurrence."""
    names = variables(Fun(Symbol("", 2), (rule.lhs, rule.rhs)))
    sigma = {x: Var(f"{RESERVED_PREFIX}c{i}") for i, x in enumerate(names, 1)}
    return Rule(apply_subst(rule.lhs, sigma), apply_subst(rule.rhs, sigma))


class RuleSet:
    """Rules compared modulo variable renaming."""

    def __init__(self, rules: Iterable[Rule] = ()) -> None:
        self._keys: dict[Rule, Rule] = {}
        for r in rules:
            self._keys.setdefault(canonical_rule(r), r)

    def __contains__(self, rule: Rule) -> bool:
        return canonical_rule(rule) in self._keys

    def __len__(self) -> int:
        return len(self._keys)

    def __iter__(self):
        return iter(self._keys.values())

    def missing(self, rules: Iterable[Rule]) -> list[Rule]:
        """Members of ``rules`` not contained in this set."""
        return [r for r in rules if r not in self]


def dependency_pairs(rules: Sequence[Rule]) -> list[Rule]:
    defined = defined_symbols(rules)
    pairs: list[Rule] = []
    seen: set[Rule] = set()
    for rule in rules:
        for _, u in subterms(rule.rhs):
            if isinstance(u, Fun) and u.symbol in defined:
                pair = Rule(mark(rule.lhs), mark(u))
                key = canonical_rule(pair)
                if key not in seen:
                    seen.add(key)
                    pairs.append(pair)
    return pairs


@dataclass(frozen=True)
class ArgumentFilter:
    """Retained argument positions (1-based); unlisted symbols keep all."""

    retained_positions: Mapping[Symbol, frozenset[int]] = field(default_factory=dict)

    def retained(self, symbol: Symbol) -> frozenset[int]:
        kept = self.retained_positions.get(symbol)
        if kept is None:
            return frozenset(range(1, symbol.arity + 1))
        return kept


FULL_FILTER = ArgumentFilter()


def implicit_filter(interp: LinearInterpretation, signature: Iterable[Symbol] = ()) -> ArgumentFilter:
    kept = {}
    for sym in set(interp.entries) | set(signature):
        entry = interp.get(sym)
        kept[sym] = frozenset(i for i, c in enumerate(entry.coeffs, 1) if c > 0)
    return ArgumentFilter(kept)


def _reachable_defined(t: Term, defined: set[Symbol], af: ArgumentFilter) -> set[Symbol]:
    found = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Fun):
            if u.symbol in defined:
                found.add(u.symbol)
            for i in af.retained(u.symbol):
                stack.append(u.args[i - 1])
    return found


def usable_rules(rules: Sequence[Rule], seeds: Iterable[Term], af: ArgumentFilter = FULL_FILTER) -> list[Rule]:
    """Usable rules of ``seeds`` w.r.t. ``af``, in the order of ``rules``."""
    defined = defined_symbols(rules)
    by_root: dict[Symbol, list[Rule]] = {}
    for r in rules:
        if isinstance(r.lhs, Fun):
            by_root.setdefault(r.lhs.symbol, []).append(r)
    usable: set[Symbol] = set()
    todo: list[Symbol] = []
    for s in seeds:
        todo.extend(_reachable_defined(s, defined, af))
    while todo:
        f = todo.pop()
        if f in usable:
            continue
        usable.add(f)
        for r in by_root[f]:
            todo.extend(_reachable_defined(r.rhs, defined, af) - usable)
    return [r for r in rules if isinstance(r.lhs, Fun) and r.lhs.symbol in usable]


@dataclass(frozen=True)
class DepGraph:
    nodes: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    def successors(self, i: int) -> list[int]:
        return sorted(j for (a, j) in self.edges if a == i)


def _backward_rules(rules: Sequence[Rule]) -> Optional[list[Rule]]:
    """Reversed rules, or None when some rule collapses to a variable.

    A reversed collapsing rule has a variable lhs, which makes backward tcap
    return a fresh variable for every term: the backward test is vacuous.
    """
    if any(isinstance(r.rhs, Var) for r in rules):
        return None
    return [Rule(r.rhs, r.lhs) for r in rules]


def estimate_graph(pairs: Sequence[Rule], rules: Sequence[Rule], backward: bool = True) -> DepGraph:
    """Estimated dependency graph: forward tcap, optionally refined backwards."""
    fresh = FreshVars("t")
    forward = Tcap(rules, fresh)
    caps = [forward(p.rhs) for p in pairs]
    reversed_rules = _backward_rules(rules) if backward else None
    back = Tcap(reversed_rules, fresh) if reversed_rules is not None else None
    back_caps = [back(p.lhs) for p in pairs] if back is not None else None
    edges = set()
    for i, s in enumerate(pairs):
        for j, u in enumerate(pairs):
            if not unifiable(caps[i], u.lhs):
                continue
            if back_caps is not None and not unifiable(back_caps[j], s.rhs):
                continue
            edges.add((i, j))
    return DepGraph(tuple(range(len(pairs))), frozenset(edges))


@dataclass(frozen=True)
class ComponentSpec:
    """A listed component without its subproof.

    Proof-tree components are accepted wherever a ComponentSpec is, since
    only ``pairs`` and ``real_scc`` are consulted.
    """

    pairs: tuple[Rule, ...]
    real_scc: bool


class DecompositionError(Exception):
    def __init__(self, message: str, component: Optional[int] = None, pair: Optional[Rule] = None) -> None:
        super().__init__(message)
        self.component = component
        self.pair = pair


def validate_decomposition(graph: DepGraph, pairs: Sequence[Rule], comps: Sequence[ComponentSpec]) -> None:
    """Check ``comps`` against ``graph`` over ``pairs``; raise DecompositionError.

    Component numbers in messages are 1-based.
    """
    owner: dict[Rule, int] = {}
    for ci, comp in enumerate(comps):
        for p in comp.pairs:
            key = canonical_rule(p)
            if key in owner and owner[key] != ci:
                raise DecompositionError(
                    f"pair {p} occurs in components {owner[key] + 1} and {ci + 1}", ci + 1, p
                )
            owner[key] = ci
    node_comp = []
    for p in pairs:
        ci = owner.get(canonical_rule(p))
        if ci is None:
            raise DecompositionError(f"pair {p} is not covered by any component", None, p)
        node_comp.append(ci)
    listed = RuleSet(pairs)
    for ci, comp in enumerate(comps):
        for p in comp.pairs:
            if p not in listed:
                raise DecompositionError(f"component {ci + 1} contains unknown pair {p}", ci + 1, p)
    for i, j in sorted(graph.edges):
        a, b = node_comp[i], node_comp[j]
        if a > b:
            raise DecompositionError(
                f"components not in topological order: edge from {pairs[i]} (component {a + 1}) "
                f"to {pairs[j]} (component {b + 1})",
                a + 1,
                pairs[i],
            )
        if a == b and not comps[a].real_scc:
            raise DecompositionError(
                f"component {a + 1} is marked as trivial but has an edge from {pairs[i]} to {pairs[j]}",
                a + 1,
                pairs[i],
            )


def validate_components(pairs: Sequence[Rule], rules: Sequence[Rule], comps: Sequence[ComponentSpec]) -> None:
    validate_decomposition(estimate_graph(pairs, rules), pairs, comps)
