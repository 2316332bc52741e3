"""First-order terms, substitutions, contexts, matching, unification and tcap."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

# Variable names starting with this character are reserved for generated
# variables; the XML layer refuses them in input.
RESERVED_PREFIX = "%"


@dataclass(frozen=True, slots=True)
class Symbol:
    name: str
    arity: int
    marked: bool = False

    def __post_init__(self) -> None:
        if self.arity < 0:
            raise ValueError(f"negative arity for symbol {self.name}")

    def mark(self) -> "Symbol":
        return Symbol(self.name, self.arity, True)

    def __str__(self) -> str:
        return self.name + "#" if self.marked else self.name


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Fun:
    symbol: Symbol
    args: tuple["Term", ...] = ()

    def __post_init__(self) -> None:
        if len(self.args) != self.symbol.arity:
            raise ValueError(
                f"symbol {self.symbol} has arity {self.symbol.arity} "
                f"but got {len(self.args)} arguments"
            )

    def __str__(self) -> str:
        if not self.args:
            return str(self.symbol)
        return f"{self.symbol}({','.join(map(str, self.args))})"


@dataclass(frozen=True, slots=True)
class Hole:
    """The distinguished hole of a context."""

    def __str__(self) -> str:
        return "[]"


Term = Union[Var, Fun]
Substitution = Mapping[str, Term]
Position = tuple[int, ...]


@dataclass(frozen=True, slots=True)
class Rule:
    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"{self.lhs} -> {self.rhs}"


# -- basic queries -------------------------------------------------------


def variables(t) -> list[str]:
    """Variables of ``t`` in depth-first left-to-right order, without repeats."""
    seen: dict[str, None] = {}
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            seen.setdefault(u.name)
        elif isinstance(u, Fun):
            stack.extend(reversed(u.args))
    return list(seen)


def subterms(t) -> Iterator[tuple[Position, Term]]:
    """All (position, subterm) pairs in leftmost-outermost (preorder) order."""
    stack: list[tuple[Position, Term]] = [((), t)]
    while stack:
        pos, u = stack.pop()
        yield pos, u
        if isinstance(u, Fun):
            for i in range(len(u.args), 0, -1):
                stack.append((pos + (i,), u.args[i - 1]))


def symbols(t) -> set[Symbol]:
    return {u.symbol for _, u in subterms(t) if isinstance(u, Fun)}


def size(t) -> int:
    return sum(1 for _ in subterms(t))


def subterm_at(t, pos: Position):
    for i in pos:
        t = t.args[i - 1]
    return t


def replace_at(t, pos: Position, s):
    if not pos:
        return s
    i = pos[0]
    args = list(t.args)
    args[i - 1] = replace_at(args[i - 1], pos[1:], s)
    return Fun(t.symbol, tuple(args))


def occurs(name: str, t) -> bool:
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            if u.name == name:
                return True
        elif isinstance(u, Fun):
            stack.extend(u.args)
    return False


# -- substitutions -------------------------------------------------------


def apply_subst(t, sigma: Substitution):
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    if isinstance(t, Fun):
        if not t.args:
            return t
        return Fun(t.symbol, tuple(apply_subst(a, sigma) for a in t.args))
    return t  # Hole


def match(pattern: Term, subject: Term, sigma: Optional[Substitution] = None) -> Optional[dict[str, Term]]:
    """Smallest extension of ``sigma`` with ``pattern``·σ = ``subject``, or None."""
    result = dict(sigma) if sigma else {}
    stack = [(pattern, subject)]
    while stack:
        p, s = stack.pop()
        if isinstance(p, Var):
            bound = result.get(p.name)
            if bound is None:
                result[p.name] = s
            elif bound != s:
                return None
        elif isinstance(s, Fun) and p.symbol == s.symbol:
            stack.extend(zip(p.args, s.args))
        else:
            return None
    return result


def _walk(t: Term, sigma: dict[str, Term]) -> Term:
    while isinstance(t, Var) and t.name in sigma:
        t = sigma[t.name]
    return t


def _occurs_deep(name: str, t: Term, sigma: dict[str, Term]) -> bool:
    stack = [t]
    while stack:
        u = _walk(stack.pop(), sigma)
        if isinstance(u, Var):
            if u.name == name:
                return True
        else:
            stack.extend(u.args)
    return False


def unify(s: Term, t: Term) -> Optional[dict[str, Term]]:
    """Idempotent most general unifier of ``s`` and ``t`` (with occurs check)."""
    sigma: dict[str, Term] = {}
    stack = [(s, t)]
    while stack:
        a, b = stack.pop()
        a = _walk(a, sigma)
        b = _walk(b, sigma)
        if a == b:
            continue
        if isinstance(a, Var):
            if _occurs_deep(a.name, b, sigma):
                return None
            sigma[a.name] = b
        elif isinstance(b, Var):
            if _occurs_deep(b.name, a, sigma):
                return None
            sigma[b.name] = a
        elif a.symbol == b.symbol:
            stack.extend(zip(a.args, b.args))
        else:
            return None
    # triangular form -> idempotent form
    return {x: _resolve(u, sigma) for x, u in sigma.items()}


def _resolve(t: Term, sigma: dict[str, Term]) -> Term:
    t = _walk(t, sigma)
    if isinstance(t, Fun) and t.args:
        return Fun(t.symbol, tuple(_resolve(a, sigma) for a in t.args))
    return t


def unifiable(s: Term, t: Term) -> bool:
    return unify(s, t) is not None


# -- contexts ------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Context:
    """A term with exactly one hole."""

    term: object

    def __post_init__(self) -> None:
        holes = sum(1 for _, u in subterms(self.term) if isinstance(u, Hole))
        if holes != 1:
            raise ValueError(f"context must contain exactly one hole, found {holes}")

    def fill(self, t: Term) -> Term:
        return _fill(self.term, t)

    def __str__(self) -> str:
        return str(self.term)


def _fill(c, t):
    if isinstance(c, Hole):
        return t
    if isinstance(c, Fun):
        return Fun(c.symbol, tuple(_fill(a, t) for a in c.args))
    return c


HOLE_CONTEXT = Context(Hole())


# -- fresh variables and renaming -----------------------------------------


class FreshVars:
    """Counter-based source of variables in the reserved namespace."""

    def __init__(self, tag: str = "v") -> None:
        self._prefix = RESERVED_PREFIX + tag
        self._counter = itertools.count(1)

    def __call__(self) -> Var:
        return Var(f"{self._prefix}{next(self._counter)}")


def rename(t: Term, fresh: FreshVars, mapping: Optional[dict[str, Term]] = None) -> Term:
    mapping = {} if mapping is None else mapping
    for x in variables(t):
        if x not in mapping:
            mapping[x] = fresh()
    return apply_subst(t, mapping)


# -- rewriting -----------------------------------------------------------


def defined_symbols(rules: Iterable[Rule]) -> set[Symbol]:
    return {r.lhs.symbol for r in rules if isinstance(r.lhs, Fun)}


def well_formedness_violation(rules: Iterable[Rule]) -> Optional[Rule]:
    for r in rules:
        if isinstance(r.lhs, Var) or not set(variables(r.rhs)) <= set(variables(r.lhs)):
            return r
    return None


@dataclass(frozen=True, slots=True)
class RewriteWitness:
    rule_index: int  # 0-based index into the rule list
    position: Position
    substitution: dict


def rewrite_step(rules: Sequence[Rule], s: Term, t: Term) -> Optional[RewriteWitness]:
    """Witness that ``s`` rewrites to ``t`` in one step, or None.

    Positions are tried leftmost-outermost, rules in list order.
    """
    for pos, u in subterms(s):
        try:
            target = subterm_at(t, pos)
        except (AttributeError, IndexError):
            continue
        if replace_at(s, pos, target) != t:
            continue
        for i, rule in enumerate(rules):
            sigma = match(rule.lhs, u)
            if sigma is None:
                continue
            # extra rhs variables of non-well-formed rules may take any value
            sigma = match(rule.rhs, target, sigma)
            if sigma is not None:
                return RewriteWitness(i, pos, sigma)
    return None


def one_step_successors(rules: Sequence[Rule], s: Term) -> Iterator[Term]:
    """All one-step reducts of ``s`` using well-formed rules of ``rules``."""
    for pos, u in subterms(s):
        for rule in rules:
            sigma = match(rule.lhs, u)
            if sigma is not None:
                yield replace_at(s, pos, apply_subst(rule.rhs, sigma))


class Tcap:
    """tcap with respect to a fixed rule list; lhss are renamed apart once."""

    def __init__(self, rules: Iterable[Rule], fresh: Optional[FreshVars] = None) -> None:
        renamer = FreshVars("r")
        self._any = False
        self._by_root: dict[Symbol, list[Term]] = {}
        for rule in rules:
            if isinstance(rule.lhs, Var):
                self._any = True
            else:
                self._by_root.setdefault(rule.lhs.symbol, []).append(rename(rule.lhs, renamer))
        self._fresh = fresh or FreshVars("t")

    def __call__(self, t: Term) -> Term:
        if isinstance(t, Var):
            return self._fresh()
        u = Fun(t.symbol, tuple(self(a) for a in t.args))
        if self._any or any(unifiable(u, l) for l in self._by_root.get(t.symbol, ())):
            return self._fresh()
        return u


def tcap(rules: Iterable[Rule], t: Term, fresh: Optional[FreshVars] = None) -> Term:
    return Tcap(rules, fresh)(t)


# -- a small textual notation (tests and tooling) -----------------------

_TOKEN = re.compile(r"\s*(?:([^\s(),]+)|(.))")
DEFAULT_VARIABLES = re.compile(r"[u-z][0-9']*$")


def parse_term(text: str, variables: Optional[Iterable[str]] = None) -> Term:
    """Parse ``f(x,s(y))``-style notation.

    Identifiers without arguments are variables if listed in ``variables``;
    by default single letters u..z (optionally followed by digits or primes)
    are variables.  A trailing ``#`` marks a symbol.
    """
    var_set = None if variables is None else set(variables)
    tokens = [(m.group(1), m.group(2)) for m in _TOKEN.finditer(text) if m.group(0).strip()]
    pos = 0

    def is_var(name: str) -> bool:
        return name in var_set if var_set is not None else bool(DEFAULT_VARIABLES.match(name))

    def term() -> Term:
        nonlocal pos
        name, punct = tokens[pos]
        if name is None:
            raise ValueError(f"unexpected {punct!r} in {text!r}")
        pos += 1
        if name == "[]":
            return Hole()
        args: list[Term] = []
        if pos < len(tokens) and tokens[pos][1] == "(":
            pos += 1
            if tokens[pos][1] != ")":
                args.append(term())
                while tokens[pos][1] == ",":
                    pos += 1
                    args.append(term())
            if tokens[pos][1] != ")":
                raise ValueError(f"expected ')' in {text!r}")
            pos += 1
        elif is_var(name):
            return Var(name)
        marked = name.endswith("#")
        return Fun(Symbol(name.rstrip("#"), len(args), marked), tuple(args))

    result = term()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result


def parse_rule(text: str, variables: Optional[Iterable[str]] = None) -> Rule:
    lhs, rhs = text.split("->")
    return Rule(parse_term(lhs, variables), parse_term(rhs, variables))


def parse_rules(text: str, variables: Optional[Iterable[str]] = None) -> list[Rule]:
    return [parse_rule(r, variables) for r in text.split(";") if r.strip()]
