"""Reference implementations used to cross-check the package.

Terms are converted to plain tuples so that the oracles share no code with
the implementation under test:

    variable      ("?", name)
    application   (name, child, child, ...)     marked names end in "#"
"""

from __future__ import annotations

import itertools
from collections import deque

from trscert.terms import Fun, Var


def to_tuple(t):
    if isinstance(t, Var):
        return ("?", t.name)
    return (str(t.symbol),) + tuple(to_tuple(a) for a in t.args)


def is_var(t) -> bool:
    return t[0] == "?"


def vars_of(t) -> set:
    if is_var(t):
        return {t[1]}
    out = set()
    for a in t[1:]:
        out |= vars_of(a)
    return out


def substitute(t, sigma):
    if is_var(t):
        return sigma.get(t[1], t)
    return (t[0],) + tuple(substitute(a, sigma) for a in t[1:])


def tmatch(pattern, subject, sigma=None):
    sigma = dict(sigma or {})
    todo = [(pattern, subject)]
    while todo:
        p, s = todo.pop()
        if is_var(p):
            if p[1] in sigma and sigma[p[1]] != s:
                return None
            sigma[p[1]] = s
        elif is_var(s) or p[0] != s[0] or len(p) != len(s):
            return None
        else:
            todo.extend(zip(p[1:], s[1:]))
    return sigma


def positions(t, prefix=()):
    yield prefix, t
    if not is_var(t):
        for i, a in enumerate(t[1:], 1):
            yield from positions(a, prefix + (i,))


def replace(t, pos, s):
    if not pos:
        return s
    i = pos[0]
    return t[:i] + (replace(t[i], pos[1:], s),) + t[i + 1 :]


def successors(rules, t):
    """One-step reducts with tuple rules (lhs, rhs); rhs-only variables are not instantiated."""
    for pos, u in positions(t):
        for lhs, rhs in rules:
            sigma = tmatch(lhs, u)
            if sigma is not None:
                yield replace(t, pos, substitute(rhs, sigma))


def reachable(rules, start, steps, limit=2000):
    """Terms reachable from ``start`` in at most ``steps`` steps (breadth first)."""
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier and len(seen) < limit:
        t, d = frontier.popleft()
        if d == steps:
            continue
        for u in successors(rules, t):
            if u not in seen:
                seen.add(u)
                frontier.append((u, d + 1))
    return seen


def ground_terms(constants, unary, binary, depth):
    """All ground terms over the given symbols up to ``depth``."""
    level = [(c,) for c in constants]
    out = list(level)
    for _ in range(depth):
        new = [(f, a) for f in unary for a in out]
        new += [(g, a, b) for g in binary for a in out for b in out]
        out = list(dict.fromkeys(out + new))
    return out


def ground_substitutions(names, values):
    names = sorted(names)
    for combo in itertools.product(values, repeat=len(names)):
        yield dict(zip(names, combo))


def clamped_value(t, table, assignment):
    """Value of ``t`` under max(0, c0 + sum ci * arg) at every node.

    ``table`` maps printed symbol names to (c0, coeffs); missing symbols use
    constant 0 and coefficient 1 everywhere.
    """
    if is_var(t):
        return assignment[t[1]]
    args = [clamped_value(a, table, assignment) for a in t[1:]]
    c0, coeffs = table.get(t[0], (0, [1] * len(args)))
    return max(0, c0 + sum(c * v for c, v in zip(coeffs, args)))


def unifiable_bruteforce(s, t, values):
    """Does some ground instance make ``s`` and ``t`` equal (over ``values``)?"""
    names = vars_of(s) | vars_of(t)
    for sigma in ground_substitutions(names, values):
        if substitute(s, sigma) == substitute(t, sigma):
            return True
    return False


def from_tuple(t, arities=None):
    """Back to package terms (marked names end in '#')."""
    from trscert.terms import Symbol

    if is_var(t):
        return Var(t[1])
    name = t[0]
    marked = name.endswith("#")
    return Fun(Symbol(name.rstrip("#"), len(t) - 1, marked), tuple(from_tuple(a) for a in t[1:]))
