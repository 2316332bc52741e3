"""Check functions over proof trees.

Every check raises :class:`Rejection` on the first violated condition; the
conditions of each technique are tried in the order they are listed in the
corresponding function.  :func:`certify` turns that into a :class:`CertResult`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import dp
from .formats import ProblemDoc, envelope, read_problem, read_proof, serialize
from .poly import LinearInterpretation, Mode, check_monotonicity, orient
from .proof import (
    DepGraphProc,
    DpTrans,
    Loop,
    MonoRedPairUrProc,
    NotWellFormed,
    PIsEmpty,
    Proof,
    RedPairUrProc,
    RIsEmpty,
    RuleRemoval,
)
from .terms import Rule, Term, apply_subst, rewrite_step, well_formedness_violation
from .xmltree import equal_modulo_whitespace

Path = tuple[str, ...]


class Rejection(Exception):
    def __init__(self, path: Path, reason: str) -> None:
        super().__init__(f"{'/'.join(path)}: {reason}")
        self.path = path
        self.reason = reason


@dataclass(frozen=True)
class CertResult:
    accepted: bool
    path: Path = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.accepted

    def __str__(self) -> str:
        if self.accepted:
            return "CERTIFIED"
        return f"REJECTED: {'/'.join(self.path)}: {self.reason}"


ACCEPTED = CertResult(True)


def _rules(rules: Sequence[Rule]) -> str:
    return ", ".join(map(str, rules))


def _subset(path: Path, sub: Sequence[Rule], sup: Sequence[Rule], what: str, of: str) -> None:
    extra = dp.RuleSet(sup).missing(sub)
    if extra:
        raise Rejection(path, f"{what} {extra[0]} does not occur in {of}")


def _monotone(path: Path, interp: LinearInterpretation) -> None:
    violation = check_monotonicity(interp)
    if violation is not None:
        raise Rejection(path, str(violation))


def _oriented(path: Path, rules: Sequence[Rule], interp: LinearInterpretation, strictness: Mode, what: str) -> None:
    for r in rules:
        if not orient(r, interp, strictness):
            kind = "strictly" if strictness is Mode.STRICT else "weakly"
            raise Rejection(path, f"{what} {r} is not {kind} oriented")


def _usable_rules_ok(path: Path, rules, pairs, interp: LinearInterpretation, supplied) -> None:
    _subset(path, supplied, rules, "usable rule", "the TRS")
    af = dp.implicit_filter(interp)
    required = dp.usable_rules(rules, [p.rhs for p in pairs], af)
    missing = dp.RuleSet(supplied).missing(required)
    if missing:
        raise Rejection(path, f"usable rules not closed: missing {missing[0]}")


def _removed(kept: Sequence[Rule], everything: Sequence[Rule]) -> list[Rule]:
    keep = dp.RuleSet(kept)
    return [r for r in everything if r not in keep]


def check_trs_proof(rules: Sequence[Rule], step, path: Path = ("proof",)) -> None:
    path = path + (step.label,)
    if isinstance(step, RIsEmpty):
        if rules:
            raise Rejection(path, f"TRS is not empty: {_rules(rules)}")
    elif isinstance(step, RuleRemoval):
        interp = step.red_pair.with_mode(Mode.STRICT)
        _monotone(path, interp)
        _subset(path, step.trs, rules, "rule", "the current TRS")
        _oriented(path, rules, interp, Mode.WEAK, "rule")
        _oriented(path, _removed(step.trs, rules), interp, Mode.STRICT, "removed rule")
        check_trs_proof(step.trs, step.proof, path)
    elif isinstance(step, DpTrans):
        bad = well_formedness_violation(rules)
        if bad is not None:
            raise Rejection(path, f"rule {bad} is not well-formed")
        missing = dp.RuleSet(step.dps).missing(dp.dependency_pairs(rules))
        if missing:
            raise Rejection(path, f"missing dependency pair: {missing[0]}")
        check_dp_proof(step.dps, rules, step.proof, path)
    else:
        raise Rejection(path, f"{step.label} cannot prove termination of a TRS")


def check_dp_proof(pairs: Sequence[Rule], rules: Sequence[Rule], step, path: Path) -> None:
    path = path + (step.label,)
    if isinstance(step, PIsEmpty):
        if pairs:
            raise Rejection(path, f"P is not empty: {_rules(pairs)}")
    elif isinstance(step, DepGraphProc):
        try:
            dp.validate_components(pairs, rules, step.components)
        except dp.DecompositionError as exc:
            raise Rejection(path, str(exc)) from None
        for i, comp in enumerate(step.components, 1):
            if comp.real_scc:
                sub = path + (f"component[{i}]",)
                check_dp_proof(comp.pairs, rules, comp.proof, sub)
    elif isinstance(step, RedPairUrProc):
        interp = step.red_pair.with_mode(Mode.WEAK)
        _monotone(path, interp)
        _usable_rules_ok(path, rules, pairs, interp, step.usable_rules)
        _oriented(path, pairs, interp, Mode.WEAK, "pair")
        _oriented(path, step.usable_rules, interp, Mode.WEAK, "usable rule")
        _subset(path, step.dps, pairs, "pair", "the current DP problem")
        _oriented(path, _removed(step.dps, pairs), interp, Mode.STRICT, "removed pair")
        check_dp_proof(step.dps, rules, step.proof, path)
    elif isinstance(step, MonoRedPairUrProc):
        interp = step.red_pair.with_mode(Mode.STRICT)
        _monotone(path, interp)
        _usable_rules_ok(path, rules, pairs, interp, step.usable_rules)
        _oriented(path, pairs, interp, Mode.WEAK, "pair")
        _oriented(path, step.usable_rules, interp, Mode.WEAK, "usable rule")
        _subset(path, step.dps, pairs, "pair", "the current DP problem")
        _oriented(path, _removed(step.dps, pairs), interp, Mode.STRICT, "removed pair")
        _subset(path, step.trs, step.usable_rules, "rule", "the usable rules")
        _oriented(path, _removed(step.trs, step.usable_rules), interp, Mode.STRICT, "removed rule")
        check_dp_proof(step.dps, step.trs, step.proof, path)
    else:
        raise Rejection(path, f"{step.label} cannot prove finiteness of a DP problem")


def _steps_to(rules: Sequence[Rule], s: Term, t: Term) -> bool:
    return rewrite_step(rules, s, t) is not None


def check_disproof(rules: Sequence[Rule], step, path: Path = ("proof",)) -> None:
    path = path + (step.label,)
    if isinstance(step, NotWellFormed):
        if well_formedness_violation(rules) is None:
            raise Rejection(path, "all rules well-formed")
    elif isinstance(step, Loop):
        if not step.terms:
            raise Rejection(path, "a loop needs at least one term")
        bad = well_formedness_violation(rules)
        if bad is not None:
            raise Rejection(path, f"rule {bad} is not well-formed; use notWellFormed")
        terms = step.terms
        for i in range(len(terms) - 1):
            if not _steps_to(rules, terms[i], terms[i + 1]):
                raise Rejection(path, f"no rewrite step from t_{i + 1} = {terms[i]} to t_{i + 2} = {terms[i + 1]}")
        closing = step.context.fill(apply_subst(terms[0], step.substitution))
        if not _steps_to(rules, terms[-1], closing):
            n = len(terms)
            raise Rejection(path, f"no rewrite step from t_{n} = {terms[-1]} to C[t_1 sigma] = {closing}")
    else:
        raise Rejection(path, f"{step.label} cannot prove nontermination")


def echo_matches(problem: ProblemDoc, proof: Proof, problem_text: str, proof_text: str) -> bool:
    raw = envelope(problem_text.removeprefix("\ufeff"), proof_text.removeprefix("\ufeff"))
    return equal_modulo_whitespace(serialize(problem, proof), raw)


def certify(problem: ProblemDoc, proof: Proof, raw: Optional[tuple[str, str]] = None) -> CertResult:
    """Check ``proof`` for ``problem``.

    ``raw`` holds the original problem and proof texts; when given, the
    parsed structures must print back to them (modulo whitespace).  Passing
    None skips that comparison.
    """
    if raw is not None and not echo_matches(problem, proof, *raw):
        return CertResult(False, ("proof",), "input and internal representation differ")
    try:
        if proof.is_disproof:
            check_disproof(problem.trs, proof.body)
        else:
            check_trs_proof(problem.trs, proof.body)
    except Rejection as rej:
        return CertResult(False, rej.path, rej.reason)
    return ACCEPTED


def certify_texts(problem_text: str, proof_text: str, echo: bool = True) -> CertResult:
    """Parse and certify; malformed input raises :class:`ParseError`."""
    problem = read_problem(problem_text)
    proof = read_proof(proof_text, problem)
    return certify(problem, proof, (problem_text, proof_text) if echo else None)
