from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import clamped_value, to_tuple
from strategies import interpretations, terms
from trscert.poly import (
    LinearInterpretation,
    LinearPoly,
    Mode,
    MonotonicityViolation,
    check_monotonicity,
    lower_poly,
    orient,
    upper_poly,
)
from trscert.terms import Rule, Symbol, parse_rule, parse_term, subterms, variables

t = parse_term
ADD_I = [(Symbol("add", 2), 1, [2, 1]), (Symbol("s", 1), 1, [1]), (Symbol("0", 0), 0, [])]
P_I = [(Symbol("p", 1), -1, [1]), (Symbol("s", 1), 1, [1])]


def poly(const, **coeffs):
    return LinearPoly(const, coeffs)


def test_check_monotonicity_examples():
    assert check_monotonicity(LinearInterpretation.of(ADD_I, Mode.STRICT)) is None
    f = Symbol("f", 1)
    assert check_monotonicity(LinearInterpretation.of([(f, 3, [0])], Mode.STRICT)) == MonotonicityViolation(f, 1)
    assert check_monotonicity(LinearInterpretation.of([(Symbol("p", 1), -1, [1])], Mode.WEAK)) is None


def test_strict_mode_rejects_negative_constants():
    p = Symbol("p", 1)
    assert check_monotonicity(LinearInterpretation.of([(p, -1, [1])], Mode.STRICT)) == MonotonicityViolation(p, 0)


def test_negative_coefficients_are_refused():
    with pytest.raises(ValueError):
        LinearInterpretation.of([(Symbol("f", 1), 0, [-1])])


def test_coefficient_count_must_match_arity():
    with pytest.raises(ValueError):
        LinearInterpretation.of([(Symbol("f", 2), 0, [1])])


def test_lower_poly_examples():
    I = LinearInterpretation.of(P_I)
    assert lower_poly(t("p(s(x))"), I) == poly(0, x=1)
    assert lower_poly(t("x"), I) == poly(0, x=1)
    J = LinearInterpretation.of([(Symbol("0", 0), 0, []), (Symbol("s", 1), 1, [1])])
    assert lower_poly(t("s(s(0))"), J) == poly(2)


def test_upper_poly_examples():
    I = LinearInterpretation.of(P_I)
    assert upper_poly(t("p(x)"), I) == poly(0, x=1)
    assert upper_poly(t("y"), I) == poly(0, y=1)
    assert upper_poly(t("s(p(x))"), I) == poly(1, x=1)


def test_orient_examples():
    I = LinearInterpretation.of(ADD_I, Mode.STRICT)
    assert orient(parse_rule("add(s(x),y) -> s(add(x,y))"), I, Mode.STRICT)
    rule = parse_rule("add(x,y) -> add(x,y)")
    assert not orient(rule, I, Mode.STRICT) and orient(rule, I, Mode.WEAK)
    P = LinearInterpretation.of(P_I)
    collapse = parse_rule("p(s(x)) -> x")
    assert orient(collapse, P, Mode.WEAK) and not orient(collapse, P, Mode.STRICT)


def test_unmapped_symbols_default_to_sum_of_arguments():
    I = LinearInterpretation.of([])
    assert lower_poly(t("g(x,s(y))"), I) == poly(0, x=1, y=1)


def test_lower_poly_is_not_clamped():
    # p(a) with p |-> x1 - 1 and a |-> 0 evaluates to 0, the bound says -1
    I = LinearInterpretation.of(P_I + [(Symbol("a", 0), 0, [])])
    assert lower_poly(t("p(a)"), I) == poly(-1)
    assert upper_poly(t("p(a)"), I) == poly(0)


def _assignments(names, values=range(4)):
    for combo in itertools.product(values, repeat=len(names)):
        yield dict(zip(names, combo))


@settings(max_examples=300)
@given(terms(6), interpretations())
def test_bounds_enclose_clamped_value(term, drawn):
    interp, table = drawn
    lo, hi = lower_poly(term, interp), upper_poly(term, interp)
    names = variables(term)
    for alpha in _assignments(names):
        value = clamped_value(to_tuple(term), table, alpha)
        assert lo.evaluate(alpha) <= value <= hi.evaluate(alpha)


@settings(max_examples=300)
@given(terms(6), terms(6), interpretations(), st.sampled_from(list(Mode)))
def test_orient_is_sound_against_clamped_evaluation(lhs, rhs, drawn, strictness):
    interp, table = drawn
    rule = Rule(lhs, rhs)
    if not orient(rule, interp, strictness):
        return
    gap = 1 if strictness is Mode.STRICT else 0
    names = sorted(set(variables(lhs)) | set(variables(rhs)))
    for alpha in _assignments(names):
        left = clamped_value(to_tuple(lhs), table, alpha)
        right = clamped_value(to_tuple(rhs), table, alpha)
        assert left >= right + gap


@given(terms(6), terms(6), interpretations())
def test_strict_implies_weak(lhs, rhs, drawn):
    interp, _ = drawn
    rule = Rule(lhs, rhs)
    if orient(rule, interp, Mode.STRICT):
        assert orient(rule, interp, Mode.WEAK)


@given(terms(6), interpretations(Mode.STRICT))
def test_bounds_coincide_without_negative_constants(term, drawn):
    interp, _ = drawn
    for _, u in subterms(term):
        assert lower_poly(u, interp) == upper_poly(u, interp)


def test_large_coefficients_do_not_wrap():
    big = 2**70
    I = LinearInterpretation.of([(Symbol("f", 1), big, [big])], Mode.STRICT)
    assert lower_poly(t("f(f(x))"), I) == LinearPoly(big + big * big, {"x": big * big})
    assert orient(parse_rule("f(f(x)) -> f(x)"), I, Mode.STRICT)
