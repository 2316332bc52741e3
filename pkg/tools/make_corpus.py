"""Regenerate corpus/ from the hand-written certificates below.

Files are written in a few different layouts (indentation, tabs, compact,
padded tags) so that round-trip checks compare against text that was not
produced by the canonical printer.

    python tools/make_corpus.py
"""

from __future__ import annotations

import re
from pathlib import Path

from trscert.formats import ProblemDoc, problem_to_xml, proof_to_xml, read_problem, read_proof
from trscert.poly import LinearInterpretation, Mode
from trscert.proof import (
    Component,
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
from trscert.terms import Context, Symbol, parse_rules, parse_term, symbols
from trscert.xmltree import to_string

OUT = Path(__file__).resolve().parent.parent / "corpus"
DECL = (("version", "1.0"), ("encoding", "UTF-8"))


def rules(text):
    return tuple(parse_rules(text))


def interp(mode, **entries):
    """interp(Mode.WEAK, add_=(1, [2, 1])) -- a trailing '_' marks the symbol."""
    items = []
    for key, (const, coeffs) in entries.items():
        name = key.rstrip("_")
        name = {"zero": "0"}.get(name, name)
        items.append((Symbol(name, len(coeffs), key.endswith("_")), const, coeffs))
    return LinearInterpretation.of(items, mode)


def problem(trs, declared=False, strategy=None, declaration=None):
    sig = {}
    for r in trs:
        for side in (r.lhs, r.rhs):
            for s in symbols(side):
                sig[s.name] = s.arity
    decl_sig = tuple(sig.items()) if declared else None
    return ProblemDoc(trs, sig, decl_sig, strategy, "termination", declaration)


ADD = "add(0,y) -> y; add(s(x),y) -> s(add(x,y))"
MINUS_QUOT = (
    "minus(x,0) -> x; minus(s(x),s(y)) -> minus(x,y); "
    "quot(0,s(y)) -> 0; quot(s(x),s(y)) -> s(quot(minus(x,y),s(y)))"
)
W, S = Mode.WEAK, Mode.STRICT

ADD_PAIR_PROOF = RedPairUrProc(interp(W, add_=(0, [1, 0]), s=(1, [1])), (), (), PIsEmpty())


def quot_proof(usable):
    return DpTrans(
        rules("minus#(s(x),s(y)) -> minus#(x,y); quot#(s(x),s(y)) -> quot#(minus(x,y),s(y)); quot#(s(x),s(y)) -> minus#(x,y)"),
        DepGraphProc(
            (
                Component(
                    rules("quot#(s(x),s(y)) -> quot#(minus(x,y),s(y))"),
                    True,
                    RedPairUrProc(
                        interp(W, quot_=(0, [1, 0]), minus=(0, [1, 0]), s=(1, [1]), zero=(0, [])),
                        (),
                        rules(usable),
                        PIsEmpty(),
                    ),
                ),
                Component(rules("quot#(s(x),s(y)) -> minus#(x,y)"), False),
                Component(
                    rules("minus#(s(x),s(y)) -> minus#(x,y)"),
                    True,
                    RedPairUrProc(interp(W, minus_=(0, [1, 0]), s=(1, [1])), (), (), PIsEmpty()),
                ),
            )
        ),
    )


def t(text):
    return parse_term(text)


CORPUS = {
    "empty": (problem(()), RIsEmpty()),
    "add_rule_removal": (
        problem(rules(ADD)),
        RuleRemoval(interp(S, add=(1, [2, 1]), s=(1, [1]), zero=(0, [])), (), RIsEmpty()),
    ),
    "add_removal_then_dp": (
        problem(rules(ADD), declared=True),
        RuleRemoval(
            interp(S, add=(1, [1, 1]), s=(1, [1]), zero=(0, [])),
            rules("add(s(x),y) -> s(add(x,y))"),
            DpTrans(
                rules("add#(s(x),y) -> add#(x,y)"),
                DepGraphProc((Component(rules("add#(s(x),y) -> add#(x,y)"), True, ADD_PAIR_PROOF),)),
            ),
        ),
    ),
    "add_dp_graph": (
        problem(rules(ADD), strategy="FULL"),
        DpTrans(
            rules("add#(s(x),y) -> add#(x,y)"),
            DepGraphProc((Component(rules("add#(s(x),y) -> add#(x,y)"), True, ADD_PAIR_PROOF),)),
        ),
    ),
    "add_dp_redpair": (
        problem(rules(ADD), declaration=DECL),
        DpTrans(rules("add#(s(x),y) -> add#(x,y)"), ADD_PAIR_PROOF),
    ),
    "add_renamed_pairs": (
        problem(rules(ADD)),
        DpTrans(
            rules("add#(s(u),v) -> add#(u,v)"),
            DepGraphProc((Component(rules("add#(s(w),z) -> add#(w,z)"), True, ADD_PAIR_PROOF),)),
        ),
    ),
    "add_extra_pair": (
        problem(rules(ADD)),
        DpTrans(
            rules("add#(s(x),y) -> add#(x,y); add#(s(s(x)),y) -> add#(x,y)"),
            DepGraphProc(
                (
                    Component(
                        rules("add#(s(x),y) -> add#(x,y); add#(s(s(x)),y) -> add#(x,y)"),
                        True,
                        ADD_PAIR_PROOF,
                    ),
                )
            ),
        ),
    ),
    "quot_graph": (problem(rules(MINUS_QUOT), declaration=DECL), quot_proof("minus(x,0) -> x; minus(s(x),s(y)) -> minus(x,y)")),
    "quot_usable_superset": (
        problem(rules(MINUS_QUOT)),
        quot_proof("minus(u,0) -> u; minus(s(u),s(v)) -> minus(u,v); quot(0,s(y)) -> 0"),
    ),
    "even_odd": (
        problem(rules("even(0) -> true; even(s(x)) -> odd(x); odd(0) -> false; odd(s(x)) -> even(x)")),
        DpTrans(
            rules("even#(s(x)) -> odd#(x); odd#(s(x)) -> even#(x)"),
            DepGraphProc(
                (
                    Component(
                        rules("even#(s(x)) -> odd#(x); odd#(s(x)) -> even#(x)"),
                        True,
                        RedPairUrProc(interp(W, even_=(0, [1]), odd_=(0, [1]), s=(1, [1])), (), (), PIsEmpty()),
                    ),
                )
            ),
        ),
    ),
    "mono_removes_rule": (
        problem(rules("f(s(x)) -> f(g(x)); g(x) -> x")),
        DpTrans(
            rules("f#(s(x)) -> f#(g(x)); f#(s(x)) -> g#(x)"),
            MonoRedPairUrProc(
                interp(S, f_=(0, [1]), s=(1, [1]), g=(1, [1]), g_=(0, [1])),
                rules("f#(s(x)) -> f#(g(x))"),
                (),
                rules("g(x) -> x"),
                RedPairUrProc(interp(W, f_=(0, [1]), s=(1, [1]), g=(0, [1])), (), (), PIsEmpty()),
            ),
        ),
    ),
    "mono_keeps_rules": (
        problem(rules(ADD)),
        DpTrans(
            rules("add#(s(x),y) -> add#(x,y)"),
            MonoRedPairUrProc(
                interp(S, add_=(0, [1, 1]), s=(1, [1])),
                (),
                (),
                (),
                PIsEmpty(),
            ),
        ),
    ),
    "graph_single_trivial": (
        problem(rules("f(x) -> g(x); g(a) -> b")),
        DpTrans(rules("f#(x) -> g#(x)"), DepGraphProc((Component(rules("f#(x) -> g#(x)"), False),))),
    ),
    "graph_chain_trivial": (
        problem(rules("f(x) -> g(x); g(x) -> h(x); h(a) -> b")),
        DpTrans(
            rules("f#(x) -> g#(x); g#(x) -> h#(x)"),
            DepGraphProc(
                (
                    Component(rules("f#(x) -> g#(x)"), False),
                    Component(rules("g#(x) -> h#(x)"), False),
                )
            ),
        ),
    ),
    "graph_then_partial_removal": (
        problem(rules("f(s(x)) -> g(x); g(x) -> f(x)")),
        DpTrans(
            rules("f#(s(x)) -> g#(x); g#(x) -> f#(x)"),
            RedPairUrProc(
                interp(W, f_=(0, [1]), g_=(0, [1]), s=(1, [1])),
                rules("g#(x) -> f#(x)"),
                (),
                DepGraphProc((Component(rules("g#(x) -> f#(x)"), False),)),
            ),
        ),
    ),
    "negative_constant": (
        problem(rules("f(s(s(x))) -> f(p(s(x))); p(s(x)) -> x")),
        DpTrans(
            rules("f#(s(s(x))) -> f#(p(s(x))); f#(s(s(x))) -> p#(s(x))"),
            RedPairUrProc(
                interp(W, f_=(0, [1]), s=(1, [1]), p=(-1, [1]), p_=(0, [1])),
                (),
                rules("p(s(x)) -> x"),
                PIsEmpty(),
            ),
        ),
    ),
    "rule_removal_twice": (
        problem(rules("f(s(x)) -> f(x); g(x) -> x")),
        RuleRemoval(
            interp(S, f=(0, [1]), s=(1, [1]), g=(0, [1])),
            rules("f(s(x)) -> f(x); g(x) -> x"),
            RuleRemoval(interp(S, f=(0, [1]), s=(1, [1]), g=(1, [1])), (), RIsEmpty()),
        ),
    ),
    "loop_root": (
        problem(rules("f(x) -> f(s(x))")),
        Loop({"x": t("s(x)")}, Context(t("[]")), (t("f(x)"),)),
    ),
    "loop_context": (
        problem(rules("f(x) -> g(f(x))")),
        Loop({}, Context(t("g([])")), (t("f(x)"),)),
    ),
    "loop_two_steps": (
        problem(rules("f(x) -> g(x); g(x) -> f(x)")),
        Loop({}, Context(t("[]")), (t("f(x)"), t("g(x)"))),
    ),
    "loop_three_steps": (
        problem(rules("a -> b; b -> c; c -> h(a)"), declaration=DECL),
        Loop({}, Context(t("h([])")), (t("a"), t("b"), t("c"))),
    ),
    "loop_inner_position": (
        problem(rules("a -> b; b -> a; k(c) -> c"), declared=True, strategy="FULL"),
        Loop({}, Context(t("[]")), (t("k(a)"), t("k(b)"))),
    ),
    "not_wf_variable_lhs": (problem(rules("x -> f(x)")), NotWellFormed()),
    "not_wf_fresh_rhs_variable": (problem(rules("f(x) -> x; g(x) -> h(x,y)")), NotWellFormed()),
}


def layout(text: str, style: int) -> str:
    if style == 0:
        return text
    if style == 1:
        return text.replace("  ", "\t")
    if style == 2:
        return re.sub(r">\s+<", "><", text).strip() + "\n"
    # padded: blank lines between top-level children, space before '>' of start tags
    text = re.sub(r"<([A-Za-z]+)>", r"<\1 >", text)
    return text.replace("\n  <", "\n\n  <")


def main() -> None:
    OUT.mkdir(exist_ok=True)
    manifest = []
    for i, (name, (prob, body)) in enumerate(CORPUS.items()):
        proof = Proof(body, prob.declaration)
        style = i % 4
        indent = "    " if style == 3 else "  "
        ptext = layout(to_string(problem_to_xml(prob), indent), style)
        qtext = layout(to_string(proof_to_xml(proof), indent), style)
        # sanity: the files parse back to the same structures
        assert read_problem(ptext) == prob, name
        assert read_proof(qtext, prob) == proof, name
        (OUT / f"{name}.problem.xml").write_text(ptext, encoding="utf-8")
        (OUT / f"{name}.proof.xml").write_text(qtext, encoding="utf-8")
        manifest.append(f"{name}.problem.xml {name}.proof.xml")
    (OUT / "manifest.txt").write_text(
        "# problem proof (paths relative to this file)\n" + "\n".join(manifest) + "\n", encoding="utf-8"
    )
    print(f"wrote {len(manifest)} pairs to {OUT}")


if __name__ == "__main__":
    main()
