"""Problem files (XTC subset) and proof files: parsing and canonical rendering.

Problem::

    <problem type="termination">
      <trs>
        <rules><rule><lhs>TERM</lhs><rhs>TERM</rhs></rule>...</rules>
        <signature><funcsym><name>f</name><arity>2</arity></funcsym>...</signature>   (optional)
      </trs>
      <strategy>FULL</strategy>                                                         (optional)
    </problem>

TERM is ``<var>x</var>`` or ``<funapp><name>f</name><arg>TERM</arg>...</funapp>``.
Inside proofs a trailing ``#`` on a name denotes the marked symbol, and
contexts may contain a single ``<hole/>``.  The proof vocabulary is
documented in docs/format.md.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .poly import LinearInterpretation, Mode, SymbolInterpretation
from .proof import (
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
from .terms import RESERVED_PREFIX, Context, Fun, Hole, Rule, Symbol, Var
from .xmltree import Attributes, ParseError, XmlDocument, XmlElement, XmlText, parse_xml, to_string

_INT = re.compile(r"-?[0-9]+$")


class FormatError(ParseError):
    def __init__(self, path: Sequence[str], message: str) -> None:
        where = "/".join(path)
        super().__init__(f"{where}: {message}" if where else message)
        self.path = tuple(path)


@dataclass(frozen=True)
class ProblemDoc:
    trs: tuple[Rule, ...]
    signature: dict  # name -> arity, inferred from rules and declarations
    declared_signature: Optional[tuple[tuple[str, int], ...]] = None
    strategy: Optional[str] = None
    problem_type: Optional[str] = "termination"
    declaration: Optional[Attributes] = None


# -- reading helpers -----------------------------------------------------------


class _Reader:
    """Element navigation with path-aware errors and arity bookkeeping."""

    def __init__(self, arities: Optional[dict] = None, allow_marked: bool = True) -> None:
        self.arities: dict[tuple[str, bool], int] = dict(arities or {})
        self.allow_marked = allow_marked

    def fail(self, path, message: str) -> FormatError:
        return FormatError(path, message)

    def children(self, el: XmlElement, path, names: Optional[Sequence[str]] = None) -> list[XmlElement]:
        self.no_attributes(el, path)
        for c in el.children:
            if isinstance(c, XmlText) and c.content.strip():
                raise self.fail(path, f"unexpected text {c.content.strip()!r}")
        kids = el.elements()
        if names is not None:
            got = [k.name for k in kids]
            if got != list(names):
                raise self.fail(path, f"expected children {list(names)}, found {got}")
        return kids

    def no_attributes(self, el: XmlElement, path) -> None:
        if el.attributes:
            raise self.fail(path, f"unknown attribute {el.attributes[0][0]!r} on <{el.name}>")

    def text(self, el: XmlElement, path) -> str:
        self.no_attributes(el, path)
        if el.elements():
            raise self.fail(path, f"<{el.name}> must contain only text")
        value = el.text().strip()
        if not value:
            raise self.fail(path, f"<{el.name}> is empty")
        return value

    def integer(self, el: XmlElement, path) -> int:
        value = self.text(el, path)
        if not _INT.match(value):
            raise self.fail(path, f"expected an integer, found {value!r}")
        return int(value)

    def symbol(self, name: str, arity: int, path) -> Symbol:
        marked = False
        if name.endswith("#"):
            if not self.allow_marked:
                raise self.fail(path, f"symbol names ending in '#' are reserved: {name}")
            name, marked = name[:-1], True
            if not name or name.endswith("#"):
                raise self.fail(path, f"malformed marked symbol {name}#")
        key = (name, marked)
        known = self.arities.setdefault(key, arity)
        if known != arity:
            raise self.fail(path, f"symbol arity mismatch: {name}{'#' if marked else ''}")
        return Symbol(name, arity, marked)

    def term(self, el: XmlElement, path, holes: bool = False):
        path = path + [el.name]
        if el.name == "var":
            name = self.text(el, path)
            if name.startswith(RESERVED_PREFIX):
                raise self.fail(path, f"variable names starting with {RESERVED_PREFIX!r} are reserved")
            return Var(name)
        if el.name == "hole" and holes:
            self.children(el, path, [])
            return Hole()
        if el.name != "funapp":
            raise self.fail(path, f"expected a term, found <{el.name}>")
        kids = self.children(el, path)
        if not kids or kids[0].name != "name":
            raise self.fail(path, "<funapp> must start with <name>")
        name = self.text(kids[0], path + ["name"])
        args = []
        for k in kids[1:]:
            if k.name != "arg":
                raise self.fail(path, f"unexpected <{k.name}> in <funapp>")
            inner = self.children(k, path + ["arg"])
            if len(inner) != 1:
                raise self.fail(path + ["arg"], "<arg> must contain exactly one term")
            args.append(self.term(inner[0], path + ["arg"], holes))
        return Fun(self.symbol(name, len(args), path), tuple(args))

    def rules(self, el: XmlElement, path) -> tuple[Rule, ...]:
        """``<rules>`` element."""
        path = path + ["rules"]
        if el.name != "rules":
            raise self.fail(path, f"expected <rules>, found <{el.name}>")
        out = []
        for i, r in enumerate(self.children(el, path), 1):
            rpath = path + [f"rule[{i}]"]
            if r.name != "rule":
                raise self.fail(rpath, f"expected <rule>, found <{r.name}>")
            lhs_el, rhs_el = self.children(r, rpath, ["lhs", "rhs"])
            lhs = self.term(self.single(lhs_el, rpath + ["lhs"]), rpath + ["lhs"])
            rhs = self.term(self.single(rhs_el, rpath + ["rhs"]), rpath + ["rhs"])
            out.append(Rule(lhs, rhs))
        return tuple(out)

    def wrapped_rules(self, el: XmlElement, path) -> tuple[Rule, ...]:
        """``<trs>``/``<dps>``/``<usableRules>`` holding a single ``<rules>``."""
        path = path + [el.name]
        (inner,) = self.children(el, path, ["rules"])
        return self.rules(inner, path)

    def single(self, el: XmlElement, path) -> XmlElement:
        kids = self.children(el, path)
        if len(kids) != 1:
            raise self.fail(path, f"<{el.name}> must contain exactly one element")
        return kids[0]


# -- problems ------------------------------------------------------------------


def parse_problem(doc: Union[XmlDocument, XmlElement]) -> ProblemDoc:
    declaration = doc.declaration if isinstance(doc, XmlDocument) else None
    root = doc.root if isinstance(doc, XmlDocument) else doc
    reader = _Reader(allow_marked=False)
    path = ["problem"]
    if root.name != "problem":
        raise FormatError([], f"expected <problem>, found <{root.name}>")
    problem_type = None
    for key, value in root.attributes:
        if key != "type":
            raise FormatError(path, f"unknown attribute {key!r} on <problem>")
        if value != "termination":
            raise FormatError(path, f"unsupported problem type {value!r}")
        problem_type = value
    kids = reader.children(XmlElement(root.name, (), root.children), path)
    names = [k.name for k in kids]
    if names not in (["trs"], ["trs", "strategy"]):
        raise FormatError(path, f"expected <trs> and optional <strategy>, found {names}")
    strategy = None
    if len(kids) == 2:
        strategy = reader.text(kids[1], path + ["strategy"])
        if strategy != "FULL":
            raise FormatError(path + ["strategy"], f"unsupported strategy {strategy!r}")
    tpath = path + ["trs"]
    trs_kids = reader.children(kids[0], tpath)
    if [k.name for k in trs_kids] not in (["rules"], ["rules", "signature"]):
        raise FormatError(tpath, f"expected <rules> and optional <signature>, found {[k.name for k in trs_kids]}")
    declared = None
    if len(trs_kids) == 2:
        declared = []
        spath = tpath + ["signature"]
        for i, f in enumerate(reader.children(trs_kids[1], spath), 1):
            fpath = spath + [f"funcsym[{i}]"]
            if f.name != "funcsym":
                raise FormatError(fpath, f"expected <funcsym>, found <{f.name}>")
            name_el, arity_el = reader.children(f, fpath, ["name", "arity"])
            name = reader.text(name_el, fpath + ["name"])
            arity = reader.integer(arity_el, fpath + ["arity"])
            if arity < 0:
                raise FormatError(fpath, f"negative arity for {name}")
            if any(n == name for n, _ in declared):
                raise FormatError(fpath, f"symbol {name} declared twice")
            reader.symbol(name, arity, fpath)
            declared.append((name, arity))
    rules = reader.rules(trs_kids[0], tpath)
    if declared is not None:
        names_declared = {n for n, _ in declared}
        for (name, _), _arity in reader.arities.items():
            if name not in names_declared:
                raise FormatError(tpath, f"symbol {name} is used but not declared in <signature>")
    signature = {name: arity for (name, _), arity in reader.arities.items()}
    return ProblemDoc(
        rules,
        signature,
        tuple(declared) if declared is not None else None,
        strategy,
        problem_type,
        declaration,
    )


# -- proofs --------------------------------------------------------------------

TRS_PROOFS = ("ruleRemoval", "dpTrans", "rIsEmpty")
DP_PROOFS = ("depGraphProc", "redPairUrProc", "monoRedPairUrProc", "pIsEmpty")
DISPROOFS = ("loop", "notWellFormed")


class _ProofReader(_Reader):
    def proof(self, el: XmlElement) -> Proof:
        path = ["proof"]
        if el.name != "proof":
            raise FormatError([], f"expected <proof>, found <{el.name}>")
        body = self.single(el, path)
        if body.name in TRS_PROOFS:
            return Proof(self.trs_proof(body, path))
        if body.name in DISPROOFS:
            return Proof(self.disproof(body, path))
        raise self.unsupported(body, path)

    def unsupported(self, el: XmlElement, path) -> FormatError:
        return FormatError(path, f"unsupported proof technique: {el.name}")

    def trs_proof(self, el: XmlElement, path):
        path = path + [el.name]
        if el.name == "rIsEmpty":
            self.children(el, path, [])
            return RIsEmpty()
        if el.name == "ruleRemoval":
            kids = self.children(el, path)
            self.expect_names(kids, path, ["redPair", "trs", None])
            interp = self.red_pair(kids[0], path, Mode.STRICT)
            trs = self.wrapped_rules(kids[1], path)
            return RuleRemoval(interp, trs, self.sub_trs_proof(kids[2], path))
        if el.name == "dpTrans":
            kids = self.children(el, path)
            self.expect_names(kids, path, ["dps", None])
            dps = self.wrapped_rules(kids[0], path)
            return DpTrans(dps, self.sub_dp_proof(kids[1], path))
        raise self.unsupported(el, path)

    def sub_trs_proof(self, el, path):
        if el.name not in TRS_PROOFS:
            raise self.unsupported(el, path)
        return self.trs_proof(el, path)

    def sub_dp_proof(self, el, path):
        if el.name not in DP_PROOFS:
            raise self.unsupported(el, path)
        return self.dp_proof(el, path)

    def expect_names(self, kids, path, names) -> None:
        got = [k.name for k in kids]
        if len(got) != len(names) or any(n is not None and n != g for n, g in zip(names, got)):
            shown = ["PROOF" if n is None else n for n in names]
            raise FormatError(path, f"expected children {shown}, found {got}")

    def dp_proof(self, el: XmlElement, path):
        path = path + [el.name]
        if el.name == "pIsEmpty":
            self.children(el, path, [])
            return PIsEmpty()
        if el.name == "depGraphProc":
            comps = []
            for i, c in enumerate(self.children(el, path), 1):
                comps.append(self.component(c, path + [f"component[{i}]"]))
            return DepGraphProc(tuple(comps))
        if el.name == "redPairUrProc":
            kids = self.children(el, path)
            self.expect_names(kids, path, ["redPair", "dps", "usableRules", None])
            return RedPairUrProc(
                self.red_pair(kids[0], path, Mode.WEAK),
                self.wrapped_rules(kids[1], path),
                self.wrapped_rules(kids[2], path),
                self.sub_dp_proof(kids[3], path),
            )
        if el.name == "monoRedPairUrProc":
            kids = self.children(el, path)
            self.expect_names(kids, path, ["redPair", "dps", "trs", "usableRules", None])
            return MonoRedPairUrProc(
                self.red_pair(kids[0], path, Mode.STRICT),
                self.wrapped_rules(kids[1], path),
                self.wrapped_rules(kids[2], path),
                self.wrapped_rules(kids[3], path),
                self.sub_dp_proof(kids[4], path),
            )
        raise self.unsupported(el, path)

    def component(self, el: XmlElement, path) -> Component:
        if el.name != "component":
            raise FormatError(path, f"expected <component>, found <{el.name}>")
        kids = self.children(el, path)
        if len(kids) not in (2, 3):
            raise FormatError(path, "<component> needs <dps>, <realScc> and a proof for real SCCs")
        self.expect_names(kids[:2], path, ["dps", "realScc"])
        pairs = self.wrapped_rules(kids[0], path)
        flag = self.text(kids[1], path + ["realScc"])
        if flag not in ("true", "false"):
            raise FormatError(path + ["realScc"], f"expected true or false, found {flag!r}")
        real = flag == "true"
        if real != (len(kids) == 3):
            raise FormatError(path, "a component has a subproof exactly when realScc is true")
        sub = self.sub_dp_proof(kids[2], path) if real else None
        return Component(pairs, real, sub)

    def red_pair(self, el: XmlElement, path, mode: Mode) -> LinearInterpretation:
        path = path + ["redPair"]
        (interp,) = self.children(el, path, ["interpretation"])
        path = path + ["interpretation"]
        kids = self.children(interp, path)
        if len(kids) < 2 or kids[0].name != "type" or kids[1].name != "domain":
            raise FormatError(path, "<interpretation> must start with <type> and <domain>")
        kind = self.single(kids[0], path + ["type"])
        self.children(kind, path + ["type", kind.name], [])
        if kind.name != "linearPolynomial":
            raise FormatError(path + ["type"], f"unsupported interpretation type: {kind.name}")
        domain = self.single(kids[1], path + ["domain"])
        self.children(domain, path + ["domain", domain.name], [])
        if domain.name != "naturals":
            raise FormatError(path + ["domain"], f"unsupported interpretation domain: {domain.name}")
        entries: dict[Symbol, SymbolInterpretation] = {}
        for i, k in enumerate(kids[2:], 1):
            ipath = path + [f"interpret[{i}]"]
            if k.name != "interpret":
                raise FormatError(ipath, f"expected <interpret>, found <{k.name}>")
            parts = self.children(k, ipath)
            self.expect_names(parts[:3], ipath, ["name", "arity", "constant"])
            name = self.text(parts[0], ipath + ["name"])
            arity = self.integer(parts[1], ipath + ["arity"])
            if arity < 0:
                raise FormatError(ipath, f"negative arity for {name}")
            const = self.integer(parts[2], ipath + ["constant"])
            coeffs = []
            for p in parts[3:]:
                if p.name != "coefficient":
                    raise FormatError(ipath, f"expected <coefficient>, found <{p.name}>")
                c = self.integer(p, ipath + ["coefficient"])
                if c < 0:
                    raise FormatError(ipath, f"negative coefficient for {name}")
                coeffs.append(c)
            if len(coeffs) != arity:
                raise FormatError(ipath, f"{name} has arity {arity} but {len(coeffs)} coefficients")
            sym = self.symbol(name, arity, ipath)
            if sym in entries:
                raise FormatError(ipath, f"symbol {sym} interpreted twice")
            entries[sym] = SymbolInterpretation(sym, const, tuple(coeffs))
        return LinearInterpretation(entries, mode)

    def disproof(self, el: XmlElement, path):
        path = path + [el.name]
        if el.name == "notWellFormed":
            self.children(el, path, [])
            return NotWellFormed()
        kids = self.children(el, path)
        if len(kids) < 2 or kids[0].name != "substitution" or kids[1].name != "context":
            raise FormatError(path, "<loop> must start with <substitution> and <context>")
        spath = path + ["substitution"]
        sigma = {}
        for i, entry in enumerate(self.children(kids[0], spath), 1):
            epath = spath + [f"substEntry[{i}]"]
            if entry.name != "substEntry":
                raise FormatError(epath, f"expected <substEntry>, found <{entry.name}>")
            parts = self.children(entry, epath)
            if len(parts) != 2 or parts[0].name != "var":
                raise FormatError(epath, "<substEntry> needs a <var> and a term")
            x = self.term(parts[0], epath)
            if x.name in sigma:
                raise FormatError(epath, f"variable {x} bound twice")
            sigma[x.name] = self.term(parts[1], epath)
        cpath = path + ["context"]
        try:
            context = Context(self.term(self.single(kids[1], cpath), cpath, holes=True))
        except ValueError as exc:
            raise FormatError(cpath, str(exc)) from None
        terms = tuple(self.term(k, path) for k in kids[2:])
        return Loop(sigma, context, terms)


def parse_proof(doc: Union[XmlDocument, XmlElement], signature: Optional[dict] = None) -> Proof:
    """Parse a proof; symbols are checked against ``signature`` (name -> arity)."""
    declaration = doc.declaration if isinstance(doc, XmlDocument) else None
    root = doc.root if isinstance(doc, XmlDocument) else doc
    arities = {}
    for name, arity in (signature or {}).items():
        arities[(name, False)] = arity
        arities[(name, True)] = arity
    proof = _ProofReader(arities).proof(root)
    return Proof(proof.body, declaration)


# -- rendering -----------------------------------------------------------------


def _el(name: str, *children, attrs: Attributes = ()) -> XmlElement:
    return XmlElement(name, attrs, tuple(children))


def _leaf(name: str, text) -> XmlElement:
    return XmlElement(name, (), (XmlText(str(text)),))


def term_to_xml(t) -> XmlElement:
    if isinstance(t, Var):
        return _leaf("var", t.name)
    if isinstance(t, Hole):
        return _el("hole")
    return _el("funapp", _leaf("name", str(t.symbol)), *(_el("arg", term_to_xml(a)) for a in t.args))


def rules_to_xml(rules: Iterable[Rule]) -> XmlElement:
    return _el(
        "rules",
        *(_el("rule", _el("lhs", term_to_xml(r.lhs)), _el("rhs", term_to_xml(r.rhs))) for r in rules),
    )


def problem_to_xml(problem: ProblemDoc) -> XmlDocument:
    trs = [rules_to_xml(problem.trs)]
    if problem.declared_signature is not None:
        trs.append(
            _el(
                "signature",
                *(_el("funcsym", _leaf("name", n), _leaf("arity", a)) for n, a in problem.declared_signature),
            )
        )
    kids = [_el("trs", *trs)]
    if problem.strategy is not None:
        kids.append(_leaf("strategy", problem.strategy))
    attrs = (("type", problem.problem_type),) if problem.problem_type is not None else ()
    return XmlDocument(_el("problem", *kids, attrs=attrs), problem.declaration)


def _interpretation_to_xml(interp: LinearInterpretation) -> XmlElement:
    entries = [
        _el(
            "interpret",
            _leaf("name", str(e.symbol)),
            _leaf("arity", e.symbol.arity),
            _leaf("constant", e.const),
            *(_leaf("coefficient", c) for c in e.coeffs),
        )
        for e in interp.entries.values()
    ]
    return _el(
        "redPair",
        _el(
            "interpretation",
            _el("type", _el("linearPolynomial")),
            _el("domain", _el("naturals")),
            *entries,
        ),
    )


def _step_to_xml(step) -> XmlElement:
    if isinstance(step, (RIsEmpty, PIsEmpty, NotWellFormed)):
        return _el(step.label)
    if isinstance(step, RuleRemoval):
        return _el(
            "ruleRemoval",
            _interpretation_to_xml(step.red_pair),
            _el("trs", rules_to_xml(step.trs)),
            _step_to_xml(step.proof),
        )
    if isinstance(step, DpTrans):
        return _el("dpTrans", _el("dps", rules_to_xml(step.dps)), _step_to_xml(step.proof))
    if isinstance(step, DepGraphProc):
        return _el("depGraphProc", *(_component_to_xml(c) for c in step.components))
    if isinstance(step, RedPairUrProc):
        return _el(
            "redPairUrProc",
            _interpretation_to_xml(step.red_pair),
            _el("dps", rules_to_xml(step.dps)),
            _el("usableRules", rules_to_xml(step.usable_rules)),
            _step_to_xml(step.proof),
        )
    if isinstance(step, MonoRedPairUrProc):
        return _el(
            "monoRedPairUrProc",
            _interpretation_to_xml(step.red_pair),
            _el("dps", rules_to_xml(step.dps)),
            _el("trs", rules_to_xml(step.trs)),
            _el("usableRules", rules_to_xml(step.usable_rules)),
            _step_to_xml(step.proof),
        )
    if isinstance(step, Loop):
        return _el(
            "loop",
            _el(
                "substitution",
                *(_el("substEntry", _leaf("var", x), term_to_xml(t)) for x, t in step.substitution.items()),
            ),
            _el("context", term_to_xml(step.context.term)),
            *(term_to_xml(t) for t in step.terms),
        )
    raise TypeError(f"not a proof step: {step!r}")


def _component_to_xml(c: Component) -> XmlElement:
    kids = [_el("dps", rules_to_xml(c.pairs)), _leaf("realScc", "true" if c.real_scc else "false")]
    if c.proof is not None:
        kids.append(_step_to_xml(c.proof))
    return _el("component", *kids)


def proof_to_xml(proof: Proof) -> XmlDocument:
    return XmlDocument(_el("proof", _step_to_xml(proof.body)), proof.declaration)


# Problem and proof are compared against the raw inputs as one document.
def envelope(problem_text: str, proof_text: str) -> str:
    return f"<certificationInput>\n{problem_text}\n{proof_text}\n</certificationInput>\n"


def serialize(problem: ProblemDoc, proof: Proof, indent: Optional[str] = "  ") -> str:
    return envelope(to_string(problem_to_xml(problem), indent), to_string(proof_to_xml(proof), indent))


def read_problem(text: Union[str, bytes]) -> ProblemDoc:
    return parse_problem(parse_xml(text))


def read_proof(text: Union[str, bytes], problem: Optional[ProblemDoc] = None) -> Proof:
    return parse_proof(parse_xml(text), problem.signature if problem is not None else None)

