"""Command-line entry point.

    certifier PROBLEM.xml PROOF.xml
    certifier --batch MANIFEST [--machine]

Exit status: 0 certified, 1 rejected, 2 usage, I/O or parse error.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, TextIO

from .certifier import certify
from .formats import read_problem, read_proof
from .xmltree import ParseError, parse_xml

EXIT_CERTIFIED = 0
EXIT_REJECTED = 1
EXIT_ERROR = 2


@dataclass(frozen=True)
class RunConfig:
    problem: Optional[Path]
    proof: Optional[Path]
    machine: bool = False
    batch: Optional[Path] = None
    echo_check: bool = True


@dataclass(frozen=True)
class Outcome:
    problem: Path
    status: str  # CERTIFIED, REJECTED or ERROR
    millis: float
    detail: str = ""


def _read(path: Path) -> str:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        parse_xml(data)  # raises with line and column
        raise


def run_pair(problem: Path, proof: Path, echo_check: bool = True) -> Outcome:
    start = time.perf_counter()
    try:
        problem_text = _read(problem)
        proof_text = _read(proof)
        try:
            doc = read_problem(problem_text)
        except ParseError as exc:
            raise ParseError(f"{problem}: {exc}") from None
        try:
            tree = read_proof(proof_text, doc)
        except ParseError as exc:
            raise ParseError(f"{proof}: {exc}") from None
    except (OSError, ParseError) as exc:
        return Outcome(problem, "ERROR", _ms(start), str(exc))
    result = certify(doc, tree, (problem_text, proof_text) if echo_check else None)
    if result.accepted:
        return Outcome(problem, "CERTIFIED", _ms(start))
    return Outcome(problem, "REJECTED", _ms(start), f"{'/'.join(result.path)}: {result.reason}")


def _ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


def read_manifest(path: Path) -> list[tuple[Path, Path]]:
    """Lines ``problem proof`` relative to the manifest; ``#`` starts a comment."""
    pairs = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'problem proof'")
        pairs.append((path.parent / parts[0], path.parent / parts[1]))
    return pairs


def _machine_line(o: Outcome) -> str:
    return f"{o.problem}\t{o.status}\t{o.millis:.0f}\t{o.detail}"


def _human_line(o: Outcome) -> str:
    if o.status == "CERTIFIED":
        return f"{o.problem}: CERTIFIED"
    if o.status == "REJECTED":
        return f"{o.problem}: REJECTED: {o.detail}"
    return f"{o.problem}: ERROR: {o.detail}"


def run_batch(config: RunConfig, out: TextIO, err: TextIO) -> int:
    try:
        pairs = read_manifest(config.batch)
    except (OSError, ValueError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_ERROR
    outcomes = [run_pair(p, q, config.echo_check) for p, q in pairs]
    line = _machine_line if config.machine else _human_line
    for o in outcomes:
        print(line(o), file=out)
    counts = {s: sum(o.status == s for o in outcomes) for s in ("CERTIFIED", "REJECTED", "ERROR")}
    total = sum(o.millis for o in outcomes) / 1000.0
    average = total / len(outcomes) if outcomes else 0.0
    summary = f"{counts['CERTIFIED']} certified, {counts['REJECTED']} rejected"
    if counts["ERROR"]:
        summary += f", {counts['ERROR']} errors"
    prefix = "# " if config.machine else ""
    print(f"{prefix}{summary}", file=out)
    print(f"{prefix}total time {total:.3f} s, average {average:.4f} s per proof", file=out)
    if counts["ERROR"]:
        return EXIT_ERROR
    return EXIT_REJECTED if counts["REJECTED"] else EXIT_CERTIFIED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="certifier",
        description="Check termination and nontermination proofs for term rewrite systems.",
    )
    parser.add_argument("problem", nargs="?", type=Path, help="problem file (XTC subset)")
    parser.add_argument("proof", nargs="?", type=Path, help="proof file")
    parser.add_argument("--batch", type=Path, metavar="MANIFEST", help="certify every pair listed in MANIFEST")
    parser.add_argument("--machine", action="store_true", help="tab-separated output lines")
    parser.add_argument(
        "--unsafe-no-echo-check",
        action="store_true",
        help="skip comparing the parsed input against the raw files (testing only)",
    )
    return parser


def parse_config(argv: Optional[Sequence[str]]) -> RunConfig:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.batch is not None:
        if args.problem is not None:
            parser.error("--batch cannot be combined with problem/proof arguments")
    elif args.problem is None or args.proof is None:
        parser.error("expected PROBLEM and PROOF (or --batch MANIFEST)")
    return RunConfig(args.problem, args.proof, args.machine, args.batch, not args.unsafe_no_echo_check)


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        config = parse_config(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_CERTIFIED
    if not config.echo_check:
        print("WARNING: echo check disabled; results are NOT a certification of the input files", file=err)
    if config.batch is not None:
        return run_batch(config, out, err)
    outcome = run_pair(config.problem, config.proof, config.echo_check)
    if config.machine:
        print(_machine_line(outcome), file=out)
    elif outcome.status == "CERTIFIED":
        print("CERTIFIED", file=out)
    elif outcome.status == "REJECTED":
        print(f"REJECTED: {outcome.detail}", file=out)
    else:
        print(f"error: {outcome.detail}", file=err)
    return {"CERTIFIED": EXIT_CERTIFIED, "REJECTED": EXIT_REJECTED}.get(outcome.status, EXIT_ERROR)


if __name__ == "__main__":
    sys.exit(main())
