from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from trscert.cli import read_manifest  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
MANIFEST = CORPUS / "manifest.txt"

# criterion name -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def corpus_pairs() -> list[tuple[Path, Path]]:
    return read_manifest(MANIFEST)


@pytest.fixture(scope="session")
def corpus():
    """(name, problem_text, proof_text) for every manifest entry."""
    out = []
    for p, q in corpus_pairs():
        out.append((p.name.removesuffix(".problem.xml"), p.read_text("utf-8"), q.read_text("utf-8")))
    return out


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in ACCEPTANCE.items():
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
