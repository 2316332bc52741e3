from __future__ import annotations

import io
import subprocess
import sys

from conftest import CORPUS, MANIFEST
from trscert.cli import main, read_manifest


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_single_pair_certified():
    code, out, _ = call(str(CORPUS / "add_dp_graph.problem.xml"), str(CORPUS / "add_dp_graph.proof.xml"))
    assert code == 0 and out == "CERTIFIED\n"


def test_single_pair_rejected(tmp_path):
    proof = tmp_path / "proof.xml"
    proof.write_text("<proof><rIsEmpty/></proof>")
    code, out, _ = call(str(CORPUS / "add_dp_graph.problem.xml"), str(proof))
    assert code == 1
    assert out.startswith("REJECTED: proof/rIsEmpty: TRS is not empty")


def test_missing_argument_is_usage_error(capsys):
    code, _, _ = call(str(CORPUS / "empty.problem.xml"))
    assert code == 2
    assert "usage" in capsys.readouterr().err


def test_missing_file_names_path(tmp_path):
    missing = tmp_path / "nope.xml"
    code, out, err = call(str(missing), str(CORPUS / "empty.proof.xml"))
    assert code == 2 and out == ""
    assert str(missing) in err


def test_malformed_xml_reports_line_and_column(tmp_path):
    bad = tmp_path / "bad.xml"
    bad.write_text("<problem>\n  <trs>\n</problem>\n")
    code, _, err = call(str(bad), str(CORPUS / "empty.proof.xml"))
    assert code == 2
    assert str(bad) in err and "line 3, column 1" in err


def test_invalid_utf8_reports_position(tmp_path):
    bad = tmp_path / "bad.xml"
    bad.write_bytes(b"<problem>\n\xff</problem>")
    code, _, err = call(str(bad), str(CORPUS / "empty.proof.xml"))
    assert code == 2 and "line 2" in err


def test_batch_over_corpus():
    code, out, _ = call("--batch", str(MANIFEST))
    lines = out.splitlines()
    n = len(read_manifest(MANIFEST))
    assert code == 0
    assert len(lines) == n + 2
    assert all(line.endswith(": CERTIFIED") for line in lines[:n])
    assert lines[n] == f"{n} certified, 0 rejected"
    assert lines[n + 1].startswith("total time ") and "s per proof" in lines[n + 1]


def test_batch_machine_format(tmp_path):
    (tmp_path / "p.xml").write_text("<problem><trs><rules/></trs></problem>")
    (tmp_path / "ok.xml").write_text("<proof><rIsEmpty/></proof>")
    (tmp_path / "bad.xml").write_text("<proof><notWellFormed/></proof>")
    manifest = tmp_path / "m.txt"
    manifest.write_text("# comment\np.xml ok.xml\np.xml bad.xml\np.xml missing.xml\n")
    code, out, _ = call("--batch", str(manifest), "--machine")
    rows = [line.split("\t") for line in out.splitlines() if not line.startswith("#")]
    assert [r[1] for r in rows] == ["CERTIFIED", "REJECTED", "ERROR"]
    assert rows[1][3] == "proof/notWellFormed: all rules well-formed"
    assert all(r[2].isdigit() for r in rows)
    assert "# 1 certified, 1 rejected, 1 errors" in out
    assert code == 2


def test_batch_with_rejection_exits_one(tmp_path):
    (tmp_path / "p.xml").write_text("<problem><trs><rules/></trs></problem>")
    (tmp_path / "bad.xml").write_text("<proof><notWellFormed/></proof>")
    manifest = tmp_path / "m.txt"
    manifest.write_text("p.xml bad.xml\n")
    code, out, _ = call("--batch", str(manifest))
    assert code == 1 and "0 certified, 1 rejected" in out


def test_bad_manifest(tmp_path):
    manifest = tmp_path / "m.txt"
    manifest.write_text("only-one-column\n")
    code, _, err = call("--batch", str(manifest))
    assert code == 2 and "expected 'problem proof'" in err


def test_batch_excludes_positional_arguments():
    code, _, _ = call("--batch", str(MANIFEST), "x.xml")
    assert code == 2


def test_echo_flag_warns():
    code, _, err = call("--unsafe-no-echo-check", str(CORPUS / "empty.problem.xml"), str(CORPUS / "empty.proof.xml"))
    assert code == 0 and "WARNING" in err


def test_echo_flag_only_skips_the_comparison(tmp_path):
    # the same document with an entity-encoded name: only the echo check notices
    problem = tmp_path / "p.xml"
    problem.write_text(
        "<problem><trs><rules><rule><lhs><funapp><name>&#102;</name><arg><var>x</var></arg></funapp></lhs>"
        "<rhs><var>x</var></rhs></rule></rules></trs></problem>"
    )
    proof = tmp_path / "q.xml"
    proof.write_text(
        "<proof><ruleRemoval><redPair><interpretation><type><linearPolynomial/></type><domain><naturals/></domain>"
        "<interpret><name>f</name><arity>1</arity><constant>1</constant><coefficient>1</coefficient></interpret>"
        "</interpretation></redPair><trs><rules/></trs><rIsEmpty/></ruleRemoval></proof>"
    )
    assert call(str(problem), str(proof))[0] == 1
    assert call("--unsafe-no-echo-check", str(problem), str(proof))[0] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "trscert", str(CORPUS / "loop_root.problem.xml"), str(CORPUS / "loop_root.proof.xml")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "CERTIFIED"
