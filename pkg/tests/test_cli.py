import json

import pytest

from lndkit.cli.main import main, run_command


def run(*argv):
    code, report, _ = run_command(list(argv))
    return code, report


def test_verify_appendix_n3():
    code, report = run("verify-appendix", "--n", "3", "--ts", "1,2,3")
    assert code == 0
    names = [c.name for c in report.checks]
    assert "delta(y) = 1 + n*x0" in names and "delta'(y) = 0" in names
    span = next(c for c in report.checks if c.name.startswith("p_t span"))
    assert span.details["det"] == 108
    assert report.warnings


def test_verify_appendix_bad_ts():
    code, report = run("verify-appendix", "--n", "3", "--ts", "1,1,2")
    assert code == 2 and "distinct" in report.error


def test_verify_qhp_reports_failed_containment():
    code, report = run("verify-qhp", "--m", "3", "--j", "2")
    status = {c.name: c.status for c in report.checks}
    assert status["delta1 is well defined"] == "PASS"
    assert status["delta1 is equivariant for weights (1, -1, 2) mod 3"] == "PASS"
    assert status["x vanishes where the orbit vectors are dependent"] == "FAIL"
    assert code == 1


def test_ml_russell(capsys):
    assert main(["ml", "--entry", "russell", "--degree", "3"]) == 0
    out = capsys.readouterr().out
    assert "x^3\n      x^2\n      x\n      1" in out


def test_json_is_deterministic(capsys):
    argv = ["separate", "--entry", "dg:3", "--pairs", "3", "--seed", "11", "--format", "json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
    data = json.loads(first)
    assert data["seed"] == 11 and data["verdict"] == "pass"


def test_rationals_are_printed_exactly():
    code, report = run("flow", "--entry", "affine:2", "--element", "u^2", "--time", "3/2", "--format", "json")
    data = report.to_dict()
    assert code == 0
    assert data["checks"][0]["details"]["value_at_time"] == "u^2 + 3*u + 9/4"


@pytest.mark.parametrize("expr,column", [("u^(2)", 3), ("2u", 2), ("1/0*u", 3)])
def test_parse_errors_exit_2(expr, column):
    code, report = run("flow", "--entry", "affine:2", "--element", expr)
    assert code == 2
    assert f"line 1, column {column}" in report.error
    assert report.checks == []


def test_usage_errors_exit_2(capsys):
    assert main(["bogus"]) == 2
    assert main(["ml", "--degree", "2"]) == 2
    assert main(["ml", "--entry", "nope", "--degree", "2"]) == 2
    assert "verdict: error" in capsys.readouterr().out
    code, report = run("ml", "--entry", "russell")
    assert code == 2 and report.error.startswith("usage:")


def test_failed_check_exit_1():
    code, report = run("flow", "--entry", "ym:3:2", "--element", "x")
    assert code == 0
    code, report = run("jacobian", "--entry", "dg:3", "--point", "2,1,2,3/2")
    assert code == 1


def test_document_input(tmp_path):
    doc = {
        "ring": {"vars": ["x", "y", "z"], "relations": ["x*y - z^3 + 1"]},
        "derivations": [
            {"name": "d1", "images": {"y": "3*x*z^2", "z": "x^2"}},
            {"name": "dz", "images": {"z": "1"}},
        ],
        "grading": {"modulus": 3, "weights": {"x": 1, "y": -1, "z": 2}},
        "points": [["1", "7", "2"]],
    }
    path = tmp_path / "y3.json"
    path.write_text(json.dumps(doc))
    code, report = run("check-lnd", str(path), "--derivations", "d1")
    assert code == 0
    code, report = run("check-lnd", str(path), "--derivations", "dz")
    assert code == 1
    code, report = run("flow", str(path), "--derivation", "dz", "--element", "z")
    assert code == 1 and report.checks[0].name == "precondition"


def test_bad_documents(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"ring": {"vars": ["x"],\n  "relations": [x]}}')
    code, report = run("check-lnd", str(path))
    assert code == 2 and "line 2, column" in report.error
    path.write_text(json.dumps({"ring": {"vars": ["x"], "relations": ["x +* 1"]}}))
    code, report = run("check-lnd", str(path))
    assert code == 2 and "ring.relations[0]" in report.error and "column 4" in report.error
    code, report = run("check-lnd", str(tmp_path / "missing.json"))
    assert code == 2


def test_move_plane_and_catalog():
    code, report = run("move-plane", "--src", "0,0;1,0", "--dst", "0,1;1,-1")
    assert code == 0 and report.checks[0].details["steps"] == ["exp(1 * [(-2*u + 1)*d/dv])"]
    code, report = run("catalog", "list")
    assert code == 0 and len(report.checks) == 5


def test_flex_expectations():
    code, _ = run("flex", "--entry", "ym:3:2", "--point", "1,7,2", "--expect", "flexible")
    assert code == 0
    code, _ = run("flex", "--entry", "cstar_c2", "--samples", "2", "--expect", "flexible")
    assert code == 1
    code, _ = run("flex", "--entry", "dg:3", "--point", "1,1,1,1")
    assert code == 2


def test_remaining_subcommands():
    assert run("kernel", "--entry", "affine:2", "--derivation", "d_u", "--degree", "2")[0] == 0
    assert run("derksen", "--entry", "cstar_c2", "--degree", "2")[0] == 0
    assert run("tangency", "--entry", "affine:2", "--derivation", "d_u", "--function", "v")[0] == 0
    assert run("transversality", "--entry", "ym:3:2", "--locus", "x*y*z")[0] == 0
    assert run("check-lnd", "--entry", "dg:4")[0] == 0
