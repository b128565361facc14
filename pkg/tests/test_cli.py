import json

import pytest

from quartic_delta.cli import EXIT_FAIL, EXIT_GUARD, EXIT_OK, EXIT_PARSE, run
from quartic_delta.poly import IntPolynomial, parse_polynomial


@pytest.fixture
def form_file(tmp_path):
    def write(F: IntPolynomial, name="f.json"):
        p = tmp_path / name
        p.write_text(json.dumps(F.to_json()))
        return str(p)

    return write


def read(path):
    return json.loads(path.read_text())


def test_optimize_appendix(tmp_path):
    out = tmp_path / "r.json"
    assert run(["optimize", "--case", "appendix", "--n", "30", "--report", str(out)]) == EXIT_OK
    rep = read(out)
    from fractions import Fraction

    assert Fraction(rep["result"]["cases"]["range1"]["value"]) < Fraction(-1, 10)
    assert rep["version"] and len(rep["config_hash"]) == 64


def test_reports_are_reproducible(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["expsum", "check-mult", "--trials", "10", "--seed", "3"]
    assert run([*args, "--report", str(a)]) == EXIT_OK
    assert run([*args, "--report", str(b)]) == EXIT_OK
    ra, rb = read(a), read(b)
    ra.pop("elapsed"), rb.pop("elapsed")
    assert ra == rb


def test_malformed_form_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "terms": [{"e": [4], "c": "1"}]}')
    assert run(["count", "--form", str(bad), "--P", "3"]) == EXIT_PARSE
    bad.write_text("not json")
    assert run(["count", "--form", str(bad), "--P", "3"]) == EXIT_PARSE


def test_unknown_subcommand_exits_2():
    assert run(["frobnicate"]) == EXIT_PARSE
    assert run(["count", "--P", "x"]) == EXIT_PARSE


def test_dense_form_hits_guard(form_file):
    F = parse_polynomial(" + ".join(f"x{i}**2*x{i % 12 + 1}**2" for i in range(1, 13)), 12)
    assert run(["count", "--form", form_file(F), "--P", "10"]) == EXIT_GUARD


def test_count_with_ladder_and_csv(form_file, tmp_path):
    F = IntPolynomial.diagonal([1, 1, -1, -1])
    rep, table = tmp_path / "c.json", tmp_path / "c.csv"
    code = run(["count", "--form", form_file(F), "--P", "3", "--ladder", "2,3,4,5", "--report", str(rep), "--csv", str(table)])
    assert code == EXIT_OK
    assert read(rep)["result"]["result"]["count"] == 112
    assert table.read_text().splitlines()[0] == "P,count"


def test_verify_delta_fails_on_tight_tolerance(tmp_path):
    out = tmp_path / "d.json"
    assert run(["verify-delta", "--Q", "5", "--tol", "1e-6", "--report", str(out)]) == EXIT_FAIL
    assert run(["verify-delta", "--Q", "5", "--report", str(out)]) == EXIT_OK
    assert read(out)["result"]["max_error"] <= 1e-2


def test_singular_series_and_integral(form_file, tmp_path):
    f = form_file(IntPolynomial.diagonal([1, 1, 1, -1, -1, -1]))
    out = tmp_path / "s.json"
    base = ["singular-series", "--form", f, "--R", "50", "--mode", "diagonal-fast", "--report", str(out)]
    assert run([*base, "--ladder", "25,50,100,200"]) == EXIT_OK
    assert read(out)["result"]["convergence"]["psi_hat"] > 0
    # six variables converge slowly: the increments still grow over 25..100
    assert run([*base, "--ladder", "25,50,100"]) == EXIT_FAIL
    assert run(["singular-integral", "--form", f, "--R", "10", "--weight", "1/2,1/2,1/2,1/2,1/2,1/2", "--report", str(out)]) == EXIT_OK
    assert read(out)["result"]["integral"]["value"] > 0
    assert run(["singular-integral", "--form", f, "--R", "10", "--weight", "1/2,1/2"]) == EXIT_PARSE


def test_expsum_T_against_direct(form_file, tmp_path):
    f = form_file(IntPolynomial.diagonal([1, 2]), "f.json")
    g = form_file(parse_polynomial("x1**3 + x2", 2), "g.json")
    out = tmp_path / "t.json"
    assert run(["expsum", "T", "--q", "15", "--f", f, "--g", g, "--v", "1,2", "--check", "--report", str(out)]) == EXIT_OK
    assert read(out)["result"]["rel_error"] <= 1e-9
    assert run(["expsum", "T", "--q", "15", "--f", f, "--g", g, "--v", "1"]) == EXIT_PARSE


def test_inline_form_matches_file(tmp_path, form_file):
    F = parse_polynomial("x1^4 + x2^4 - x3^4 - x4^4")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["count", "--form", "x1^4 + x2^4 - x3^4 - x4^4", "--P", "5", "--report", str(a)]) == EXIT_OK
    assert run(["count", "--form", form_file(F), "--P", "5", "--report", str(b)]) == EXIT_OK
    assert read(a)["result"]["result"]["count"] == read(b)["result"]["result"]["count"]
    assert run(["count", "--form", "x1^4 + (", "--P", "5"]) == EXIT_PARSE
