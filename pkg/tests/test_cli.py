"""CLI subcommands: report schemas, determinism, validation, exit codes."""

import json
from fractions import Fraction

import pytest

from packbound.cli import main, sample_n_large_values
from packbound.report import frac_decimal, frac_str, render_layered
from packbound.layered import LayeredContext

F = Fraction


def run_cli(argv):
    try:
        return main(argv)
    except SystemExit as exc:  # argparse errors
        return exc.code


def test_frac_decimal_rounding():
    assert frac_decimal(F(1, 3), 6) == "0.333333"
    assert frac_decimal(F(2, 3), 6) == "0.666667"
    assert frac_decimal(F(-1, 8), 3) == "-0.125"
    assert frac_decimal(F(5), 0) == "5"
    assert frac_str(F(8533, 2352)) == "1219/336"  # canonical reduced form
    assert frac_str(F(7)) == "7"


def test_render_layered_huge_exponent():
    ctx = LayeredContext(10)
    v = ctx.value(F(1, 7), {2**70: F(-3, 14)})
    doc = render_layered(v)
    assert doc["base"]["rational"] == "1/7"
    assert doc["atoms"] == [[str(2**70), "-3/14"]]


def test_sample_includes_extremes():
    vals = sample_n_large_values(2058, 20)
    assert vals[0] == 0 and vals[-1] == 2058
    assert len(vals) == 20


def test_optimize_command(tmp_path, capsys):
    out = tmp_path / "opt.json"
    assert run_cli(["optimize", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["schema"] == 1
    assert doc["r_star"]["decimal"].startswith("1.5427809064729")
    assert doc["w_star"]["decimal"].startswith("1.0715238669087")
    assert doc["residuals"]["defining_quadratic"] == 0
    assert len(doc["sweep"]) == 55


def test_verify_rejects_out_of_range_w(capsys):
    code = run_cli(["verify", "--t", "3", "--w", "1.6"])
    assert code == 2
    assert "must lie in [1, 1.5]" in capsys.readouterr().err


def test_simulate_rejects_bad_params(capsys):
    assert run_cli(["simulate", "--algorithm", "first-fit", "--t", "2"]) == 2
    assert run_cli(["simulate", "--algorithm", "nope"]) == 2


@pytest.fixture(scope="module")
def simulate_next_fit(tmp_path_factory):
    out = tmp_path_factory.mktemp("reports") / "nf.json"
    code = main(
        ["simulate", "--algorithm", "next-fit", "--t", "3", "--m", "1",
         "--out", str(out)]
    )
    return code, out


def test_simulate_report_schema(simulate_next_fit):
    code, out = simulate_next_fit
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["schema"] == 1
    assert doc["algorithm"] == "next-fit"
    assert len(doc["stopping_points"]) == 8
    assert doc["n_large"] == doc["stats"]["nu"]["A"]
    assert all(doc["checks"].values())
    labels = [p["label"] for p in doc["stopping_points"]]
    assert labels == ["C3", "C2", "A", "B11", "B21", "B22", "B31", "B32"]
    # transcript rows cover every item exactly once per branch view
    assert len(doc["transcript"]["trunk"]) == 3 * 2058


def test_simulate_reports_are_byte_stable(simulate_next_fit, tmp_path):
    _, first = simulate_next_fit
    again = tmp_path / "nf2.json"
    code = main(
        ["simulate", "--algorithm", "next-fit", "--t", "3", "--m", "1",
         "--out", str(again)]
    )
    assert code == 0
    assert first.read_bytes() == again.read_bytes()


def test_verify_fast_path(tmp_path):
    out = tmp_path / "verify.json"
    code = run_cli(
        ["verify", "--t", "3", "--skip-constructions", "--out", str(out)]
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["kind"] == "verification"
    assert all(doc["checks"].values())
    table = doc["certification"]["price_table"]
    assert table["type2"]["const"] == "48/7"
    assert table["type1"]["w_coefficient"] == "1"
