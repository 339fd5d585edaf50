"""Expression parsing, manifest validation, golden reports, exit codes."""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from leafstab.chart import ChartSpec
from leafstab.cli import load_manifest, main
from leafstab.expressions import ExpressionError, parse_expression, poly_expression
from leafstab.poly import Poly, RationalFunction

from conftest import make_rng, random_poly

PRESETS = Path(__file__).resolve().parents[1] / "src" / "leafstab" / "data" / "presets"
GOLDENS = Path(__file__).resolve().parent / "goldens" / "v1"


@pytest.fixture(scope="module")
def chart():
    return ChartSpec(("x1", "x2"), ("y1",), ("eps",))


# ---------------------------------------------------------------------------
# expression parser
# ---------------------------------------------------------------------------

def test_parse_commutator_is_zero(chart):
    assert parse_expression("x1*y1 - y1*x1", chart).is_zero()


def test_parse_square_expansion(chart):
    got = parse_expression("(x1+y1)^2", chart)
    x1, y1 = Poly.var(chart, "x1"), Poly.var(chart, "y1")
    assert got == RationalFunction(x1 * x1 + (x1 * y1).scale(2) + y1 * y1)


def test_parse_syntax_error_position(chart):
    with pytest.raises(ExpressionError) as err:
        parse_expression("x1 +", chart)
    assert err.value.position == 4


def test_parse_unknown_identifier(chart):
    with pytest.raises(ExpressionError):
        parse_expression("x1 + bogus", chart)


def test_parse_zero_denominator_literal(chart):
    with pytest.raises(ExpressionError):
        parse_expression("1/0 + x1", chart)


def test_parse_rational_literals(chart):
    assert parse_expression("3/4", chart) == RationalFunction.const(chart, Fraction(3, 4))
    assert parse_expression("-2/6*x1", chart) == RationalFunction.var(chart, "x1").scale(Fraction(-1, 3))


def test_parse_rejects_general_division(chart):
    with pytest.raises(ExpressionError):
        parse_expression("x1/2", chart)


def test_parse_print_round_trip(chart):
    rng = make_rng(31)
    for _ in range(40):
        p = random_poly(rng, chart, max_deg=3, n_terms=4, coeff_range=5)
        printed = poly_expression(p)
        again = parse_expression(printed, chart)
        assert again == RationalFunction(p), printed


# ---------------------------------------------------------------------------
# manifests
# ---------------------------------------------------------------------------

def test_load_manifest_presets():
    manifest = load_manifest(PRESETS / "torus-families.ini")
    assert set(manifest.bivectors) == {"pi_eps"}
    assert set(manifest.triples) == {"torus_eps", "area_family"}
    assert manifest.grid is not None and manifest.grid.shape == (32, 32)


def test_manifest_errors_name_offending_key(tmp_path):
    bad = tmp_path / "bad.ini"
    bad.write_text("[chart]\nbase = x1 x2\nfiber = y1\n\n[bivector b]\nx1^x2 = x1 +\n")
    from leafstab.cli import ManifestError

    with pytest.raises(ManifestError) as err:
        load_manifest(bad)
    assert "bivector b.x1^x2" in str(err.value)


def test_manifest_missing_chart(tmp_path):
    bad = tmp_path / "bad.ini"
    bad.write_text("[bivector b]\nx1^x2 = 1\n")
    from leafstab.cli import ManifestError

    with pytest.raises(ManifestError):
        load_manifest(bad)


# ---------------------------------------------------------------------------
# golden reports: identical inputs give byte-identical output
# ---------------------------------------------------------------------------

GOLDEN_CASES = [
    ("criteria-s2xs2.json", ["criteria", "--preset", "s2xs2"]),
    ("criteria-t2-sigma0.json", ["criteria", "--preset", "t2-sigma0"]),
    ("criteria-su2-point.json", ["criteria", "--preset", "su2-point"]),
    ("criteria-aff1-point.json", ["criteria", "--preset", "aff1-point"]),
    ("cohomology-su2-adjoint.json", ["cohomology", "--lie-algebra", "su2", "--coeff", "adjoint", "--degree", "1"]),
    ("cohomology-aff1-normal.json", ["cohomology", "--lie-algebra", "aff1", "--coeff", "normal"]),
    ("cohomology-t2-cone.json", ["cohomology", "--ring-model", "t2-sigma0"]),
    ("check-poisson-pi-eps.json", ["check-poisson", "--manifest", str(PRESETS / "torus-families.ini"), "--bivector", "pi_eps"]),
    ("triple-pi-eps.json", ["triple", "--manifest", str(PRESETS / "torus-families.ini"), "--bivector", "pi_eps"]),
    ("verify-torus-eps.json", ["verify", "--manifest", str(PRESETS / "torus-families.ini"), "--triple", "torus_eps"]),
    ("leaf-check-tilt.json", ["leaf-check", "--manifest", str(PRESETS / "torus-families.ini"), "--triple", "torus_eps", "--section", "tilt"]),
    ("leaf-check-zero.json", ["leaf-check", "--manifest", str(PRESETS / "torus-families.ini"), "--triple", "torus_eps", "--section", "zero"]),
    ("jet-sxi.json", ["jet", "--manifest", str(PRESETS / "sxi-first-order.ini"), "--triple", "sxi_jet"]),
    ("kernel-sxi.json", ["kernel", "--manifest", str(PRESETS / "sxi-first-order.ini"), "--triple", "sxi_jet", "--degree-bound", "2"]),
    ("deform-closed.json", ["deform", "--manifest", str(PRESETS / "sxi-first-order.ini"), "--triple", "sxi_jet", "--cocycle", "closed", "--t", "1/2"]),
    ("deform-curl.json", ["deform", "--manifest", str(PRESETS / "sxi-first-order.ini"), "--triple", "sxi_jet", "--cocycle", "curl", "--t", "1"]),
    ("linearize-area.json", ["linearize", "--manifest", str(PRESETS / "torus-families.ini"), "--triple", "area_family", "--section", "zero"]),
]


@pytest.mark.parametrize("golden,argv", GOLDEN_CASES, ids=[g for g, _ in GOLDEN_CASES])
def test_golden_reports(golden, argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    assert out == (GOLDENS / golden).read_text()
    assert code == 0


def test_reports_are_reproducible(capsys):
    main(["criteria", "--preset", "s2xs2"])
    first = capsys.readouterr().out
    main(["criteria", "--preset", "s2xs2"])
    second = capsys.readouterr().out
    assert first == second


# ---------------------------------------------------------------------------
# semantic CLI checks: key facts and exit codes
# ---------------------------------------------------------------------------

def run_json(argv, capsys):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


def test_criteria_s2xs2_payload(capsys):
    code, report = run_json(["criteria", "--preset", "s2xs2"], capsys)
    crit = report["result"]["criteria"]
    assert code == 0
    assert crit["stability"] and crit["algebroid_stability"] and not crit["strong_stability"]


def test_cohomology_su2_adjoint_degree_one(capsys):
    code, report = run_json(
        ["cohomology", "--lie-algebra", "su2", "--coeff", "adjoint", "--degree", "1"], capsys
    )
    assert code == 0 and report["result"]["dim_in_degree"] == 0


def test_find_leaf_unperturbed(capsys):
    code, report = run_json(
        ["find-leaf", "--family", "torus-epsilon", "--eps", "0", "--s0", "zero", "--grid", "16", "16"],
        capsys,
    )
    assert code == 0
    assert report["result"]["converged"] is True
    assert report["result"]["residual"] == "0"


def test_find_leaf_obstructed_exit_code(capsys):
    code, report = run_json(
        ["find-leaf", "--family", "torus-epsilon", "--eps", "1/10", "--s0", "zero", "--grid", "16", "16"],
        capsys,
    )
    assert code == 3
    assert report["result"]["converged"] is False


def test_validation_exit_code_bad_manifest(tmp_path, capsys):
    bad = tmp_path / "broken.ini"
    bad.write_text("[chart]\nbase = x1 x2\n\n[bivector b]\nnope = 1\n")
    code = main(["check-poisson", "--manifest", str(bad), "--bivector", "b"])
    assert code == 2
    assert "bivector b" in capsys.readouterr().err


def test_validation_exit_code_missing_object(capsys):
    code = main([
        "check-poisson", "--manifest", str(PRESETS / "torus-families.ini"), "--bivector", "ghost",
    ])
    assert code == 2
    assert "ghost" in capsys.readouterr().err
