import math

import pytest

import gapcheck as gc


def test_constants():
    assert math.isclose(gc.gap_constant(4), 4.0 / math.sqrt(3.0), rel_tol=1e-12)
    assert math.isclose(gc.gap_constant(3), 2.0 / math.sqrt(1.5), rel_tol=1e-12)
    assert math.isclose(gc.commutator_constant(4), math.sqrt(2.0), rel_tol=1e-12)
    ratio = gc.gap_constant(5) / gc.gap_constant(5, convention="tensor")
    assert math.isclose(ratio, math.sqrt(2.0), rel_tol=1e-12)


def test_trilinear_saturation():
    assert math.isclose(gc.equality_ratio(), 1.0, abs_tol=1e-10)
    assert gc.sharpness_search(starts=4, iterations=1500) >= 0.999


def test_curvature_catalog():
    expected = {
        "R4": (0.0, 0.0),
        "S4": (12.0, 0.0),
        "H4": (-12.0, 0.0),
        "S3xR": (6.0, 0.0),
        "CP2": (24.0, 4.0),
        "CH2": (-24.0, 2.0),
    }
    assert sorted(gc.spaces) == sorted(expected)
    for space, (scalar, wplus) in expected.items():
        data = gc.curvature(space)
        assert data["scalar"] == pytest.approx(scalar, abs=1e-5)
        assert data["weyl_plus_spectrum"][2] == pytest.approx(wplus, abs=1e-5)
        assert data["max_residual"] < 1e-6


def test_weights_and_poincare():
    assert gc.weight_value("carron", 2.0) == pytest.approx(0.25, abs=1e-12)
    assert gc.weight_value("ak", 2.0) == pytest.approx(0.25, abs=1e-8)
    res = gc.poincare_ratio("R4", "carron", "linear", r=10.0)
    assert res["ratio"] >= 1.0 - 1e-6
    assert gc.annulus_log_bound("R4", 4.0, 100.0) == pytest.approx(
        2.0 * math.pi**2, rel=1e-6
    )


def test_instanton():
    assert gc.instanton_norm((0.0, 0.0, 0.0, 0.0)) == pytest.approx(
        math.sqrt(48.0), rel=1e-10
    )
    assert gc.charge() == pytest.approx(1.0, abs=1e-10)
    assert gc.charge(connection="anti_bpst") == pytest.approx(-1.0, abs=1e-10)
    assert gc.kato_ratio((1.0, 0.0, 0.0, 0.0)) == pytest.approx(1.5, abs=1e-6)


def test_gap_verdicts():
    assert gc.gap_verdict("T5", "S4")["verdict"] == "equality_branch"
    assert gc.gap_verdict("T5", "S4", connection="zero")["verdict"] == "vanishing_branch"
    flat = gc.gap_verdict("C10", "R4")
    assert flat["verdict"] == "hypothesis_violated"
    assert flat["violation_witness"] is not None
    expected = math.sqrt(3.0) - 2.0 / gc.gap_constant(4)
    assert abs(gc.threshold("C10", "R4", 1.0) - math.sqrt(3.0)) == pytest.approx(
        expected, abs=1e-9
    )
    with pytest.raises(ValueError):
        gc.gap_verdict("T9", "S4")


def test_pointwise_inequality():
    res = gc.pointwise_inequality("S4", 1.0)
    assert not res["skipped"]
    assert abs(res["lhs"]) < 1e-3 and abs(res["rhs"]) < 1e-3
    flat = gc.pointwise_inequality("R4", 1.0, p=0.75)
    assert flat["slack"] >= -(1e-3 * (1.0 + abs(flat["rhs"])) + flat["fd_error"])
