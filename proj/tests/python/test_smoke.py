"""Smoke tests for the python bindings.

The extension module is located either through an installed ``fkvx`` package
or, inside the build tree, through the FKVX_MODULE_DIR environment variable
set by the ctest harness.
"""

import math
import os
import sys

import pytest

_module_dir = os.environ.get("FKVX_MODULE_DIR")
if _module_dir:
    sys.path.insert(0, _module_dir)

try:
    import _fkvx as fkvx
except ImportError:  # installed package layout
    fkvx = pytest.importorskip("fkvx")


def test_drift_and_diffusion_closed_forms():
    assert fkvx.drift("case3", 0.1, 2.0) == pytest.approx(0.2, rel=1e-14)
    assert fkvx.diffusion("case3", 0.2, 5.0) == pytest.approx(1.0, rel=1e-14)
    # x = 1 removes the exponent dependence
    assert fkvx.drift("case1", 0.1, 1.0) == pytest.approx(0.1, rel=1e-14)


def test_unknown_case_raises():
    with pytest.raises(ValueError):
        fkvx.drift("case9", 0.1, 1.0)


def test_verify_case_hypotheses():
    for case in ("case1", "case2", "case3"):
        result = fkvx.verify_case(case)
        for side in ("p", "q"):
            assert result[side]["pass"] is True
            assert result[side]["h1"] is True
            assert result[side]["h2"] is True
            assert result[side]["h3"] is True


def test_feller_classification():
    for case in ("case1", "case2", "case3"):
        report = fkvx.feller_test(case)
        assert report.non_attainable
        assert report.liminf >= -1e-8
        assert len(report.values) == len(report.probes) == 11


def test_solve_pde_small_grid():
    xs, u = fkvx.solve_pde("case3", n_x=80, n_t=80)
    assert len(xs) == len(u) == 80
    assert xs[0] == pytest.approx(0.1)
    assert xs[-1] == pytest.approx(50.0)
    # bounded by the payoff sup and damped by the potential
    assert all(0.0 <= v <= math.exp(-0.01) + 1e-12 for v in u)


def test_estimate_u_matches_pde_and_oracle():
    xs, u = fkvx.solve_pde("case3", n_x=80, n_t=200)
    estimates = fkvx.estimate_u("case3", [1.0], n_paths=4000, n_steps=200, seed=7)
    est = estimates[0]
    oracle = fkvx.gbm_quadrature_u(
        0.1, 0.2, 1.0, 0.1, lambda s: math.exp(-0.1 * s), 1.0
    )
    assert est.n_paths == 4000
    assert est.std_error > 0.0
    assert abs(est.mean - oracle) <= 4.0 * est.std_error + 2e-3


def test_estimate_u_deterministic():
    a = fkvx.estimate_u("case1", [0.5, 2.0], n_paths=200, n_steps=20, seed=11)
    b = fkvx.estimate_u("case1", [0.5, 2.0], n_paths=200, n_steps=20, seed=11)
    assert [e.mean for e in a] == [e.mean for e in b]


def test_run_case_report():
    report = fkvx.run_case("case2", n_x=40, n_t=40, n_paths=200, n_steps=40, seed=3)
    assert report.case_id == "case2"
    assert len(report.xs) == len(report.u_pde) == len(report.u_sde_mean) == 40
    assert report.max_abs_error == max(report.pointwise_error)
    assert report.feller.non_attainable
    assert "case2" in report.text()
