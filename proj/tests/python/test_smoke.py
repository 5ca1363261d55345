"""Smoke tests for the python module."""

import math

import pytest

import multitrace as mt


def test_exact_trace_moment():
    v = mt.exact_trace_moment("gue", ["x1^4"])
    assert v["num"] == ["2", "0", "1"]
    assert v["den"] == ["1"]

    v = mt.exact_trace_moment("haar-u", ["u1", "u1'"])
    assert v["num"] == ["0", "0", "1"]


def test_exact_expansion():
    rep = mt.exact_expansion("gue", ["x1^4"], 4)
    assert rep["coefficients"] == ["2", "0", "1", "0"]
    assert rep["exact"] is True


def test_smooth_expansion_matches_quadrature():
    rep = mt.smooth_expansion("gue", ["x1"], ["exp"], 2)
    # integral of e^x against the semicircle on [-2, 2]
    assert abs(rep["coefficients"][0] - 1.5906368) < 1e-5
    assert abs(rep["coefficients"][1]) < 1e-9


def test_scaled_cumulant():
    rep = mt.scaled_cumulant("gue", ["x1^2", "x1^2"])
    assert rep["limit"] == "2"
    assert rep["leading_coeffs"][0] == "0"


def test_weingarten():
    wg = mt.weingarten(2, [1, 1])
    assert wg["num"] == ["1"]
    assert wg["den"] == ["-1", "0", "1"]


def test_bell_number():
    assert mt.bell_number(4) == 15


def test_sampling_and_mc():
    m = mt.sample("gue", 16, seed=3)
    assert m.shape == (16, 16)
    herm_defect = abs(m - m.conj().T).max()
    assert herm_defect < 1e-12

    g = mt.sample("gse", 8, seed=3)
    assert g.shape == (16, 16)

    r = mt.mc_trace_product("gue", ["x1^2"], N=16, draws=500, seed=1)
    assert abs(r["mean"] - 1.0) < 6 * r["stderr"] + 1e-9


def test_spectral_bound():
    assert mt.spectral_bound("gue", "x1") == pytest.approx(2.0)
    assert mt.spectral_bound("haar-u", "u1 + u1'") == pytest.approx(2.0)


def test_cheb_coeffs():
    a = mt.cheb_coeffs(math.exp, 2.0, 129)
    assert abs(sum(a[j] for j in range(0, len(a), 1)) - math.exp(2.0)) < 1e-9


def test_run_job_envelope():
    env = mt.run_job(subcommand="exact", ensemble="gue", traces=["x1^2"], ladder=[4])
    assert env["version"] == mt.__version__
    assert env["result"]["value"]["num"] == ["1"]
    assert env["result"]["evaluations"][0]["value"] == "1"
    assert "content_hash" in env

    # Deterministic envelope for identical jobs.
    env2 = mt.run_job(subcommand="exact", ensemble="gue", traces=["x1^2"], ladder=[4])
    assert env == env2


def test_errors_are_python_exceptions():
    with pytest.raises(ValueError):
        mt.exact_trace_moment("gue", ["x1^20"])  # cap
    with pytest.raises(ValueError):
        mt.exact_trace_moment("nope", ["x1^2"])
