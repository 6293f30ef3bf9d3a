import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from liejet.limits import fit_rate, geometric_steps, richardson_table


def test_geometric_steps():
    assert geometric_steps(0.5, 3) == [0.25, 0.125, 0.0625]


@given(st.floats(0.5, 4.0), st.floats(0.1, 10.0))
def test_fit_recovers_power_law(q, c):
    xs = geometric_steps(0.5, 10)
    fit = fit_rate(xs, [c * x ** q for x in xs], 0.0)
    assert fit.rate == pytest.approx(q, abs=1e-9)
    assert fit.tail_rate() == pytest.approx(q, abs=1e-9)
    assert fit.correlation == pytest.approx(1.0, abs=1e-12)


def test_floor_handling():
    xs = geometric_steps(1.0, 6)
    at_floor = fit_rate(xs, [1e-17] * 6, 1e-15)
    assert at_floor.at_noise_floor and at_floor.rate == math.inf
    assert not any(at_floor.used)
    assert math.isnan(fit_rate(xs, [float("nan")] * 6, 1e-15).rate)
    partial = fit_rate(xs, [x ** 2 for x in xs[:4]] + [1e-20, 1e-20], 1e-15)
    assert partial.used == [True] * 4 + [False] * 2
    assert partial.rate == pytest.approx(2.0)


def test_tail_rate_ignores_preasymptotic_steps():
    # h^2 - 60 h^4 nearly vanishes at h = 1/8; only smaller steps show order 2
    xs = [2.0 ** -k for k in range(2, 12)]
    res = [abs(h * h - 60 * h ** 4) for h in xs]
    fit = fit_rate(xs, res, 1e-15)
    assert abs(fit.rate - 2.0) > 0.1
    assert fit.tail_rate() == pytest.approx(2.0, abs=1e-3)


def test_table_rows():
    fit = fit_rate([0.5, 0.25], [0.25, 0.0625], 0.0)
    assert fit.table() == [{"x": 0.5, "residual": 0.25, "used": True},
                           {"x": 0.25, "residual": 0.0625, "used": True}]


def test_richardson_removes_powers():
    # q(s) = 3 + 2 s - 5 s^2 + 7 s^3: three levels leave only rounding
    s0 = 0.25
    ss = [s0 / 2 ** k for k in range(6)]
    qs = [3 + 2 * s - 5 * s * s + 7 * s ** 3 for s in ss]
    table = richardson_table(qs, 2.0, 3)
    assert abs(table[-1][-1] - 3) <= 1e-13
    assert abs(table[0][-1] - 3) > 1e-3


def test_richardson_on_arrays():
    ss = [0.1 / 2 ** k for k in range(5)]
    qs = [np.array([1.0 + s, 2.0 - 3 * s * s]) for s in ss]
    out = richardson_table(qs, 2.0, 2)[-1][-1]
    assert np.allclose(out, [1.0, 2.0], atol=1e-14)
