"""Acceptance criteria, one test (and one PASS/FAIL line) each.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""
import json
import subprocess
import sys
import time

import numpy as np

from liejet.backends import alg_commutator
from liejet.forms import exterior_derivative
from liejet.harness.props_algebra import landau_rule_failures
from liejet.harness.props_geometry import (
    commutator_residual,
    dd_residual,
    domega_explicit,
    dtheta_explicit,
    jacobi_residual,
    leibniz_residual,
    random_one_form,
    random_two_form,
    second_difference_fit,
    taylor2_oracle_fit,
)
from liejet.jets import jet_inverse, jet_mul, unit_jet
from liejet.kernels import (
    Curve,
    antif_check,
    bilinear_kernel,
    csf_check,
    gaussian_kernel,
    lr_bracket_check,
)
from liejet.motions import (
    commutator_remainder_rate,
    exp_motion,
    initial_direction,
    motion_group_commutator,
    motion_inverse,
    motion_product,
)
from liejet.sampling import (
    random_matrix,
    random_point,
    random_polynomial,
    random_polynomial_field,
    random_rational_jet,
)
from liejet.vectorfields import accessible_direction_check


def rng_for(n: int) -> np.random.Generator:
    return np.random.default_rng([2024, n])


def test_criterion_01_jet_inverse_exact(criterion):
    rng = rng_for(1)
    start = time.perf_counter()
    bad = 0
    for k in range(500):
        kind = "scalar" if k % 2 == 0 else "matrix"
        F = random_rational_jet(rng, int(rng.integers(1, 9)), kind, 3, invertible=True)
        bad += jet_mul(F, jet_inverse(F)) != unit_jet(F)
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 5.0
    criterion(1, "jet inverse exactness", ok, f"{bad}/500 inexact, {elapsed:.2f} s (< 5 s)")
    assert ok


def test_criterion_02_group_commutator(criterion):
    rng = rng_for(2)
    start = time.perf_counter()
    worst, min_rate = 0.0, np.inf
    for _ in range(50):
        X, Y = random_matrix(rng, 3), random_matrix(rng, 3)
        A, B = exp_motion(X), exp_motion(Y)
        got = initial_direction(motion_group_commutator(A, B)).value
        worst = max(worst, (got - alg_commutator(X, Y)).norm() / (X.norm() * Y.norm()))
        min_rate = min(min_rate, commutator_remainder_rate(A, B))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-7 and min_rate >= 2.9 and elapsed < 20.0
    criterion(2, "group commutator direction and remainder", ok,
              f"rel error {worst:.2e} (<= 1e-7), min rate {min_rate:.3f} (>= 2.9), "
              f"{elapsed:.2f} s (< 20 s)")
    assert ok


def test_criterion_03_inverse_and_product(criterion):
    rng = rng_for(3)
    worst_inv = worst_prod = 0.0
    for _ in range(100):
        X, Y = random_matrix(rng, 3), random_matrix(rng, 3)
        lam, mu = rng.uniform(0, 2, 2)
        A, B = exp_motion(X), exp_motion(Y)
        inv = initial_direction(motion_inverse(A)).value
        worst_inv = max(worst_inv, (inv + X).norm() / X.norm())
        prod = initial_direction(motion_product(A, B, lam, mu)).value
        # relative to lam |X| + mu |Y|, which stays meaningful when the target cancels
        scale = lam * X.norm() + mu * Y.norm()
        worst_prod = max(worst_prod, (prod - (X * lam + Y * mu)).norm() / scale)
    ok = worst_inv <= 1e-8 and worst_prod <= 1e-8
    criterion(3, "inverse and product directions", ok,
              f"inverse {worst_inv:.2e}, product {worst_prod:.2e} (<= 1e-8 relative)")
    assert ok


def test_criterion_04_vector_field_lie_algebra(criterion):
    worst = {"leibniz": 0.0, "jacobi": 0.0, "commutator": 0.0}
    for d in (2, 3):
        rng = rng_for(40 + d)
        for _ in range(200):
            X, Y, Z = (random_polynomial_field(rng, d) for _ in range(3))
            f, g = random_polynomial(rng, d, 3), random_polynomial(rng, d, 3)
            z = random_point(rng, d)
            worst["leibniz"] = max(worst["leibniz"], leibniz_residual(X, f, g, z))
            worst["jacobi"] = max(worst["jacobi"], jacobi_residual(X, Y, Z, f, z))
            worst["commutator"] = max(worst["commutator"], commutator_residual(X, Y, f, z))
    ok = worst["leibniz"] <= 1e-12 and worst["jacobi"] <= 1e-10 and worst["commutator"] <= 1e-10
    criterion(4, "vector-field Lie algebra (d = 2, 3)", ok,
              f"Leibniz {worst['leibniz']:.2e} (<= 1e-12), Jacobi {worst['jacobi']:.2e} "
              f"(<= 1e-10), bracket {worst['commutator']:.2e} (<= 1e-10)")
    assert ok


def test_criterion_05_exterior_calculus(criterion):
    rng = rng_for(5)
    spec = dd = 0.0
    for _ in range(100):
        theta = random_one_form(rng, 3)
        om = random_two_form(rng, 3)
        X, Y, W = (random_polynomial_field(rng, 3) for _ in range(3))
        z = random_point(rng, 3)
        a, b = exterior_derivative(theta)([X, Y], z), dtheta_explicit(theta, X, Y, z)
        spec = max(spec, abs(a - b) / (abs(a) + abs(b) + 1))
        ref, scale = domega_explicit(om, X, Y, W, z)
        spec = max(spec, abs(exterior_derivative(om)([X, Y, W], z) - ref) / (scale + 1))
        dd = max(dd, dd_residual(theta, [X, Y, W], z))
    ok = spec <= 1e-12 and dd <= 1e-10
    criterion(5, "exterior derivative", ok,
              f"general vs low-degree {spec:.2e} (<= 1e-12), dd {dd:.2e} (<= 1e-10)")
    assert ok


def test_criterion_06_kernel_identities(criterion):
    rng = rng_for(6)
    d = 2
    lr, min_sd_rate, min_order, last_sd = 0.0, np.inf, np.inf, 0.0
    for F in (gaussian_kernel(d), bilinear_kernel(d)):
        for _ in range(20):
            X, Y = random_polynomial_field(rng, d), random_polynomial_field(rng, d)
            z, w = random_point(rng, d), random_point(rng, d)
            lr = max(lr, *lr_bracket_check(X, Y, F, z, w))
            q = lambda: Curve.quadratic(*(random_point(rng, d) for _ in range(3)))
            c, b = q(), q()
            fit, half = second_difference_fit(F, c)
            min_sd_rate = min(min_sd_rate, fit.rate)
            last_sd = max(last_sd, fit.residuals[-1] / (1 + abs(half)))
            still = Curve.line(list(b.position), [0.0] * d)
            for cc, bb in ((c, b), (c, still), (still, b)):
                for f in taylor2_oracle_fit(F, cc, bb):
                    min_order = min(min_order, f.tail_rate())
    ok = lr <= 1e-10 and min_sd_rate > 0 and min_order >= 1.8
    criterion(6, "kernel identities", ok,
              f"L/R brackets {lr:.2e} (<= 1e-10), second-difference rate {min_sd_rate:.2f} (> 0, "
              f"last error {last_sd:.1e}), Taylor oracle order {min_order:.2f} (>= 1.8)")
    assert ok


def test_criterion_07_inequalities(criterion):
    rng = rng_for(7)
    d = 2
    worst, failures, details = np.inf, 0, []
    for name, F in (("gaussian", gaussian_kernel(d)), ("bilinear", bilinear_kernel(d))):
        X = random_polynomial_field(rng, d)
        for label, check, kw in (("cone", antif_check, {"cone": "nonneg-real"}),
                                 ("cauchy-schwarz", csf_check, {})):
            rep = check(F, X=X, samples=1000, seed=int(rng.integers(2 ** 32)), **kw)
            assert rep.premise_samples == 1000 and rep.conclusion_samples == 1000
            worst = min(worst, rep.worst_margin)
            failures += rep.failures
            details.append(f"{name}/{label} {rep.worst_margin:.1e}")
    ok = failures == 0 and worst >= -1e-9
    criterion(7, "inequality propositions", ok,
              f"{failures} failures, worst margin {worst:.2e} (>= -1e-9): " + ", ".join(details))
    assert ok


def test_criterion_08_landau_rules(criterion):
    fails = {}
    for fractional in (True, False):
        out = landau_rule_failures(rng_for(8 + fractional), 200, fractional)
        fails["fractional" if fractional else "integer"] = sum(out.values())
    ok = not any(fails.values())
    criterion(8, "little-o rule suite (nine rules x 200 jets)", ok,
              f"failures: fractional {fails['fractional']}, integer {fails['integer']}")
    assert ok


def test_criterion_09_accessibility(criterion):
    rng = rng_for(9)
    worst = 0.0
    for k in range(20):
        d = 2 + k % 2
        X = random_polynomial_field(rng, d, 2, 0.5)
        f = random_polynomial(rng, d, 3)
        worst = max(worst, accessible_direction_check(X, f, random_point(rng, d, 0.5)))
    ok = worst <= 1e-7
    criterion(9, "accessible-direction witness (20 fields)", ok, f"worst residual {worst:.2e} (<= 1e-7)")
    assert ok


def _check_all(path) -> tuple[int, float]:
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "liejet", "check", "all", "--report", str(path)],
                          capture_output=True, text=True)
    return proc.returncode, time.perf_counter() - start


def test_criterion_10_full_suite(criterion, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    code_a, t_a = _check_all(a)
    code_b, t_b = _check_all(b)
    docs = [json.loads(p.read_text()) for p in (a, b)]
    for doc in docs:
        doc.pop("wall_time")
    same = json.dumps(docs[0], sort_keys=True) == json.dumps(docs[1], sort_keys=True)
    summary = docs[0]["summary"]
    ok = code_a == code_b == 0 and max(t_a, t_b) < 60.0 and same
    criterion(10, "full default suite", ok,
              f"exit {code_a}/{code_b}, {summary['pass']}/{summary['total']} pass, "
              f"{t_a:.1f} s and {t_b:.1f} s (< 60 s), identical reports: {same}")
    assert ok


if __name__ == "__main__":
    import pathlib
    import tempfile

    sys.path.insert(0, str(pathlib.Path(__file__).parent))
    from conftest import _record

    failed = 0
    for name, fn in sorted(globals().items()):
        if not name.startswith("test_criterion_"):
            continue
        try:
            if "tmp_path" in fn.__code__.co_varnames:
                with tempfile.TemporaryDirectory() as tmp:
                    fn(_record, pathlib.Path(tmp))
            else:
                fn(_record)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
