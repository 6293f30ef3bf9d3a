"""Properties for the backends, jets and motions suites."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..backends import (
    AlgebraElement,
    NonInvertible,
    alg_commutator,
    alg_inverse,
    exp_truncated,
    matrix,
    scalar,
)
from ..jets import (
    Jet,
    OrderClaim,
    jet_add,
    jet_compose_power,
    jet_inverse,
    jet_mul,
    jet_rescale,
    jet_reroot,
    jet_shift,
    jet_sub,
    unit_jet,
)
from .. import jets
from ..motions import (
    Motion,
    NotAMotion,
    commutator_remainder_fit,
    exp_motion,
    hat_jet,
    initial_direction,
    motion_group_commutator,
    motion_inverse,
    motion_product,
)
from ..sampling import random_fraction, random_matrix, random_rational_jet
from .registry import Context, Outcome, Skip, prop, wmax


def _op_norm(x: AlgebraElement) -> float:
    if x.kind == "matrix":
        return float(np.linalg.norm(np.asarray(x.value, dtype=complex), 2))
    return x.norm()


def _random_element(rng, kind: str, n: int) -> AlgebraElement:
    if kind == "real":
        return scalar(float(rng.uniform(-1, 1)))
    if kind == "complex":
        return scalar(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)))
    return random_matrix(rng, n)


# -- backends -----------------------------------------------------------------

@prop("backends", "ring-axioms", "algebra.commutator")
def backend_ring_axioms(ctx: Context) -> Outcome:
    n, count = ctx.config.matrix_size, ctx.count(5.0)
    worst, per_kind = 0.0, {}
    for kind in ("real", "complex", "matrix"):
        kind_worst = 0.0
        for _ in range(count):
            x, y, z = (_random_element(ctx.rng, kind, n) for _ in range(3))
            scale = max(x.norm() * y.norm() * z.norm(), 1e-300)
            one = x.one()
            res = max(
                ((x * y) * z - x * (y * z)).norm() / scale,
                (x * (y + z) - (x * y + x * z)).norm() / max(x.norm() * (y.norm() + z.norm()), 1e-300),
                ((x + y) * z - (x * z + y * z)).norm() / max(z.norm() * (x.norm() + y.norm()), 1e-300),
                (one * x - x).norm() + (x * one - x).norm(),
            )
            kind_worst = max(kind_worst, res)
        per_kind[kind] = kind_worst
        worst = wmax(worst, kind_worst)
    # integer matrices: the axioms hold exactly
    exact_fail = 0
    for _ in range(count):
        x, y, z = (matrix(ctx.rng.integers(-9, 10, (n, n))) for _ in range(3))
        if not ((x * y) * z == x * (y * z) and x * (y + z) == x * y + x * z):
            exact_fail += 1
    return Outcome(worst + exact_fail, ctx.tol(1e-12),
                   {"samples_per_backend": count, "worst_by_backend": per_kind,
                    "integer_failures": exact_fail})


@prop("backends", "commutator", "algebra.commutator")
def backend_commutator(ctx: Context) -> Outcome:
    E12, E21 = matrix([[0, 1], [0, 0]]), matrix([[0, 0], [1, 0]])
    res = (alg_commutator(E12, E21) - matrix([[1, 0], [0, -1]])).norm()
    res += alg_commutator(scalar(3.0), scalar(5.0)).norm()
    worst_ratio = 0.0
    for _ in range(ctx.samples):
        x, y = (random_matrix(ctx.rng, ctx.config.matrix_size) for _ in range(2))
        res += alg_commutator(x, x).norm()
        ratio = _op_norm(alg_commutator(x, y)) / (2 * _op_norm(x) * _op_norm(y))
        worst_ratio = max(worst_ratio, ratio)
    res += max(0.0, worst_ratio - 1.0)
    return Outcome(res, ctx.tol(1e-12), {"samples": ctx.samples,
                                         "max_commutator_over_bound": worst_ratio})


@prop("backends", "inverse", "algebra.commutator")
def backend_inverse(ctx: Context) -> Outcome:
    worst, rejected = 0.0, 0
    for _ in range(ctx.samples):
        g = random_matrix(ctx.rng, ctx.config.matrix_size)
        try:
            gi = alg_inverse(g)
        except NonInvertible:
            rejected += 1
            continue
        one = g.one()
        worst = wmax(worst, ((g * gi - one).norm() + (gi * g - one).norm()) / g.norm())
    res = worst + (alg_inverse(matrix([[2.0, 0], [0, 4.0]])) - matrix([[0.5, 0], [0, 0.25]])).norm()
    try:
        alg_inverse(scalar(0.0))
        res += 1.0
    except NonInvertible:
        pass
    return Outcome(res, ctx.tol(1e-12), {"samples": ctx.samples, "rejected": rejected})


@prop("backends", "exp-series", "algebra.commutator")
def backend_exp_series(ctx: Context) -> Outcome:
    e = exp_truncated(scalar(1.0), 1.0, 20).element.value
    N = matrix([[0.0, 1.0], [0.0, 0.0]])
    nil = (exp_truncated(N, 0.7, 5).element - (N.one() + N * 0.7)).norm()
    zero = (exp_truncated(N * 0, 1.0, 3).element - N.one()).norm()
    return Outcome(abs(e - math.e) + nil + zero, ctx.tol(1e-12), {"e": e})


# -- jets ---------------------------------------------------------------------

def _rational_jets(ctx: Context, count: int, invertible: bool):
    m, n = ctx.config.order, ctx.config.matrix_size
    for i in range(count):
        kind = "scalar" if i % 2 == 0 else "matrix"
        length = int(ctx.rng.integers(1, m + 1))
        yield random_rational_jet(ctx.rng, length, kind, n, invertible)


@prop("jets", "ring-axioms", "taylor.arithmetic")
def jets_ring_axioms(ctx: Context) -> Outcome:
    failures = 0
    m, n = ctx.config.order, ctx.config.matrix_size
    for i in range(ctx.samples):
        kind = "scalar" if i % 2 == 0 else "matrix"
        L = int(ctx.rng.integers(1, m + 1))
        F, G, H = (random_rational_jet(ctx.rng, L, kind, n) for _ in range(3))
        one = unit_jet(F)
        ok = (jet_mul(jet_mul(F, G), H) == jet_mul(F, jet_mul(G, H))
              and jet_mul(F, jet_add(G, H)) == jet_add(jet_mul(F, G), jet_mul(F, H))
              and jet_mul(jet_add(F, G), H) == jet_add(jet_mul(F, H), jet_mul(G, H))
              and jet_mul(one, F) == F and jet_mul(F, one) == F
              and jet_sub(jet_add(F, G), G) == F)
        failures += not ok
    return Outcome(failures, ctx.tol(0.0), {"samples": ctx.samples, "exact": True})


@prop("jets", "inverse-exact", "taylor.inverse-recursion")
def jets_inverse_exact(ctx: Context) -> Outcome:
    failures = 0
    for F in _rational_jets(ctx, ctx.samples, invertible=True):
        G = jet_inverse(F)
        one = unit_jet(F)
        failures += not (jet_mul(F, G) == one and jet_mul(G, F) == one)
    return Outcome(failures, ctx.tol(0.0), {"samples": ctx.samples, "exact": True})


@prop("jets", "reparametrization", "taylor.arithmetic")
def jets_reparametrization(ctx: Context) -> Outcome:
    """compose_power, rescale and reroot agree with direct evaluation."""
    worst = 0.0
    m = ctx.config.order
    for _ in range(ctx.samples):
        root = int(ctx.rng.integers(1, 4))
        F = Jet([float(c) for c in ctx.rng.uniform(-1, 1, m)], root=root)
        t = float(ctx.rng.uniform(0.05, 0.5))
        p = int(ctx.rng.integers(1, 4))
        lam = float(ctx.rng.uniform(0.1, 2.0))
        scale = sum(abs(c) for c in F.coeffs)
        worst = max(
            worst,
            abs(jet_compose_power(F, p).evaluate(t) - F.evaluate(t ** p)) / scale,
            abs(jet_rescale(F, lam).evaluate(t) - F.evaluate(lam * t)) / (scale * max(1, lam)),
            abs(jet_reroot(F, root * p).evaluate(t) - F.evaluate(t)) / scale,
        )
    return Outcome(worst, ctx.tol(1e-13), {"samples": ctx.samples})


@prop("jets", "elementary-functions", "taylor.arithmetic")
def jets_elementary(ctx: Context) -> Outcome:
    """exp(log x) = x, sin^2 + cos^2 = 1 and sqrt(x)^2 = x on random jets."""
    worst = 0.0
    m = ctx.config.order
    for _ in range(ctx.samples):
        c = ctx.rng.uniform(-1, 1, m)
        c[0] = ctx.rng.uniform(0.5, 2.0)
        F = Jet([float(v) for v in c])
        s, co = jets.sin(F), jets.cos(F)
        one = unit_jet(F)
        for G, H in ((jets.exp(jets.log(F)), F), (s * s + co * co, one), (jets.sqrt(F) ** 2, F)):
            worst = wmax(worst, (G - H).norm() / max(H.norm(), 1.0))
    return Outcome(worst, ctx.tol(1e-12), {"samples": ctx.samples})


def _claim_jet(rng, m: int, root: int, length: int, matrix_coeffs: bool, n: int = 2) -> Jet:
    """Exact jet whose coefficients ``0..m*root`` vanish (``F = o_f(t^m)``)."""
    def draw():
        if matrix_coeffs:
            return matrix([[random_fraction(rng) for _ in range(n)] for _ in range(n)], exact=True)
        return random_fraction(rng)

    zero = draw() * 0
    return Jet([zero] * (m * root + 1) + [draw() for _ in range(length - m * root - 1)], root=root)


def landau_rule_failures(rng, samples: int, fractional: bool) -> dict:
    """Check the nine calculus rules of little-o claims on random exact jets.

    Returns the number of failures per rule (keys ``"i"`` .. ``"ix"``).
    """
    rules = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix")
    fails = {r: 0 for r in rules}
    claim = lambda F, m: OrderClaim(m, fractional).holds(F)
    for k in range(samples):
        root = int(rng.integers(1, 4)) if fractional else 1
        m, m2 = int(rng.integers(0, 3)), int(rng.integers(0, 3))
        L = (m + m2 + 2) * root + int(rng.integers(1, 4))
        mat = k % 2 == 1
        F = _claim_jet(rng, m, root, L, mat)
        G = _claim_jet(rng, m2, root, L, mat)
        base = _claim_jet(rng, 0, root, L, mat)
        base = Jet((base.coeffs[0] + (1 if not mat else base.coeffs[0].one()),) + base.coeffs[1:],
                   root=root)
        # (i) equal up to o(t^m) implies equal at 0
        fails["i"] += not (jet_add(base, F).coeffs[0] == base.coeffs[0])
        # (ii) zero is o(t^m)
        fails["ii"] += not claim(jet_sub(F, F) * 0, m)
        # (iii) F = F + o(t^m): the difference claim holds for every decidable order
        fails["iii"] += not claim(jet_sub(base, base), (L - 1) // root)
        # (iv) weakening
        fails["iv"] += not all(claim(F, j) for j in range(m + 1))
        # (v) dividing t^m' out of an m-claim leaves an (m - m')-claim
        j = int(rng.integers(0, m + 1))
        fails["v"] += not claim(jet_shift(F, -j * root), m - j)
        # (vi) smooth real factor keeps the claim
        f = Jet([random_fraction(rng) for _ in range(L)])
        fF = jet_mul(jet_reroot(f, root), F)
        fails["vi"] += not claim(fF, m)
        # (vii) multiplying by t^m' raises the claim
        fails["vii"] += not claim(jet_shift(F, m2 * root), m + m2)
        # (viii) sums keep the weaker claim
        fails["viii"] += not claim(jet_add(F, G), min(m, m2))
        # (ix) products add claims, in either factor order
        fails["ix"] += not (claim(jet_mul(F, G), m + m2) and claim(jet_mul(G, F), m + m2))
    return fails


@prop("jets", "compose-claims", "landau.fractional-rules")
def jets_compose_claims(ctx: Context) -> Outcome:
    """F = o_f(t^m) exactly when F(t^p) = o_f(t^(m p))."""
    mismatches, example = 0, None
    for k in range(ctx.samples):
        root = int(ctx.rng.integers(1, 4))
        m_true = int(ctx.rng.integers(0, 3))
        F = _claim_jet(ctx.rng, m_true, root, (m_true + 3) * root, k % 2 == 1)
        p = int(ctx.rng.integers(1, 4))
        H = jet_compose_power(F, p)
        for m in range(0, (len(F) - 1) // root + 1):
            if OrderClaim(m).holds(F) != OrderClaim(m * p).holds(H):
                mismatches += 1
        if example is None:
            example = {"F": F.to_json(), "root": root, "p": p, "composed": H.to_json()}
    return Outcome(mismatches, ctx.tol(0.0), {"samples": ctx.samples, "example": example})


@prop("jets", "landau-fractional", "landau.fractional-rules")
def jets_landau_fractional(ctx: Context) -> Outcome:
    fails = landau_rule_failures(ctx.rng, ctx.samples, fractional=True)
    return Outcome(sum(fails.values()), ctx.tol(0.0),
                   {"samples_per_rule": ctx.samples, "failures_by_rule": fails})


@prop("jets", "landau-integer", "landau.integer-rules")
def jets_landau_integer(ctx: Context) -> Outcome:
    fails = landau_rule_failures(ctx.rng, ctx.samples, fractional=False)
    return Outcome(sum(fails.values()), ctx.tol(0.0),
                   {"samples_per_rule": ctx.samples, "failures_by_rule": fails})


# -- motions ------------------------------------------------------------------

def _pair(ctx: Context):
    n = ctx.config.matrix_size
    return random_matrix(ctx.rng, n), random_matrix(ctx.rng, n)


@prop("motions", "inverse-direction", "motion.inverse-product")
def motions_inverse(ctx: Context) -> Outcome:
    worst = 0.0
    count = ctx.count(0.5)
    for _ in range(count):
        X, _ = _pair(ctx)
        d = initial_direction(motion_inverse(exp_motion(X))).value
        worst = wmax(worst, (d + X).norm() / X.norm())
    return Outcome(worst, ctx.tol(1e-8), {"samples": count})


@prop("motions", "product-direction", "motion.inverse-product")
def motions_product(ctx: Context) -> Outcome:
    worst = 0.0
    count = ctx.count(0.5)
    for _ in range(count):
        X, Y = _pair(ctx)
        lam, mu = (float(v) for v in ctx.rng.uniform(0, 2, 2))
        d = initial_direction(motion_product(exp_motion(X), exp_motion(Y), lam, mu)).value
        expected = X * lam + Y * mu
        worst = wmax(worst, (d - expected).norm() / max(lam * X.norm() + mu * Y.norm(), 1e-300))
    return Outcome(worst, ctx.tol(1e-8), {"samples": count})


@prop("motions", "commutator-direction", "motion.group-commutator")
def motions_commutator(ctx: Context) -> Outcome:
    worst, rates = 0.0, []
    count = ctx.count(0.25)
    first = None
    for _ in range(count):
        X, Y = _pair(ctx)
        C = motion_group_commutator(exp_motion(X), exp_motion(Y))
        ext = initial_direction(C)
        worst = wmax(worst, (ext.value - alg_commutator(X, Y)).norm() / (X.norm() * Y.norm()))
        rates.append(ext.residual_rate)
        if first is None:
            first = ext.fit.table()
    return Outcome(worst, ctx.tol(1e-7),
                   {"samples": count, "extraction_rates": {"min": min(rates), "max": max(rates)},
                    "step_table": first})


@prop("motions", "commutator-remainder-rate", "motion.commutator-remainder")
def motions_remainder_rate(ctx: Context) -> Outcome:
    """Residual is the shortfall of the smallest fitted rate below 2.9."""
    target = 2.9
    count = ctx.count(0.25)
    rates, worst_fit = [], None
    for _ in range(count):
        X, Y = _pair(ctx)
        fit = commutator_remainder_fit(exp_motion(X), exp_motion(Y))
        rates.append(fit.rate)
        if worst_fit is None or fit.rate < worst_fit.rate:
            worst_fit = fit
    q = min(rates)
    return Outcome(max(0.0, target - q), ctx.tol(0.0),
                   {"samples": count, "target_rate": target, "min_rate": q,
                    "max_rate": max(rates), "step_table": worst_fit.table()})


@prop("motions", "profile-jet", "motion.profile-jet")
def motions_profile(ctx: Context) -> Outcome:
    """Hat jets of exp, inverse, product and commutator motions evaluate to A(s^n)."""
    worst = 0.0
    s = 2.0 ** -6
    count = ctx.count(0.1)
    for _ in range(count):
        X, Y = _pair(ctx)
        A, B = exp_motion(X, length=ctx.config.order), exp_motion(Y, length=ctx.config.order)
        for M in (A, motion_inverse(A), motion_product(A, B, 0.5, 1.5),
                  motion_group_commutator(A, B)):
            H = hat_jet(M)
            worst = wmax(worst, (H.evaluate(s) - M(s ** M.exponent)).norm()
                        / max(M(s ** M.exponent).norm(), 1.0))
            # A(0) = 1 and the first n - 1 hat coefficients vanish
            one = M(0.0)
            worst = wmax(worst, (H.coeffs[0] - one).norm(),
                        *(H.coeffs[k].norm() for k in range(1, M.exponent)))
    return Outcome(worst, ctx.tol(1e-12), {"samples": count, "s": s})


@prop("motions", "lie-algebra", "lie.directions-closed")
def motions_lie_algebra(ctx: Context) -> Outcome:
    """Directions of exp motions recover X; the commutator is a Lie product on them."""
    worst = 0.0
    count = ctx.count(0.25)
    for _ in range(count):
        X, Y = _pair(ctx)
        Z = random_matrix(ctx.rng, ctx.config.matrix_size)
        worst = wmax(worst, (initial_direction(exp_motion(X)).value - X).norm() / X.norm())
        scale = X.norm() * Y.norm() * Z.norm()
        jac = (alg_commutator(X, alg_commutator(Y, Z)) + alg_commutator(Y, alg_commutator(Z, X))
               + alg_commutator(Z, alg_commutator(X, Y)))
        worst = wmax(worst, jac.norm() / scale,
                    (alg_commutator(X, Y) + alg_commutator(Y, X)).norm() / (X.norm() * Y.norm()))
    return Outcome(worst, ctx.tol(1e-9), {"samples": count})


@prop("motions", "divergent-rejected", "motion.initial-direction")
def motions_divergent(ctx: Context) -> Outcome:
    """Curves whose difference quotient has no limit must be rejected."""
    X, _ = _pair(ctx)
    one = X.one()
    curves = {
        # a t^(1/2) term with exponent 1 declared
        "sqrt": lambda t: one + X * math.sqrt(t),
        # bounded but oscillating quotient
        "oscillating": lambda t: one + X * (t * math.sin(1.0 / t)),
    }
    missed = []
    for label, ev in curves.items():
        try:
            initial_direction(Motion(ev, 1, 0.25, None, one))
        except NotAMotion:
            continue
        missed.append(label)
    return Outcome(float(len(missed)), 0.0, {"cases": sorted(curves), "accepted": missed})
