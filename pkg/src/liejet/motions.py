"""Motions on matrix groups and their initial directions.

A motion is a curve ``A`` with ``A(0) = 1`` and ``A(t) = 1 + t X_n(t**(1/n))``
for a profile ``X_n`` continuous at 0; ``n`` is its exponent.  Motions are
held as evaluators; an optional profile jet (the Taylor coefficients of
``X_n`` in ``s = t**(1/n)``) lets the constructions below carry exact
expansions alongside the numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import lcm
from typing import Callable

from .backends import AlgebraElement, alg_commutator, alg_inverse, exp_truncated
from .jets import ZERO_RTOL, Jet, jet_inverse, jet_reroot, jet_rescale, jet_shift, unit_jet
from .limits import EPS, RateFit, fit_rate, geometric_steps, richardson_table

__all__ = [
    "InitialDirection",
    "Motion",
    "NotAMotion",
    "affine_motion",
    "commutator_remainder_fit",
    "commutator_remainder_rate",
    "constant_motion",
    "direction_of",
    "exp_motion",
    "hat_jet",
    "initial_direction",
    "motion_group_commutator",
    "motion_inverse",
    "motion_product",
]

DEFAULT_EPSILON = 0.25
SETTLE_CORRELATION = 0.9


class NotAMotion(ValueError):
    """The difference quotient does not settle down as ``t -> 0``."""


@dataclass(frozen=True)
class Motion:
    evaluator: Callable[[float], AlgebraElement]
    exponent: int = 1
    epsilon: float = DEFAULT_EPSILON
    profile_jet: Jet | None = None
    one: AlgebraElement | None = None

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError("exponent must be a positive integer")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.profile_jet is not None and self.profile_jet.root != 1:
            raise ValueError("profile jets are expanded in s = t**(1/n) with root 1")

    def __call__(self, t: float) -> AlgebraElement:
        if t == 0 and self.one is not None:
            return self.one
        return self.evaluator(t)


@dataclass(frozen=True)
class InitialDirection:
    value: AlgebraElement
    residual_rate: float
    fit: RateFit | None = None


def constant_motion(one: AlgebraElement, length: int = 8) -> Motion:
    one = one.one()
    return Motion(lambda t: one, 1, math.inf, Jet([one * 0] * length), one)


def affine_motion(X: AlgebraElement, epsilon: float = DEFAULT_EPSILON, length: int = 8) -> Motion:
    """``A(t) = 1 + tX``."""
    one = X.one()
    return Motion(lambda t: one + X * t, 1, epsilon, Jet([X] + [X * 0] * (length - 1)), one)


def exp_motion(X: AlgebraElement, order: int = 20, epsilon: float = DEFAULT_EPSILON,
               length: int = 8) -> Motion:
    """``A(t) = exp_truncated(X, t, order)``; profile coefficients ``X^(k+1)/(k+1)!``."""
    one = X.one()
    coeffs, term = [], one
    for k in range(1, length + 1):
        term = term * X / k
        coeffs.append(term if k <= order else X * 0)
    return Motion(lambda t: exp_truncated(X, t, order).element, 1, epsilon, Jet(coeffs), one)


def hat_jet(A: Motion, length: int | None = None) -> Jet:
    """Jet of ``t -> A(t**n)``: ``1`` followed by ``n-1`` zeros, then the profile."""
    if A.profile_jet is None:
        raise ValueError("motion carries no profile jet")
    P = A.profile_jet
    one = A.one if A.one is not None else A(0.0)
    H = unit_jet(one, len(P) + A.exponent) + jet_shift(P, A.exponent)
    return H if length is None else Jet(H.coeffs[:length])


def _from_hat(H: Jet, n: int) -> Jet:
    P = Jet(H.coeffs) - unit_jet(H.coeffs[0], len(H))
    # the prefix is rounding noise next to the leading 1, not next to P
    tol = ZERO_RTOL * H.norm()
    if any(c.norm() > tol for c in P.coeffs[:n]):
        raise ValueError("hat jet does not start with 1 followed by zeros")
    return Jet(P.coeffs[n:])


def _initial_quotients(A: Motion, ts):
    one = A(0.0)
    return [(A(t) - one) / t for t in ts]


def initial_direction(A: Motion, steps: int = 10, levels: int | None = None,
                      epsilon: float | None = None) -> InitialDirection:
    """Richardson-extrapolated limit of ``(A(t) - 1)/t``.

    Samples ``t_k = epsilon * 2**-k`` (``k = 1..steps``); extrapolation runs in
    ``s = t**(1/n)``, eliminating ``levels`` powers of ``s`` (default ``2n``,
    i.e. everything up to second order in ``t``).
    """
    if steps < 4:
        raise ValueError("steps must be >= 4")
    n = A.exponent
    eps = min(A.epsilon, 1.0) if epsilon is None else epsilon
    levels = 2 * n if levels is None else levels
    levels = min(levels, steps - 1)
    ts = geometric_steps(eps, steps)
    qs = _initial_quotients(A, ts)
    if not all(math.isfinite(q.norm()) for q in qs):
        raise NotAMotion("difference quotient is not finite")
    table = richardson_table(qs, 2.0 ** (1.0 / n), levels)
    value = table[-1][-1]
    ss = [t ** (1.0 / n) for t in ts]
    scale = max(value.norm(), 1.0)
    floors = [64 * EPS * max(A(t).norm(), 1.0) / t + 1e-14 * scale for t in ts]
    # successive differences must shrink like a power of s, otherwise the
    # extrapolated value is an artefact of the table rather than a limit
    steps_fit = fit_rate(ss[1:], [(b - a).norm() for a, b in zip(qs, qs[1:])], floors[1:])
    if math.isnan(steps_fit.rate) or steps_fit.rate <= 0:
        raise NotAMotion(f"difference quotient does not settle (fitted rate {steps_fit.rate:.3g})")
    if steps_fit.correlation < SETTLE_CORRELATION:
        raise NotAMotion("difference quotient oscillates "
                         f"(log-log correlation {steps_fit.correlation:.3g})")
    # value inherits the rounding error of the finest quotient
    value_floor = max(floors)
    fit = fit_rate(ss, [(q - value).norm() for q in qs], [max(f, value_floor) for f in floors])
    if math.isnan(fit.rate) or fit.rate <= 0:
        raise NotAMotion(f"difference quotient does not converge (fitted rate {fit.rate:.3g})")
    return InitialDirection(value, fit.rate, fit)


def direction_of(A: Motion, steps: int = 10) -> AlgebraElement:
    """Exact initial direction from the profile jet when available, else extracted."""
    if A.profile_jet is not None:
        return A.profile_jet[0]
    return initial_direction(A, steps).value


def motion_inverse(A: Motion) -> Motion:
    """``C(t) = A(t)^-1``; initial direction ``-X^A``."""
    profile = None
    if A.profile_jet is not None:
        profile = _from_hat(jet_inverse(hat_jet(A)), A.exponent)
    return Motion(lambda t: alg_inverse(A(t)), A.exponent, A.epsilon, profile, A.one)


def _scaled_hat(A: Motion, lam: float, n: int) -> Jet:
    H = jet_reroot_hat(A, n)
    if lam == 0:
        return unit_jet(H)
    return jet_rescale(H, lam ** (1.0 / n)) if n != 1 else jet_rescale(H, lam)


def jet_reroot_hat(A: Motion, n: int) -> Jet:
    """Hat jet of ``A`` re-expressed for a multiple ``n`` of its exponent."""
    H = hat_jet(A)
    k = n // A.exponent
    if k == 1:
        return H
    return Jet(jet_reroot(Jet(H.coeffs, A.exponent), n).coeffs)


def _slack(eps: float, scale: float) -> float:
    return math.inf if scale == 0 else eps / scale


def motion_product(A: Motion, B: Motion, lam: float = 1.0, mu: float = 1.0) -> Motion:
    """``C(t) = A(lam t) B(mu t)``; initial direction ``lam X^A + mu X^B``."""
    if lam < 0 or mu < 0:
        raise ValueError("lam and mu must be nonnegative")
    one = A(0.0)
    one._check(B(0.0))
    n = lcm(A.exponent, B.exponent)
    eps = min(_slack(A.epsilon, lam), _slack(B.epsilon, mu))
    profile = None
    if A.profile_jet is not None and B.profile_jet is not None:
        H = _scaled_hat(A, lam, n) * _scaled_hat(B, mu, n)
        profile = _from_hat(H, n)
    return Motion(lambda t: A(lam * t) * B(mu * t), n, eps, profile, one)


def motion_group_commutator(A: Motion, B: Motion) -> Motion:
    """``C(t**2) = A(t) B(t) A(t)^-1 B(t)^-1``; initial direction ``[X^A, X^B]``.

    The square root in ``C(u) = A(sqrt u) ...`` doubles the exponent.
    """
    one = A(0.0)
    one._check(B(0.0))
    n = lcm(A.exponent, B.exponent)
    eps = min(A.epsilon, B.epsilon) ** 2

    def evaluate(u):
        t = math.sqrt(u)
        a, b = A(t), B(t)
        return a * b * alg_inverse(a) * alg_inverse(b)

    profile = None
    if A.profile_jet is not None and B.profile_jet is not None:
        HA, HB = jet_reroot_hat(A, n), jet_reroot_hat(B, n)
        K = HA * HB * jet_inverse(HA) * jet_inverse(HB)
        profile = _from_hat(K, 2 * n)
    return Motion(evaluate, 2 * n, eps, profile, one)


def commutator_remainder_fit(A: Motion, B: Motion, steps: int = 12,
                             epsilon: float | None = None) -> RateFit:
    """Fit ``|A(t)B(t) - B(t)A(t) - t^2 [X^A, X^B]| ~ c t^q`` on ``t_k = eps 2^-k``."""
    XC = alg_commutator(direction_of(A), direction_of(B))
    eps = min(A.epsilon, B.epsilon, 1.0) if epsilon is None else epsilon
    ts = geometric_steps(eps, steps)
    residuals, floors = [], []
    for t in ts:
        a, b = A(t), B(t)
        residuals.append((a * b - b * a - XC * (t * t)).norm())
        floors.append(64 * EPS * a.norm() * b.norm())
    return fit_rate(ts, residuals, floors)


def commutator_remainder_rate(A: Motion, B: Motion, steps: int = 12,
                              epsilon: float | None = None) -> float:
    fit = commutator_remainder_fit(A, B, steps, epsilon)
    if math.isnan(fit.rate) or fit.rate <= 0:
        raise NotAMotion(f"commutator remainder does not decay (fitted rate {fit.rate:.3g})")
    return fit.rate
