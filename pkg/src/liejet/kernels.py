"""Smooth two-point kernels ``F(z, w)`` on a chart, with slot derivatives,
second-order Taylor data along curves, and the two inequality checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import jets
from .sampling import random_point
from .vectorfields import DimensionMismatch, VectorField, directional, lie_bracket

__all__ = [
    "Curve",
    "InequalityReport",
    "Kernel",
    "PremiseViolated",
    "Taylor2",
    "anticommutator",
    "antif_check",
    "bilinear_kernel",
    "csf_check",
    "curve_derivative",
    "gaussian_kernel",
    "left_lie_derivative",
    "lr_bracket_check",
    "mixed_curve_derivative",
    "partial_jacobian_apply",
    "right_lie_derivative",
    "second_difference",
    "shifted_bilinear_kernel",
    "taylor2_expand",
]

MARGIN_RTOL = 1e-9


class PremiseViolated(ValueError):
    """A sampled pair violates the hypothesis of an inequality check."""


def _pt(z):
    return [float(x) for x in z]


class Kernel:
    """``F(z, w)`` given by a jet-compatible callable of two coordinate lists."""

    __slots__ = ("dim", "fn")

    def __init__(self, dim: int, fn: Callable):
        self.dim = dim
        self.fn = fn

    def __call__(self, z, w):
        return self.fn(_pt(z), _pt(w))

    def left_slice(self, w) -> Callable:
        """``z -> F(z, w)``."""
        fn, w = self.fn, _pt(w)
        return lambda z: fn(z, w)

    def right_slice(self, z) -> Callable:
        """``w -> F(z, w)``."""
        fn, z = self.fn, _pt(z)
        return lambda w: fn(z, w)

    def __add__(self, other: "Kernel") -> "Kernel":
        f, g = self.fn, other.fn
        return Kernel(self.dim, lambda z, w: f(z, w) + g(z, w))

    def __sub__(self, other: "Kernel") -> "Kernel":
        f, g = self.fn, other.fn
        return Kernel(self.dim, lambda z, w: f(z, w) - g(z, w))


def _check(X: VectorField, F: Kernel):
    if X.dim != F.dim:
        raise DimensionMismatch("field and kernel live on different charts")


def gaussian_kernel(dim: int, width: float = 1.0) -> Kernel:
    """``exp(-|z - w|^2 / width^2)``."""
    def fn(z, w):
        s = 0.0
        for a, b in zip(z, w):
            s = s + (a - b) * (a - b)
        return jets.exp(-s / (width * width))
    return Kernel(dim, fn)


def bilinear_kernel(dim: int) -> Kernel:
    """``z . w``."""
    def fn(z, w):
        s = 0.0
        for a, b in zip(z, w):
            s = s + a * b
        return s
    return Kernel(dim, fn)


def shifted_bilinear_kernel(dim: int) -> Kernel:
    """``1 + z . w``."""
    inner = bilinear_kernel(dim).fn
    return Kernel(dim, lambda z, w: 1.0 + inner(z, w))


def left_lie_derivative(X: VectorField, F: Kernel) -> Kernel:
    """``L_X F(z, w) = X(z) d_z F(z, w)``."""
    _check(X, F)
    xf, ff = X.fn, F.fn
    return Kernel(F.dim, lambda z, w: directional(lambda u: ff(u, w), z, xf(z)))


def right_lie_derivative(X: VectorField, F: Kernel) -> Kernel:
    """``R_X F(z, w) = X(w) d_w F(z, w)``."""
    _check(X, F)
    xf, ff = X.fn, F.fn
    return Kernel(F.dim, lambda z, w: directional(lambda u: ff(z, u), w, xf(w)))


def partial_jacobian_apply(F: Kernel, slot: str, v, z, w):
    """``v D_L F(z, w)`` (slot ``"L"``) or ``v D_R F(z, w)`` (slot ``"R"``)."""
    v = _pt(v)
    if len(v) != F.dim:
        raise DimensionMismatch("tangent vector has the wrong dimension")
    z, w = _pt(z), _pt(w)
    if slot == "L":
        return directional(F.left_slice(w), z, v)
    if slot == "R":
        return directional(F.right_slice(z), w, v)
    raise ValueError("slot must be 'L' or 'R'")


def lr_bracket_check(X: VectorField, Y: VectorField, F: Kernel, z, w) -> tuple[float, float]:
    """``|[L_X, L_Y]F - L_[X,Y] F|`` and the same for ``R`` at ``(z, w)``."""
    XY = lie_bracket(X, Y)
    out = []
    for op in (left_lie_derivative, right_lie_derivative):
        lhs = op(X, op(Y, F))(z, w) - op(Y, op(X, F))(z, w)
        out.append(abs(lhs - op(XY, F)(z, w)))
    return out[0], out[1]


@dataclass(frozen=True)
class Curve:
    """A curve through ``position`` with second-order jet data at ``t = 0``."""

    evaluator: Callable[[float], Sequence[float]]
    position: tuple
    velocity: tuple
    acceleration: tuple

    def __call__(self, t: float) -> list[float]:
        return _pt(self.evaluator(t))

    @property
    def dim(self) -> int:
        return len(self.position)

    @classmethod
    def line(cls, z, v) -> "Curve":
        z, v = tuple(_pt(z)), tuple(_pt(v))
        return cls(lambda t: [a + t * b for a, b in zip(z, v)], z, v, (0.0,) * len(z))

    @classmethod
    def quadratic(cls, z, v, a) -> "Curve":
        """``z + t v + t^2 a / 2``."""
        z, v, a = tuple(_pt(z)), tuple(_pt(v)), tuple(_pt(a))
        return cls(lambda t: [p + t * q + 0.5 * t * t * r for p, q, r in zip(z, v, a)], z, v, a)

    @classmethod
    def through(cls, X: VectorField, z) -> "Curve":
        """A curve with ``c(0) = z`` and ``c'(0) = X(z)``: the straight line."""
        return cls.line(z, X(z))


def curve_derivative(F: Kernel, c: Curve, slot: str, z_other):
    """``d/dt F(c(t), z')`` (slot ``"L"``) or ``d/dt F(z', c(t))`` (slot ``"R"``) at 0."""
    if slot == "L":
        return partial_jacobian_apply(F, "L", c.velocity, c.position, z_other)
    return partial_jacobian_apply(F, "R", c.velocity, z_other, c.position)


def _dl(F: Kernel, v) -> Callable:
    """Kernel callable ``(z, w) -> v D_L F(z, w)`` for a constant vector ``v``."""
    ff = F.fn
    return lambda z, w: directional(lambda u: ff(u, w), z, v)


def _dr(F: Kernel, v) -> Callable:
    ff = F.fn
    return lambda z, w: directional(lambda u: ff(z, u), w, v)


def mixed_curve_derivative(F: Kernel, c: Curve, b: Curve):
    """``c'(0) b'(0) D_L D_R F(c(0), b(0))``."""
    inner = Kernel(F.dim, _dr(F, list(b.velocity)))
    return _dl(inner, list(c.velocity))(list(c.position), list(b.position))


def anticommutator(F: Kernel, v, u, z, w):
    """``[v D_L, u D_R]_+ F(z, w)``, with the two mixed partials taken in both orders."""
    v, u = _pt(v), _pt(u)
    lr = _dl(Kernel(F.dim, _dr(F, u)), v)(_pt(z), _pt(w))
    rl = _dr(Kernel(F.dim, _dl(F, v)), u)(_pt(z), _pt(w))
    return lr + rl


@dataclass(frozen=True)
class Taylor2:
    """Second-order data of ``F`` along the curves ``c`` (left) and ``b`` (right).

    ``left``, ``right`` and ``joint`` are the Taylor coefficients (value,
    first derivative, half the second derivative) of ``F(c(t), z')``,
    ``F(z, b(t))`` and ``F(c(t), b(t))``.
    """

    value: complex
    dl: complex
    dr: complex
    dll: complex
    drr: complex
    dlr: complex
    second_left: complex
    second_right: complex
    anticommutator: complex
    left: tuple = field(default=())
    right: tuple = field(default=())
    joint: tuple = field(default=())


def taylor2_expand(F: Kernel, c: Curve, b: Curve) -> Taylor2:
    if any(x is None for x in (c.velocity, c.acceleration, b.velocity, b.acceleration)):
        raise ValueError("curves need jets through second order")
    z, w = list(c.position), list(b.position)
    cv, ca = list(c.velocity), list(c.acceleration)
    bv, ba = list(b.velocity), list(b.acceleration)
    value = F(z, w)
    dl = _dl(F, cv)(z, w)
    dr = _dr(F, bv)(z, w)
    dll = _dl(Kernel(F.dim, _dl(F, cv)), cv)(z, w)
    drr = _dr(Kernel(F.dim, _dr(F, bv)), bv)(z, w)
    dlr = _dl(Kernel(F.dim, _dr(F, bv)), cv)(z, w)
    second_left = dll + _dl(F, ca)(z, w)
    second_right = drr + _dr(F, ba)(z, w)
    anti = anticommutator(F, cv, bv, z, w)
    return Taylor2(
        value, dl, dr, dll, drr, dlr, second_left, second_right, anti,
        left=(value, dl, second_left / 2),
        right=(value, dr, second_right / 2),
        joint=(value, dl + dr, (second_left + second_right + anti) / 2),
    )


def second_difference(F: Kernel, c: Curve, t: float):
    """``F(z,z) - F(c(t),z) - F(z,c(t)) + F(c(t),c(t))`` with ``z = c(0)``."""
    z, ct = list(c.position), c(t)
    return F(z, z) - F(ct, z) - F(z, ct) + F(ct, ct)


# -- inequality checks ----------------------------------------------------------

def nonneg_real(value, tol: float) -> bool:
    """Membership in the closed cone of nonnegative reals inside C."""
    value = complex(value)
    return value.real >= -tol and abs(value.imag) <= tol


@dataclass
class InequalityReport:
    premise_samples: int
    conclusion_samples: int
    holds: bool
    worst_margin: float
    worst_point: list | None = None
    failures: int = 0


def _cone_predicate(cone):
    if cone in ("nonneg-real", None):
        return nonneg_real
    if callable(cone):
        return cone
    raise ValueError(f"unknown cone {cone!r}")


def antif_check(F: Kernel, cone, X: VectorField, samples: int = 1000, seed=0,
                radius: float = 1.0) -> InequalityReport:
    """Check that ``[X(z)D_L, X(z)D_R]_+ F(z,z)`` lies in a closed cone.

    The hypothesis ``F(z,z) - F(w,z) - F(z,w) + F(w,w) in C`` is sampled on
    ``samples`` pairs first; a violation raises :class:`PremiseViolated`.
    A user cone is a predicate ``(value, tol) -> bool``.
    """
    _check(X, F)
    member = _cone_predicate(cone)
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        z, w = random_point(rng, F.dim, radius), random_point(rng, F.dim, radius)
        terms = (F(z, z), F(w, z), F(z, w), F(w, w))
        E = terms[0] - terms[1] - terms[2] + terms[3]
        tol = MARGIN_RTOL * (1.0 + sum(abs(x) for x in terms))
        if not member(E, tol):
            raise PremiseViolated(f"E(z, w) = {E} not in cone at z={z}, w={w}")
    worst, worst_pt, failures = math.inf, None, 0
    for _ in range(samples):
        z = random_point(rng, F.dim, radius)
        v = X(z)
        value = anticommutator(F, v, v, z, z)
        tol = MARGIN_RTOL * (1.0 + abs(value) + abs(F(z, z)) * float(v @ v))
        margin = complex(value).real / (tol / MARGIN_RTOL)
        if margin < worst:
            worst, worst_pt = margin, z
        if not member(value, tol):
            failures += 1
    return InequalityReport(samples, samples, failures == 0, worst, worst_pt, failures)


def csf_check(F: Kernel, X: VectorField, samples: int = 1000, seed=0,
              radius: float = 1.0) -> InequalityReport:
    """Check ``R_X F(z,z) L_X F(z,z) <= F(z,z) [L_X, R_X]_+ F(z,z) / 2``.

    The hypothesis ``F(z,w) F(w,z) <= F(z,z) F(w,w)`` is sampled first.
    Any non-real kernel value on the sample set counts as a violation.
    """
    _check(X, F)
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        z, w = random_point(rng, F.dim, radius), random_point(rng, F.dim, radius)
        vals = [complex(F(a, b)) for a, b in ((z, w), (w, z), (z, z), (w, w))]
        lhs, rhs = vals[0] * vals[1], vals[2] * vals[3]
        tol = MARGIN_RTOL * (1.0 + abs(lhs) + abs(rhs))
        if any(abs(x.imag) > MARGIN_RTOL * (1.0 + abs(x)) for x in vals):
            raise PremiseViolated(f"complex kernel values at z={z}, w={w}")
        if lhs.real > rhs.real + tol:
            raise PremiseViolated(f"F(z,w)F(w,z) > F(z,z)F(w,w) at z={z}, w={w}")
    L, R = left_lie_derivative(X, F), right_lie_derivative(X, F)
    LR, RL = left_lie_derivative(X, R), right_lie_derivative(X, L)
    worst, worst_pt, failures = math.inf, None, 0
    for _ in range(samples):
        z = random_point(rng, F.dim, radius)
        lhs = complex(R(z, z) * L(z, z))
        rhs = complex(0.5 * F(z, z) * (LR(z, z) + RL(z, z)))
        scale = 1.0 + abs(lhs) + abs(rhs)
        tol = MARGIN_RTOL * scale
        if abs(lhs.imag) > tol or abs(rhs.imag) > tol:
            raise PremiseViolated(f"complex derivative values at z={z}")
        margin = (rhs.real - lhs.real) / scale
        if margin < worst:
            worst, worst_pt = margin, z
        if lhs.real > rhs.real + tol:
            failures += 1
    return InequalityReport(samples, samples, failures == 0, worst, worst_pt, failures)
