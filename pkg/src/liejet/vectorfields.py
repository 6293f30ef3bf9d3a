"""Vector fields on an open chart of R^d, acting on functions as derivations.

Functions and fields are plain Python callables on a coordinate sequence.
They must be written with ordinary arithmetic and the elementary functions
from :mod:`liejet.jets` so that they can be evaluated on jets; all
derivatives are then exact forward-mode Taylor coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from . import jets
from .jets import Jet, coefficient, fresh_tag
from .limits import geometric_steps, richardson_table

__all__ = [
    "Diffeo",
    "DimensionMismatch",
    "SmoothFunction",
    "StepFailure",
    "VectorField",
    "accessible_direction_check",
    "derivation_apply",
    "derivative_function",
    "directional",
    "flow",
    "lie_bracket",
    "lie_derivative",
    "pullback",
]


class DimensionMismatch(ValueError):
    pass


class StepFailure(RuntimeError):
    """The flow integrator could not keep its step size above underflow."""


def _point(z, d: int | None = None):
    z = [float(x) if not isinstance(x, (Jet, complex)) else x for x in z]
    if d is not None and len(z) != d:
        raise DimensionMismatch(f"expected a point in R^{d}, got {len(z)} coordinates")
    return z


def directional(fn: Callable, z: Sequence, v: Sequence, order: int = 1):
    """Taylor coefficient ``order`` of ``t -> fn(z + t v)`` at ``t = 0``.

    ``z`` and ``v`` may themselves contain jets of other perturbations, which
    is how nested derivatives are formed.  Vector-valued ``fn`` gives a list.
    """
    tag = fresh_tag()
    pad = [0.0] * (order - 1)
    probe = [Jet([zi, vi] + pad, tag=tag) for zi, vi in zip(z, v)]
    out = fn(probe)
    if isinstance(out, (list, tuple, np.ndarray)):
        return [coefficient(c, tag, order) for c in out]
    return coefficient(out, tag, order)


class SmoothFunction:
    """A smooth function ``R^d -> C`` given by a jet-compatible callable."""

    __slots__ = ("dim", "fn")

    def __init__(self, dim: int, fn: Callable):
        self.dim = dim
        self.fn = fn

    def __call__(self, z):
        return self.fn(_point(z, self.dim))

    def jet(self, z, v, order: int = 2) -> Jet:
        """Jet of ``t -> f(z + t v)`` with ``order + 1`` coefficients."""
        z, v = _point(z, self.dim), _point(v, self.dim)
        tag = fresh_tag()
        out = self.fn([Jet([zi, vi] + [0.0] * (order - 1), tag=tag) for zi, vi in zip(z, v)])
        return Jet([coefficient(out, tag, k) for k in range(order + 1)])

    # -- algebra of functions -----------------------------------------------
    def _lift(self, other):
        if isinstance(other, SmoothFunction):
            if other.dim != self.dim:
                raise DimensionMismatch("functions live on different charts")
            return other.fn
        return lambda z: other

    def __add__(self, other):
        g, f = self._lift(other), self.fn
        return SmoothFunction(self.dim, lambda z: f(z) + g(z))

    __radd__ = __add__

    def __sub__(self, other):
        g, f = self._lift(other), self.fn
        return SmoothFunction(self.dim, lambda z: f(z) - g(z))

    def __rsub__(self, other):
        g, f = self._lift(other), self.fn
        return SmoothFunction(self.dim, lambda z: g(z) - f(z))

    def __mul__(self, other):
        g, f = self._lift(other), self.fn
        return SmoothFunction(self.dim, lambda z: f(z) * g(z))

    __rmul__ = __mul__

    def __neg__(self):
        f = self.fn
        return SmoothFunction(self.dim, lambda z: -f(z))

    def apply(self, outer: Callable) -> "SmoothFunction":
        """Compose with a scalar function such as ``jets.exp``."""
        f = self.fn
        return SmoothFunction(self.dim, lambda z: outer(f(z)))

    @classmethod
    def coordinate(cls, dim: int, i: int) -> "SmoothFunction":
        return cls(dim, lambda z: z[i])

    @classmethod
    def constant(cls, dim: int, c) -> "SmoothFunction":
        return cls(dim, lambda z: c)

    @property
    def real(self) -> "SmoothFunction":
        f = self.fn
        return SmoothFunction(self.dim, lambda z: jets.real(f(z)))

    @property
    def imag(self) -> "SmoothFunction":
        f = self.fn
        return SmoothFunction(self.dim, lambda z: jets.imag(f(z)))


class VectorField:
    """A smooth map ``R^d -> R^d`` given by a jet-compatible callable."""

    __slots__ = ("dim", "fn")

    def __init__(self, dim: int, fn: Callable):
        self.dim = dim
        self.fn = fn

    def __call__(self, z) -> np.ndarray:
        return np.array(self.fn(_point(z, self.dim)), dtype=float)

    def component(self, i: int) -> SmoothFunction:
        f = self.fn
        return SmoothFunction(self.dim, lambda z: f(z)[i])

    def jacobian(self, z) -> np.ndarray:
        """``J[i, j] = d X_i / d z_j`` from exact first-order jets."""
        z = _point(z, self.dim)
        cols = []
        for j in range(self.dim):
            e = [0.0] * self.dim
            e[j] = 1.0
            cols.append(directional(self.fn, z, e))
        return np.array(cols, dtype=float).T

    def _check(self, other: "VectorField"):
        if other.dim != self.dim:
            raise DimensionMismatch("fields live on different charts")

    def __add__(self, other: "VectorField") -> "VectorField":
        self._check(other)
        f, g = self.fn, other.fn
        return VectorField(self.dim, lambda z: [a + b for a, b in zip(f(z), g(z))])

    def __sub__(self, other: "VectorField") -> "VectorField":
        self._check(other)
        f, g = self.fn, other.fn
        return VectorField(self.dim, lambda z: [a - b for a, b in zip(f(z), g(z))])

    def __mul__(self, c):
        """Pointwise scaling by a number or a :class:`SmoothFunction`."""
        f = self.fn
        if isinstance(c, SmoothFunction):
            g = c.fn
            return VectorField(self.dim, lambda z: [g(z) * a for a in f(z)])
        return VectorField(self.dim, lambda z: [c * a for a in f(z)])

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    @classmethod
    def constant(cls, vec) -> "VectorField":
        vec = [float(v) for v in vec]
        return cls(len(vec), lambda z: list(vec))

    @classmethod
    def zero(cls, dim: int) -> "VectorField":
        return cls.constant([0.0] * dim)


@dataclass(frozen=True)
class Diffeo:
    """A diffeomorphism given by jet-compatible forward and inverse maps."""

    dim: int
    forward: Callable
    inverse: Callable

    def __call__(self, z):
        return np.array(self.forward(_point(z, self.dim)), dtype=float)

    def then(self, k: "Diffeo") -> "Diffeo":
        """``k o self``."""
        f, fi, g, gi = self.forward, self.inverse, k.forward, k.inverse
        return Diffeo(self.dim, lambda z: g(f(z)), lambda z: fi(gi(z)))

    @classmethod
    def identity(cls, dim: int) -> "Diffeo":
        return cls(dim, lambda z: list(z), lambda z: list(z))

    @classmethod
    def translation(cls, c) -> "Diffeo":
        c = [float(x) for x in c]
        return cls(len(c), lambda z: [a + b for a, b in zip(z, c)],
                   lambda z: [a - b for a, b in zip(z, c)])

    def inversion_residual(self, points) -> float:
        worst = 0.0
        for z in points:
            z = np.asarray(z, dtype=float)
            a = np.array(self.forward(list(self.inverse(list(z)))), dtype=float)
            b = np.array(self.inverse(list(self.forward(list(z)))), dtype=float)
            worst = max(worst, float(np.max(np.abs(a - z))), float(np.max(np.abs(b - z))))
        return worst


def derivation_apply(X: VectorField, f: SmoothFunction, z) -> complex:
    """``Xdf(z)``: the exact derivative of ``f`` at ``z`` along ``X(z)``."""
    if X.dim != f.dim:
        raise DimensionMismatch("field and function live on different charts")
    z = _point(z, X.dim)
    return directional(f.fn, z, X.fn(z))


def derivative_function(X: VectorField, f: SmoothFunction) -> SmoothFunction:
    """The function ``z -> Xdf(z)``, itself differentiable."""
    if X.dim != f.dim:
        raise DimensionMismatch("field and function live on different charts")
    xf, ff = X.fn, f.fn
    return SmoothFunction(f.dim, lambda z: directional(ff, z, xf(z)))


def lie_derivative(X: VectorField, f: SmoothFunction) -> SmoothFunction:
    """Lie derivative of a complex function through its real and imaginary parts."""
    re = derivative_function(X, f.real)
    im = derivative_function(X, f.imag)
    return SmoothFunction(f.dim, lambda z: re.fn(z) + 1j * im.fn(z))


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """The field ``J_Y X - J_X Y`` whose derivation is ``[Xd, Yd]``."""
    X._check(Y)
    xf, yf = X.fn, Y.fn

    def bracket(z):
        x, y = xf(z), yf(z)
        dy = directional(yf, z, x)
        dx = directional(xf, z, y)
        return [a - b for a, b in zip(dy, dx)]

    return VectorField(X.dim, bracket)


def pullback(h: Diffeo, f: SmoothFunction) -> SmoothFunction:
    """Natural action ``f o h^-1``."""
    if h.dim != f.dim:
        raise DimensionMismatch("diffeomorphism and function live on different charts")
    inv, ff = h.inverse, f.fn
    return SmoothFunction(f.dim, lambda z: ff(inv(z)))


def flow(X: VectorField, t: float, z, tol: float = 1e-12) -> np.ndarray:
    """Integrate ``z' = X(z)`` for time ``t`` (negative ``t`` runs backwards).

    Uses the Dormand-Prince 5(4) embedded pair with local tolerance ``tol``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    z0 = np.asarray(_point(z, X.dim), dtype=float)
    if t == 0:
        return z0
    rhs = lambda _, y: X.fn([float(v) for v in y])
    sol = solve_ivp(rhs, (0.0, t), z0, method="RK45", rtol=tol, atol=tol)
    if sol.status != 0:
        raise StepFailure(sol.message)
    return sol.y[:, -1]


def accessible_direction_check(X: VectorField, f: SmoothFunction, z, steps: int = 8,
                               epsilon: float = 0.1, tol: float = 1e-12,
                               levels: int = 3) -> float:
    """Residual between the initial direction of ``t -> U(h_t) f (z)`` and ``(-X) d f (z)``.

    ``h_t`` is the time-``t`` flow of ``X``, so ``U(h_t) f = f o h_{-t}`` and
    the limit of ``(f(h_{-t} z) - f(z))/t`` is the derivation of the
    reversed field.  The quotients are Richardson-extrapolated, removing
    ``levels`` powers of ``t``.
    """
    if X.dim != f.dim:
        raise DimensionMismatch("field and function live on different charts")
    z = _point(z, X.dim)
    fz = f(z)
    ts = geometric_steps(epsilon, steps)
    qs = [(f(flow(X, -t, z, tol)) - fz) / t for t in ts]
    limit = richardson_table(qs, 2.0, min(levels, steps - 1))[-1][-1]
    expected = derivation_apply(-X, f, z)
    return abs(limit - expected)
