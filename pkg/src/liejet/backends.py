"""Concrete associative algebras: real and complex scalars, n x n matrices.

Every element carries a Frobenius/absolute-value norm; all limits and
tolerances elsewhere in the package are measured in it.  Payloads may be
floating point or exact (``fractions.Fraction`` scalars, object arrays of
fractions for matrices).
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "AlgebraElement",
    "BackendMismatch",
    "GroupElement",
    "NonInvertible",
    "alg_commutator",
    "alg_inverse",
    "exp_truncated",
    "matrix",
    "scalar",
]

COND_LIMIT = 1e12
INVERSE_RTOL = 1e-12


class BackendMismatch(TypeError):
    """Operands live in different algebras."""


class NonInvertible(ArithmeticError):
    """Element is singular or too ill-conditioned to invert reliably."""


def _is_exact(value) -> bool:
    if isinstance(value, np.ndarray):
        return value.dtype == object
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


class AlgebraElement:
    """An element of one of the supported associative algebras.

    ``kind`` is ``"real"``, ``"complex"`` or ``"matrix"``; ``*`` is the algebra
    product (matrix product for matrices) and multiplying by a plain Python
    number is the scalar action.
    """

    __slots__ = ("kind", "value")

    def __init__(self, kind: str, value):
        if kind not in ("real", "complex", "matrix"):
            raise ValueError(f"unknown backend kind {kind!r}")
        if kind == "matrix":
            value = np.asarray(value)
            if value.ndim != 2 or value.shape[0] != value.shape[1]:
                raise ValueError("matrix payload must be square")
        self.kind = kind
        self.value = value

    @property
    def size(self) -> int:
        return self.value.shape[0] if self.kind == "matrix" else 1

    @property
    def exact(self) -> bool:
        return _is_exact(self.value)

    @property
    def tag(self) -> tuple:
        return (self.kind, self.size)

    def _check(self, other: "AlgebraElement") -> None:
        if self.tag != other.tag:
            raise BackendMismatch(f"{self.tag} vs {other.tag}")

    def _new(self, value) -> "AlgebraElement":
        return AlgebraElement(self.kind, value)

    def __add__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return self._new(self.value + other.value)
        if isinstance(other, numbers.Number):
            return self + self.one() * other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return self._new(self.value - other.value)
        if isinstance(other, numbers.Number):
            return self - self.one() * other
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, numbers.Number):
            return self.one() * other - self
        return NotImplemented

    def __neg__(self):
        return self._new(-self.value)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            if self.kind == "matrix":
                return self._new(self.value @ other.value)
            return self._new(self.value * other.value)
        if isinstance(other, numbers.Number):
            return self._new(self.value * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Number):
            return self._new(other * self.value)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, numbers.Number):
            if self.exact and isinstance(other, int):
                other = Fraction(other)
            return self._new(self.value / other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.tag != other.tag:
            return False
        if self.kind == "matrix":
            return bool(np.array_equal(self.value, other.value))
        return self.value == other.value

    def __hash__(self):
        return hash((self.tag, repr(self.value)))

    def __repr__(self):
        return f"AlgebraElement({self.kind!r}, {self.value!r})"

    def norm(self) -> float:
        if self.kind == "matrix":
            flat = self.value.ravel()
            return math.sqrt(sum(abs(complex(v)) ** 2 for v in flat)) if self.exact \
                else float(np.linalg.norm(self.value))
        return abs(complex(self.value)) if self.kind == "complex" else abs(float(self.value))

    def zero(self) -> "AlgebraElement":
        return self * 0

    def one(self) -> "AlgebraElement":
        if self.kind == "matrix":
            n = self.size
            if self.exact:
                eye = np.empty((n, n), dtype=object)
                for i in range(n):
                    for j in range(n):
                        eye[i, j] = Fraction(int(i == j))
                return self._new(eye)
            return self._new(np.eye(n, dtype=self.value.dtype))
        return self._new(Fraction(1) if self.exact else (1.0 if self.kind == "real" else 1.0 + 0j))

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.exact:
            if self.kind == "matrix":
                return all(v == 0 for v in self.value.ravel())
            return self.value == 0
        return self.norm() <= tol

    def inverse(self) -> "AlgebraElement":
        return alg_inverse(self)

    def to_json(self):
        """Plain nested lists (row-major for matrices); complex as [re, im]."""
        def enc(v):
            if isinstance(v, Fraction):
                return float(v)
            if isinstance(v, complex) or isinstance(v, np.complexfloating):
                return [float(v.real), float(v.imag)]
            return float(v)

        if self.kind == "matrix":
            return [[enc(v) for v in row] for row in self.value]
        return enc(self.value)


@dataclass(frozen=True)
class GroupElement:
    """An algebra element together with a verified two-sided inverse."""

    element: AlgebraElement
    inverse: AlgebraElement | None = None

    @property
    def certified(self) -> bool:
        return self.inverse is not None


def scalar(value, kind: str | None = None) -> AlgebraElement:
    if kind is None:
        kind = "complex" if isinstance(value, complex) else "real"
    return AlgebraElement(kind, value)


def matrix(rows, exact: bool = False) -> AlgebraElement:
    if exact:
        arr = np.array([[Fraction(v) for v in row] for row in rows], dtype=object)
    else:
        arr = np.array(rows, dtype=complex if np.iscomplexobj(np.asarray(rows)) else float)
    return AlgebraElement("matrix", arr)


def alg_commutator(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Return ``xy - yx``."""
    x._check(y)
    return x * y - y * x


def _exact_matrix_inverse(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    work = np.empty((n, 2 * n), dtype=object)
    work[:, :n] = a
    for i in range(n):
        for j in range(n):
            work[i, n + j] = Fraction(int(i == j))
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r, col] != 0), None)
        if pivot is None:
            raise NonInvertible("singular matrix")
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
        work[col] = work[col] / work[col, col]
        for r in range(n):
            if r != col and work[r, col] != 0:
                work[r] = work[r] - work[r, col] * work[col]
    return work[:, n:]


def alg_inverse(g: AlgebraElement) -> AlgebraElement:
    """Two-sided inverse with ``|g g^-1 - 1| <= 1e-12 |g|`` on both sides.

    Raises NonInvertible for singular input, condition numbers above
    ``COND_LIMIT``, or when rounding keeps the measured residual above the
    bound (which happens from a condition number of roughly 1e4 on).
    """
    if g.kind != "matrix":
        if g.value == 0:
            raise NonInvertible("zero scalar")
        if g.exact:
            return g._new(Fraction(1) / g.value)
        return g._new(1 / g.value)
    if g.exact:
        return g._new(_exact_matrix_inverse(g.value))
    a = g.value
    if not np.all(np.isfinite(a)):
        raise NonInvertible("non-finite entries")
    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise NonInvertible(f"condition number {cond:.3g} exceeds {COND_LIMIT:g}")
    x = np.linalg.inv(a)
    eye = np.eye(a.shape[0])
    x = x + x @ (eye - a @ x)  # one Newton step
    # the contract is checked, not assumed: rounding in a @ x grows like eps * cond
    bound = INVERSE_RTOL * np.linalg.norm(a)
    worst = max(np.linalg.norm(a @ x - eye), np.linalg.norm(x @ a - eye))
    if worst > bound:
        raise NonInvertible(f"inverse residual {worst:.3g} exceeds {bound:.3g} (condition {cond:.3g})")
    return g._new(x)


def exp_truncated(x: AlgebraElement, t: float, order: int) -> GroupElement:
    """Partial sum ``sum_{k<=order} (t x)^k / k!`` with its inverse when available."""
    if order < 1:
        raise ValueError("order must be >= 1")
    tx = x * t
    term = x.one()
    total = term
    for k in range(1, order + 1):
        term = term * tx / k
        total = total + term
    try:
        inv = alg_inverse(total)
    except NonInvertible:
        inv = None
    return GroupElement(total, inv)
