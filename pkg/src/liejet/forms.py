"""s-linear forms on chart vector fields, derivative operators, exterior derivative.

Arguments are passed in index order: ``B([X_0, ..., X_{s-1}], z)``.  With
this convention the exterior derivative is

    dB(X_0, ..., X_s) = sum_j (-1)^j X_j d B(..., X_j omitted, ...)
                        + sum_{i<l} (-1)^(i+l) B([X_i, X_l], ..., X_i, X_l omitted, ...)

so that ``dtheta(X, Y) = X d(theta(Y)) - Y d(theta(X)) - theta([X, Y])``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .sampling import random_point, random_polynomial_field
from .vectorfields import (
    DimensionMismatch,
    SmoothFunction,
    VectorField,
    derivative_function,
    directional,
    lie_bracket,
)

__all__ = [
    "DifferentialOperator",
    "NotAlternating",
    "SForm",
    "diffop_apply",
    "dform_derivative_operator",
    "exterior_derivative",
    "exterior_terms",
    "is_alternating",
    "is_closed",
    "is_exact_witness",
    "is_symmetric",
    "nondegenerate_at",
    "transpose",
]

CERTIFY_RTOL = 1e-9
DEFAULT_SAMPLES = 64


class NotAlternating(ValueError):
    pass


def _basis(dim: int, i: int) -> VectorField:
    e = [0.0] * dim
    e[i] = 1.0
    return VectorField.constant(e)


class SForm:
    """An s-linear form given by its action on fields at a (possibly jet) point."""

    def __init__(self, arity: int, dim: int, action: Callable, alternating: bool | None = None):
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        self.arity = arity
        self.dim = dim
        self.action = action
        self.alternating = arity <= 1 if alternating is None else (alternating or arity <= 1)

    def _check(self, fields: Sequence[VectorField]):
        if len(fields) != self.arity:
            raise ValueError(f"{self.arity}-form applied to {len(fields)} fields")
        for X in fields:
            if X.dim != self.dim:
                raise DimensionMismatch("field lives on a different chart")

    def __call__(self, fields: Sequence[VectorField], z):
        self._check(fields)
        return self.action(list(fields), [float(x) for x in z])

    def function(self, fields: Sequence[VectorField]) -> SmoothFunction:
        """``z -> B(fields)(z)`` as a differentiable function."""
        self._check(fields)
        fields, act = list(fields), self.action
        return SmoothFunction(self.dim, lambda z: act(fields, z))

    def coefficient(self, z, idx: tuple[int, ...]):
        """Value on the coordinate frame ``(e_{idx_0}, ..., e_{idx_{s-1}})``."""
        return self([_basis(self.dim, i) for i in idx], z)

    def coefficient_array(self, z) -> np.ndarray:
        shape = (self.dim,) * self.arity
        out = np.zeros(shape, dtype=complex)
        for idx in itertools.product(range(self.dim), repeat=self.arity):
            out[idx] = self.coefficient(z, idx)
        return out if np.iscomplexobj(out) and np.any(out.imag) else out.real

    # -- linear structure --------------------------------------------------
    def __add__(self, other: "SForm") -> "SForm":
        if (other.arity, other.dim) != (self.arity, self.dim):
            raise ValueError("forms of different type")
        a, b = self.action, other.action
        return SForm(self.arity, self.dim, lambda F, z: a(F, z) + b(F, z),
                     self.alternating and other.alternating)

    def __mul__(self, c) -> "SForm":
        a = self.action
        return SForm(self.arity, self.dim, lambda F, z: c * a(F, z), self.alternating)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other: "SForm") -> "SForm":
        return self + (-other)

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_coefficients(cls, arity: int, dim: int, coeff: Callable,
                          alternating: bool | None = None) -> "SForm":
        """``B(X_0..X_{s-1}) = sum_idx coeff(z, idx) prod_k X_k(z)[idx_k]``."""
        indices = list(itertools.product(range(dim), repeat=arity))

        def action(fields, z):
            vals = [X.fn(z) for X in fields]
            total = 0.0
            for idx in indices:
                c = coeff(z, idx)
                if isinstance(c, (int, float)) and c == 0:
                    continue
                term = c
                for v, i in zip(vals, idx):
                    term = term * v[i]
                total = total + term
            return total

        return cls(arity, dim, action, alternating)

    @classmethod
    def zero_form(cls, f: SmoothFunction) -> "SForm":
        fn = f.fn
        return cls(0, f.dim, lambda fields, z: fn(z))

    @classmethod
    def one_form(cls, components: Sequence[SmoothFunction | Callable]) -> "SForm":
        """``theta = sum_i components[i] dz_i``."""
        fns = [c.fn if isinstance(c, SmoothFunction) else c for c in components]
        return cls.from_coefficients(1, len(fns), lambda z, idx: fns[idx[0]](z))

    @classmethod
    def two_form(cls, dim: int, entries: Callable, alternating: bool | None = None) -> "SForm":
        """``entries(z)`` returns a ``dim x dim`` nested list of coefficients."""
        return cls.from_coefficients(2, dim, lambda z, idx: entries(z)[idx[0]][idx[1]],
                                     alternating)

    @classmethod
    def zero(cls, arity: int, dim: int) -> "SForm":
        return cls(arity, dim, lambda fields, z: 0.0, True)


def transpose(B: SForm) -> SForm:
    """``B^T(X, Y) = B(Y, X)``."""
    if B.arity != 2:
        raise ValueError("transpose needs a bilinear form")
    act = B.action
    return SForm(2, B.dim, lambda F, z: act([F[1], F[0]], z), B.alternating)


def exterior_terms(B: SForm, fields: Sequence[VectorField], z) -> list:
    """The individual summands of ``dB(fields)(z)``; their absolute sum is the
    natural rounding scale for the result."""
    s = B.arity
    if len(fields) != s + 1:
        raise ValueError(f"d of a {s}-form takes {s + 1} fields")
    act = B.action
    terms = []
    for j, X in enumerate(fields):
        rest = [F for k, F in enumerate(fields) if k != j]
        sign = -1.0 if j % 2 else 1.0
        terms.append(sign * directional(lambda w, rest=rest: act(rest, w), z, X.fn(z)))
    for i, l in itertools.combinations(range(s + 1), 2):
        rest = [F for k, F in enumerate(fields) if k not in (i, l)]
        sign = -1.0 if (i + l) % 2 else 1.0
        terms.append(sign * act([lie_bracket(fields[i], fields[l])] + rest, z))
    return terms


def exterior_derivative(B: SForm) -> SForm:
    """The (s+1)-form ``dB``, bracket terms included."""
    if not B.alternating:
        raise NotAlternating("exterior derivative needs an alternating form")

    def action(fields, z):
        total = 0.0
        for term in exterior_terms(B, fields, z):
            total = total + term
        return total

    return SForm(B.arity + 1, B.dim, action, True)


def dform_derivative_operator(f: SmoothFunction, s: int, fields: Sequence[VectorField], z):
    """``(X_1, ..., X_s) D^s f = (X_1 d) ... (X_s d) f`` at ``z``."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    if len(fields) != s:
        raise ValueError(f"D^{s} takes {s} fields, got {len(fields)}")
    g = f
    for X in reversed(fields):
        g = derivative_function(X, g)
    return g(z)


@dataclass(frozen=True)
class DifferentialOperator:
    """``I = sum_s A_s D^s`` with ``tensors[s](z)`` an ``(d,)*s`` array."""

    dim: int
    tensors: tuple

    @property
    def order(self) -> int:
        return len(self.tensors) - 1


def _partial(f: SmoothFunction, idx: tuple[int, ...], z):
    return dform_derivative_operator(f, len(idx), [_basis(f.dim, i) for i in idx], z)


def diffop_apply(I: DifferentialOperator, f: SmoothFunction, z):
    if I.dim != f.dim:
        raise DimensionMismatch("operator and function live on different charts")
    total = 0.0
    for s, A in enumerate(I.tensors):
        if A is None:
            continue
        a = np.asarray(A(z) if callable(A) else A)
        if a.shape != (I.dim,) * s:
            raise ValueError(f"coefficient of order {s} has shape {a.shape}")
        for idx in itertools.product(range(I.dim), repeat=s):
            c = a[idx] if s else a.item()
            if c != 0:
                total = total + c * _partial(f, idx, z)
    return total


# -- sampled predicates --------------------------------------------------------

def _samples(B: SForm, arity: int, samples: int, seed):
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        fields = [random_polynomial_field(rng, B.dim, 2) for _ in range(arity)]
        yield fields, random_point(rng, B.dim)


def is_alternating(B: SForm, samples: int = DEFAULT_SAMPLES, seed=0) -> bool:
    """Sampled check of ``B(.., X, .., X, ..) = 0`` for every slot pair."""
    if B.arity <= 1:
        return True
    for fields, z in _samples(B, B.arity, samples, seed):
        for i, j in itertools.combinations(range(B.arity), 2):
            args = list(fields)
            args[j] = args[i]
            scale = 1.0 + math.prod(float(np.linalg.norm(X(z))) for X in args)
            if abs(B(args, z)) > CERTIFY_RTOL * scale * (1.0 + _coeff_scale(B, z)):
                return False
    return True


def is_symmetric(B: SForm, samples: int = DEFAULT_SAMPLES, seed=0) -> bool:
    T = transpose(B)
    for (X, Y), z in _samples(B, 2, samples, seed):
        a, b = B([X, Y], z), T([X, Y], z)
        if abs(a - b) > CERTIFY_RTOL * (1.0 + abs(a) + abs(b)):
            return False
    return True


def _coeff_scale(B: SForm, z) -> float:
    return float(np.max(np.abs(B.coefficient_array(z)))) if B.arity else abs(B([], z))


def is_closed(B: SForm, samples: int = DEFAULT_SAMPLES, seed=0) -> bool:
    """``dB = 0`` at ``samples`` random (fields, point) draws, relative to the term scale."""
    for fields, z in _samples(B, B.arity + 1, samples, seed):
        terms = exterior_terms(B, fields, z)
        scale = 1.0 + sum(abs(t) for t in terms)
        if abs(sum(terms)) > CERTIFY_RTOL * scale:
            return False
    return True


def is_exact_witness(B: SForm, Bprime: SForm, samples: int = DEFAULT_SAMPLES, seed=0) -> bool:
    """``B = dB'`` at sampled (fields, point) draws."""
    if Bprime.arity + 1 != B.arity:
        return False
    for fields, z in _samples(B, B.arity, samples, seed):
        terms = exterior_terms(Bprime, fields, z)
        target = B(fields, z)
        scale = 1.0 + abs(target) + sum(abs(t) for t in terms)
        if abs(sum(terms) - target) > CERTIFY_RTOL * scale:
            return False
    return True


def nondegenerate_at(B: SForm, z, rtol: float = 1e-10) -> bool:
    """Pointwise full-rank test of a bilinear form's coefficient matrix."""
    if B.arity != 2:
        raise ValueError("nondegeneracy is defined for bilinear forms")
    m = B.coefficient_array(z)
    sv = np.linalg.svd(m, compute_uv=False)
    return bool(sv[-1] > rtol * max(sv[0], 1e-300))
