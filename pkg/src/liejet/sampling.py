"""Seeded random test objects: polynomials, fields, points, matrices."""
from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .backends import AlgebraElement, NonInvertible, alg_inverse, matrix
from .jets import Jet
from .vectorfields import SmoothFunction, VectorField


def monomials(dim: int, degree: int) -> list[tuple[int, ...]]:
    return [e for e in itertools.product(range(degree + 1), repeat=dim) if sum(e) <= degree]


def _poly_eval(terms, z):
    total = 0.0
    for c, e in terms:
        term = c
        for zi, k in zip(z, e):
            if k:
                term = term * zi ** k
        total = total + term
    return total


def random_polynomial(rng: np.random.Generator, dim: int, degree: int = 2,
                      scale: float = 1.0) -> SmoothFunction:
    terms = [(float(rng.uniform(-scale, scale)), e) for e in monomials(dim, degree)]
    return SmoothFunction(dim, lambda z: _poly_eval(terms, z))


def random_polynomial_field(rng: np.random.Generator, dim: int, degree: int = 2,
                            scale: float = 1.0) -> VectorField:
    comps = [[(float(rng.uniform(-scale, scale)), e) for e in monomials(dim, degree)]
             for _ in range(dim)]
    return VectorField(dim, lambda z: [_poly_eval(t, z) for t in comps])


def random_point(rng: np.random.Generator, dim: int, radius: float = 1.0) -> list[float]:
    return [float(x) for x in rng.uniform(-radius, radius, dim)]


def random_matrix(rng: np.random.Generator, n: int, low: float = -1.0,
                  high: float = 1.0) -> AlgebraElement:
    return matrix(rng.uniform(low, high, (n, n)))


def random_fraction(rng: np.random.Generator, bound: int = 5) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))


def random_rational_matrix(rng: np.random.Generator, n: int, bound: int = 5) -> AlgebraElement:
    return matrix([[random_fraction(rng, bound) for _ in range(n)] for _ in range(n)], exact=True)


def random_rational_jet(rng: np.random.Generator, length: int, kind: str = "scalar",
                        n: int = 3, invertible: bool = False, bound: int = 5) -> Jet:
    """Random exact jet; ``kind`` is ``"scalar"`` or ``"matrix"``.

    With ``invertible`` the leading coefficient is redrawn until it has an
    inverse (nonzero scalar, nonsingular matrix).
    """
    def draw():
        if kind == "scalar":
            return random_fraction(rng, bound)
        return random_rational_matrix(rng, n, bound)

    lead = draw()
    if invertible:
        while _singular(lead):
            lead = draw()
    return Jet([lead] + [draw() for _ in range(length - 1)])


def _singular(x) -> bool:
    if isinstance(x, AlgebraElement):
        try:
            alg_inverse(x)
        except NonInvertible:
            return True
        return False
    return x == 0
