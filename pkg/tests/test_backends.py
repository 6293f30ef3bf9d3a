import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liejet.backends import (
    AlgebraElement,
    BackendMismatch,
    NonInvertible,
    alg_commutator,
    alg_inverse,
    exp_truncated,
    matrix,
    scalar,
)

finite = st.floats(-10, 10, allow_nan=False)
small_int = st.integers(-20, 20)


def int_matrix(n):
    return st.lists(st.lists(small_int, min_size=n, max_size=n), min_size=n, max_size=n)


def test_commutator_examples():
    E12, E21 = matrix([[0, 1], [0, 0]]), matrix([[0, 0], [1, 0]])
    assert alg_commutator(E12, E21) == matrix([[1, 0], [0, -1]])
    assert alg_commutator(scalar(3.0), scalar(5.0)).is_zero()
    x = matrix([[1.5, 2.0], [-1.0, 0.25]])
    assert alg_commutator(x, x).is_zero()


def test_backend_mismatch():
    with pytest.raises(BackendMismatch):
        alg_commutator(matrix(np.eye(2)), matrix(np.eye(3)))
    with pytest.raises(BackendMismatch):
        matrix(np.eye(2)) * scalar(2.0)


def test_inverse_examples():
    assert alg_inverse(matrix(np.eye(3))) == matrix(np.eye(3))
    assert alg_inverse(matrix([[2.0, 0.0], [0.0, 4.0]])) == matrix([[0.5, 0.0], [0.0, 0.25]])
    with pytest.raises(NonInvertible):
        alg_inverse(scalar(0.0))
    with pytest.raises(NonInvertible):
        alg_inverse(matrix([[1.0, 2.0], [2.0, 4.0]]))
    with pytest.raises(NonInvertible):
        alg_inverse(matrix([[1.0, 0.0], [0.0, 1e-14]]))


def test_exact_inverse_is_exact():
    g = matrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]], exact=True)
    assert g * alg_inverse(g) == g.one()
    assert alg_inverse(g).value[0, 0] == Fraction(11, 18)


def test_exp_truncated_examples():
    assert exp_truncated(matrix(np.zeros((2, 2))), 1.0, 5).element == matrix(np.eye(2))
    e = exp_truncated(scalar(1.0), 1.0, 20).element.value
    assert abs(e - 2.718281828459045) <= 1e-12
    N = matrix([[0, 1], [0, 0]], exact=True)
    for order in (1, 2, 7):
        assert exp_truncated(N, Fraction(3, 2), order).element == N.one() + N * Fraction(3, 2)
    g = exp_truncated(matrix([[0.1, 0.2], [0.3, -0.1]]), 1.0, 10)
    assert g.certified


@given(st.tuples(finite, finite, finite))
def test_ring_axioms_real(v):
    x, y, z = (scalar(a) for a in v)
    scale = 1 + abs(v[0] * v[1] * v[2]) + abs(v[0]) * (abs(v[1]) + abs(v[2]))
    assert ((x * y) * z - x * (y * z)).norm() <= 1e-12 * scale
    assert (x * (y + z) - (x * y + x * z)).norm() <= 1e-12 * scale
    assert x.one() * x == x and x * x.one() == x


@settings(max_examples=60)
@given(int_matrix(3), int_matrix(3), int_matrix(3))
def test_ring_axioms_integer_matrices_exact(a, b, c):
    x, y, z = matrix(a), matrix(b), matrix(c)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z
    assert x.one() * x == x == x * x.one()


@settings(max_examples=60)
@given(st.lists(finite, min_size=8, max_size=8))
def test_commutator_operator_norm_bound(vals):
    x = matrix(np.array(vals[:4]).reshape(2, 2))
    y = matrix(np.array(vals[4:]).reshape(2, 2))
    op = lambda m: np.linalg.norm(m.value, 2)
    assert op(alg_commutator(x, y)) <= 2 * op(x) * op(y) * (1 + 1e-12) + 1e-300


def test_random_inverse_contract():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        g = matrix(rng.uniform(-1, 1, (3, 3)))
        try:
            gi = alg_inverse(g)
        except NonInvertible:
            continue
        assert (g * gi - g.one()).norm() <= 1e-12 * g.norm()
        assert (gi * g - g.one()).norm() <= 1e-12 * g.norm()


def test_complex_scalars_and_json():
    z = scalar(1 + 2j)
    assert z.kind == "complex"
    assert (z * z).value == -3 + 4j
    assert z.to_json() == [1.0, 2.0]
    assert matrix([[1, 2], [3, 4]]).to_json() == [[1.0, 2.0], [3.0, 4.0]]
