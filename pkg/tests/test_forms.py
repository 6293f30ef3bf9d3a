import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liejet.forms import (
    DifferentialOperator,
    NotAlternating,
    SForm,
    diffop_apply,
    dform_derivative_operator,
    exterior_derivative,
    exterior_terms,
    is_alternating,
    is_closed,
    is_exact_witness,
    is_symmetric,
    nondegenerate_at,
    transpose,
)
from liejet.harness.props_geometry import (
    domega_explicit,
    dtheta_explicit,
    random_one_form,
    random_two_form,
)
from liejet.sampling import random_point, random_polynomial, random_polynomial_field
from liejet.vectorfields import SmoothFunction, VectorField, derivation_apply, lie_bracket

seeds = st.integers(0, 2 ** 32 - 1)
E1 = VectorField.constant([1.0, 0.0])
E2 = VectorField.constant([0.0, 1.0])


def fields(rng, n, d):
    return [random_polynomial_field(rng, d) for _ in range(n)]


# -- D^s and differential operators ---------------------------------------------

def test_derivative_operator_examples():
    f = SmoothFunction(1, lambda z: z[0] ** 3)
    one = VectorField.constant([1.0])
    assert dform_derivative_operator(f, 0, [], [2.0]) == 8.0
    assert dform_derivative_operator(f, 2, [one, one], [2.0]) == 12.0
    g = SmoothFunction(2, lambda z: z[0] * z[1])
    assert dform_derivative_operator(g, 2, [E1, E2], [0.3, 0.5]) == 1.0
    assert dform_derivative_operator(g, 2, [E2, E1], [0.3, 0.5]) == 1.0
    with pytest.raises(ValueError):
        dform_derivative_operator(g, 2, [E1], [0.0, 0.0])


def test_first_order_is_derivation():
    rng = np.random.default_rng(0)
    (X,), f, z = fields(rng, 1, 3), random_polynomial(rng, 3, 3), random_point(rng, 3)
    assert dform_derivative_operator(f, 1, [X], z) == derivation_apply(X, f, z)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_second_order_asymmetry_is_bracket(seed):
    rng = np.random.default_rng(seed)
    X, Y = fields(rng, 2, 2)
    f, z = random_polynomial(rng, 2, 3), random_point(rng, 2)
    xy = dform_derivative_operator(f, 2, [X, Y], z)
    yx = dform_derivative_operator(f, 2, [Y, X], z)
    br = derivation_apply(lie_bracket(X, Y), f, z)
    assert abs(xy - yx - br) <= 1e-10 * (abs(xy) + abs(yx) + 1)


def test_diffop_examples():
    f = SmoothFunction(1, lambda z: z[0] ** 2)
    assert diffop_apply(DifferentialOperator(1, (1.0,)), f, [1.5]) == 2.25
    assert diffop_apply(DifferentialOperator(1, (None, None, [[1.0]])), f, [-4.0]) == 2.0
    X = VectorField(2, lambda z: [z[1], -z[0] ** 2])
    g = SmoothFunction(2, lambda z: z[0] ** 2 * z[1])
    z = [0.4, -0.9]
    I = DifferentialOperator(2, (None, lambda w: np.array(X(w))))
    assert diffop_apply(I, g, z) == pytest.approx(derivation_apply(X, g, z), abs=1e-15)
    with pytest.raises(ValueError):
        diffop_apply(DifferentialOperator(2, (None, [1.0, 2.0, 3.0])), g, z)


def test_diffop_matches_hand_derivatives():
    # f = z1^3 z2 + z2^2: f_11 = 6 z1 z2, f_12 = 3 z1^2, f_22 = 2, f_1 = 3 z1^2 z2
    f = SmoothFunction(2, lambda z: z[0] ** 3 * z[1] + z[1] ** 2)
    z1, z2 = 0.7, -1.3
    A2 = np.array([[1.0, 2.0], [0.5, -1.0]])
    I = DifferentialOperator(2, (3.0, [1.0, 0.0], A2))
    f0 = z1 ** 3 * z2 + z2 ** 2
    want = 3 * f0 + 3 * z1 ** 2 * z2 + 6 * z1 * z2 + 2.5 * 3 * z1 ** 2 - 2.0
    assert diffop_apply(I, f, [z1, z2]) == pytest.approx(want, rel=1e-14)


# -- transpose ------------------------------------------------------------------

def test_transpose_examples():
    z = [0.2, 0.6]
    sym = SForm.two_form(2, lambda z: [[1.0, z[0]], [z[0], 2.0]])
    X, Y = fields(np.random.default_rng(1), 2, 2)
    assert transpose(sym)([X, Y], z) == pytest.approx(sym([X, Y], z), abs=1e-15)
    alt = SForm.two_form(2, lambda z: [[0.0, z[1]], [-z[1], 0.0]], alternating=True)
    assert transpose(alt)([X, Y], z) == pytest.approx(-alt([X, Y], z), abs=1e-15)
    B = SForm.two_form(2, lambda z: [[0.0, 1.0], [0.0, 0.0]])  # B(X, Y) = X_1 Y_2
    assert B([E1, E2], z) == 1.0
    assert transpose(B)([E1, E2], z) == 0.0
    with pytest.raises(ValueError):
        transpose(SForm.one_form([lambda z: 1.0, lambda z: 0.0]))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_transpose_involution(seed):
    rng = np.random.default_rng(seed)
    B = SForm.two_form(3, lambda z: [[z[i] * z[j] + i - 2 * j for j in range(3)] for i in range(3)])
    X, Y = fields(rng, 2, 3)
    z = random_point(rng, 3)
    assert transpose(transpose(B))([X, Y], z) == B([X, Y], z)


def test_symmetry_and_alternation_predicates():
    sym = SForm.two_form(2, lambda z: [[1.0, z[0]], [z[0], 2.0]])
    alt = SForm.two_form(2, lambda z: [[0.0, z[1]], [-z[1], 0.0]], alternating=True)
    assert is_symmetric(sym) and not is_alternating(sym)
    assert is_alternating(alt) and not is_symmetric(alt)
    assert is_alternating(random_two_form(np.random.default_rng(2), 3))


# -- function linearity -----------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(seeds)
def test_function_linearity_each_slot(seed):
    rng = np.random.default_rng(seed)
    B = random_two_form(rng, 3)
    X, Y, W = fields(rng, 3, 3)
    f, g = random_polynomial(rng, 3), random_polynomial(rng, 3)
    z = random_point(rng, 3)
    comb = VectorField(3, lambda w: [f.fn(w) * a + g.fn(w) * b for a, b in zip(Y.fn(w), W.fn(w))])
    for slot in (0, 1):
        args = [X, X]
        args[slot] = comb
        lhs = B(args, z)
        a1, a2 = list(args), list(args)
        a1[slot], a2[slot] = Y, W
        rhs = f(z) * B(a1, z) + g(z) * B(a2, z)
        assert abs(lhs - rhs) <= 1e-12 * (abs(lhs) + abs(rhs) + 1)


# -- exterior derivative ------------------------------------------------------------

def test_extder_on_functions_is_derivation():
    rng = np.random.default_rng(3)
    f = random_polynomial(rng, 2, 3)
    (X,), z = fields(rng, 1, 2), random_point(rng, 2)
    df = exterior_derivative(SForm.zero_form(f))
    assert df([X], z) == pytest.approx(derivation_apply(X, f, z), abs=1e-15)


def test_dtheta_examples():
    z = [0.3, -0.8]
    theta = SForm.one_form([lambda z: 0.0, lambda z: z[0]])  # z1 dz2
    assert exterior_derivative(theta)([E1, E2], z) == 1.0
    rot = SForm.one_form([lambda z: -z[1], lambda z: z[0]])
    assert exterior_derivative(rot)([E1, E2], z) == 2.0
    assert not is_closed(rot)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(2, 3))
def test_general_formula_matches_low_degree_cases(seed, d):
    rng = np.random.default_rng(seed)
    z = random_point(rng, d)
    theta = random_one_form(rng, d)
    X, Y, W = fields(rng, 3, d)
    a, b = exterior_derivative(theta)([X, Y], z), dtheta_explicit(theta, X, Y, z)
    assert abs(a - b) <= 1e-12 * (abs(a) + abs(b) + 1)
    om = random_two_form(rng, d)
    ref, scale = domega_explicit(om, X, Y, W, z)
    assert abs(exterior_derivative(om)([X, Y, W], z) - ref) <= 1e-12 * (scale + 1)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_dd_zero(seed):
    rng = np.random.default_rng(seed)
    theta = random_one_form(rng, 3)
    X, Y, W = fields(rng, 3, 3)
    z = random_point(rng, 3)
    terms = exterior_terms(exterior_derivative(theta), [X, Y, W], z)
    assert abs(sum(terms)) <= 1e-10 * (sum(abs(t) for t in terms) + 1)


def test_dd_zero_on_constant_fields():
    rng = np.random.default_rng(4)
    f = random_polynomial(rng, 2, 3)
    ddf = exterior_derivative(exterior_derivative(SForm.zero_form(f)))
    assert abs(ddf([E1, E2], [0.1, 0.2])) <= 1e-10


def test_non_alternating_rejected():
    B = SForm.two_form(2, lambda z: [[1.0, 0.0], [0.0, 1.0]])
    with pytest.raises(NotAlternating):
        exterior_derivative(B)


def test_closed_and_exact():
    rng = np.random.default_rng(5)
    f = random_polynomial(rng, 3, 3)
    df = exterior_derivative(SForm.zero_form(f))
    assert is_closed(df)
    assert is_exact_witness(df, SForm.zero_form(f))
    Z = SForm.zero(1, 3)
    assert is_closed(Z)
    assert is_exact_witness(Z, SForm.zero(0, 3))
    rot = SForm.one_form([lambda z: -z[1], lambda z: z[0]])
    assert not is_exact_witness(rot, SForm.zero_form(SmoothFunction(2, lambda z: z[0] * z[1])))


def test_nondegeneracy():
    sym = SForm.two_form(2, lambda z: [[0.0, 1.0], [-1.0, 0.0]], alternating=True)
    assert nondegenerate_at(sym, [0.0, 0.0])
    deg = SForm.two_form(2, lambda z: [[1.0, z[0]], [z[0], z[0] ** 2]])
    assert not nondegenerate_at(deg, [0.7, 0.0])
    with pytest.raises(ValueError):
        nondegenerate_at(SForm.zero(1, 2), [0.0, 0.0])
