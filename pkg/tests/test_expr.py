import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liejet.expr import ExpressionError, compile_expression
from liejet.jets import Jet


def ev(text, z, dim=2):
    return compile_expression(text, dim)(z)


def test_arithmetic_and_precedence():
    assert ev("1 + 2*3", [0, 0]) == 7
    assert ev("2^3^2", [0, 0]) == 2 ** 9
    assert ev("-2^2", [0, 0]) == -4
    assert ev("2*z1^2", [3, 0]) == 18
    assert ev("z1 ** 2 + z2", [2, 5]) == 9
    assert ev("pow(z1, 3) / 2", [2, 0]) == 4


def test_functions_and_constants():
    assert ev("sin(pi/2) + cos(0) + exp(0) + log(e) + sqrt(4)", [0, 0]) == pytest.approx(6.0)
    assert ev("i*i", [0, 0]) == -1


def test_two_slot_kernel():
    k = compile_expression("exp(-((z1-w1)^2 + (z2-w2)^2))", 2, slots="zw")
    assert k([1.0, 2.0], [1.0, 2.0]) == 1.0
    assert k([0.0, 0.0], [1.0, 0.0]) == pytest.approx(math.exp(-1))


def test_multiline_input():
    assert ev("z1\n + z2", [1, 2]) == 3


def test_accepts_jets():
    out = ev("z1^2 + sin(z2)", [Jet([1.0, 1.0, 0.0]), Jet([0.0, 1.0, 0.0])])
    assert out.coeffs[0] == pytest.approx(1.0)
    assert out.coeffs[1] == pytest.approx(3.0)
    assert out.coeffs[2] == pytest.approx(1.0)


@pytest.mark.parametrize("text,column,fragment", [
    ("z1 +* z2", 5, "syntax"),
    ("z1 + foo", 6, "unknown name"),
    ("z3", 1, "exceeds dimension"),
    ("w1", 1, "not available"),
    ("z1 ^ bar(z2)", 6, "unknown function"),
    ("sin(z1, z2)", 1, "argument"),
    ("z1 % 2", 1, "unsupported binary"),
    ("'a'", 1, "literal"),
    ("z1 < z2", 1, "unsupported syntax"),
])
def test_errors_carry_positions(text, column, fragment):
    with pytest.raises(ExpressionError) as info:
        compile_expression(text, 2)
    assert info.value.line == 1
    assert info.value.column == column
    assert fragment in str(info.value)


def test_caret_does_not_shift_columns():
    with pytest.raises(ExpressionError) as info:
        compile_expression("z1^2^2 + q", 2)
    assert info.value.column == 10


def test_error_on_second_line():
    with pytest.raises(ExpressionError) as info:
        compile_expression("z1 +\n  nope", 2)
    assert (info.value.line, info.value.column) == (2, 3)


def test_empty_and_truncated():
    with pytest.raises(ExpressionError, match="empty"):
        compile_expression("   ", 2)
    with pytest.raises(ExpressionError) as info:
        compile_expression("z1 +", 2)
    assert info.value.line == 1 and info.value.column == 5


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_polynomial_matches_python(a, b):
    assert ev("3*z1^2 - z1*z2 + 0.5", [a, b]) == pytest.approx(3 * a * a - a * b + 0.5, abs=1e-12)
