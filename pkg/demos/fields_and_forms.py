"""Vector fields as derivations, their bracket, and the exterior derivative on R^2."""
import math

from liejet import jets
from liejet.forms import SForm, exterior_derivative, is_closed
from liejet.vectorfields import (
    SmoothFunction,
    VectorField,
    accessible_direction_check,
    derivation_apply,
    derivative_function,
    flow,
    lie_bracket,
)

X = VectorField(2, lambda z: [-z[1], z[0]])          # rotation
Y = VectorField(2, lambda z: [z[0] * z[1], 1.0])
f = SmoothFunction(2, lambda z: jets.sin(z[0]) * z[1] ** 2)
z = [0.4, -0.7]

xy = derivation_apply(X, derivative_function(Y, f), z)
yx = derivation_apply(Y, derivative_function(X, f), z)
print("X(Yf) - Y(Xf) =", xy - yx)
print("[X, Y] f      =", derivation_apply(lie_bracket(X, Y), f, z))

print("quarter turn  :", flow(X, math.pi / 2, [1.0, 0.0]))
print("flow witness  :", accessible_direction_check(X, f, z))

theta = SForm.one_form([lambda z: -z[1], lambda z: z[0]])
E1, E2 = VectorField.constant([1.0, 0.0]), VectorField.constant([0.0, 1.0])
print("d theta(e1,e2):", exterior_derivative(theta)([E1, E2], z), " closed:", is_closed(theta))
df = exterior_derivative(SForm.zero_form(f))
print("df closed     :", is_closed(df))
