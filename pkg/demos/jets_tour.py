"""Truncated series arithmetic: exact rationals, matrices, fractional roots."""
from fractions import Fraction as Fr

from liejet.backends import matrix
from liejet.jets import (
    Jet,
    OrderClaim,
    jet_compose_power,
    jet_inverse,
    jet_mul,
    jet_reroot,
    jet_sub,
)

def show(J):
    return "[" + ", ".join(str(c) for c in J.coeffs) + "]"


# 1/(1 + t) to six terms, exactly
F = Jet([Fr(1), Fr(1), Fr(0), Fr(0), Fr(0), Fr(0)])
print("1/(1+t)       =", show(jet_inverse(F)))

# noncommutative coefficients: (1 + tX)(1 + tY) - (1 + tY)(1 + tX) = t^2 [X, Y]
X = matrix([[0, 1], [0, 0]], exact=True)
Y = matrix([[0, 0], [1, 0]], exact=True)
one, zero = X.one(), X * 0
A, B = Jet([one, X, zero]), Jet([one, Y, zero])
print("t^2 coeff     =", jet_sub(jet_mul(A, B), jet_mul(B, A))[2].to_json())

# a series in s = t^(1/2): t^(3/2) vanishes to first order in t, t does not
G = Jet([0, 0, 0, 1], root=2)
print("t^(3/2) = o(t):", OrderClaim(1).holds(G))
print("t       = o(t):", OrderClaim(1).holds(jet_reroot(Jet([0, 1, 0]), 2)))

# substituting t -> t^3 stretches the coefficient list
print("F(t^3)        =", show(jet_compose_power(Jet([Fr(1), Fr(2), Fr(3)]), 3)))
