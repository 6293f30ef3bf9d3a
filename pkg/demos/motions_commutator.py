"""Initial directions of matrix motions, and how fast the commutator remainder vanishes."""
import numpy as np

from liejet.backends import alg_commutator, matrix
from liejet.motions import (
    commutator_remainder_fit,
    exp_motion,
    initial_direction,
    motion_group_commutator,
    motion_inverse,
    motion_product,
)

rng = np.random.default_rng(1)
X, Y = (matrix(rng.uniform(-1, 1, (3, 3))) for _ in range(2))
A, B = exp_motion(X), exp_motion(Y)

for label, motion, want in (
    ("inverse", motion_inverse(A), -X),
    ("A(2t) B(3t)", motion_product(A, B, 2.0, 3.0), X * 2 + Y * 3),
    ("group commutator", motion_group_commutator(A, B), alg_commutator(X, Y)),
):
    d = initial_direction(motion)
    print(f"{label:>17}: error {(d.value - want).norm():.1e}, "
          f"exponent {motion.exponent}, residual rate {d.residual_rate:.2f}")

fit = commutator_remainder_fit(A, B)
print(f"\n|AB - BA - t^2 [X,Y]| ~ t^{fit.rate:.3f}")
for row in fit.table():
    print(f"  t = {row['x']:.2e}   remainder {row['residual']:.3e}   {'fit' if row['used'] else 'floor'}")
