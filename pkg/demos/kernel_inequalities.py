"""Second-order kernel data and the two inequality checks on a Gaussian kernel."""
from liejet.kernels import (
    Curve,
    anticommutator,
    antif_check,
    csf_check,
    gaussian_kernel,
    second_difference,
)
from liejet.vectorfields import VectorField

F = gaussian_kernel(2)
z, v = [0.3, -0.5], [1.0, 0.5]
c = Curve.line(z, v)
half = anticommutator(F, v, v, z, z) / 2
print("half anticommutator:", half)
for k in range(2, 11, 2):
    t = 2.0 ** -k
    print(f"  t = 2^-{k:<2}  S/t^2 = {second_difference(F, c, t) / t**2:.10f}")

X = VectorField(2, lambda z: [1.0 + z[1], z[0] * z[0]])
for name, check, kw in (("cone", antif_check, {"cone": "nonneg-real"}),
                        ("Cauchy-Schwarz", csf_check, {})):
    rep = check(F, X=X, samples=1000, **kw)
    print(f"{name:>15}: holds={rep.holds}  worst margin {rep.worst_margin:.3f}")
