"""Properties for the vectorfields, forms and kernels suites, plus checks of
user-defined objects from the config file."""
from __future__ import annotations

import itertools
import math

import numpy as np

from .. import jets
from ..forms import (
    DifferentialOperator,
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
from ..kernels import (
    Curve,
    Kernel,
    PremiseViolated,
    anticommutator,
    antif_check,
    bilinear_kernel,
    csf_check,
    curve_derivative,
    gaussian_kernel,
    left_lie_derivative,
    lr_bracket_check,
    partial_jacobian_apply,
    right_lie_derivative,
    second_difference,
    shifted_bilinear_kernel,
    taylor2_expand,
)
from ..limits import EPS, fit_rate
from ..sampling import monomials, random_point, random_polynomial, random_polynomial_field
from ..vectorfields import (
    Diffeo,
    SmoothFunction,
    VectorField,
    accessible_direction_check,
    derivation_apply,
    derivative_function,
    flow,
    lie_bracket,
    lie_derivative,
    pullback,
)
from .registry import Context, Outcome, Skip, prop, wmax


def _draw(ctx: Context, fields: int = 0, functions: int = 0, dim: int | None = None):
    d = ctx.config.dim if dim is None else dim
    Xs = [random_polynomial_field(ctx.rng, d) for _ in range(fields)]
    fs = [random_polynomial(ctx.rng, d) for _ in range(functions)]
    return Xs, fs, random_point(ctx.rng, d)


# -- vector fields ------------------------------------------------------------

def leibniz_residual(X: VectorField, f: SmoothFunction, g: SmoothFunction, z) -> float:
    lhs = derivation_apply(X, f * g, z)
    a, b = f(z) * derivation_apply(X, g, z), g(z) * derivation_apply(X, f, z)
    return abs(lhs - a - b) / (abs(lhs) + abs(a) + abs(b) + 1.0)


def jacobi_residual(X, Y, Z, f, z) -> float:
    terms = [derivation_apply(lie_bracket(lie_bracket(A, B), C), f, z)
             for A, B, C in ((X, Y, Z), (Y, Z, X), (Z, X, Y))]
    return abs(sum(terms)) / (sum(abs(t) for t in terms) + 1.0)


def commutator_residual(X, Y, f, z) -> float:
    xy = derivation_apply(X, derivative_function(Y, f), z)
    yx = derivation_apply(Y, derivative_function(X, f), z)
    br = derivation_apply(lie_bracket(X, Y), f, z)
    return abs(br - (xy - yx)) / (abs(xy) + abs(yx) + 1.0)


@prop("vectorfields", "leibniz", "derivation.leibniz")
def vf_leibniz(ctx: Context) -> Outcome:
    worst = 0.0
    for _ in range(ctx.samples):
        (X,), (f, g), z = _draw(ctx, 1, 2)
        worst = wmax(worst, leibniz_residual(X, f, g, z))
    return Outcome(worst, ctx.tol(1e-12), {"samples": ctx.samples, "dim": ctx.config.dim})


@prop("vectorfields", "jacobi", "fields.lie-product")
def vf_jacobi(ctx: Context) -> Outcome:
    worst = 0.0
    count = ctx.count(0.5)
    for _ in range(count):
        (X, Y, Z), (f,), z = _draw(ctx, 3, 1)
        worst = wmax(worst, jacobi_residual(X, Y, Z, f, z))
    return Outcome(worst, ctx.tol(1e-10), {"samples": count, "dim": ctx.config.dim})


@prop("vectorfields", "bracket-commutator", "fields.lie-product")
def vf_bracket_commutator(ctx: Context) -> Outcome:
    worst = 0.0
    for _ in range(ctx.samples):
        (X, Y), (f,), z = _draw(ctx, 2, 1)
        worst = wmax(worst, commutator_residual(X, Y, f, z))
        # antisymmetry of the field bracket
        s = lie_bracket(X, Y)(z) + lie_bracket(Y, X)(z)
        worst = wmax(worst, float(np.max(np.abs(s))) / (1.0 + float(np.max(np.abs(lie_bracket(X, Y)(z))))))
    return Outcome(worst, ctx.tol(1e-10), {"samples": ctx.samples, "dim": ctx.config.dim})


@prop("vectorfields", "lie-derivative-linearity", "lie-derivative.linearity")
def vf_linearity(ctx: Context) -> Outcome:
    """L_{aX+bY} f = a L_X f + b L_Y f for complex f = g + i h and real a, b."""
    worst = 0.0
    for _ in range(ctx.samples):
        (X, Y), (g, h, k), z = _draw(ctx, 2, 3)
        a, b = (float(v) for v in ctx.rng.uniform(-2, 2, 2))
        f = g + h * 1j
        lhs = lie_derivative(X * a + Y * b, f).fn(z)
        rhs = a * lie_derivative(X, f).fn(z) + b * lie_derivative(Y, f).fn(z)
        split = derivation_apply(X, g, z) + 1j * derivation_apply(X, h, z)
        fn_lin = lie_derivative(X, f * a + k * b).fn(z) - (a * lie_derivative(X, f).fn(z)
                                                           + b * derivation_apply(X, k, z))
        scale = 1.0 + abs(lhs) + abs(rhs)
        worst = wmax(worst, abs(lhs - rhs) / scale,
                    abs(lie_derivative(X, f).fn(z) - split) / scale, abs(fn_lin) / scale)
    return Outcome(worst, ctx.tol(1e-12), {"samples": ctx.samples})


def _shear(ctx: Context, d: int) -> Diffeo:
    """``z -> A z + b + c z_0^2 e_last`` with invertible ``A``; exact inverse."""
    A = np.eye(d) + 0.3 * ctx.rng.uniform(-1, 1, (d, d))
    Ai = np.linalg.inv(A)
    # small offset and shear keep the inverse's square root real near the origin
    b = ctx.rng.uniform(-0.2, 0.2, d)
    c = float(ctx.rng.uniform(-0.1, 0.1))

    def fwd(z):
        y = [sum(A[i, j] * z[j] for j in range(d)) + b[i] for i in range(d)]
        if d > 1:
            y[-1] = y[-1] + c * z[0] * z[0]
        return y

    def inv(y):
        if d > 1:
            return _shear_inverse(Ai, b, c, list(y))
        return [Ai[0, 0] * (y[0] - b[0])]

    return Diffeo(d, fwd, inv)


def _shear_inverse(Ai, b, c, y):
    """Invert ``z -> A z + b + c z_0^2 e_last``.

    With ``u = A z`` we have ``z_0 = p - q c z_0^2`` where ``p = (A^-1 (y - b))_0``
    and ``q = (A^-1)_{0,last}``; take the root that tends to ``p`` as ``c -> 0``.
    """
    d = len(b)
    base = [y[i] - b[i] for i in range(d)]
    p = sum(Ai[0, j] * base[j] for j in range(d))
    q = Ai[0, d - 1]
    # z_0 = p - q c z_0^2
    if q * c == 0:
        z0 = p
    else:
        z0 = (-1 + jets.sqrt(1 + 4 * q * c * p)) / (2 * q * c)
    base[d - 1] = base[d - 1] - c * z0 * z0
    return [sum(Ai[i, j] * base[j] for j in range(d)) for i in range(d)]


@prop("vectorfields", "pullback-homomorphism", "action.pullback")
def vf_pullback(ctx: Context) -> Outcome:
    """U(k o h) f = U(k) U(h) f and U(h) respects products, on sheared affine maps."""
    d = ctx.config.dim
    worst = 0.0
    count = ctx.count(0.5)
    for _ in range(count):
        h, k = _shear(ctx, d), _shear(ctx, d)
        _, (f, g), z = _draw(ctx, 0, 2)
        z = [0.2 * v for v in z]
        lhs = pullback(h.then(k), f)(z)
        rhs = pullback(k, pullback(h, f))(z)
        prod = pullback(h, f * g)(z) - pullback(h, f)(z) * pullback(h, g)(z)
        inv = h.inversion_residual([z])
        worst = wmax(worst, abs(lhs - rhs) / (1.0 + abs(lhs)), abs(prod) / (1.0 + abs(lhs)), inv)
    return Outcome(worst, ctx.tol(1e-10), {"samples": count})


@prop("vectorfields", "flow-accuracy", "action.accessible-direction")
def vf_flow(ctx: Context) -> Outcome:
    e = flow(VectorField(1, lambda z: [z[0]]), 1.0, [1.0])[0]
    rot = flow(VectorField(2, lambda z: [-z[1], z[0]]), math.pi / 2, [1.0, 0.0])
    res = max(abs(e - math.e), abs(rot[0]), abs(rot[1] - 1.0))
    return Outcome(res, ctx.tol(1e-10), {"exp_error": abs(e - math.e)})


@prop("vectorfields", "accessible-direction", "action.accessible-direction")
def vf_accessible(ctx: Context) -> Outcome:
    worst = 0.0
    count = ctx.count(0.1)
    for _ in range(count):
        (X,), (f,), z = _draw(ctx, 1, 1)
        worst = wmax(worst, accessible_direction_check(X, f, z))
    return Outcome(worst, ctx.tol(1e-7), {"samples": count})


# -- forms --------------------------------------------------------------------

def random_one_form(rng, d: int) -> SForm:
    return SForm.one_form([random_polynomial(rng, d) for _ in range(d)])


def random_two_form(rng, d: int) -> SForm:
    P = [[random_polynomial(rng, d) for _ in range(d)] for _ in range(d)]
    return SForm.from_coefficients(
        2, d, lambda z, idx: P[idx[0]][idx[1]].fn(z) - P[idx[1]][idx[0]].fn(z), True)


def dtheta_explicit(theta: SForm, X, Y, z):
    return (derivation_apply(X, theta.function([Y]), z) - derivation_apply(Y, theta.function([X]), z)
            - theta([lie_bracket(X, Y)], z))


def domega_explicit(om: SForm, X, Y, W, z):
    D = lambda A, B, C: derivation_apply(A, om.function([B, C]), z)
    br = lie_bracket
    terms = [D(X, Y, W), -D(Y, X, W), D(W, X, Y),
             -om([br(X, Y), W], z), om([br(X, W), Y], z), -om([br(Y, W), X], z)]
    return sum(terms), sum(abs(t) for t in terms)


@prop("forms", "extder-specializations", "extder.low-degree")
def forms_specializations(ctx: Context) -> Outcome:
    d = ctx.config.dim
    worst = 0.0
    count = ctx.count(0.25)
    for _ in range(count):
        theta, om = random_one_form(ctx.rng, d), random_two_form(ctx.rng, d)
        (X, Y, W), _, z = _draw(ctx, 3)
        terms = exterior_terms(theta, [X, Y], z)
        a, b = exterior_derivative(theta)([X, Y], z), dtheta_explicit(theta, X, Y, z)
        worst = wmax(worst, abs(a - b) / (1.0 + sum(abs(t) for t in terms)))
        a2 = exterior_derivative(om)([X, Y, W], z)
        b2, scale = domega_explicit(om, X, Y, W, z)
        worst = wmax(worst, abs(a2 - b2) / (1.0 + scale))
    return Outcome(worst, ctx.tol(1e-12), {"samples": count})


@prop("forms", "extder-general", "extder.general")
def forms_general(ctx: Context) -> Outcome:
    """dB is alternating and function-linear in each slot (bracket terms cancel the
    derivative of the function factor)."""
    d = ctx.config.dim
    worst = 0.0
    count = ctx.count(0.1)
    for _ in range(count):
        om = random_two_form(ctx.rng, d)
        dB = exterior_derivative(om)
        (X, Y, W), (f,), z = _draw(ctx, 3, 1)
        base = dB([X, Y, W], z)
        scale = 1.0 + sum(abs(t) for t in exterior_terms(om, [X, Y, W], z))
        worst = wmax(worst, abs(dB([Y, X, W], z) + base) / scale,
                    abs(dB([X, W, Y], z) + base) / scale,
                    abs(dB([X, X, W], z)) / scale,
                    abs(dB([X * f, Y, W], z) - f(z) * base) / (scale * (1.0 + abs(f(z)))))
    return Outcome(worst, ctx.tol(1e-12), {"samples": count})


def dd_residual(theta: SForm, fields, z) -> float:
    dtheta = exterior_derivative(theta)
    terms = exterior_terms(dtheta, fields, z)
    return abs(sum(terms)) / (sum(abs(t) for t in terms) + 1.0)


@prop("forms", "dd-zero", "extder.dd-zero")
def forms_dd_zero(ctx: Context) -> Outcome:
    d = ctx.config.dim
    worst = 0.0
    count = ctx.count(0.25)
    for _ in range(count):
        theta = random_one_form(ctx.rng, d)
        (X, Y, W), (f,), z = _draw(ctx, 3, 1)
        worst = wmax(worst, dd_residual(theta, [X, Y, W], z),
                    dd_residual(SForm.zero_form(f), [X, Y], z))
    return Outcome(worst, ctx.tol(1e-10), {"samples": count, "dim": d})


@prop("forms", "transpose-multilinear", "forms.transpose")
def forms_transpose(ctx: Context) -> Outcome:
    d = ctx.config.dim
    worst = 0.0
    count = ctx.count(0.25)
    for _ in range(count):
        P = [[random_polynomial(ctx.rng, d) for _ in range(d)] for _ in range(d)]
        B = SForm.two_form(d, lambda z: [[p.fn(z) for p in row] for row in P], False)
        (X, Y, W), (f,), z = _draw(ctx, 3, 1)
        T = transpose(B)
        a = B([X, Y], z)
        scale = 1.0 + abs(a)
        worst = wmax(worst, abs(T([Y, X], z) - a) / scale,
                    abs(transpose(T)([X, Y], z) - a) / scale)
        lin = B([X * f + W, Y], z) - (f(z) * a + B([W, Y], z))
        lin2 = B([X, Y * 2.5 + W * f], z) - (2.5 * a + f(z) * B([X, W], z))
        worst = wmax(worst, abs(lin) / (scale + abs(B([W, Y], z)) * (1 + abs(f(z)))),
                    abs(lin2) / (scale + abs(B([X, W], z)) * (1 + abs(f(z)))))
    return Outcome(worst, ctx.tol(1e-12), {"samples": count})


@prop("forms", "degeneracy-predicates", "forms.degeneracy")
def forms_predicates(ctx: Context) -> Outcome:
    d = max(ctx.config.dim, 2)
    wrong = []
    sym = SForm.two_form(d, lambda z: [[1.0 if i == j else 0.0 for j in range(d)] for i in range(d)])
    area = SForm.two_form(d, lambda z: [[(1.0 if (i, j) == (0, 1) else -1.0 if (i, j) == (1, 0) else 0.0)
                                         for j in range(d)] for i in range(d)], True)
    rank_one = SForm.two_form(d, lambda z: [[z[0] if i == j == 0 else 0.0 for j in range(d)]
                                            for i in range(d)])
    z = random_point(ctx.rng, d)
    checks = {
        "metric symmetric": is_symmetric(sym, 16, 1),
        "metric not alternating": not is_alternating(sym, 16, 1),
        "metric nondegenerate": nondegenerate_at(sym, z),
        "area alternating": is_alternating(area, 16, 1),
        "area not symmetric": not is_symmetric(area, 16, 1),
        "area degenerate beyond d=2": nondegenerate_at(area, z) == (d == 2),
        "rank one degenerate": not nondegenerate_at(rank_one, z) if d > 1 else True,
    }
    wrong = [k for k, v in checks.items() if not v]
    return Outcome(len(wrong), ctx.tol(0.0), {"wrong": wrong})


def _poly_terms(rng, d, degree=3):
    return [(float(rng.uniform(-1, 1)), e) for e in monomials(d, degree)]


def _poly_fn(terms):
    def fn(z):
        total = 0.0
        for c, e in terms:
            t = c
            for zi, k in zip(z, e):
                for _ in range(k):
                    t = t * zi
            total = total + t
        return total
    return fn


def _poly_partial(terms, idx):
    out = []
    for c, e in terms:
        e = list(e)
        for i in idx:
            c *= e[i]
            e[i] -= 1
            if c == 0:
                break
        if c != 0:
            out.append((c, tuple(e)))
    return out


@prop("forms", "derivative-operators", "forms.derivative-operators")
def forms_diffops(ctx: Context) -> Outcome:
    """D^s on coordinate frames and sum_s A_s D^s against hand-differentiated polynomials."""
    d = ctx.config.dim
    worst = 0.0
    count = ctx.count(0.25)
    basis = [VectorField.constant([1.0 if i == j else 0.0 for j in range(d)]) for i in range(d)]
    for _ in range(count):
        terms = _poly_terms(ctx.rng, d)
        f = SmoothFunction(d, _poly_fn(terms))
        z = random_point(ctx.rng, d)
        for s in (1, 2, 3):
            for idx in itertools.product(range(d), repeat=s):
                got = dform_derivative_operator(f, s, [basis[i] for i in idx], z)
                want = _poly_fn(_poly_partial(terms, idx))(z)
                worst = wmax(worst, abs(got - want) / (1.0 + abs(want)))
        A0 = float(ctx.rng.uniform(-1, 1))
        A1 = ctx.rng.uniform(-1, 1, d)
        A2 = ctx.rng.uniform(-1, 1, (d, d))
        I = DifferentialOperator(d, (A0, A1, A2))
        want = A0 * f(z) + sum(A1[i] * _poly_fn(_poly_partial(terms, (i,)))(z) for i in range(d)) \
            + sum(A2[i, j] * _poly_fn(_poly_partial(terms, (i, j)))(z)
                  for i in range(d) for j in range(d))
        worst = wmax(worst, abs(diffop_apply(I, f, z) - want) / (1.0 + abs(want)))
    return Outcome(worst, ctx.tol(1e-12), {"samples": count})


@prop("forms", "closed-exact", "extder.closed-exact")
def forms_closed_exact(ctx: Context) -> Outcome:
    d = max(ctx.config.dim, 2)
    wrong = []
    f = random_polynomial(ctx.rng, d)
    theta = random_one_form(ctx.rng, d)
    df = exterior_derivative(SForm.zero_form(f))
    lin = SForm.one_form([lambda z: 0.0, lambda z: z[0]] + [lambda z: 0.0] * (d - 2))
    rot = SForm.one_form([lambda z: -z[1], lambda z: z[0]] + [lambda z: 0.0] * (d - 2))
    e = [VectorField.constant([1.0 if i == j else 0.0 for j in range(d)]) for i in range(d)]
    z = random_point(ctx.rng, d)
    checks = {
        "df closed": is_closed(df, 16, 3),
        "d theta exact with witness theta": is_exact_witness(exterior_derivative(theta), theta, 16, 3),
        "z1 dz2 not closed": not is_closed(lin, 16, 3),
        "d(z1 dz2)(e1, e2) = 1": abs(exterior_derivative(lin)([e[0], e[1]], z) - 1.0) < 1e-14,
        "d(-z2 dz1 + z1 dz2)(e1, e2) = 2": abs(exterior_derivative(rot)([e[0], e[1]], z) - 2.0) < 1e-14,
        "dd theta closed": is_closed(exterior_derivative(theta), 16, 3),
    }
    wrong = [k for k, v in checks.items() if not v]
    return Outcome(len(wrong), ctx.tol(0.0), {"wrong": wrong})


# -- kernels ------------------------------------------------------------------

def _kernels(d: int):
    return {"gaussian": gaussian_kernel(d), "bilinear": bilinear_kernel(d),
            "shifted-bilinear": shifted_bilinear_kernel(d)}


@prop("kernels", "slices-jacobians", "kernel.slices-jacobians")
def kernels_slices(ctx: Context) -> Outcome:
    """Gaussian kernel derivatives against the closed form -+2 (z-w).v F."""
    d = ctx.config.dim
    F = gaussian_kernel(d)
    worst = 0.0
    for _ in range(ctx.samples):
        (X,), _, z = _draw(ctx, 1)
        w, v = random_point(ctx.rng, d), random_point(ctx.rng, d)
        val = F(z, w)
        dz = np.subtract(z, w)
        dl = -2.0 * float(dz @ v) * val
        xl = -2.0 * float(dz @ X(z)) * val
        xr = 2.0 * float(dz @ X(w)) * val
        worst = wmax(worst,
                    abs(F.left_slice(w)(z) - val) + abs(F.right_slice(z)(w) - val),
                    abs(partial_jacobian_apply(F, "L", v, z, w) - dl),
                    abs(partial_jacobian_apply(F, "R", v, z, w) + dl),
                    abs(left_lie_derivative(X, F)(z, w) - xl) / (1.0 + abs(xl)),
                    abs(right_lie_derivative(X, F)(z, w) - xr) / (1.0 + abs(xr)))
    return Outcome(worst, ctx.tol(1e-12), {"samples": ctx.samples})


@prop("kernels", "lr-brackets", "kernel.lr-brackets")
def kernels_lr(ctx: Context) -> Outcome:
    d = ctx.config.dim
    worst = 0.0
    count = ctx.count(0.25)
    for name, F in _kernels(d).items():
        for _ in range(count):
            (X, Y), _, z = _draw(ctx, 2)
            w = random_point(ctx.rng, d)
            scale = 1.0 + abs(left_lie_derivative(X, left_lie_derivative(Y, F))(z, w)) \
                + abs(right_lie_derivative(X, right_lie_derivative(Y, F))(z, w))
            worst = wmax(worst, max(lr_bracket_check(X, Y, F, z, w)) / scale)
    return Outcome(worst, ctx.tol(1e-10), {"samples_per_kernel": count})


def _random_quadratic_curve(ctx: Context, d: int) -> Curve:
    return Curve.quadratic(random_point(ctx.rng, d), random_point(ctx.rng, d),
                           random_point(ctx.rng, d))


@prop("kernels", "curve-derivatives", "kernel.curve-derivatives")
def kernels_curve_derivatives(ctx: Context) -> Outcome:
    """First and second derivatives along curves against central differences (h = 1e-3)."""
    d = ctx.config.dim
    h = 1e-3
    worst = 0.0
    count = ctx.count(0.25)
    F = gaussian_kernel(d)
    for _ in range(count):
        c = _random_quadratic_curve(ctx, d)
        w = random_point(ctx.rng, d)
        T = taylor2_expand(F, c, Curve.line(w, [0.0] * d))
        fd1 = (F(c(h), w) - F(c(-h), w)) / (2 * h)
        fd2 = (F(c(h), w) - 2 * F(c(0.0), w) + F(c(-h), w)) / (h * h)
        worst = wmax(worst, abs(curve_derivative(F, c, "L", w) - fd1) / (1.0 + abs(fd1)),
                    abs(T.second_left - fd2) / (1.0 + abs(fd2)))
    # truncation error of both differences is O(h^2), rounding O(eps / h^2)
    return Outcome(worst, ctx.tol(1e-5), {"samples": count, "h": h})


def taylor2_oracle_fit(F: Kernel, c: Curve, b: Curve, ks=range(4, 12)):
    """Residuals of central divided differences of ``F(c(t), b(t))`` against the
    joint Taylor data; both decay like ``h^2``.

    Steps run over ``h = 2^-4 .. 2^-11``: coarser steps are not yet in the
    asymptotic regime for unit-size curves, finer ones hit the rounding floor.
    """
    T = taylor2_expand(F, c, b)
    g = lambda t: complex(F(c(t), b(t)))
    hs, r1, r2 = [], [], []
    for k in ks:
        h = 2.0 ** -k
        hs.append(h)
        r1.append(abs((g(h) - g(-h)) / (2 * h) - T.joint[1]))
        r2.append(abs((g(h) - 2 * g(0.0) + g(-h)) / (h * h) - 2 * T.joint[2]))
    scale = 1.0 + abs(T.value)
    f1 = fit_rate(hs, r1, [64 * EPS * scale / h for h in hs])
    f2 = fit_rate(hs, r2, [64 * EPS * scale / (h * h) for h in hs])
    return f1, f2


@prop("kernels", "taylor2-oracle", "kernel.taylor-second-order")
def kernels_taylor2(ctx: Context) -> Outcome:
    """Residual is the shortfall of the smallest observed order below 1.8.

    The observed order is the slope between the two finest steps above the
    rounding floor; the whole-range slope is reported alongside.
    """
    d = ctx.config.dim
    target = 1.8
    count = ctx.count(0.05)
    orders, full, table = [], [], None
    for name, F in _kernels(d).items():
        for _ in range(count):
            c, b = _random_quadratic_curve(ctx, d), _random_quadratic_curve(ctx, d)
            for f in taylor2_oracle_fit(F, c, b):
                orders.append(f.tail_rate())
                full.append(f.rate)
            if table is None and name == "gaussian":
                table = f.table()
    q = min(orders)
    return Outcome(max(0.0, target - q), ctx.tol(0.0),
                   {"samples_per_kernel": count, "target_order": target, "min_order": q,
                    "min_full_range_order": min(full), "step_table": table})


def second_difference_fit(F: Kernel, c: Curve, ks=range(3, 13)):
    z = list(c.position)
    v = list(c.velocity)
    half = anticommutator(F, v, v, z, z) / 2
    ts = [2.0 ** -k for k in ks]
    res = [abs(second_difference(F, c, t) / (t * t) - half) for t in ts]
    scale = 1.0 + abs(F(z, z))
    return fit_rate(ts, res, [64 * EPS * scale / (t * t) for t in ts]), half


@prop("kernels", "second-difference", "kernel.second-difference")
def kernels_second_difference(ctx: Context) -> Outcome:
    """S(t)/t^2 -> anticommutator/2 over t = 2^-3 .. 2^-12; residual is the last-step error."""
    d = ctx.config.dim
    count = ctx.count(0.05)
    rates, worst, table = [], 0.0, None
    for name, F in _kernels(d).items():
        for _ in range(count):
            c = _random_quadratic_curve(ctx, d)
            fit, half = second_difference_fit(F, c)
            rates.append(fit.rate)
            worst = wmax(worst, fit.residuals[-1] / (1.0 + abs(half)))
            if table is None:
                table = fit.table()
    q = min(rates)
    status = "pass" if q > 0 and worst <= ctx.tol(1e-3) else "fail"
    return Outcome(worst, ctx.tol(1e-3), {"samples_per_kernel": count, "min_rate": q,
                                          "step_table": table}, status)


@prop("kernels", "curve-supply", "kernel.curve-supply")
def kernels_curve_supply(ctx: Context) -> Outcome:
    d = ctx.config.dim
    F = gaussian_kernel(d)
    worst = 0.0
    for _ in range(ctx.count(0.25)):
        (X,), _, z = _draw(ctx, 1)
        w = random_point(ctx.rng, d)
        c = Curve.through(X, z)
        worst = wmax(worst, float(np.max(np.abs(np.subtract(c(0.0), z)))),
                    float(np.max(np.abs(np.subtract(c.velocity, X(z))))),
                    abs(curve_derivative(F, c, "L", w) - left_lie_derivative(X, F)(z, w)),
                    abs(curve_derivative(F, c, "R", w) - right_lie_derivative(X, F)(w, z)))
    return Outcome(worst, ctx.tol(1e-14), {"samples": ctx.count(0.25)})


def _inequality(ctx: Context, check, kernels, **kw) -> Outcome:
    samples = ctx.count(5.0)
    d = ctx.config.dim
    worst, diag = math.inf, {}
    X = random_polynomial_field(ctx.rng, d)
    for name, F in kernels.items():
        try:
            rep = check(F, X=X, samples=samples, seed=int(ctx.rng.integers(2 ** 32)), **kw)
        except PremiseViolated as exc:
            return Outcome("premise-violated", ctx.tol(1e-9), {"kernel": name, "reason": str(exc)},
                           "skip")
        diag[name] = {"worst_margin": rep.worst_margin, "failures": rep.failures}
        worst = min(worst, rep.worst_margin)
    diag["samples"] = samples
    return Outcome(max(0.0, -worst), ctx.tol(1e-9), diag)


@prop("kernels", "anticommutator-cone", "kernel.anticommutator-cone")
def kernels_antif(ctx: Context) -> Outcome:
    d = ctx.config.dim
    return _inequality(ctx, antif_check, {"gaussian": gaussian_kernel(d),
                                          "bilinear": bilinear_kernel(d)}, cone="nonneg-real")


@prop("kernels", "cauchy-schwarz", "kernel.cauchy-schwarz")
def kernels_csf(ctx: Context) -> Outcome:
    d = ctx.config.dim
    return _inequality(ctx, csf_check, {"gaussian": gaussian_kernel(d),
                                        "bilinear": bilinear_kernel(d)})


# -- user definitions -----------------------------------------------------------

def user_properties(defs) -> list[tuple[str, str, str, object]]:
    """(suite, name, anchor, fn) for each object defined in the config."""
    out = []
    for k, f in defs.functions.items():
        def fn(ctx, f=f):
            worst = 0.0
            for _ in range(ctx.count(0.25)):
                (X,), (g,), z = _draw(ctx, 1, 1)
                worst = wmax(worst, leibniz_residual(X, f, g, z))
            return Outcome(worst, ctx.tol(1e-12), {"samples": ctx.count(0.25)})
        out.append(("vectorfields", f"user.function.{k}.leibniz", "derivation.leibniz", fn))
    for k, X in defs.fields.items():
        def fn(ctx, X=X):
            worst = 0.0
            for _ in range(ctx.count(0.25)):
                (Y, Z), (f,), z = _draw(ctx, 2, 1)
                worst = wmax(worst, jacobi_residual(X, Y, Z, f, z), commutator_residual(X, Y, f, z))
            return Outcome(worst, ctx.tol(1e-10), {"samples": ctx.count(0.25)})
        out.append(("vectorfields", f"user.field.{k}.lie-product", "fields.lie-product", fn))
    for k, B in defs.forms.items():
        def fn(ctx, B=B):
            if not B.alternating:
                raise Skip("form is declared non-alternating")
            worst = 0.0
            for _ in range(ctx.count(0.1)):
                Xs, _, z = _draw(ctx, B.arity + 2)
                worst = wmax(worst, dd_residual(B, Xs, z))
            return Outcome(worst, ctx.tol(1e-10), {"samples": ctx.count(0.1)})
        out.append(("forms", f"user.form.{k}.dd-zero", "extder.dd-zero", fn))
    for k, F in defs.kernels.items():
        def lr(ctx, F=F):
            worst = 0.0
            for _ in range(ctx.count(0.1)):
                (X, Y), _, z = _draw(ctx, 2)
                w = random_point(ctx.rng, F.dim)
                worst = wmax(worst, *lr_bracket_check(X, Y, F, z, w))
            return Outcome(worst, ctx.tol(1e-10), {"samples": ctx.count(0.1)})
        out.append(("kernels", f"user.kernel.{k}.lr-brackets", "kernel.lr-brackets", lr))
        out.append(("kernels", f"user.kernel.{k}.anticommutator-cone", "kernel.anticommutator-cone",
                    lambda ctx, F=F, k=k: _inequality(ctx, antif_check, {k: F},
                                                      cone="nonneg-real")))
        out.append(("kernels", f"user.kernel.{k}.cauchy-schwarz", "kernel.cauchy-schwarz",
                    lambda ctx, F=F, k=k: _inequality(ctx, csf_check, {k: F})))
    return out
