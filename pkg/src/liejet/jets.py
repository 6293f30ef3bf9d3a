"""Truncated asymptotic Taylor series over an associative algebra.

A :class:`Jet` stores the known coefficients ``X_0, ..., X_{m-1}`` of

    F(t) = sum_k s^k X_k + o_f(s^(m-1)),     s = t^(1/root).

Coefficients may be plain numbers (``float``, ``complex``, ``Fraction``),
:class:`~liejet.backends.AlgebraElement` instances, or other jets.  The
product keeps the order of factors, so matrix-valued jets multiply
noncommutatively.

Jets double as the forward-mode engine used by the geometry modules.  Each
independent perturbation gets its own integer ``tag``; when two jets with
different tags meet, the one with the larger tag is the outer series and the
other is treated as one of its coefficients.  Tag 0 is reserved for plain
algebraic jets.
"""
from __future__ import annotations

import cmath
import itertools
import math
import numbers
from fractions import Fraction
from math import lcm

from .backends import AlgebraElement, NonInvertible, alg_inverse

__all__ = [
    "Jet",
    "NonInvertibleLeadingTerm",
    "OrderClaim",
    "OrderUndecidable",
    "RootIncompatible",
    "ZERO_RTOL",
    "coeff_norm",
    "coefficient",
    "cos",
    "exp",
    "fresh_tag",
    "imag",
    "jet_add",
    "jet_close",
    "jet_compose_power",
    "jet_inverse",
    "jet_monomial",
    "jet_mul",
    "jet_order_claim",
    "jet_reroot",
    "jet_rescale",
    "jet_scale",
    "jet_shift",
    "jet_sub",
    "log",
    "power",
    "real",
    "sin",
    "sqrt",
    "unit_jet",
    "zero_jet",
]

ZERO_RTOL = 1e-12
DEFAULT_LENGTH = 8

_tags = itertools.count(1)


def fresh_tag() -> int:
    """Tag for a new, independent perturbation variable."""
    return next(_tags)


class NonInvertibleLeadingTerm(NonInvertible):
    pass


class RootIncompatible(ValueError):
    pass


class OrderUndecidable(ValueError):
    """The jet is too short to decide an order claim (distinct from ``False``)."""


class Jet:
    __slots__ = ("coeffs", "root", "tag")
    # numpy scalars must defer to Jet's reflected operators instead of
    # broadcasting over the coefficients
    __array_ufunc__ = None

    def __init__(self, coeffs, root: int = 1, tag: int = 0):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a jet needs at least one coefficient")
        if root < 1:
            raise ValueError("root must be a positive integer")
        self.coeffs = coeffs
        self.root = int(root)
        self.tag = tag

    # -- container protocol -------------------------------------------------
    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        extra = "" if self.root == 1 else f", root={self.root}"
        if self.tag:
            extra += f", tag={self.tag}"
        return f"Jet({list(self.coeffs)!r}{extra})"

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return (self.root, self.tag, len(self)) == (other.root, other.tag, len(other)) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def _like(self, coeffs, root=None):
        return Jet(coeffs, self.root if root is None else root, self.tag)

    # -- arithmetic ---------------------------------------------------------
    def _outer(self, other):
        """Classify ``other``: ``None`` if it acts as a scalar coefficient,
        ``NotImplemented`` if ``self`` is a coefficient of ``other`` (the
        reflected method must then be called by hand, since Python skips it
        for operands of the same type), else a harmonized same-level pair."""
        if not isinstance(other, Jet) or other.tag < self.tag:
            return None
        if other.tag > self.tag:
            return NotImplemented
        return _harmonize(self, other)

    def __add__(self, other):
        pair = self._outer(other)
        if pair is NotImplemented:
            return other.__radd__(self)
        if pair is None:
            return self._like((self.coeffs[0] + other,) + self.coeffs[1:])
        a, b = pair
        return a._like(x + y for x, y in zip(a.coeffs, b.coeffs))

    def __radd__(self, other):
        return self._like((other + self.coeffs[0],) + self.coeffs[1:])

    def __neg__(self):
        return self._like(-c for c in self.coeffs)

    def __pos__(self):
        return self

    def __sub__(self, other):
        pair = self._outer(other)
        if pair is NotImplemented:
            return other.__rsub__(self)
        if pair is None:
            return self._like((self.coeffs[0] - other,) + self.coeffs[1:])
        a, b = pair
        return a._like(x - y for x, y in zip(a.coeffs, b.coeffs))

    def __rsub__(self, other):
        return self._like((other - self.coeffs[0],) + tuple(-c for c in self.coeffs[1:]))

    def __mul__(self, other):
        pair = self._outer(other)
        if pair is NotImplemented:
            return other.__rmul__(self)
        if pair is None:
            return self._like(c * other for c in self.coeffs)
        a, b = pair
        return a._like(_cauchy(a.coeffs, b.coeffs))

    def __rmul__(self, other):
        return self._like(other * c for c in self.coeffs)

    def __truediv__(self, other):
        pair = self._outer(other)
        if pair is NotImplemented:
            return other.__rtruediv__(self)
        if pair is None:
            if isinstance(other, numbers.Number):
                if isinstance(other, int) and _exact_coeffs(self.coeffs):
                    other = Fraction(other)
                return self._like(c / other for c in self.coeffs)
            return self * _inv(other)
        return self * jet_inverse(other)

    def __rtruediv__(self, other):
        return other * jet_inverse(self)

    def __pow__(self, p):
        if isinstance(p, int):
            if p < 0:
                return jet_inverse(self) ** (-p)
            result = self._like((_one_like(self.coeffs[0]),) + tuple(
                _zero_like(c) for c in self.coeffs[1:]))
            base = self
            while p:
                if p & 1:
                    result = result * base
                p >>= 1
                if p:
                    base = base * base
            return result
        return power(self, p)

    # -- evaluation ---------------------------------------------------------
    def evaluate(self, t):
        """Truncated polynomial value at ``t`` (``s = t**(1/root)``)."""
        s = t ** (1.0 / self.root) if self.root != 1 else t
        total = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            total = total * s + c
        return total

    def derivative(self, k: int = 1):
        """k-th derivative at 0 with respect to the series variable."""
        return self.coeffs[k] * math.factorial(k)

    def norm(self) -> float:
        return max(coeff_norm(c) for c in self.coeffs)

    def to_json(self):
        """Array of coefficients; matrices as row-major nested arrays."""
        return [_json_coeff(c) for c in self.coeffs]


def _json_coeff(c):
    if isinstance(c, AlgebraElement):
        return c.to_json()
    if isinstance(c, Jet):
        return c.to_json()
    if isinstance(c, complex):
        return [c.real, c.imag]
    return float(c)


def _exact_coeffs(coeffs) -> bool:
    c = coeffs[0]
    if isinstance(c, AlgebraElement):
        return c.exact
    return isinstance(c, (int, Fraction)) and not isinstance(c, bool)


def _cauchy(a, b):
    m = min(len(a), len(b))
    out = []
    for k in range(m):
        acc = a[0] * b[k]
        for l in range(1, k + 1):
            acc = acc + a[l] * b[k - l]
        out.append(acc)
    return out


def _harmonize(a: Jet, b: Jet):
    if a.root != b.root:
        r = lcm(a.root, b.root)
        a, b = jet_reroot(a, r), jet_reroot(b, r)
    m = min(len(a), len(b))
    if len(a) != m:
        a = a._like(a.coeffs[:m])
    if len(b) != m:
        b = b._like(b.coeffs[:m])
    return a, b


def _zero_like(c):
    if isinstance(c, (AlgebraElement, Jet)):
        return c * 0
    if isinstance(c, Fraction):
        return Fraction(0)
    return type(c)(0) if isinstance(c, (int, float, complex)) else c * 0


def _one_like(c):
    if isinstance(c, AlgebraElement):
        return c.one()
    if isinstance(c, Jet):
        return c._like((_one_like(c.coeffs[0]),) + tuple(_zero_like(x) for x in c.coeffs[1:]))
    if isinstance(c, (int, Fraction)):
        return Fraction(1)
    return type(c)(1)


def _inv(c):
    if isinstance(c, Jet):
        return jet_inverse(c)
    if isinstance(c, AlgebraElement):
        return alg_inverse(c)
    if c == 0:
        raise NonInvertible("zero scalar")
    if isinstance(c, (int, Fraction)):
        return Fraction(1) / c
    return 1 / c


def coeff_norm(c) -> float:
    if isinstance(c, (AlgebraElement, Jet)):
        return c.norm()
    return abs(complex(c))


def _is_zero(c, tol: float) -> bool:
    if isinstance(c, AlgebraElement):
        return c.is_zero(tol)
    if isinstance(c, Jet):
        return all(_is_zero(x, tol) for x in c.coeffs)
    if isinstance(c, (int, Fraction)):
        return c == 0
    return abs(c) <= tol


# -- constructors ----------------------------------------------------------

def zero_jet(like, length: int = DEFAULT_LENGTH, root: int = 1) -> Jet:
    c = like.coeffs[0] if isinstance(like, Jet) else like
    return Jet([_zero_like(c)] * length, root)


def unit_jet(like, length: int | None = None, root: int | None = None) -> Jet:
    tag = 0
    if isinstance(like, Jet):
        length = len(like) if length is None else length
        root = like.root if root is None else root
        c, tag = like.coeffs[0], like.tag
    else:
        c = like
        length = DEFAULT_LENGTH if length is None else length
        root = 1 if root is None else root
    z = _zero_like(c)
    return Jet([_one_like(c)] + [z] * (length - 1), root, tag)


def jet_monomial(k: int, like, length: int, root: int = 1) -> Jet:
    """The jet of ``s**k`` with ``length`` known coefficients."""
    c = like.coeffs[0] if isinstance(like, Jet) else like
    z, o = _zero_like(c), _one_like(c)
    return Jet([o if i == k else z for i in range(length)], root)


# -- the arithmetic rules ---------------------------------------------------

def _check_level(F: Jet, G: Jet) -> None:
    if F.tag != G.tag:
        raise ValueError("jets belong to different perturbation variables")


def jet_add(F: Jet, G: Jet) -> Jet:
    _check_level(F, G)
    return F + G


def jet_sub(F: Jet, G: Jet) -> Jet:
    _check_level(F, G)
    return F - G


def jet_scale(lam, F: Jet) -> Jet:
    return F._like(c * lam for c in F.coeffs)


def jet_mul(F: Jet, G: Jet) -> Jet:
    """Cauchy product ``H_k = sum_l F_l G_{k-l}``; factor order is kept."""
    _check_level(F, G)
    return F * G


def jet_inverse(F: Jet) -> Jet:
    """Pointwise inverse by the recursion ``G_k = -G_0 sum_{l=1}^k F_l G_{k-l}``."""
    try:
        g0 = _inv(F.coeffs[0])
    except NonInvertible as exc:
        raise NonInvertibleLeadingTerm(str(exc)) from exc
    G = [g0]
    for k in range(1, len(F)):
        acc = F.coeffs[1] * G[k - 1]
        for l in range(2, k + 1):
            acc = acc + F.coeffs[l] * G[k - l]
        G.append(-(g0 * acc))
    return F._like(G)


def jet_compose_power(F: Jet, p: int, length: int | None = None) -> Jet:
    """Jet of ``t -> F(t**p)``; coefficients spread to multiples of ``p``.

    The remainder of ``F`` only shows up from index ``len(F) * p`` on, so any
    ``length`` up to that bound is known exactly.
    """
    if p < 1:
        raise ValueError("p must be a positive integer")
    natural = (len(F) - 1) * p + 1
    if length is None:
        length = natural
    if length > len(F) * p:
        raise ValueError(f"at most {len(F) * p} coefficients are known")
    z = _zero_like(F.coeffs[0])
    out = [z] * length
    for k, c in enumerate(F.coeffs):
        if k * p < length:
            out[k * p] = c
    return F._like(out)


def jet_rescale(F: Jet, lam) -> Jet:
    """Jet of ``t -> F(lam * t)``."""
    if not lam > 0:
        raise ValueError("lam must be positive")
    lam_s = lam if F.root == 1 else lam ** (1.0 / F.root)
    out, w = [], 1
    for c in F.coeffs:
        out.append(c * w)
        w = w * lam_s
    return F._like(out)


def jet_reroot(F: Jet, new_root: int) -> Jet:
    """Same function expanded in the finer variable ``t**(1/new_root)``."""
    if new_root % F.root:
        raise RootIncompatible(f"{new_root} is not a multiple of {F.root}")
    k = new_root // F.root
    if k == 1:
        return F
    spread = jet_compose_power(Jet(F.coeffs, 1, F.tag), k)
    return Jet(spread.coeffs, new_root, F.tag)


def jet_shift(F: Jet, k: int) -> Jet:
    """Multiply by ``s**k`` (``k >= 0``) or divide by it (``k < 0``).

    Division requires the dropped leading coefficients to vanish.
    """
    if k >= 0:
        z = _zero_like(F.coeffs[0])
        return F._like((z,) * k + F.coeffs)
    k = -k
    if len(F) <= k:
        raise OrderUndecidable("jet too short to divide")
    scale = F.norm()
    if not all(_is_zero(c, ZERO_RTOL * scale) for c in F.coeffs[:k]):
        raise ValueError("leading coefficients do not vanish")
    return F._like(F.coeffs[k:])


class OrderClaim:
    """``F = o_f(t**m)`` (``fractional``) or ``F = o(t**m)``."""

    __slots__ = ("m", "fractional")

    def __init__(self, m: int, fractional: bool = True):
        if m < 0:
            raise ValueError("m must be nonnegative")
        self.m = m
        self.fractional = fractional

    def __repr__(self):
        sym = "o_f" if self.fractional else "o"
        return f"{sym}(t^{self.m})"

    def holds(self, F: Jet) -> bool:
        if not self.fractional and F.root != 1:
            raise ValueError("o(t^m) claims need integer-power jets")
        return jet_order_claim(F, self.m)


def jet_order_claim(F: Jet, m: int, scale: float | None = None) -> bool:
    """True iff the coefficients at indices ``0..m*root`` vanish.

    Float coefficients are compared against ``1e-12 * scale`` where ``scale``
    defaults to the largest coefficient norm of ``F``.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    last = m * F.root
    if last >= len(F):
        raise OrderUndecidable(f"need more than {last + 1} coefficients, have {len(F)}")
    tol = ZERO_RTOL * (F.norm() if scale is None else scale)
    return all(_is_zero(c, tol) for c in F.coeffs[: last + 1])


def jet_close(F: Jet, G: Jet, rtol: float = ZERO_RTOL, atol: float = 0.0) -> bool:
    """Coefficientwise agreement relative to the larger operand norm."""
    a, b = _harmonize(F, G) if F.root != G.root else (F, G)
    if len(a) != len(b):
        return False
    tol = rtol * max(a.norm(), b.norm()) + atol
    return all(_is_zero(x - y, tol) for x, y in zip(a.coeffs, b.coeffs))


# -- elementary functions, dispatching on jets ------------------------------

def _scalar_fn(real_fn, complex_fn, x):
    if isinstance(x, complex):
        return complex_fn(x)
    return real_fn(float(x))


def exp(x):
    if not isinstance(x, Jet):
        return _scalar_fn(math.exp, cmath.exp, x)
    g = x.coeffs
    h = [exp(g[0])]
    for k in range(1, len(g)):
        acc = g[1] * h[k - 1]
        for j in range(2, k + 1):
            acc = acc + j * (g[j] * h[k - j])
        h.append(acc / k)
    return x._like(h)


def _sincos(x: Jet):
    g = x.coeffs
    s, c = [sin(g[0])], [cos(g[0])]
    for k in range(1, len(g)):
        acc_s = g[1] * c[k - 1]
        acc_c = g[1] * s[k - 1]
        for j in range(2, k + 1):
            acc_s = acc_s + j * (g[j] * c[k - j])
            acc_c = acc_c + j * (g[j] * s[k - j])
        s.append(acc_s / k)
        c.append(-acc_c / k)
    return x._like(s), x._like(c)


def sin(x):
    if not isinstance(x, Jet):
        return _scalar_fn(math.sin, cmath.sin, x)
    return _sincos(x)[0]


def cos(x):
    if not isinstance(x, Jet):
        return _scalar_fn(math.cos, cmath.cos, x)
    return _sincos(x)[1]


def log(x):
    if not isinstance(x, Jet):
        if isinstance(x, complex) or x <= 0:
            return cmath.log(x)
        return math.log(x)
    g = x.coeffs
    inv0 = _inv(g[0])
    h = [log(g[0])]
    for k in range(1, len(g)):
        acc = k * g[k]
        for j in range(1, k):
            acc = acc - j * (h[j] * g[k - j])
        h.append(acc * inv0 / k)
    return x._like(h)


def power(x, a):
    """``x**a`` for real ``a``; integer exponents stay exact."""
    if isinstance(a, int):
        return x ** a
    if not isinstance(x, Jet):
        return x ** a
    g = x.coeffs
    inv0 = _inv(g[0])
    h = [power(g[0], a)]
    for k in range(1, len(g)):
        acc = ((a + 1) * 1 - k) * (g[1] * h[k - 1])
        for j in range(2, k + 1):
            acc = acc + ((a + 1) * j - k) * (g[j] * h[k - j])
        h.append(acc * inv0 / k)
    return x._like(h)


def sqrt(x):
    return power(x, 0.5)


def real(x):
    """Real part, coefficientwise on jets."""
    if isinstance(x, Jet):
        return x._like(real(c) for c in x.coeffs)
    return x.real if isinstance(x, complex) else x


def imag(x):
    if isinstance(x, Jet):
        return x._like(imag(c) for c in x.coeffs)
    return x.imag if isinstance(x, complex) else 0.0 * x


def coefficient(x, tag: int, k: int):
    """Coefficient ``k`` of the perturbation ``tag`` in ``x``.

    Values that do not depend on that perturbation are constants: their
    coefficient 0 is themselves and all higher ones vanish.
    """
    if isinstance(x, Jet) and x.tag == tag:
        return x.coeffs[k] if k < len(x) else 0.0
    if isinstance(x, Jet) and x.tag > tag:
        return x._like(coefficient(c, tag, k) for c in x.coeffs)
    if k == 0:
        return x
    return x * 0
