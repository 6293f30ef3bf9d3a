"""Property registry and the coverage manifest of anchors."""
from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .config import SuiteConfig

__all__ = ["ANCHORS", "Context", "Outcome", "PROPERTIES", "Skip", "missing_anchors", "prop", "wmax"]

# Every in-scope result gets a stable descriptive identifier.
ANCHORS = {
    "algebra.commutator": "commutator XY - YX in an associative algebra",
    "taylor.arithmetic": "sum, product, power-composition and rescaling of truncated Taylor series",
    "taylor.inverse-recursion": "coefficient recursion for the inverse of a series",
    "landau.fractional-rules": "calculus rules for fractional little-o claims",
    "landau.integer-rules": "calculus rules for ordinary little-o claims",
    "motion.initial-direction": "initial direction of a motion as a limit of difference quotients",
    "motion.profile-jet": "motions reparametrized in t^(1/n) have a regular profile",
    "motion.inverse-product": "inverse and scaled product motions and their directions",
    "motion.group-commutator": "group commutator motion realizes the algebra commutator",
    "motion.commutator-remainder": "AB - BA = t^2 [X, Y] + o(t^2)",
    "lie.directions-closed": "initial directions form a Lie algebra under the commutator",
    "derivation.leibniz": "a field acts on functions as a derivation",
    "action.pullback": "natural action f -> f o h^-1 is a homomorphism",
    "action.accessible-direction": "derivations realized as initial directions of flows",
    "fields.lie-product": "Lie product of fields matches the operator commutator",
    "lie-derivative.linearity": "Lie derivative is real-linear with complex split",
    "forms.transpose": "transpose of a bilinear form and multilinearity",
    "forms.degeneracy": "alternating, symmetric and nondegenerate predicates",
    "forms.derivative-operators": "iterated derivative operators and differential operators",
    "extder.general": "exterior derivative with bracket correction terms",
    "extder.low-degree": "explicit exterior derivative of 1-forms and 2-forms",
    "extder.dd-zero": "d o d = 0",
    "extder.closed-exact": "closed and exact form predicates",
    "kernel.slices-jacobians": "kernel slices, left/right Lie derivatives and partial Jacobians",
    "kernel.lr-brackets": "left and right Lie derivatives are Lie algebra homomorphisms",
    "kernel.curve-derivatives": "derivatives of kernels along curves",
    "kernel.taylor-second-order": "second-order Taylor data of a kernel along two curves",
    "kernel.second-difference": "second difference equals half the anticommutator to O(t^3)",
    "kernel.curve-supply": "every tangent vector is the velocity of a curve",
    "kernel.anticommutator-cone": "anticommutator lies in a closed cone containing the second differences",
    "kernel.cauchy-schwarz": "Cauchy-Schwarz type inequality for Lie derivatives of a kernel",
}


def wmax(*values) -> float:
    """``max`` that lets a NaN through instead of silently dropping it."""
    vals = [float(v) for v in values]
    return math.nan if any(math.isnan(v) for v in vals) else max(vals)


class Skip(Exception):
    """The property does not apply; the message becomes the report note."""


@dataclass
class Outcome:
    residual: float | str
    tolerance: float
    diagnostics: dict = field(default_factory=dict)
    status: str | None = None

    def verdict(self) -> str:
        if self.status is not None:
            return self.status
        r = self.residual
        return "pass" if isinstance(r, (int, float)) and math.isfinite(r) and r <= self.tolerance \
            else "fail"


@dataclass
class Context:
    config: SuiteConfig
    name: str
    rng: np.random.Generator
    definitions: object

    def tol(self, default: float) -> float:
        return self.config.tolerance(self.name, default)

    @property
    def samples(self) -> int:
        return self.config.samples

    def count(self, fraction: float, minimum: int = 1) -> int:
        """A sample count proportional to the configured ``samples``."""
        return max(minimum, int(round(self.config.samples * fraction)))


@dataclass(frozen=True)
class Property:
    suite: str
    name: str
    anchor: str
    fn: Callable[[Context], Outcome]


PROPERTIES: dict[str, Property] = {}


def prop(suite: str, name: str, anchor: str):
    if anchor not in ANCHORS:
        raise KeyError(f"unknown anchor {anchor!r}")
    full = f"{suite}.{name}"

    def deco(fn):
        if full in PROPERTIES:
            raise KeyError(f"duplicate property {full}")
        PROPERTIES[full] = Property(suite, full, anchor, fn)
        return fn

    return deco


def property_rng(seed: int, name: str) -> np.random.Generator:
    """Independent stream per property: insertion or removal of other properties
    does not change any draw."""
    return np.random.default_rng(np.random.SeedSequence([seed, zlib.crc32(name.encode())]))


def missing_anchors() -> list[str]:
    covered = {p.anchor for p in PROPERTIES.values()}
    return sorted(set(ANCHORS) - covered)
