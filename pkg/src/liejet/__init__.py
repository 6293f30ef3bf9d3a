"""Truncated Taylor jets over noncommutative algebras, motions and their
initial directions, vector fields, exterior calculus and two-point kernels.

Elementary functions that act on jets (``exp``, ``sin``, ...) live in
:mod:`liejet.jets`; the property harness lives in :mod:`liejet.harness`.
"""
from . import backends, forms, jets, kernels, motions, vectorfields
from .backends import *  # noqa: F403
from .forms import *  # noqa: F403
from .kernels import *  # noqa: F403
from .motions import *  # noqa: F403
from .vectorfields import *  # noqa: F403
from .expr import ExpressionError, compile_expression
from .jets import (
    Jet,
    NonInvertibleLeadingTerm,
    OrderClaim,
    OrderUndecidable,
    RootIncompatible,
    jet_add,
    jet_close,
    jet_compose_power,
    jet_inverse,
    jet_monomial,
    jet_mul,
    jet_order_claim,
    jet_reroot,
    jet_rescale,
    jet_scale,
    jet_shift,
    jet_sub,
    unit_jet,
    zero_jet,
)

__version__ = "0.1.0"
