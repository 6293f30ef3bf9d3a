"""Suite configuration: defaults, the JSON config file and user definitions.

Config file (one JSON document, every key optional)::

    {
      "seed": 0, "dim": 2, "order": 8, "matrix_size": 3, "samples": 200,
      "tol_scale": 1.0,
      "tolerances": {"vectorfields.leibniz": 1e-11},
      "functions": {"f": "z1*sin(z2)"},
      "fields":    {"X": ["z2", "-z1"]},
      "forms":     {"theta": {"arity": 1, "coefficients": {"0": "z2", "1": "z1^2"}}},
      "kernels":   {"K": "exp(-(z1-w1)^2 - (z2-w2)^2)"}
    }

Form coefficients are keyed by comma-separated index tuples; missing tuples
are zero.  Forms default to alternating (``"alternating": false`` opts out).
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field

from ..expr import ExpressionError, compile_expression
from ..forms import SForm
from ..kernels import Kernel
from ..vectorfields import SmoothFunction, VectorField

__all__ = ["ConfigError", "Definitions", "SuiteConfig", "load_config"]

SUITES = ("backends", "jets", "motions", "vectorfields", "forms", "kernels")


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


@dataclass
class SuiteConfig:
    suite: str = "all"
    seed: int = 0
    dim: int = 2
    order: int = 8
    matrix_size: int = 3
    samples: int = 200
    tol_scale: float = 1.0
    tolerances: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)
    fields: dict = field(default_factory=dict)
    forms: dict = field(default_factory=dict)
    kernels: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.suite != "all" and self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from all, {', '.join(SUITES)}")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        for name, low in (("dim", 1), ("order", 2), ("matrix_size", 1), ("samples", 1)):
            if not isinstance(getattr(self, name), int) or getattr(self, name) < low:
                raise ConfigError(f"{name} must be an integer >= {low}")
        if not self.tol_scale > 0:
            raise ConfigError("tol_scale must be positive")

    def tolerance(self, name: str, default: float) -> float:
        """Explicit per-property override, else the default scaled by ``tol_scale``."""
        if name in self.tolerances:
            return float(self.tolerances[name])
        return default * self.tol_scale

    def as_json(self) -> dict:
        return dataclasses.asdict(self)

    def definitions(self) -> "Definitions":
        return Definitions.build(self)


@dataclass
class Definitions:
    functions: dict
    fields: dict
    forms: dict
    kernels: dict

    @classmethod
    def build(cls, cfg: SuiteConfig) -> "Definitions":
        d = cfg.dim

        def comp(where, text, slots="z"):
            if not isinstance(text, str):
                raise ConfigError(f"{where}: expected an expression string")
            try:
                return compile_expression(text, d, slots)
            except ExpressionError as exc:
                raise ConfigError(f"{where}: {exc}") from None

        functions = {k: SmoothFunction(d, comp(f"functions.{k}", v))
                     for k, v in sorted(cfg.functions.items())}
        fields = {}
        for k, v in sorted(cfg.fields.items()):
            if not isinstance(v, list) or len(v) != d:
                raise ConfigError(f"fields.{k}: expected a list of {d} expressions")
            comps = [comp(f"fields.{k}[{i}]", e) for i, e in enumerate(v)]
            fields[k] = VectorField(d, lambda z, comps=comps: [c(z) for c in comps])
        forms = {k: _build_form(k, v, d, comp) for k, v in sorted(cfg.forms.items())}
        kernels = {k: Kernel(d, comp(f"kernels.{k}", v, "zw"))
                   for k, v in sorted(cfg.kernels.items())}
        return cls(functions, fields, forms, kernels)


def _build_form(name, spec, d, comp) -> SForm:
    if not isinstance(spec, dict) or "arity" not in spec:
        raise ConfigError(f"forms.{name}: expected an object with 'arity' and 'coefficients'")
    s = spec["arity"]
    if not isinstance(s, int) or s < 0:
        raise ConfigError(f"forms.{name}: arity must be a nonnegative integer")
    table = {}
    for key, text in spec.get("coefficients", {}).items():
        try:
            idx = tuple(int(p) for p in key.split(",")) if key.strip() else ()
        except ValueError:
            raise ConfigError(f"forms.{name}: bad index tuple {key!r}") from None
        if len(idx) != s or any(not 0 <= i < d for i in idx):
            raise ConfigError(f"forms.{name}: index tuple {key!r} does not fit arity {s}, dim {d}")
        table[idx] = comp(f"forms.{name}[{key}]", text)
    alternating = bool(spec.get("alternating", True))
    return SForm.from_coefficients(
        s, d, lambda z, idx: table[idx](z) if idx in table else 0.0, alternating)


def load_config(path: str, **overrides) -> SuiteConfig:
    """Read a JSON config file; keyword ``overrides`` that are not ``None`` win."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return config_from_dict(raw, **overrides)


def config_from_dict(raw: dict, **overrides) -> SuiteConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    known = {f.name for f in dataclasses.fields(SuiteConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    merged = dict(raw)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    cfg = SuiteConfig(**merged)
    cfg.validate()
    cfg.definitions()
    return cfg
