"""Running property suites into reports."""
from __future__ import annotations

import time
import traceback

from . import props_algebra, props_geometry  # noqa: F401  (registers properties)
from .config import SUITES, SuiteConfig
from .registry import PROPERTIES, Context, Outcome, Skip, property_rng
from .report import Record, Report

__all__ = ["run_property", "run_suite", "selected_properties"]


def selected_properties(cfg: SuiteConfig) -> list[tuple[str, str, str, object]]:
    wanted = SUITES if cfg.suite == "all" else (cfg.suite,)
    props = [(p.suite, p.name, p.anchor, p.fn) for p in PROPERTIES.values()]
    props += [(s, f"{s}.{n}", a, fn) for s, n, a, fn in
              props_geometry.user_properties(cfg.definitions())]
    return sorted((p for p in props if p[0] in wanted), key=lambda p: p[1])


def run_property(cfg: SuiteConfig, name: str, anchor: str, fn, defs=None) -> Record:
    ctx = Context(cfg, name, property_rng(cfg.seed, name), defs)
    try:
        out: Outcome = fn(ctx)
    except Skip as exc:
        return Record(name, anchor, "skip", "skipped", 0.0, {"note": str(exc)})
    except Exception as exc:  # a crashing property is a failing property
        return Record(name, anchor, "fail", float("nan"), 0.0,
                      {"error": f"{type(exc).__name__}: {exc}",
                       "where": traceback.format_exc(limit=-1).strip().splitlines()[-2:]})
    return Record(name, anchor, out.verdict(), out.residual, out.tolerance, out.diagnostics)


def run_suite(cfg: SuiteConfig) -> Report:
    """Run every property of the configured suite; records come out sorted by name."""
    cfg.validate()
    defs = cfg.definitions()
    start = time.perf_counter()
    records = [run_property(cfg, name, anchor, fn, defs)
               for _, name, anchor, fn in selected_properties(cfg)]
    return Report(cfg.suite, cfg.seed, cfg.as_json(), records, time.perf_counter() - start)
