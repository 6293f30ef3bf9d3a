"""Seeded property suites over every module, with JSON reports and a CLI."""
from .config import ConfigError, SuiteConfig, load_config
from .registry import ANCHORS, PROPERTIES, missing_anchors
from .report import PREMISE_VIOLATED, SCHEMA, Record, Report, emit_report
from .suite import run_suite

__all__ = [
    "ANCHORS",
    "ConfigError",
    "PREMISE_VIOLATED",
    "PROPERTIES",
    "Record",
    "Report",
    "SCHEMA",
    "SuiteConfig",
    "emit_report",
    "load_config",
    "missing_anchors",
    "run_suite",
]
