import io
import json
import math
import subprocess
import sys

import pytest

from liejet.harness import (
    ANCHORS,
    PREMISE_VIOLATED,
    SCHEMA,
    ConfigError,
    Record,
    Report,
    SuiteConfig,
    emit_report,
    load_config,
    missing_anchors,
    run_suite,
)
from liejet.harness.cli import main
from liejet.harness.config import config_from_dict
from liejet.harness.registry import PROPERTIES, Outcome, wmax
from liejet.harness.report import render_table
from liejet.harness.suite import run_property

FIELDS = {"name", "anchor", "status", "residual", "tolerance", "diagnostics"}


def strip_time(text):
    doc = json.loads(text)
    doc.pop("wall_time")
    return json.dumps(doc, sort_keys=True)


# -- report -----------------------------------------------------------------------

def test_empty_report_is_valid_json():
    r = Report("jets", 0, SuiteConfig().as_json(), [], 0.0)
    doc = json.loads(r.dumps())
    assert doc["schema"] == SCHEMA
    assert doc["records"] == []
    assert doc["summary"] == {"pass": 0, "fail": 0, "skip": 0, "total": 0}
    assert r.exit_code == 0


def test_single_record_has_all_fields():
    rec = Record("jets.x", "taylor.ring", "pass", 1e-17, 1e-12, {"samples": 3})
    doc = json.loads(Report("jets", 0, {}, [rec], 0.1).dumps())
    (out,) = doc["records"]
    assert set(out) == FIELDS
    assert all(out[k] is not None for k in FIELDS)


def test_non_finite_and_complex_values_serialize():
    rec = Record("a", "b", "fail", float("nan"), 0.0,
                 {"x": float("inf"), "z": 1 + 2j, "nested": [float("-inf")]})
    out = json.loads(Report("all", 0, {}, [rec], 0.0).dumps())["records"][0]
    assert out["residual"] == "nan"
    assert out["diagnostics"] == {"x": "inf", "z": [1.0, 2.0], "nested": ["-inf"]}


def test_emit_report_writes_table_and_file(tmp_path):
    rec = Record("jets.x", "taylor.ring", "skip", PREMISE_VIOLATED, 0.0, {})
    r = Report("jets", 0, {}, [rec], 0.0)
    buf = io.StringIO()
    path = tmp_path / "r.json"
    emit_report(r, str(path), buf)
    assert "SKIP" in buf.getvalue() and "jets.x" in buf.getvalue()
    assert json.loads(path.read_text())["records"][0]["residual"] == PREMISE_VIOLATED
    assert render_table(r).splitlines()[-1].startswith("0 passed")


def test_exit_code_reflects_failures():
    ok = Record("a", "x", "pass", 0.0, 1.0, {})
    skip = Record("b", "x", "skip", "skipped", 0.0, {})
    bad = Record("c", "x", "fail", 2.0, 1.0, {})
    assert Report("all", 0, {}, [ok, skip], 0.0).exit_code == 0
    assert Report("all", 0, {}, [ok, skip, bad], 0.0).exit_code == 1


def test_nan_residual_fails():
    assert Outcome(float("nan"), 1.0).verdict() == "fail"
    assert math.isnan(wmax(0.0, float("nan")))
    assert math.isnan(wmax(float("nan"), 1.0))


def test_crashing_property_is_a_failure():
    def boom(ctx):
        raise RuntimeError("kaput")
    rec = run_property(SuiteConfig(), "jets.boom", "taylor.ring", boom)
    assert rec.status == "fail" and "kaput" in rec.diagnostics["error"]


# -- registry ---------------------------------------------------------------------

def test_every_anchor_has_a_property():
    assert missing_anchors() == []
    assert {p.anchor for p in PROPERTIES.values()} <= set(ANCHORS)


def test_property_names_are_unique_and_prefixed():
    for name, p in PROPERTIES.items():
        assert name.startswith(p.suite + ".")


# -- config -----------------------------------------------------------------------

def test_defaults():
    c = SuiteConfig()
    assert (c.dim, c.order, c.matrix_size, c.samples, c.seed) == (2, 8, 3, 200, 0)


def test_config_errors_carry_position(tmp_path):
    p = tmp_path / "c.json"
    p.write_text('{\n  "seed": 3,\n  "dim": ,\n}')
    with pytest.raises(ConfigError) as info:
        load_config(str(p))
    assert (info.value.line, info.value.column) == (3, 10)


@pytest.mark.parametrize("raw,fragment", [
    ({"sede": 1}, "unknown config keys"),
    ({"suite": "nope"}, "unknown suite"),
    ({"dim": 0}, "dim"),
    ({"tol_scale": -1}, "tol_scale"),
    ({"functions": {"f": "z1 +"}}, "functions.f"),
    ({"fields": {"X": ["z1"]}}, "fields.X"),
    ({"forms": {"B": {"arity": 1, "coefficients": {"5": "z1"}}}}, "forms.B"),
    ({"kernels": {"k": "z1 * q"}}, "kernels.k"),
])
def test_config_validation(raw, fragment):
    with pytest.raises(ConfigError, match=fragment):
        config_from_dict(raw)


def test_cli_flags_override_file(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"seed": 5, "samples": 7, "suite": "forms"}))
    cfg = load_config(str(p), suite="jets", seed=9, samples=None)
    assert (cfg.suite, cfg.seed, cfg.samples) == ("jets", 9, 7)


def test_tolerance_override_and_scale():
    cfg = SuiteConfig(tol_scale=10.0, tolerances={"jets.a": 0.5})
    assert cfg.tolerance("jets.a", 1e-12) == 0.5
    assert cfg.tolerance("jets.b", 1e-12) == pytest.approx(1e-11)


# -- runs -------------------------------------------------------------------------

def test_jets_suite_passes():
    r = run_suite(SuiteConfig(suite="jets"))
    assert r.exit_code == 0
    assert {rec.status for rec in r.records} == {"pass"}
    names = {rec.name for rec in r.records}
    assert {"jets.inverse-exact", "jets.ring-axioms", "jets.landau-fractional",
            "jets.landau-integer"} <= names


def test_motions_seed_42_rate_table():
    r = run_suite(SuiteConfig(suite="motions", seed=42))
    assert r.exit_code == 0
    rec = next(x for x in r.records if x.name == "motions.commutator-remainder-rate")
    assert rec.diagnostics["min_rate"] >= 2.9
    assert rec.diagnostics["step_table"]
    direction = next(x for x in r.records if x.name == "motions.commutator-direction")
    assert direction.diagnostics["step_table"]


def test_determinism_byte_identical():
    cfg = dict(suite="kernels", seed=7, samples=40)
    a = run_suite(SuiteConfig(**cfg)).dumps()
    b = run_suite(SuiteConfig(**cfg)).dumps()
    assert strip_time(a) == strip_time(b)
    assert [l for l in a.splitlines() if "wall_time" not in l] == \
           [l for l in b.splitlines() if "wall_time" not in l]


def test_seed_changes_draws():
    a = run_suite(SuiteConfig(suite="backends", seed=1, samples=20))
    b = run_suite(SuiteConfig(suite="backends", seed=2, samples=20))
    assert [r.residual for r in a.records] != [r.residual for r in b.records]


def test_records_sorted():
    r = run_suite(SuiteConfig(suite="forms", samples=20))
    names = [x.name for x in r.records]
    assert names == sorted(names)


def test_user_definitions_become_properties():
    cfg = config_from_dict({
        "suite": "kernels", "samples": 30,
        "functions": {"f": "sin(z1) * z2^2"},
        "fields": {"X": ["z2", "-z1"]},
        "kernels": {"g": "exp(-((z1-w1)^2 + (z2-w2)^2))"},
    })
    r = run_suite(cfg)
    names = {x.name for x in r.records}
    assert any(n.startswith("kernels.user.kernel.g.") for n in names)
    assert r.exit_code == 0


def test_complex_user_kernel_skips_inequality():
    cfg = config_from_dict({"suite": "kernels", "samples": 20,
                            "kernels": {"c": "exp(i*(z1 - w1))"}})
    recs = {x.name: x for x in run_suite(cfg).records}
    csf = [x for n, x in recs.items() if n.startswith("kernels.user.kernel.c.") and "cauchy" in n]
    assert csf and all(x.status == "skip" and x.residual == PREMISE_VIOLATED for x in csf)


# -- CLI --------------------------------------------------------------------------

def test_cli_exit_codes(tmp_path, capsys):
    assert main(["check", "backends", "--samples", "10"]) == 0
    assert main(["check", "nosuch"]) == 2
    with pytest.raises(SystemExit) as info:
        main(["check", "jets", "--seed", "abc"])
    assert info.value.code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["check", "jets", "--config", str(bad)]) == 2
    assert "line 1" in capsys.readouterr().err
    tight = tmp_path / "tight.json"
    tight.write_text(json.dumps({"tolerances": {"backends.exp-series": -1.0}}))
    assert main(["check", "backends", "--samples", "10", "--config", str(tight)]) == 1


def test_cli_expression_error_reports_column(tmp_path, capsys):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"functions": {"f": "z1 +* 2"}}))
    assert main(["check", "vectorfields", "--config", str(p)]) == 2
    assert "column 5" in capsys.readouterr().err


def test_console_script_writes_report(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run([sys.executable, "-m", "liejet", "check", "backends",
                           "--samples", "10", "--report", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(out.read_text())
    assert doc["schema"] == SCHEMA and doc["config"]["samples"] == 10
