from __future__ import annotations

import json
import subprocess
import sys

import pytest

from heckelab.cli import RunConfig, build_parser, config_from_args, emit, run
from heckelab.errors import ConfigError
from heckelab.torus import GroupKind


def test_config_q4_pgl2_rejected():
    with pytest.raises(ConfigError):
        RunConfig(q=4, kinds=(GroupKind.PGL2,), suites=("blocks",))


def test_config_non_prime_power_rejected():
    with pytest.raises(ConfigError):
        RunConfig(q=6, suites=("blocks",))


def test_config_unknown_suite_rejected():
    with pytest.raises(ConfigError):
        RunConfig(q=5, suites=("nope",))


def test_run_blocks_sl2_q3():
    cfg = RunConfig(q=3, kinds=(GroupKind.SL2,), suites=("blocks",))
    report, _ = run(cfg)
    assert report["pass"]
    assert report["suites"][0]["name"] == "blocks"


def test_json_reproducibility():
    cfg = RunConfig(q=5, kinds=(GroupKind.SL2,), suites=("blocks", "modules"), seed=11)
    r1, _ = run(cfg)
    r2, _ = run(cfg)
    assert emit(r1, "json") == emit(r2, "json")
    parsed = json.loads(emit(r1, "json"))
    assert parsed["version"] == 1
    assert parsed["config"]["seed"] == 11


def test_cli_exit_codes():
    out = subprocess.run(
        [sys.executable, "-m", "heckelab", "--q", "4", "--group", "PGL2"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 2
    out = subprocess.run(
        [
            sys.executable,
            "-m",
            "heckelab",
            "--q",
            "3",
            "--group",
            "SL2",
            "--suite",
            "blocks",
            "--format",
            "json",
        ],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    payload = json.loads(out.stdout)
    assert payload["pass"] is True


def test_parser_defaults():
    args = build_parser().parse_args(["--q", "5"])
    cfg = config_from_args(args)
    assert cfg.lmax == 6 and cfg.trunc_degree == 8 and cfg.window == 6
    assert cfg.fmt == "table"
    assert set(cfg.suites) == {"blocks", "models", "modules", "scheme", "dga", "endo"}


def test_scheme_suite_gl2_q5_table():
    cfg = RunConfig(q=5, kinds=(GroupKind.GL2,), suites=("scheme",))
    report, _ = run(cfg)
    det = report["suites"][0]["details"]["GL2"]
    assert det["modules"] == 24 and det["nodes"] == 24  # 6 per z-fiber, 4 fibers


def test_empty_suite_selection_emits_versioned_json():
    cfg = RunConfig(q=5, suites=())
    report, _ = run(cfg)
    payload = json.loads(emit(report, "json"))
    assert payload["suites"] == [] and payload["version"] == 1 and payload["pass"] is True
