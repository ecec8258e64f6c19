"""Smoke tests for the Python module and the command-line tool."""

import json
import os
import subprocess

import numpy as np
import pytest

import lievc


def test_algebra_validation_and_bracket():
    a = lievc.so3_algebra(np.diag([1.0, 2.0, 3.0]))
    assert a.dim == 3
    assert a.validate().passed()
    e1, e2, e3 = np.eye(3)
    assert np.allclose(a.bracket(e1, e2), e3, atol=1e-15)
    assert np.allclose(a.sharp(a.flat(np.array([0.3, -1.0, 2.0]))), [0.3, -1.0, 2.0])


def test_rotor_control_matches_closed_form():
    entry = lievc.rotor(1.0, 2.0, 3.0, J=0.5, k=0.5, p=0.0)
    x = np.array([1.0, 2.0, 0.3, 0.1])
    u = entry.system.control_law(x)
    assert u.shape == (1,)
    assert abs(u[0] - 0.5 * (1.0 - 2.0) * 1.0 * 2.0) < 1e-12
    assert np.allclose(u, entry.closed_form_control(x), atol=1e-13)
    assert np.allclose(entry.system.drift(x), entry.closed_form_drift(x), atol=1e-12)


def test_se3_closed_loop_preserves_the_constraint():
    entry = lievc.se3_homogeneous(m=1.0, k=0.7)
    x0 = np.array([0.3, -0.2, 0.0, -0.2, -0.3, 0.0])
    cfg = lievc.IntegratorConfig(step=1e-3, horizon=1.0, record_stride=10)
    traj = lievc.simulate(entry.system, x0, cfg)
    assert not traj.blew_up
    assert traj.states.shape[1] == 6
    assert traj.constraint_residual.max() < 1e-8
    report = lievc.monitors_report(traj)
    assert report.passed()


def test_projectors_and_connections_are_exposed():
    a = lievc.so3_algebra(np.diag([1.0, 2.0, 3.0]))
    d = lievc.Subspace(np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]))
    onto, along = lievc.orthogonal_projectors(a, d)
    assert np.allclose(onto + along, np.eye(3), atol=1e-14)
    x = np.array([0.5, -0.2, 0.0])
    gc = lievc.g_connection(a, x, x)
    assert np.allclose(gc, a.sharp(a.ad_star(x, a.flat(x))), atol=1e-14)


def test_group_reconstruction_stays_orthogonal():
    model = lievc.GroupModel.so3()
    g = model.identity()
    for _ in range(1000):
        g = lievc.group_step(model, g, np.array([1.0, -0.7, 0.4]), 1e-3, 1)
    assert model.orthogonality_drift(g) < 1e-11


def test_invalid_parameters_raise():
    with pytest.raises(ValueError):
        lievc.rotor(1.0, 2.0, 1.0, J=2.0, k=0.5, p=0.0)  # indefinite metric


def _cli():
    cli = os.environ.get("LIEVC_CLI")
    if not cli:
        pytest.skip("LIEVC_CLI not set")
    return cli


def test_cli_simulate_roundtrip(tmp_path):
    cli = _cli()
    config = {
        "system": {"catalog": "se3_homogeneous", "params": {"m": 1.0, "k": 0.7}},
        "initial_state": [0.3, -0.2, 0.0, -0.2, -0.3, 0.0],
        "integrator": {"step": 1e-3, "horizon": 0.5, "record_stride": 50},
    }
    config_path = tmp_path / "run.json"
    config_path.write_text(json.dumps(config))
    out_dir = tmp_path / "out"
    result = subprocess.run(
        [cli, "simulate", "--config", str(config_path), "--out", str(out_dir)],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0, result.stderr
    header = (out_dir / "trajectory.csv").read_text().splitlines()[0]
    assert header.startswith("t,xi_1")
    assert (out_dir / "group.csv").exists()
    assert (out_dir / "monitors.txt").exists()


def test_cli_control_prints_the_synthesized_input(tmp_path):
    cli = _cli()
    config = {
        "system": {
            "catalog": "rotor",
            "params": {"lambda1": 1.0, "lambda2": 2.0, "lambda3": 3.0, "J": 0.5, "k": 0.5, "p": 0.0},
        },
        "initial_state": [1.0, 2.0, 0.0, 0.0],
    }
    config_path = tmp_path / "control.json"
    config_path.write_text(json.dumps(config))
    result = subprocess.run(
        [cli, "control", "--config", str(config_path)], capture_output=True, text=True
    )
    assert result.returncode == 0, result.stderr
    lines = dict(line.split(":", 1) for line in result.stdout.strip().splitlines())
    u = float(lines["control"].split()[0])
    assert abs(u - 0.5 * (1.0 - 2.0) * 1.0 * 2.0) < 1e-12  # -1.0
    residual = [abs(float(v)) for v in lines["closed_loop_residual"].split()]
    assert max(residual) < 1e-12


def test_cli_validate_reports_structure(tmp_path):
    cli = _cli()
    good = {
        "system": {"catalog": "se3_homogeneous", "params": {"m": 1.0, "k": 0.7}},
        "integrator": {"step": 1e-3, "horizon": 0.1},
    }
    path = tmp_path / "good.json"
    path.write_text(json.dumps(good))
    result = subprocess.run(
        [cli, "validate", "--config", str(path), "--out", str(tmp_path / "v")],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0, result.stderr
    assert "rank 6 of 6" in result.stdout

    bad = {
        "system": {
            "catalog": "rotor",
            "params": {"lambda1": 1.0, "lambda2": 2.0, "lambda3": 1.0, "J": 2.0, "k": 0.5, "p": 0.0},
        }
    }
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps(bad))
    result = subprocess.run(
        [cli, "validate", "--config", str(bad_path), "--out", str(tmp_path / "vb")],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 3
    assert "SPD" in result.stdout


def test_cli_unstable_run_still_exits_cleanly(tmp_path):
    # stability is a separate analysis: a wandering but finite rotor run
    # meets the monitor tolerances and exits 0
    cli = _cli()
    config = {
        "system": {
            "catalog": "rotor",
            "params": {"lambda1": 3.0, "lambda2": 2.0, "lambda3": 1.0, "J": 0.5, "k": 0.0, "p": 0.0},
        },
        "initial_state": [1e-3, 1.0, 1e-3, -1e-3],
        "integrator": {"step": 1e-3, "horizon": 20.0, "record_stride": 100},
    }
    path = tmp_path / "unstable.json"
    path.write_text(json.dumps(config))
    result = subprocess.run(
        [cli, "simulate", "--config", str(path), "--out", str(tmp_path / "u")],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0, result.stderr


def test_cli_sweep_fans_out_runs(tmp_path):
    cli = _cli()
    config = {
        "system": {
            "catalog": "rotor",
            "params": {"lambda1": 3.0, "lambda2": 2.0, "lambda3": 1.0, "J": 0.5, "k": 0.5, "p": 0.0},
        },
        "initial_state": [0.1, 0.2, 0.0, 0.0],
        "integrator": {"step": 1e-3, "horizon": 1.0, "record_stride": 100},
    }
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps(config))
    out_dir = tmp_path / "sweep_out"
    result = subprocess.run(
        [cli, "simulate", "--config", str(path), "--out", str(out_dir),
         "--sweep", "k=0.1:0.9:3"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0, result.stderr
    for i in range(3):
        assert (out_dir / f"sweep_k_{i}" / "trajectory.csv").exists()
