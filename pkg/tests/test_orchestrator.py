import numpy as np
import pytest

from config.scenario import build_scenario
from core.orchestrator import ScenarioRunner, run_scenario
from physics.errors import ResolutionError
from ui.export import read_csv, write_csv


def _scenario(tmp_path, preset="custom", **overrides):
    overrides.setdefault("output_dir", tmp_path)
    return build_scenario(preset, overrides=overrides)


@pytest.mark.asyncio
async def test_fig1_closed_form_artifacts(tmp_path, settings):
    result = await run_scenario(_scenario(tmp_path, "fig1"), settings)
    names = sorted(p.name for p in result.files)
    assert names == ["fig1.csv", "fig1.svg"]

    frame = read_csv(tmp_path / "fig1.csv")
    assert list(frame.columns)[0] == "p_abs"
    assert len(frame) == 201
    assert frame["F_av[r=1]"].iloc[-1] == pytest.approx(1.0)
    assert frame["F_av[r=0.5]"].iloc[0] == pytest.approx(2.0 / 3.0)
    assert (tmp_path / "fig1.svg").read_text(encoding="utf-8").lstrip().startswith("<?xml")


@pytest.mark.asyncio
async def test_dynamics_curves(tmp_path, settings):
    config = _scenario(tmp_path, s="3", eta=[0.9], r=[1.0, 0.5], t_max=2.0, formats=["csv"])
    result = await run_scenario(config, settings)

    assert len(result.curves) == 2
    assert {p.name for p in result.files} == {"custom_eta0.9_r1.csv", "custom_eta0.9_r0.5.csv"}

    frame = read_csv(tmp_path / "custom_eta0.9_r0.5.csv")
    assert list(frame.columns) == ["t", "p_re", "p_im", "p_abs2", "F_av", "Gamma", "Omega", "gamma"]
    assert len(frame) == 401
    assert frame["p_abs2"].iloc[0] == pytest.approx(1.0)
    assert frame["F_av"].iloc[0] == pytest.approx(0.75)
    assert frame["gamma"].max() == pytest.approx(1.0)

    pure = result.curves[0]
    assert pure.r == 1.0
    assert pure.bound is not None
    assert pure.threshold == pytest.approx(0.5)
    np.testing.assert_allclose(pure.fidelity, 0.5 + (2 * pure.trajectory.population ** 2 + 1) / 6, atol=1e-12)


@pytest.mark.asyncio
async def test_header_records_parameters(tmp_path, settings):
    config = _scenario(tmp_path, s="1/2", eta=[0.3], t_max=1.0, formats=["csv"])
    result = await run_scenario(config, settings)
    text = result.files[0].read_text(encoding="utf-8")
    header = [line for line in text.splitlines() if line.startswith("#")]
    assert "# s: 1/2" in header
    assert "# eta: 0.3" in header
    assert "# bound_state: none" in header
    assert "# regime: sub-Ohmic" in header
    assert any(line.startswith("# scheme:") for line in header)
    assert any(line.startswith("# units:") for line in header)


@pytest.mark.asyncio
async def test_shared_solve_per_coupling(tmp_path, settings):
    config = _scenario(tmp_path, s="1", eta=[0.3, 0.3], r=[1.0], t_max=1.0, formats=["csv"])
    trajectories = await ScenarioRunner(settings)._solve_all(config)
    assert list(trajectories) == [0.3]


@pytest.mark.asyncio
async def test_fig5_sign_law_table(tmp_path, settings):
    config = _scenario(tmp_path, "fig5", t_max=3.0)
    result = await run_scenario(config, settings)
    assert {p.name for p in result.files} >= {"fig5.csv", "fig5.svg"}
    frame = read_csv(tmp_path / "fig5.csv")
    assert list(frame.columns) == ["t", "F_av[r=1]", "F_av[r=0.5]", "gamma", "p_abs2"]


@pytest.mark.asyncio
async def test_identical_runs_give_identical_bytes(tmp_path, settings):
    outputs = []
    for run in ("a", "b"):
        result = await run_scenario(_scenario(tmp_path / run, "fig1"), settings)
        outputs.append({p.name: p.read_bytes() for p in result.files})
    assert outputs[0] == outputs[1]

    for run in ("c", "d"):
        config = _scenario(tmp_path / run, s="1", eta=[0.3, 0.9], t_max=2.0, formats=["csv"], workers=2)
        result = await run_scenario(config, settings)
        outputs.append({p.name: p.read_bytes() for p in result.files})
    assert outputs[2] == outputs[3]


@pytest.mark.asyncio
async def test_solver_errors_propagate(tmp_path, settings):
    config = _scenario(tmp_path, s="1", eta=[0.3], t_max=1.0, dt=0.1, formats=["csv"])
    with pytest.raises(ResolutionError):
        await run_scenario(config, settings)


def test_write_csv_format(tmp_path):
    import pandas as pd

    frame = pd.DataFrame({"t": [0.0, 0.5], "gamma": [1.0 / 3.0, float("nan")]})
    path = write_csv(tmp_path / "out" / "x.csv", frame, {"preset": "custom"})
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# preset: custom"
    assert lines[1] == "# units: t [1/omega_0], gamma [dimensionless]"
    assert lines[2] == "t,gamma"
    assert lines[3] == "0,0.333333333333"
    assert lines[4] == "0.5,nan"
