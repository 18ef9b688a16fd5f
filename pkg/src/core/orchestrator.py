"""
Scenario orchestration: solves p(t) for each coupling, evolves the Werner-like
channel, derives F_av(t) and gamma(t), and writes CSV/SVG artifacts.
"""

import asyncio
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from config.presets import FIGURE_TITLES, P_GRID_POINTS
from config.scenario import ScenarioConfig
from config.settings import Settings, get_settings
from core.logger import get_pipeline_logger
from physics.dynamics import DecayProfile, decay_profile, two_qubit_evolve_series
from physics.fidelity import (
    asymptotic_f_avg,
    critical_p_squared,
    f_avg_closed_form,
    f_avg_series,
    werner_state,
)
from physics.spectral import BoundState, bound_state, bound_state_threshold
from physics.volterra import AmplitudeTrajectory, solve_p
from ui import plots
from ui.export import write_csv

logger = get_pipeline_logger()

SCHEME = "implicit trapezoidal, closed-form corrector, full-history trapezoidal convolution"


@dataclass
class CurveResult:
    """One (eta, r) pipeline run."""

    eta: float
    r: float
    trajectory: AmplitudeTrajectory
    profile: DecayProfile
    fidelity: np.ndarray
    threshold: float
    bound: Optional[BoundState]
    asymptotic_fidelity: float

    @property
    def label(self) -> str:
        return f"eta={self.eta:g}, r={self.r:.4g}"


@dataclass
class ScenarioResult:
    """Outcome of run_scenario."""

    config: ScenarioConfig
    curves: List[CurveResult] = field(default_factory=list)
    files: List[Path] = field(default_factory=list)
    elapsed: float = 0.0


def _tag(value: float) -> str:
    return f"{value:.4g}".replace("/", "_")


class ScenarioRunner:
    """Runs the solver and fidelity pipelines for a scenario."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

    async def run(self, config: ScenarioConfig) -> ScenarioResult:
        started = time.perf_counter()
        logger.info("Running scenario", **config.describe())
        try:
            config.output_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            logger.error("Cannot create output directory", path=str(config.output_dir), error=str(e))
            raise

        if config.preset == "fig1":
            result = self._closed_form(config)
        else:
            result = await self._dynamics(config)

        result.elapsed = time.perf_counter() - started
        logger.info("Scenario finished", preset=config.preset, files=len(result.files), elapsed=round(result.elapsed, 2))
        return result

    def _header(self, config: ScenarioConfig, **extra: str) -> Dict[str, str]:
        header = dict(config.describe())
        header.update(extra)
        return header

    def _closed_form(self, config: ScenarioConfig) -> ScenarioResult:
        result = ScenarioResult(config=config)
        p_abs = np.linspace(0.0, 1.0, P_GRID_POINTS)
        columns: Dict[str, np.ndarray] = {"p_abs": p_abs}
        for r in config.r:
            columns[f"F_av[r={r:.4g}]"] = f_avg_closed_form(r, p_abs)
        frame = pd.DataFrame(columns)

        stem = config.preset
        if "csv" in config.formats:
            header = self._header(
                config,
                quantity="maximal average teleportation fidelity versus |p| (closed form)",
                critical_p_squared=",".join(f"{critical_p_squared(r):.12g}" for r in config.r),
            )
            result.files.append(write_csv(config.output_dir / f"{stem}.csv", frame, header))
        if "svg" in config.formats:
            curves = {f"r = {r:.3g}": frame[f"F_av[r={r:.4g}]"].to_numpy() for r in config.r}
            result.files.append(
                plots.plot_fidelity_vs_p(config.output_dir / f"{stem}.svg", p_abs, curves, FIGURE_TITLES[stem])
            )
        return result

    async def _solve_all(self, config: ScenarioConfig) -> Dict[float, AmplitudeTrajectory]:
        semaphore = asyncio.Semaphore(config.workers)
        solver = self.settings.solver

        async def solve(eta: float) -> AmplitudeTrajectory:
            async with semaphore:
                return await asyncio.to_thread(
                    solve_p,
                    config.spectral_params(eta),
                    config.t_max,
                    config.dt,
                    solver.max_step,
                    solver.contractivity_tolerance,
                )

        etas = list(dict.fromkeys(config.eta))
        trajectories = await asyncio.gather(*(solve(eta) for eta in etas))
        return dict(zip(etas, trajectories))

    def _curve(self, config: ScenarioConfig, eta: float, r: float, traj: AmplitudeTrajectory) -> CurveResult:
        params = config.spectral_params(eta)
        states = two_qubit_evolve_series(werner_state(r), traj.values)
        return CurveResult(
            eta=eta,
            r=r,
            trajectory=traj,
            profile=decay_profile(traj),
            fidelity=f_avg_series(states),
            threshold=bound_state_threshold(params),
            bound=bound_state(params),
            asymptotic_fidelity=asymptotic_f_avg(r, params),
        )

    async def _dynamics(self, config: ScenarioConfig) -> ScenarioResult:
        trajectories = await self._solve_all(config)
        result = ScenarioResult(config=config)

        for eta in dict.fromkeys(config.eta):
            for r in config.r:
                curve = await asyncio.to_thread(self._curve, config, eta, r, trajectories[eta])
                result.curves.append(curve)

        if "csv" in config.formats:
            for curve in result.curves:
                result.files.append(self._write_curve(config, curve))
            if config.preset == "fig5":
                result.files.append(self._write_sign_law(config, result.curves))
        if "svg" in config.formats:
            result.files.append(self._plot(config, result.curves))
        return result

    def _write_curve(self, config: ScenarioConfig, curve: CurveResult) -> Path:
        traj, profile = curve.trajectory, curve.profile
        frame = pd.DataFrame(
            {
                "t": traj.times,
                "p_re": traj.values.real,
                "p_im": traj.values.imag,
                "p_abs2": traj.population,
                "F_av": curve.fidelity,
                "Gamma": profile.gamma_raw,
                "Omega": profile.lamb,
                "gamma": profile.gamma_norm,
            }
        )
        header = self._header(
            config,
            curve_eta=f"{curve.eta:g}",
            curve_r=f"{curve.r:.12g}",
            regime=config.ohmicity.regime,
            scheme=SCHEME,
            eta_c=f"{curve.threshold:.12g}",
            bound_state="none" if curve.bound is None else f"E={curve.bound.energy:.12g}, Z={curve.bound.residue:.12g}",
            asymptotic_F_av=f"{curve.asymptotic_fidelity:.12g}",
            Gamma_max=f"{profile.gamma_max:.12g}",
        )
        name = f"{config.preset}_eta{_tag(curve.eta)}_r{_tag(curve.r)}.csv"
        return write_csv(config.output_dir / name, frame, header)

    def _write_sign_law(self, config: ScenarioConfig, curves: List[CurveResult]) -> Path:
        base = curves[0]
        columns: Dict[str, np.ndarray] = {"t": base.trajectory.times}
        for curve in curves:
            columns[f"F_av[r={curve.r:.4g}]"] = curve.fidelity
        columns["gamma"] = base.profile.gamma_norm
        columns["p_abs2"] = base.trajectory.population
        header = self._header(
            config,
            scheme=SCHEME,
            reference_line="1/3 (critical |p|^2 for r = 0.5)",
        )
        return write_csv(config.output_dir / f"{config.preset}.csv", pd.DataFrame(columns), header)

    def _plot(self, config: ScenarioConfig, curves: List[CurveResult]) -> Path:
        path = config.output_dir / f"{config.preset}.svg"
        title = FIGURE_TITLES[config.preset]
        if config.preset == "fig5":
            base = curves[0]
            return plots.plot_sign_law(
                path,
                base.trajectory.times,
                {f"F_av r={c.r:.3g}": c.fidelity for c in curves},
                base.profile.gamma_norm,
                base.trajectory.population,
                title,
            )
        return plots.plot_time_curves(
            path,
            [c.trajectory.times for c in curves],
            [c.fidelity for c in curves],
            [c.profile.gamma_norm for c in curves],
            [c.label for c in curves],
            title,
        )


async def run_scenario(config: ScenarioConfig, settings: Optional[Settings] = None) -> ScenarioResult:
    """Run every (eta, r) pipeline of ``config`` and write its artifacts."""
    return await ScenarioRunner(settings).run(config)
