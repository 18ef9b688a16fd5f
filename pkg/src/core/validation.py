"""
Validation suite: oracle equivalence, closed-form consistency, the decay-rate
identity, the bound-state dichotomy, the fidelity sign law, step-halving
convergence and artifact determinism. Each check reports its measured value.
"""

import asyncio
import math
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, List, Optional, Tuple

import numpy as np

from config.presets import PRESETS
from config.scenario import ScenarioConfig, build_scenario
from config.settings import Settings, get_settings
from core.logger import LoggerMixin, get_pipeline_logger
from physics.dynamics import (
    PSD_TOLERANCE,
    decay_profile,
    rate_identity_deviation,
    sign_law_report,
    two_qubit_evolve,
    two_qubit_evolve_series,
)
from physics.fidelity import (
    CLASSICAL_LIMIT,
    advantage_p_squared,
    critical_p_squared,
    f_avg_closed_form,
    f_avg_series,
    n_closed_form,
    n_of_rho,
    werner_state,
)
from physics.spectral import Ohmicity, SpectralParams, bound_state, bound_state_threshold
from physics.volterra import convergence_study, max_deviation, oracle_p_discrete, plateau_population, solve_p

logger = get_pipeline_logger()

ORACLE_CASES: Tuple[Tuple[str, float], ...] = (("3", 0.9), ("1", 0.3), ("1/2", 0.55))
CLOSED_FORM_R = (0.0, 0.3, 1.0 / 3.0, 0.5, 0.9, 1.0)
CLOSED_FORM_PHASES = (0.0, math.pi / 3.0, math.pi / 2.0)
FIG1_GRID = 10_000
SIGN_LAW_WINDOW = (0.49, 0.84)


def grid_offset(grid: np.ndarray, index: int, target: float) -> int:
    """Signed distance, in grid steps, from ``index`` to the first grid point at or above ``target``."""
    return index - int(np.searchsorted(grid, target))


@dataclass
class CheckResult:
    """One line of the validation report."""

    name: str
    passed: bool
    measured: str
    detail: str = ""


@dataclass
class ValidationReport:
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, measured: str, detail: str = "") -> CheckResult:
        check = CheckResult(name, bool(passed), measured, detail)
        self.checks.append(check)
        log = logger.info if check.passed else logger.warning
        log("Check finished", check=name, passed=check.passed, measured=measured)
        return check


class ValidationSuite(LoggerMixin):
    """Runs every acceptance check against a settings bundle."""

    def __init__(self, settings: Optional[Settings] = None, omega_c: float = 1.0, omega_0: float = 1.0):
        self.settings = settings or get_settings()
        self.omega_c = omega_c
        self.omega_0 = omega_0

    def params(self, s: str, eta: float) -> SpectralParams:
        return SpectralParams(Ohmicity.parse(s), eta, self.omega_c, self.omega_0)

    def run(self, only: Optional[Iterable[str]] = None) -> ValidationReport:
        report = ValidationReport()
        checks: List[Tuple[str, Callable[[ValidationReport], None]]] = [
            ("closed-form", self.check_closed_form),
            ("fig1", self.check_fig1_structure),
            ("oracle", self.check_oracle),
            ("rates", self.check_rate_identity),
            ("bound-state", self.check_bound_state),
            ("sign-law", self.check_sign_law),
            ("convergence", self.check_convergence),
            ("determinism", self.check_determinism),
        ]
        selected = set(only) if only else None
        self.logger.info("Validation started", checks=sorted(selected) if selected else "all", omega_c=self.omega_c)
        for key, check in checks:
            if selected is None or key in selected:
                check(report)
        self.logger.info(
            "Validation finished",
            passed=report.passed,
            failed=[c.name for c in report.checks if not c.passed],
        )
        return report

    def check_closed_form(self, report: ValidationReport) -> None:
        worst = 0.0
        lowest = math.inf
        for r in CLOSED_FORM_R:
            rho0 = werner_state(r)
            for modulus in np.linspace(0.0, 1.0, 11):
                for phase in CLOSED_FORM_PHASES:
                    p = modulus * np.exp(1j * phase)
                    rho = two_qubit_evolve(rho0, p)
                    lowest = min(lowest, rho.min_eigenvalue)
                    worst = max(worst, abs(n_of_rho(rho) - n_closed_form(r, modulus)))
        tol = self.settings.validation.closed_form_tolerance
        report.add("N(rho) closed form", worst <= tol, f"max dev {worst:.2e}", f"tolerance {tol:g}")
        report.add("complete positivity", lowest >= PSD_TOLERANCE, f"min eigenvalue {lowest:.2e}")

    def check_fig1_structure(self, report: ValidationReport) -> None:
        q = np.linspace(0.0, 1.0, FIG1_GRID)
        for r in (0.5, 0.7):
            fid = f_avg_closed_form(r, np.sqrt(q))
            i_min = int(np.argmin(fid))
            above = np.flatnonzero(fid > CLASSICAL_LIMIT)
            i_boundary = int(above[0]) if above.size else len(q)
            min_offset = grid_offset(q, i_min, critical_p_squared(r))
            boundary_offset = grid_offset(q, i_boundary, advantage_p_squared(r))
            boundary = q[i_boundary] if i_boundary < len(q) else math.inf
            report.add(
                f"fig1 structure r={r:g}",
                abs(min_offset) <= 1 and abs(boundary_offset) <= 1,
                f"argmin {q[i_min]:.5f}, F>2/3 from {boundary:.5f}",
                f"expected {critical_p_squared(r):.5f}, {advantage_p_squared(r):.5f}; "
                f"offsets {min_offset:+d}, {boundary_offset:+d} grid steps",
            )
        for r in (0.2, 1.0 / 3.0):
            peak = float(np.max(f_avg_closed_form(r, np.sqrt(q))))
            report.add(
                f"fig1 classical r={r:.4g}",
                peak <= CLASSICAL_LIMIT + 1e-12,
                f"max F_av {peak:.15f}",
            )

    def check_oracle(self, report: ValidationReport) -> None:
        cfg = self.settings.oracle
        for s, eta in ORACLE_CASES:
            params = self.params(s, eta)
            solved = solve_p(params, cfg.compare_window, cfg.dt)
            oracle = oracle_p_discrete(params, cfg.n_modes, cfg.omega_max_factor * params.omega_c, solved.times)
            deviation = max_deviation(solved, oracle)
            report.add(
                f"oracle s={s} eta={eta:g}",
                deviation <= cfg.tolerance,
                f"max |p_solver - p_oracle| {deviation:.2e}",
                f"n_modes={cfg.n_modes}, omega_max={cfg.omega_max_factor:g} omega_c",
            )

    def _figure_params(self) -> List[Tuple[str, SpectralParams]]:
        cases = []
        for preset in ("fig2", "fig3", "fig4"):
            for eta in PRESETS[preset]["eta"]:
                cases.append((preset, self.params(PRESETS[preset]["s"], eta)))
        return cases

    def check_rate_identity(self, report: ValidationReport) -> None:
        cfg = self.settings
        overshoot = -math.inf
        for preset, params in self._figure_params():
            traj = solve_p(params, cfg.solver.t_max, cfg.validation.rate_dt)
            overshoot = max(overshoot, float(np.max(np.abs(traj.values))) - 1.0)
            deviation = rate_identity_deviation(traj, cfg.validation.rate_min_population)
            gamma_peak = float(np.nanmax(decay_profile(traj).gamma_norm))
            ok = deviation <= cfg.validation.rate_tolerance and gamma_peak == 1.0
            report.add(
                f"Gamma identity {preset} eta={params.eta:g}",
                ok,
                f"rel dev {deviation:.2e}, max gamma {gamma_peak:.15g}",
            )
        tol = cfg.solver.contractivity_tolerance
        report.add("contractivity |p| <= 1", overshoot <= tol, f"max |p| - 1 = {overshoot:.2e}", f"tolerance {tol:g}")

    def check_bound_state(self, report: ValidationReport) -> None:
        v = self.settings.validation
        margin = v.threshold_margin
        for s in ("3", "1", "1/2"):
            base = self.params(s, 1.0)
            eta_c = bound_state_threshold(base)
            above = base.with_eta((1.0 + margin) * eta_c)
            below = base.with_eta((1.0 - margin) * eta_c)
            plateau_above = plateau_population(solve_p(above, v.plateau_window, v.plateau_dt), v.plateau_fraction)
            plateau_below = plateau_population(solve_p(below, v.plateau_window, v.plateau_dt), v.plateau_fraction)
            predicted = bound_state(above)
            expected = predicted.population if predicted else 0.0
            ok = plateau_below < v.bound_below and plateau_above > min(v.bound_above, 0.5 * expected)
            report.add(
                f"bound state s={s}",
                ok,
                f"eta_c {eta_c:.6g}; plateau {plateau_above:.3g} above, {plateau_below:.2e} below",
                f"margin {margin:g}, bound-state |p(inf)|^2 {expected:.3g}",
            )

        s3 = PRESETS["fig2"]
        fid_strong = self._fidelity_at(self.params(s3["s"], 0.9), 50.0, self.settings.solver.dt)
        fid_weak = self._fidelity_at(self.params(s3["s"], 0.15), v.plateau_window, v.plateau_dt)
        report.add(
            "fig2 long-time fidelity",
            fid_strong >= CLASSICAL_LIMIT + 0.01 and abs(fid_weak - CLASSICAL_LIMIT) <= 0.05,
            f"F_av(eta=0.9, t=50) {fid_strong:.4f}; F_av(eta=0.15, t={v.plateau_window:g}) {fid_weak:.4f}",
        )

    def _fidelity_at(self, params: SpectralParams, t_end: float, dt: float) -> float:
        traj = solve_p(params, t_end, dt)
        return float(f_avg_closed_form(1.0, abs(traj.values[-1])))

    def check_sign_law(self, report: ValidationReport) -> None:
        preset = PRESETS["fig5"]
        traj = solve_p(self.params(preset["s"], preset["eta"][0]), self.settings.solver.t_max, self.settings.solver.dt)
        q = traj.population
        everywhere = np.ones(len(traj), dtype=bool)

        fid_pure = f_avg_series(two_qubit_evolve_series(werner_state(1.0), traj.values))
        pure = sign_law_report(traj, fid_pure, expected_sign=-1, region=everywhere)
        report.add("sign law r=1", pure.holds, f"{pure.checked} points, {pure.violations} violations")

        fid_mixed = f_avg_series(two_qubit_evolve_series(werner_state(0.5), traj.values))
        below = q < critical_p_squared(0.5)
        mixed = sign_law_report(traj, fid_mixed, expected_sign=+1, region=below)
        lo, hi = SIGN_LAW_WINDOW
        overlaps = any(a < hi and b > lo for a, b in mixed.windows)
        windows = ", ".join(f"({a:.3f}, {b:.3f})" for a, b in mixed.windows) or "none"
        report.add(
            "sign law r=0.5 below |p|_c^2",
            mixed.holds and overlaps,
            f"{mixed.checked} points, {mixed.violations} violations; windows {windows}",
            f"reference window ({lo}, {hi})",
        )

    def check_convergence(self, report: ValidationReport) -> None:
        v = self.settings.validation
        for preset in ("fig2", "fig3", "fig4"):
            ratios = []
            for eta in PRESETS[preset]["eta"]:
                study = convergence_study(self.params(PRESETS[preset]["s"], eta), v.convergence_window, v.convergence_dt)
                ratios.append(study.ratio)
            worst = min(ratios)
            report.add(
                f"step halving {preset}",
                worst >= v.convergence_ratio,
                "ratios " + ", ".join(f"{x:.2f}" for x in ratios),
                f"required >= {v.convergence_ratio:g}",
            )

    def check_determinism(self, report: ValidationReport) -> None:
        # local import: orchestrator pulls in matplotlib
        from core.orchestrator import run_scenario

        with tempfile.TemporaryDirectory() as tmp:
            outputs = []
            for run in ("a", "b"):
                config = build_scenario(
                    "fig5", overrides={"t_max": 5.0, "output_dir": Path(tmp) / run, "formats": ["csv"]}
                )
                result = asyncio.run(run_scenario(config, self.settings))
                outputs.append({p.name: p.read_bytes() for p in result.files})
            identical = outputs[0] == outputs[1]
        report.add("CSV determinism", identical, f"{len(outputs[0])} files compared")


def validate(config: Optional[ScenarioConfig] = None, settings: Optional[Settings] = None,
             only: Optional[Iterable[str]] = None) -> ValidationReport:
    """Run the validation suite; ``config`` supplies omega_c and omega_0."""
    omega_c = config.omega_c if config else 1.0
    omega_0 = config.omega_0 if config else 1.0
    return ValidationSuite(settings, omega_c, omega_0).run(only)
