"""
Static SVG line charts for each figure preset.
Rendered offline with the Agg backend; CSV files remain the data contract.
"""

from pathlib import Path
from typing import Dict, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

# fixed salt and no date stamp keep the SVG text reproducible
matplotlib.rcParams["svg.hashsalt"] = "reservoir-teleportation"
matplotlib.rcParams["svg.fonttype"] = "none"

CLASSICAL_LIMIT = 2.0 / 3.0
_COLOURS = ("black", "red", "blue", "green", "purple", "orange")


def _save(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def plot_fidelity_vs_p(path: Path, p_abs: np.ndarray, curves: Dict[str, np.ndarray], title: str) -> Path:
    """F_av against |p| for several mixing parameters."""
    fig, ax = plt.subplots(figsize=(5, 4))
    for colour, (label, values) in zip(_COLOURS, curves.items()):
        ax.plot(p_abs, values, color=colour, label=label)
    ax.axhline(CLASSICAL_LIMIT, color="grey", linestyle="--", linewidth=0.8)
    ax.set_xlabel("|p|")
    ax.set_ylabel("F_av")
    ax.set_title(title)
    ax.legend(loc="lower right", fontsize="small")
    return _save(fig, path)


def plot_time_curves(
    path: Path,
    times: Sequence[np.ndarray],
    fidelities: Sequence[np.ndarray],
    gammas: Sequence[np.ndarray],
    labels: Sequence[str],
    title: str,
) -> Path:
    """F_av(omega_0 t) per coupling with the normalized decay rate in an inset."""
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for colour, t, fid, label in zip(_COLOURS, times, fidelities, labels):
        ax.plot(t, fid, color=colour, label=label, linewidth=1.0)
    ax.axhline(CLASSICAL_LIMIT, color="grey", linestyle="--", linewidth=0.8)
    ax.set_xlabel("omega_0 t")
    ax.set_ylabel("F_av")
    ax.set_title(title)
    ax.legend(loc="upper right", fontsize="small")

    inset = ax.inset_axes([0.45, 0.35, 0.5, 0.35])
    for colour, t, gam in zip(_COLOURS, times, gammas):
        inset.plot(t, gam, color=colour, linewidth=0.8)
    inset.axhline(0.0, color="grey", linewidth=0.5)
    inset.set_ylabel("gamma(t)", fontsize="x-small")
    inset.tick_params(labelsize="x-small")
    return _save(fig, path)


def plot_sign_law(
    path: Path,
    times: np.ndarray,
    fidelities: Dict[str, np.ndarray],
    gamma: np.ndarray,
    population: np.ndarray,
    title: str,
    t_end: float = 10.0,
) -> Path:
    """F_av curves together with gamma(t), |p(t)|^2 and the 1/3 reference line."""
    mask = times <= t_end
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for style, (label, fid) in zip(("-", "--", ":"), fidelities.items()):
        ax.plot(times[mask], fid[mask], color="blue", linestyle=style, label=label)
    ax.plot(times[mask], gamma[mask], color="black", label="gamma(t)")
    ax.plot(times[mask], population[mask], color="red", label="|p|^2")
    ax.axhline(1.0 / 3.0, color="grey", linestyle="--", linewidth=0.8)
    ax.axhline(0.0, color="grey", linewidth=0.5)
    ax.set_xlabel("omega_0 t")
    ax.set_title(title)
    ax.legend(loc="upper right", fontsize="small")
    return _save(fig, path)
