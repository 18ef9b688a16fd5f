"""
Figure presets. omega_c = omega_0 throughout, r = 1 unless stated.
"""

from typing import Any, Dict

PRESETS: Dict[str, Dict[str, Any]] = {
    # closed-form F_av(|p|); r values span all three behaviour classes
    "fig1": {
        "s": "1",
        "eta": [1.0],
        "r": [1.0, 0.7, 0.5, 1.0 / 3.0, 0.2],
    },
    "fig2": {
        "s": "3",
        "eta": [0.15, 0.35, 0.9],
        "r": [1.0],
    },
    "fig3": {
        "s": "1",
        "eta": [0.3, 0.9, 2.7],
        "r": [1.0],
    },
    "fig4": {
        "s": "1/2",
        "eta": [0.3, 0.55, 2.1],
        "r": [1.0],
    },
    "fig5": {
        "s": "3",
        "eta": [0.9],
        "r": [1.0, 0.5],
    },
    "custom": {},
}

FIGURE_TITLES = {
    "fig1": "F_av versus |p| for Werner-like channels",
    "fig2": "super-Ohmic reservoir (s = 3)",
    "fig3": "Ohmic reservoir (s = 1)",
    "fig4": "sub-Ohmic reservoir (s = 1/2)",
    "fig5": "F_av, gamma(t) and |p|^2, super-Ohmic eta = 0.9",
    "custom": "custom scenario",
}

P_GRID_POINTS = 201
