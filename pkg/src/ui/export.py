"""
CSV artifacts. Each file starts with a '#'-prefixed header block recording
the parameter set and solver settings, followed by a comma-separated table
with floats written to 12 significant digits. Nothing time- or host-dependent
goes into a file, so identical configurations give byte-identical output.
"""

from pathlib import Path
from typing import Mapping

import pandas as pd

FLOAT_FORMAT = "%.12g"

# time is in units of 1/omega_0, rates and shifts in units of omega_0
COLUMN_UNITS = {
    "t": "1/omega_0",
    "p_abs": "dimensionless",
    "p_re": "dimensionless",
    "p_im": "dimensionless",
    "p_abs2": "dimensionless",
    "F_av": "dimensionless",
    "Gamma": "omega_0",
    "Omega": "omega_0",
    "gamma": "dimensionless",
}


def _unit(column: str) -> str:
    if column.startswith("F_av"):
        return COLUMN_UNITS["F_av"]
    return COLUMN_UNITS.get(column, "dimensionless")


def write_csv(path: Path, frame: pd.DataFrame, header: Mapping[str, str]) -> Path:
    """Write ``frame`` to ``path`` behind a '# key: value' header block."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# {key}: {value}" for key, value in header.items()]
    lines.append("# units: " + ", ".join(f"{c} [{_unit(c)}]" for c in frame.columns))
    with path.open("w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
        frame.to_csv(fh, index=False, float_format=FLOAT_FORMAT, na_rep="nan", lineterminator="\n")
    return path


def read_csv(path: Path) -> pd.DataFrame:
    """Load an artifact written by :func:`write_csv`."""
    return pd.read_csv(path, comment="#")
