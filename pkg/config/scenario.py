"""
Scenario configuration: a figure preset, an optional plain-text key-value
file, and command-line overrides, merged in that order of precedence.

File format (one entry per line, '#' starts a comment, lists are comma separated):

    preset = custom
    s = 1/2
    eta = 0.3, 0.55
    r = 1
    t_max = 40
"""

from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from config.presets import PRESETS
from config.settings import get_settings
from physics.errors import ResolutionError, ScenarioError
from physics.spectral import Ohmicity, SpectralParams
from physics.volterra import step_count

PresetId = Literal["fig1", "fig2", "fig3", "fig4", "fig5", "custom"]
OutputFormat = Literal["csv", "svg"]

_LIST_KEYS = {"eta", "r", "formats"}
_KEY_ALIASES = {
    "omega-c": "omega_c",
    "omegac": "omega_c",
    "omega-0": "omega_0",
    "omega0": "omega_0",
    "t-max": "t_max",
    "out": "output_dir",
    "output": "output_dir",
    "format": "formats",
}


def _number(token: str) -> float:
    """Parse a float or an exact fraction such as '1/3'."""
    try:
        return float(Fraction(token.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise ScenarioError(f"not a number: {token!r}") from exc


class ScenarioConfig(BaseModel):
    """Everything needed to reproduce one figure or a custom sweep."""

    preset: PresetId = "custom"
    s: str = "1"
    eta: List[float] = Field(default_factory=lambda: [0.3])
    omega_c: float = Field(1.0, gt=0)
    omega_0: float = Field(1.0, gt=0)
    r: List[float] = Field(default_factory=lambda: [1.0])
    t_max: float = Field(default_factory=lambda: get_settings().solver.t_max, gt=0)
    dt: float = Field(default_factory=lambda: get_settings().solver.dt, gt=0)
    output_dir: Path = Field(default_factory=lambda: get_settings().output_dir)
    formats: List[OutputFormat] = Field(default_factory=lambda: ["csv", "svg"])
    workers: int = Field(4, ge=1)

    model_config = {"frozen": True, "extra": "forbid"}

    @field_validator("s", mode="before")
    @classmethod
    def canonical_s(cls, v) -> str:
        return Ohmicity.parse(v).label

    @field_validator("eta")
    @classmethod
    def positive_eta(cls, v: List[float]) -> List[float]:
        if not v or any(e <= 0 for e in v):
            raise ValueError("eta must be a non-empty list of positive couplings")
        return v

    @field_validator("r")
    @classmethod
    def werner_range(cls, v: List[float]) -> List[float]:
        if not v or any(not 0.0 <= x <= 1.0 for x in v):
            raise ValueError("r must be a non-empty list of values in [0, 1]")
        return v

    @model_validator(mode="after")
    def step_fits_window(self) -> "ScenarioConfig":
        if self.dt > self.t_max:
            raise ValueError("dt must not exceed t_max")
        try:
            step_count(self.t_max, self.dt)
        except ResolutionError as exc:
            raise ValueError(str(exc)) from exc
        return self

    @property
    def ohmicity(self) -> Ohmicity:
        return Ohmicity.parse(self.s)

    def spectral_params(self, eta: float) -> SpectralParams:
        return SpectralParams(self.ohmicity, eta, self.omega_c, self.omega_0)

    def describe(self) -> Dict[str, Any]:
        """Flat parameter record for artifact headers."""
        return {
            "preset": self.preset,
            "s": self.s,
            "eta": ",".join(f"{e:g}" for e in self.eta),
            "omega_c": f"{self.omega_c:g}",
            "omega_0": f"{self.omega_0:g}",
            "r": ",".join(f"{x:.12g}" for x in self.r),
            "t_max": f"{self.t_max:g}",
            "dt": f"{self.dt:g}",
        }


def _normalise_key(key: str) -> str:
    key = key.strip().lower()
    return _KEY_ALIASES.get(key, key.replace("-", "_"))


def _coerce(key: str, raw: Any) -> Any:
    if key == "formats":
        items = raw if isinstance(raw, (list, tuple)) else str(raw).split(",")
        return [str(i).strip().lower() for i in items if str(i).strip()]
    if key in _LIST_KEYS:
        items = raw if isinstance(raw, (list, tuple)) else str(raw).split(",")
        return [_number(str(i)) if isinstance(i, str) else float(i) for i in items if str(i).strip()]
    if key in ("omega_c", "omega_0", "t_max", "dt") and isinstance(raw, str):
        return _number(raw)
    if key == "workers" and isinstance(raw, str):
        return int(raw)
    return raw


def load_scenario_file(path: Path) -> Dict[str, Any]:
    """Read a key-value scenario file into a dict of raw overrides."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file {path}: {exc}") from exc

    values: Dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(f"{path}:{lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        values[_normalise_key(key)] = value.strip()
    return values


def build_scenario(
    preset: Optional[str] = None,
    config_file: Optional[Path] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> ScenarioConfig:
    """Merge preset defaults, file entries and flag overrides into a ScenarioConfig."""
    file_values = load_scenario_file(config_file) if config_file else {}
    flag_values = {_normalise_key(k): v for k, v in (overrides or {}).items() if v is not None}

    preset_id = flag_values.pop("preset", None) or preset or file_values.pop("preset", None) or "custom"
    file_values.pop("preset", None)
    if preset_id not in PRESETS:
        raise ScenarioError(
            f"unknown preset {preset_id!r}; choose one of: {', '.join(PRESETS)}"
        )

    merged: Dict[str, Any] = {"preset": preset_id}
    for layer in (PRESETS[preset_id], file_values, flag_values):
        for key, raw in layer.items():
            merged[key] = _coerce(key, raw)

    try:
        return ScenarioConfig(**merged)
    except ValidationError as exc:
        raise ScenarioError(f"invalid scenario: {exc}") from exc
