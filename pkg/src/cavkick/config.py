"""
Experiment configuration.

Config files are YAML (JSON is accepted too, being a YAML subset). Unknown
keys anywhere are rejected. An empty file or ``{}`` gives every default::

    initial_state: {theta0: 0.0, phi0: 0.0}
    g: 1000.0                      # rad/s
    protocol:
      total_time: null             # seconds; or gT (dimensionless), not both
      gT: null                     # neither -> T = pi / (2 g)
      n_kicks: null                # at most one of n_kicks / kick_times / kick_gt
      kick_times: null             # seconds
      kick_gt: null                # dimensionless g*t
    convention: paper              # paper | standard
    oracle:
      enabled: false
      gamma: 314159.26...          # pi / 1e-5 s, a 10 us phase-flip pulse
      freeze_hopping: false
      disposal: trace              # trace | postselect
    sampling: {points_per_segment: 50}
    output: {path: null, format: csv}
"""
from __future__ import annotations

import math
from pathlib import Path
from typing import Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .errors import ConfigError, ScheduleError
from .sequencer import KickSchedule, explicit_schedule, uniform_schedule

DEFAULT_G = 1.0e3
PI_PULSE_TIME = 1.0e-5
DEFAULT_GAMMA = math.pi / PI_PULSE_TIME


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True, allow_inf_nan=False)


class InitialState(_Strict):
    theta0: float = 0.0
    phi0: float = 0.0


class Protocol(_Strict):
    total_time: Optional[float] = Field(default=None, gt=0)
    gT: Optional[float] = Field(default=None, gt=0)
    n_kicks: Optional[int] = Field(default=None, ge=0)
    kick_times: Optional[tuple[float, ...]] = None
    kick_gt: Optional[tuple[float, ...]] = None

    @model_validator(mode="after")
    def _exclusive(self):
        if self.total_time is not None and self.gT is not None:
            raise ValueError("give at most one of total_time / gT")
        given = [k for k in ("n_kicks", "kick_times", "kick_gt") if getattr(self, k) is not None]
        if len(given) > 1:
            raise ValueError(f"give at most one of n_kicks / kick_times / kick_gt, got {given}")
        return self


class OracleSettings(_Strict):
    enabled: bool = False
    gamma: float = Field(default=DEFAULT_GAMMA, gt=0)
    freeze_hopping: bool = False
    disposal: Literal["trace", "postselect"] = "trace"


class Sampling(_Strict):
    points_per_segment: int = Field(default=50, ge=1, le=100_000)


class Output(_Strict):
    path: Optional[str] = None
    format: Literal["csv", "json"] = "csv"


class ExperimentConfig(_Strict):
    initial_state: InitialState = InitialState()
    g: float = Field(default=DEFAULT_G, gt=0)
    protocol: Protocol = Protocol()
    convention: Literal["paper", "standard"] = "paper"
    oracle: OracleSettings = OracleSettings()
    sampling: Sampling = Sampling()
    output: Output = Output()

    @model_validator(mode="after")
    def _schedule_is_valid(self):
        try:
            self.schedule()
        except ScheduleError as exc:
            raise ValueError(str(exc)) from None
        return self

    @property
    def total_time(self) -> float:
        p = self.protocol
        if p.total_time is not None:
            return p.total_time
        if p.gT is not None:
            return p.gT / self.g
        return math.pi / (2 * self.g)

    def schedule(self) -> KickSchedule:
        p = self.protocol
        if p.kick_times is not None:
            return explicit_schedule(self.total_time, p.kick_times)
        if p.kick_gt is not None:
            return explicit_schedule(self.total_time, [x / self.g for x in p.kick_gt])
        return uniform_schedule(self.total_time, p.n_kicks or 0)

    def to_dict(self) -> dict:
        return self.model_dump(mode="json")

    def with_overrides(self, **changes) -> "ExperimentConfig":
        """Return a revalidated copy; ``changes`` use dotted paths, e.g. ``{"output.format": "json"}``."""
        data = self.to_dict()
        for dotted, value in changes.items():
            node = data
            *parents, leaf = dotted.split(".")
            for key in parents:
                node = node[key]
            node[leaf] = value
        return config_from_dict(data)


def _describe(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        loc = ".".join(str(x) for x in err["loc"]) or "<root>"
        parts.append(f"{loc}: {err['msg']}")
    return "; ".join(parts)


def config_from_dict(data: Optional[dict]) -> ExperimentConfig:
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"config must be a mapping, got {type(data).__name__}")
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"invalid config: {_describe(exc)}") from None


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror or exc}") from None
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"{path}:{mark.line + 1}:{mark.column + 1}" if mark else str(path)
        problem = getattr(exc, "problem", None) or str(exc)
        raise ConfigError(f"{where}: parse error: {problem}") from None
    try:
        return config_from_dict(data)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None
