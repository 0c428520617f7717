"""Campaign configuration.

A config file is a flat YAML mapping whose keys mirror the CLI flags with
underscores (``states``, ``shots``, ``noise_readout``, ...). Flags given on
the command line override file values.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import yaml

from ..errors import ConfigError
from ..noise import NoiseModel

TESTS = ("peres", "sorkin", "joint", "kappa-n")
MODES = ("exact", "ideal-sampled", "noisy", "noisy-exact")
FORMATS = ("csv", "json-lines")
SAMPLED_MODES = frozenset({"ideal-sampled", "noisy"})
NOISY_MODES = frozenset({"noisy", "noisy-exact"})


@dataclass(frozen=True)
class NoiseParams:
    """Uniform per-qubit noise; defaults are demo placeholders, not device data."""

    readout_e01: float = 0.03
    readout_e10: float = 0.03
    p1: float = 0.002
    p2: float = 0.02

    def model(self, n_qubits: int) -> NoiseModel:
        return NoiseModel.uniform(n_qubits, self.readout_e01, self.readout_e10, self.p1, self.p2)


@dataclass(frozen=True)
class ExperimentConfig:
    test: str = "peres"
    n_states: int = 20
    shots: int = 10_000
    seed: int = 0
    modes: tuple[str, ...] = ("exact", "ideal-sampled", "noisy", "noisy-exact")
    noise: NoiseParams = field(default_factory=NoiseParams)
    alpha: float = 1 / math.sqrt(2)
    n_paths: int = 4
    resamples: int = 1000
    real_only: bool = False
    workers: int = 1
    out: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if self.test not in TESTS:
            raise ConfigError(f"unknown test {self.test!r}; expected one of {TESTS}")
        if isinstance(self.modes, str):
            object.__setattr__(self, "modes", parse_modes(self.modes))
        modes = tuple(m for m in MODES if m in self.modes)
        unknown = set(self.modes) - set(MODES)
        if unknown or not modes:
            raise ConfigError(f"invalid modes {sorted(unknown) or self.modes!r}")
        object.__setattr__(self, "modes", modes)
        for name in ("n_states", "shots", "workers"):
            if int(getattr(self, name)) <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        if self.resamples < 100:
            raise ConfigError("resamples must be at least 100")
        if not 0 < self.alpha < 1:
            raise ConfigError("alpha must lie strictly inside (0, 1)")
        if self.n_paths < 2 or self.n_paths & (self.n_paths - 1):
            raise ConfigError("n_paths must be a power of two")
        if self.test == "kappa-n" and self.n_paths not in (4, 8):
            raise ConfigError("kappa-n supports n_paths of 4 or 8")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        try:
            self.noise.model(1)
        except ValueError as exc:
            raise ConfigError(f"invalid noise parameters: {exc}") from exc

    @property
    def n_qubits_kappa(self) -> int:
        return self.n_paths.bit_length() - 1

    def provenance(self) -> dict[str, Any]:
        """Effective config as echoed into report headers (execution-only keys dropped)."""
        d = dataclasses.asdict(self)
        d.pop("workers")
        d.pop("out")
        d["modes"] = list(self.modes)
        return d


def parse_modes(text: str) -> tuple[str, ...]:
    return tuple(m.strip() for m in text.split(",") if m.strip())


def parse_readout(value) -> tuple[float, float]:
    """``"0.05"`` -> symmetric flips; ``"0.02,0.04"`` -> (e01, e10)."""
    if isinstance(value, (int, float)):
        return float(value), float(value)
    parts = [float(p) for p in str(value).split(",")]
    if len(parts) == 1:
        return parts[0], parts[0]
    if len(parts) == 2:
        return parts[0], parts[1]
    raise ConfigError(f"cannot parse readout error {value!r}")


_KEY_MAP = {
    "test": "test",
    "states": "n_states",
    "n_states": "n_states",
    "shots": "shots",
    "seed": "seed",
    "modes": "modes",
    "alpha": "alpha",
    "n_paths": "n_paths",
    "resamples": "resamples",
    "real_only": "real_only",
    "workers": "workers",
    "out": "out",
    "format": "format",
}
_NOISE_KEYS = ("noise_readout", "noise_deph1", "noise_deph2")


def load_config_file(path: str | Path) -> dict[str, Any]:
    try:
        data = yaml.safe_load(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict) or any(isinstance(v, (dict, list)) for v in data.values()):
        raise ConfigError("config file must be a flat key-value mapping")
    return {str(k).replace("-", "_"): v for k, v in data.items()}


def build_config(values: Mapping[str, Any]) -> ExperimentConfig:
    """Build an :class:`ExperimentConfig` from flat (file or CLI) keys."""
    kwargs: dict[str, Any] = {}
    noise = NoiseParams()
    for key, value in values.items():
        if value is None:
            continue
        if key in _KEY_MAP:
            kwargs[_KEY_MAP[key]] = value
        elif key == "noise_readout":
            e01, e10 = parse_readout(value)
            noise = dataclasses.replace(noise, readout_e01=e01, readout_e10=e10)
        elif key == "noise_deph1":
            noise = dataclasses.replace(noise, p1=float(value))
        elif key == "noise_deph2":
            noise = dataclasses.replace(noise, p2=float(value))
        else:
            raise ConfigError(f"unknown config key {key!r}")
    try:
        for name in ("n_states", "shots", "seed", "n_paths", "resamples", "workers"):
            if name in kwargs:
                kwargs[name] = int(kwargs[name])
        if "alpha" in kwargs:
            kwargs["alpha"] = float(kwargs["alpha"])
        if isinstance(kwargs.get("modes"), list):
            kwargs["modes"] = tuple(kwargs["modes"])
        return ExperimentConfig(noise=noise, **kwargs)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc
