"""
Run configuration: numerical tolerances, see-saw parameters and thread caps.
"""
import os
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any, Dict, List, Optional

from .errors import ConfigError

TOOL_NAME = "nondisturb"
TOOL_VERSION = "0.3.0"

THREADS_ENV_VAR = "NONDISTURB_THREADS"


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the library."""

    hermiticity: float = 1e-9
    psd: float = 1e-8
    completeness: float = 1e-8
    nondisturbance: float = 1e-6
    solver_feasibility: float = 1e-8
    solver_gap: float = 1e-7
    span_residual: float = 1e-8
    identity: float = 1e-8
    commutator: float = 1e-9
    seesaw_improvement: float = 1e-7
    seesaw_regression: float = 1e-9
    monotonicity_margin: float = 1e-7

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not (isinstance(value, (int, float)) and value > 0):
                raise ConfigError(f"tolerance '{f.name}' must be positive, got {value!r}")

    def with_overrides(self, **overrides: Optional[float]) -> "Tolerances":
        """
        Return a copy with the given tolerances replaced.

        Args:
            **overrides: Field name to new value; ``None`` values are ignored

        Returns:
            New Tolerances instance
        """
        known = {f.name for f in fields(self)}
        changes = {}
        for name, value in overrides.items():
            if value is None:
                continue
            if name not in known:
                raise ConfigError(f"unknown tolerance '{name}'")
            changes[name] = float(value)
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class SeesawConfig:
    """Parameters of the alternating instrument search."""

    restarts: int = 5
    max_iters: int = 200
    seed: int = 0
    perturbation: float = 0.1

    def __post_init__(self):
        if self.restarts < 1:
            raise ConfigError("seesaw restarts must be at least 1")
        if self.max_iters < 1:
            raise ConfigError("seesaw max_iters must be at least 1")
        if not 0.0 <= self.perturbation <= 1.0:
            raise ConfigError("seesaw perturbation weight must lie in [0, 1]")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class RunConfig:
    """Everything the CLI echoes back into a report."""

    command: str
    inputs: List[str] = field(default_factory=list)
    tolerances: Tolerances = DEFAULT_TOLERANCES
    seesaw: SeesawConfig = SeesawConfig()
    output_path: Optional[str] = None
    output_format: str = "json"
    archive_path: Optional[str] = None
    threads: int = 1
    options: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.output_format not in ("json", "csv"):
            raise ConfigError(f"unsupported output format '{self.output_format}'")
        if self.threads < 1:
            raise ConfigError("thread count must be at least 1")

    def echo(self) -> Dict[str, Any]:
        """Configuration echo embedded in every report."""
        return {
            "command": self.command,
            "inputs": list(self.inputs),
            "seesaw": self.seesaw.to_dict(),
            "output_format": self.output_format,
            "options": dict(sorted(self.options.items())),
        }


def thread_count(default: Optional[int] = None) -> int:
    """
    Worker-thread cap read from ``NONDISTURB_THREADS``.

    Args:
        default: Value used when the variable is unset (defaults to min(4, cpus))

    Returns:
        Positive thread count
    """
    raw = os.getenv(THREADS_ENV_VAR)
    if raw is None or raw.strip() == "":
        if default is not None:
            return max(1, int(default))
        return max(1, min(4, os.cpu_count() or 1))
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigError(f"{THREADS_ENV_VAR} must be positive, got {value}")
    return value
