"""
Exception hierarchy shared by all nondisturb packages.
"""
from typing import Any, Dict, Optional


class NondisturbError(Exception):
    """Base class for every error raised by the library."""


class DimensionMismatchError(NondisturbError, ValueError):
    """Operands live on Hilbert spaces of different dimension."""


class HermiticityError(NondisturbError, ValueError):
    """A matrix deviates from Hermiticity beyond the tolerance."""


class CompletenessError(NondisturbError, ValueError):
    """Kraus operators or POVM elements do not sum to the identity."""


class UnknownOutcomeError(NondisturbError, KeyError):
    """An outcome label was requested that the measurement does not have."""


class ConfigError(NondisturbError, ValueError):
    """Invalid tolerance or run configuration."""


class CatalogError(NondisturbError, KeyError):
    """Unknown catalog entry."""


class HierarchyViolation(NondisturbError, AssertionError):
    """A compatibility report contradicts commuting => ND => JM."""


class InputParseError(NondisturbError, ValueError):
    """
    Malformed input document.

    Args:
        message: Human-readable description
        location: JSON path of the offending node, e.g. ``$.elements[1].re``
    """

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.reason = message


class SolverFailure(NondisturbError, RuntimeError):
    """
    The conic solver returned no usable answer.

    Args:
        message: Human-readable description
        status: Raw solver status string
        diagnostics: Solver statistics for the report
    """

    def __init__(self, message: str, status: str = "numerical_failure",
                 diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.status = status
        self.diagnostics = diagnostics or {}
