"""Exception hierarchy shared across the package.

The CLI maps these onto its exit codes: precondition failures exit 1, file
parse errors 2, schema mismatches 3, content validation failures 4, and
internal consistency violations 5.
"""

from __future__ import annotations

__all__ = [
    "ConeFixpointError",
    "PreconditionError",
    "InternalConsistencyError",
    "GenerationBudgetError",
    "InstanceParseError",
    "InstanceSchemaError",
    "InstanceValidationError",
]


class ConeFixpointError(Exception):
    """Base class for all package-specific errors."""


class PreconditionError(ConeFixpointError):
    """A solver or classifier hypothesis does not hold for the given input."""


class InternalConsistencyError(ConeFixpointError):
    """A consequence guaranteed by the theory failed at runtime: a bug, not bad input."""


class GenerationBudgetError(ConeFixpointError):
    """Rejection sampling exhausted its attempt budget without an admissible instance."""


class InstanceParseError(ConeFixpointError):
    """The instance file could not be read or is not valid JSON."""


class InstanceSchemaError(ConeFixpointError):
    """The instance file parses but does not match the supported schema."""


class InstanceValidationError(ConeFixpointError):
    """The instance file matches the schema but violates a content invariant."""
