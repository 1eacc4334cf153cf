"""
Exception hierarchy for the equicat verification engine.

Validation errors mean the input data is not a legal mathematical object;
structure errors mean a construction cannot be carried out on the given
finite site; input errors mean a file could not be read at all.
"""

from typing import Any, Dict, Optional


class EquicatError(Exception):
    """Root exception for the engine."""

    def __init__(self, message: str, error_code: Optional[str] = None,
                 context: Optional[Dict[str, Any]] = None):
        """
        Initialize an engine error.

        Args:
            message: Human readable error message
            error_code: Short machine readable code (defaults to the class name)
            context: Structured witness data (indices, labels) for reports
        """
        super().__init__(message)
        self.message = message
        self.error_code = error_code or self.__class__.__name__
        self.context = context or {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            'error': self.error_code,
            'message': self.message,
            'context': self.context,
        }


# --- validation -----------------------------------------------------------

class ValidationError(EquicatError):
    """Input data violates an algebraic invariant."""
    pass


class NotAssociative(ValidationError):
    pass


class NoIdentity(ValidationError):
    pass


class NoInverse(ValidationError):
    pass


class NotAHomomorphism(ValidationError):
    pass


class NotASubgroup(ValidationError):
    pass


class RepValidationError(ValidationError):
    pass


class GSetValidationError(ValidationError):
    pass


class MapValidationError(ValidationError):
    pass


# --- structure ------------------------------------------------------------

class StructureError(EquicatError):
    """A construction is not possible on the given finite data."""
    pass


class DimMismatch(StructureError):
    pass


class ExtentMismatch(StructureError):
    pass


class DimCapExceeded(StructureError):
    pass


class CatalogIncomplete(StructureError):
    pass


class CoverageGap(StructureError):
    pass


class NonTrivialActionOnTrivialRep(StructureError):
    pass


class KanConstructionError(StructureError):
    pass


class LaxCoherenceError(StructureError):
    """Lax monoidal data failed its own coherence checks."""

    def __init__(self, message: str, report=None, **kwargs):
        super().__init__(message, **kwargs)
        self.report = report


# --- input ----------------------------------------------------------------

class InputError(EquicatError):
    """A file or configuration could not be parsed."""
    pass


class SchemaError(InputError):
    """JSON document does not follow the schema; `pointer` is a JSON pointer."""

    def __init__(self, message: str, pointer: str = '', **kwargs):
        super().__init__(f"{pointer or '/'}: {message}", **kwargs)
        self.pointer = pointer or '/'


class ConfigurationError(InputError):
    pass
