"""
Exception hierarchy for kqlab.

Structured outcomes (round caps, inconclusive searches, partial towers) are
returned as values; the exceptions below are for inputs that cannot be
processed at all.
"""

from typing import Any, Dict, Optional


class KQError(Exception):
    """Base class for all kqlab errors."""
    pass


class SimplicialError(KQError):
    """Malformed complex, failed identity audit or invalid construction input."""
    pass


class TruncationError(KQError):
    """A consumer needs simplices above the truncation of its input."""

    def __init__(self, needed: int, available: int):
        super().__init__(f"needs dimension {needed}, input truncated at {available}")
        self.needed = needed
        self.available = available


class ResourceCapExceeded(KQError):
    """A configured size cap was hit before the computation finished."""

    def __init__(self, what: str, cap: int, reached: Optional[Dict[str, Any]] = None):
        detail = f" ({reached})" if reached else ""
        super().__init__(f"{what} exceeded cap {cap}{detail}")
        self.what = what
        self.cap = cap
        self.reached = reached or {}


class ConfigError(KQError):
    """Invalid configuration value, reported with its line and field."""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")
        self.line = line
        self.field = field


class CodecError(KQError):
    """Malformed SSX/BSSX/KQR document."""
    pass


class SquareError(KQError):
    """A lifting square that does not commute."""
    pass


class ExtensionFailure(KQError):
    """A theorem-backed extension search came back empty."""

    def __init__(self, message: str, diagnostics: Dict[str, Any]):
        super().__init__(message)
        self.diagnostics = diagnostics
