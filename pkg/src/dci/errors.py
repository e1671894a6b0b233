"""Exception types shared across the package."""


class DciError(Exception):
    """Base class for package-specific errors."""


class ParseError(DciError):
    """Malformed input file; carries the offending path and 1-based line number."""

    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = str(path)
        self.lineno = lineno


class ConfigError(DciError):
    """Invalid or inconsistent configuration, manifest, or task setup."""


class DegenerateInputError(DciError, ValueError):
    """Input for which the requested statistic is undefined (e.g. zero variance)."""
