"""Exception types shared across the pipeline."""


class VizCursorError(Exception):
    """Base class for every error this package raises."""


class SpecSyntaxError(VizCursorError):
    """Chart spec document is not well-formed text."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class SchemaError(VizCursorError):
    """Chart spec uses a key or value outside the supported schema."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class ParseError(VizCursorError):
    """A data file could not be parsed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message)


class EmptyDataError(VizCursorError):
    """A dataset contained zero data rows."""


class TypeMismatchError(VizCursorError):
    """An operation was applied to a field of the wrong type."""


class ConfigError(VizCursorError):
    """A structure configuration is inconsistent with the chart spec or data."""
