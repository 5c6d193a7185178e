"""Shared exception types.

The CLI maps these onto exit codes: schema/input problems exit 2,
unsupported operations exit 3.
"""


class OredimError(Exception):
    """Base class for errors raised by this package."""


class MismatchError(OredimError, ValueError):
    """Operands belong to different fields or different groups."""


class UnsupportedOperationError(OredimError):
    """A valid request outside the supported model/algorithm whitelist."""


class SchemaError(OredimError, ValueError):
    """Malformed JSON input; ``path`` names the offending location."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
