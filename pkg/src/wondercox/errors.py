"""Exception hierarchy shared by the engines and the CLI."""


class WondercoxError(Exception):
    """Base class for all errors raised by this package."""


class DescriptorError(WondercoxError, ValueError):
    """Unknown Cartan type letter or inadmissible rank."""


class DimensionError(WondercoxError, ValueError):
    """Vector or matrix shapes do not match."""


class PointednessError(WondercoxError):
    """A cone that must be pointed contains a line."""


class RecessionError(WondercoxError):
    """A polyhedron that must be bounded has a non-trivial recession cone."""


class SchemaError(WondercoxError, ValueError):
    """A datum file does not match the JSON schema.

    ``path`` names the offending field, e.g. ``colors[1].pairing``.
    """

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class InvalidDatumError(WondercoxError):
    """A spherical datum failed validation or produced an unbounded enumeration."""


class InconsistencyError(WondercoxError):
    """An engine-level consistency check failed (e.g. ray classification conflict)."""
