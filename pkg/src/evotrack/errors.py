"""Exception types raised by evotrack.

Plain I/O failures (missing or unreadable files) are reported with the
builtin ``OSError`` family; everything below signals malformed or
inconsistent content.
"""


class EvoTrackError(Exception):
    """Base class for all evotrack-specific errors."""


class MalformedSignature(EvoTrackError):
    """A method signature string cannot be brought into canonical form."""


class SchemaError(EvoTrackError):
    """An artifact file is readable but does not match its schema."""


class DuplicateWidgetId(EvoTrackError):
    """The same widget id appears more than once in a GUI model."""


class UnknownEndpoint(EvoTrackError):
    """A call edge references a method that is not declared."""


class DuplicateEdge(EvoTrackError):
    """The same call edge is declared more than once."""


class MissingHandler(EvoTrackError):
    """A handler signature is not present in the call graph."""


class HandlerNotApplication(EvoTrackError):
    """A slice was requested for a non-application handler."""


class InconsistentMatch(EvoTrackError):
    """A widget participates in more than one match pair."""


class RootMismatch(EvoTrackError):
    """Two slices being diffed do not share the same root handler."""


class MissingDiff(EvoTrackError):
    """A matched widget's handler has no diff entry to propagate from."""


class ForeignCondensation(EvoTrackError):
    """A condensed graph was not derived from the given diff."""


class NoSourceLocation(EvoTrackError):
    """A method record carries no source location."""


class RangeOutOfBounds(EvoTrackError):
    """A recorded source line range exceeds the file length."""


class MissingBundle(EvoTrackError):
    """A directory given to the bundle server contains no bundle."""


class PortInUse(EvoTrackError):
    """The requested server port is already bound."""
