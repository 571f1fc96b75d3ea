"""Exception hierarchy shared by all vizrec modules."""


class VizrecError(Exception):
    """Base class for all vizrec errors."""


class ParseError(VizrecError):
    """Input bytes could not be parsed under the declared format."""


class EmptyDataset(VizrecError):
    """Parsed input had zero fields or zero rows."""


class UnknownField(VizrecError):
    """Referenced field does not exist in the dataset."""


class InvalidSpec(VizrecError):
    """A chart specification violates a structural invariant."""


class UnsupportedChannel(VizrecError):
    """Serialization hit a channel outside the supported vocabulary."""


class InvalidBound(VizrecError):
    """Graph size bound outside the valid range."""


class UnknownNode(VizrecError):
    """Node is not part of the design graph."""


class NoValidSpec(VizrecError):
    """No candidate specification exists under the given encoding config."""


class UnknownPreset(VizrecError):
    """No algorithm preset registered under that name."""


class TooManyAttributes(VizrecError):
    """Selection exceeds the attribute cap."""


class InvalidPage(VizrecError):
    """Requested page index is past the end of the result set."""


class UnknownDataset(VizrecError):
    """No dataset registered under that name."""


class UnknownSession(VizrecError):
    """No session with that id."""


class CapExceeded(VizrecError):
    """Adding a field would exceed the selection cap."""


class NotExposed(VizrecError):
    """Interaction referenced a spec never shown in this session."""


class MalformedLog(VizrecError):
    """Interaction log line could not be decoded."""
