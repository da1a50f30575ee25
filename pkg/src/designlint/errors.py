"""Exception hierarchy for designlint."""


class DesignlintError(Exception):
    """Base class for all designlint errors."""


class SchemaError(DesignlintError):
    """A document does not match the expected file schema.

    Carries the JSON-ish path of the offending field when known.
    """

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{message} (at {path})" if path else message)


class InvariantError(DesignlintError):
    """A structurally valid document violates a model invariant."""


class ParseError(DesignlintError):
    """Input could not be parsed at all (e.g. not text)."""


class UnknownSelectorError(DesignlintError):
    """A CSS patch selector matched zero elements."""


class DescriptorError(DesignlintError):
    """A description provider failed to produce a usable response."""


class RemoteUnavailableError(DescriptorError):
    """The remote description endpoint could not be reached."""


class EmptyImageError(DesignlintError):
    """An image raster contained no pixels."""


class DegenerateQuadError(DesignlintError):
    """An OCR line quad has zero area."""


class EmptyCorpusError(DesignlintError):
    """A trend corpus contained no snapshots."""


class ReferenceIngestError(DesignlintError):
    """A reference input could not be ingested."""


class MismatchedSourceError(DesignlintError):
    """Two reports being diffed come from different sources."""
