"""Exception hierarchy shared across the engine."""


class LuandriError(Exception):
    """Base class for all engine errors."""


class IngestError(LuandriError):
    """Raised when a corpus cannot be turned into documents."""


class DuplicateDocumentError(IngestError):
    def __init__(self, name):
        super().__init__(f"duplicate document name: {name!r}")
        self.name = name


class IndexLoadError(LuandriError):
    """Base class for failures while opening an index directory."""


class MissingManifestError(IndexLoadError):
    pass


class VersionMismatchError(IndexLoadError):
    pass


class TruncatedFileError(IndexLoadError):
    pass


class ChecksumError(IndexLoadError):
    pass


class IndexFormatError(IndexLoadError):
    """Structurally invalid index data (inconsistent counts, bad framing)."""


class EmptyCollectionError(LuandriError):
    """Scoring requested against a collection with no tokens."""


class QueryParseError(LuandriError):
    """Query text rejected by the structured-query grammar.

    ``offset`` is a byte offset into the UTF-8 encoding of the query and
    points at or before the first offending token (it may equal the input
    length when the problem is an unexpected end of input).
    """

    def __init__(self, offset, expected, found):
        super().__init__(f"parse error at byte {offset}: expected {expected}, found {found}")
        self.offset = offset
        self.expected = expected
        self.found = found
