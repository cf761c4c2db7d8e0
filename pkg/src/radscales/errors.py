"""Exception types shared across the package."""


class RadscalesError(Exception):
    """Base class for all errors raised by this package."""


class MalformedLineError(RadscalesError, ValueError):
    """A text input line does not match the expected record format."""

    def __init__(self, line_no: int, detail: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {detail}")


class UnknownVertexError(RadscalesError):
    """A partition file names a vertex that is not in the graph."""

    def __init__(self, label: str):
        self.label = label
        super().__init__(f"unknown vertex {label!r}")


class MissingVertexError(RadscalesError):
    """A graph vertex was left unassigned by a partition file."""

    def __init__(self, label: str):
        self.label = label
        super().__init__(f"vertex {label!r} has no group assignment")


class DuplicateAssignmentError(RadscalesError):
    """A vertex appears more than once in a partition file."""

    def __init__(self, label: str):
        self.label = label
        super().__init__(f"vertex {label!r} assigned more than once")


class EmptyGraphError(RadscalesError):
    """The operation needs a graph with at least one edge (or vertex)."""


class ZeroModularityError(RadscalesError):
    """Relative group contributions are undefined when modularity is zero."""


class InvalidRhoError(RadscalesError, ValueError):
    """The coverage fraction must lie in (0, 1]."""

    def __init__(self, rho: float):
        self.rho = rho
        super().__init__(f"coverage fraction must be in (0, 1], got {rho!r}")


class GraphTooLargeError(RadscalesError):
    """The exhaustive solver refuses graphs beyond its size bound."""

    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(f"exhaustive search limited to {limit} vertices, got {n}")


class MissingDelimiterError(RadscalesError):
    """A dictionary file lacks the %%-delimited category block."""


class UnknownCategoryError(RadscalesError):
    """A dictionary entry references a category id that was never declared."""

    def __init__(self, category_id: int, line_no: int):
        self.category_id = category_id
        self.line_no = line_no
        super().__init__(f"line {line_no}: unknown category id {category_id}")


class FoundationMapError(RadscalesError):
    """A foundation axis maps to no category present in the lexicon."""


class EmptyCorpusError(RadscalesError):
    """Frequency scores are undefined over a corpus with zero tokens."""

    def __init__(self, label: str):
        self.label = label
        super().__init__(f"corpus for {label!r} has no tokens")


class SchemaMismatchError(RadscalesError):
    """Points being compared do not share the criteria schema."""


class EmptyInputError(RadscalesError):
    """The operation needs at least one input element."""


class NoEventsError(RadscalesError):
    """Event ingestion or graph construction produced nothing usable."""
