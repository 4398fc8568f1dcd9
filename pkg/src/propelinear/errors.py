"""Exception types shared across the package."""


class PropelinearError(Exception):
    """Base class for all package errors."""


class CapacityError(PropelinearError):
    """An operation was asked to work beyond its materialization or search bound."""


class CodeFormatError(PropelinearError, ValueError):
    """A code file or codeword string could not be parsed."""


class NotPerfectError(PropelinearError, ValueError):
    pass


class NoStructureError(PropelinearError):
    """No propelinear structure exists (or could be found) for the code."""


class AmbiguousStructureError(PropelinearError):
    """The code has a nontrivial symmetry group, so the assignment is not forced."""


class StructureError(PropelinearError):
    """A propelinear structure failed verification or is internally inconsistent."""


class MissingBaseError(PropelinearError):
    """A recipe references a base code that has not been ingested."""

    def __init__(self, tag, node=None):
        self.tag = tag
        self.node = node
        where = f" for node {node}" if node is not None else ""
        super().__init__(f"base code tagged {tag!r}{where} is not available; ingest it first")
