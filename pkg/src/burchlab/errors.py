"""Exception hierarchy shared across the package.

Exit-code mapping in the CLI: InputError -> 2, ResourceCapError -> 3,
BoundViolation -> 1.  InternalCheckError signals a broken invariant that
contradicts a proved statement, i.e. a bug, and is never caught.
"""


class BurchlabError(Exception):
    pass


class InputError(BurchlabError):
    """Malformed or out-of-contract input (e.g. ideal not inside n^2)."""


class ResourceCapError(BurchlabError):
    """A configured size or degree guard was exceeded."""


class ArityCapError(ResourceCapError):
    """The bar differential needs operations beyond the transferred arity cap."""

    def __init__(self, needed: int, cap: int):
        super().__init__(f"bar differential needs arity {needed} operations, cap is {cap}")
        self.needed = needed
        self.cap = cap


class InternalCheckError(BurchlabError):
    """A mechanically checked invariant failed; indicates a bug."""


class BoundViolation(BurchlabError):
    """A verified lower bound failed on a concrete instance."""
