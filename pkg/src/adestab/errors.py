"""Exception types raised by the library.

Every error derives from :class:`AdeStabError`; the CLI maps these to exit
status 2 (input problems) or 1 (failed certification).
"""
from __future__ import annotations


class AdeStabError(Exception):
    """Base class for all library errors."""


class InvalidRank(AdeStabError, ValueError):
    """Illegal series/rank combination such as ``E9``."""


class NonTerminating(AdeStabError, RuntimeError):
    """Artin's algorithm exceeded its increment cap (malformed Gram matrix)."""


class SingularMatrix(AdeStabError, ArithmeticError):
    pass


class InternalContradiction(AdeStabError, RuntimeError):
    """A proven existence statement failed; the input matrix is corrupt."""


class BadSignature(AdeStabError, ValueError):
    def __init__(self, message: str, inertia: tuple[int, int, int] | None = None):
        super().__init__(message)
        self.inertia = inertia


class BadBlock(AdeStabError, ValueError):
    pass


class DimensionMismatch(AdeStabError, ValueError):
    pass


class IndexOutOfRange(AdeStabError, IndexError):
    pass


class BadMargin(AdeStabError, ValueError):
    pass


class NotDefinite(AdeStabError):
    """Raised with a witness vector ``v`` in the kernel satisfying ``Q(v) >= 0``."""

    def __init__(self, message: str, witness=None, value=None, inertia=None):
        super().__init__(message)
        self.witness = witness
        self.value = value
        self.inertia = inertia


class ZeroCharge(AdeStabError, ValueError):
    pass


class NotExceptionalClass(AdeStabError, ValueError):
    pass


class Stuck(AdeStabError, RuntimeError):
    """The skyscraper peel found no admissible curve before reaching the target."""


class NonTermination(AdeStabError, RuntimeError):
    pass


class EmptyRange(AdeStabError, ValueError):
    pass


class BoxTooLarge(AdeStabError, ValueError):
    pass
