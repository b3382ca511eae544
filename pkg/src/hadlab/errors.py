"""Exception hierarchy shared across the package."""

from __future__ import annotations

from typing import Any


class HadlabError(Exception):
    """Base class for all package errors."""


class MalformedGraph6(HadlabError, ValueError):
    pass


class MalformedInput(HadlabError, ValueError):
    """Unparseable edge list, model file or family spec."""


class SizeLimitError(HadlabError):
    """An input exceeded a documented size bound."""


class SizeOverflow(SizeLimitError):
    pass


class TooLarge(SizeLimitError):
    pass


class TooLargeForCanonical(TooLarge):
    pass


class TooManyBlobs(SizeLimitError):
    pass


class BadParams(HadlabError, ValueError):
    pass


class UnknownCheck(HadlabError, KeyError):
    pass


class PreconditionViolated(HadlabError):
    pass


class ClassViolation(HadlabError):
    """The input is outside the hereditary class an algorithm requires.

    ``evidence`` is a JSON-ready dict naming the forbidden structure found,
    e.g. ``{"pattern": "cogem", "vertices": [1, 2, 3, 4, 6]}``.
    """

    def __init__(self, message: str, evidence: dict[str, Any] | None = None):
        super().__init__(message)
        self.evidence = evidence or {}


class InternalCheckFailed(HadlabError, AssertionError):
    """A property guaranteed by the underlying proof failed on an in-class input."""


class StructureFallthrough(HadlabError):
    """No reduction rule applied; ``certificate`` records where and why."""

    def __init__(self, message: str, certificate: dict[str, Any] | None = None):
        super().__init__(message)
        self.certificate = certificate or {}
