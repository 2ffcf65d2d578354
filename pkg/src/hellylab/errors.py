"""Shared exception types."""

from __future__ import annotations


class InputError(ValueError):
    """A caller violated a documented precondition (bad index, level outside
    the window, arity mismatch, ...)."""


class ChainRejectedError(Exception):
    """A chain failed construction-time validation.

    Carries the violation certificate in ``.certificate``.
    """

    def __init__(self, certificate):
        self.certificate = certificate
        super().__init__(str(certificate))


class ExtractionFailedError(Exception):
    """A constructive step could not produce the object it promises
    (desk-scale instances may be too small for the pigeonhole to bite)."""
