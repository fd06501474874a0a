"""Shared exception types."""


class VerificationError(RuntimeError):
    """A mathematical assertion that should always hold has failed.

    Raised when an internal consistency check breaks (bad arithmetic, a
    divisibility that must succeed failing, a replayed proof step not
    holding). Distinct from ValueError, which flags bad user input.
    """
