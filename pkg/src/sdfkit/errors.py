"""Exception types raised by the kernel.

Every error carries a stable `code` string (the identifiers used throughout
the checker surface, e.g. "unknown-element", "size-cap", "apw0-violation")
plus an optional witness value describing the offending data.
"""

from __future__ import annotations


class KernelError(Exception):
    code = "kernel-error"

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InputError(KernelError):
    """A caller handed the kernel data outside an operation's precondition."""

    code = "input-error"

    def __init__(self, message: str, witness=None, code: str | None = None):
        super().__init__(message, witness)
        if code is not None:
            self.code = code


class StructureError(KernelError):
    """A structural invariant of a kernel value does not hold."""

    code = "structure-error"

    def __init__(self, message: str, witness=None, code: str | None = None):
        super().__init__(message, witness)
        if code is not None:
            self.code = code


class SizeCapError(KernelError):
    """An exhaustive enumeration exceeded its configured work bound.

    Enumerations fail loudly instead of silently degrading; callers may retry
    with a larger cap.
    """

    code = "size-cap"


def unknown_element(x):
    return InputError(f"element not in poset: {x!r}", witness=x, code="unknown-element")


def not_a_forest(witness):
    return StructureError(
        f"poset is not a forest: up-set of {witness!r} is not a chain",
        witness=witness,
        code="not-a-forest",
    )
