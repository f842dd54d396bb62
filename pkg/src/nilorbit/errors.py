"""Exception types shared across the package.

The distinctions matter to the command-line driver, which maps them to
exit codes: usage problems (1), blown enumeration caps (2), and internal
consistency failures that indicate a bug rather than bad input (3).
"""


class NilorbitError(Exception):
    """Base class for all errors raised by this package."""


class InvalidLieTypeError(NilorbitError, ValueError):
    """A family/rank combination outside the simple-type classification."""


class RankMismatchError(NilorbitError, ValueError):
    """Operands built over different ranks or variable counts."""


class CapExceededError(NilorbitError, RuntimeError):
    """An orbit, coset, or matrix enumeration grew past the safety cap.

    Full Weyl groups of large exceptional types are astronomically big;
    operations that would need them must fail loudly instead of hanging.
    """


class InternalInvariantError(NilorbitError, RuntimeError):
    """A structural invariant the mathematics guarantees was violated.

    Seeing this means a bug in the package (or memory corruption), never
    bad user input.  It is deliberately distinct from the other errors so
    callers can surface it as such.
    """
