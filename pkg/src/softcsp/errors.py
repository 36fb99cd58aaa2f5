"""Exception hierarchy shared by all softcsp modules.

Input problems (bad files, bad flags, carrier mismatches) derive from
:class:`InputError`; they map to exit status 1 on the command line.
:class:`NonConvergenceError` is the one "internal" failure mode (exit
status 2): a fixpoint iteration that hit its cap.
"""


class SoftcspError(Exception):
    """Base class for every error raised by this package."""


class InputError(SoftcspError):
    """Invalid user-supplied data: files, flags, or problem definitions."""


class InstanceMismatchError(InputError):
    """Semiring values from different instances were mixed, or a raw value
    is outside the instance's carrier."""


class UnknownInstanceError(InputError):
    """A semiring catalog lookup used a key that does not exist."""


class IncompleteTableError(InputError):
    """A constraint table has missing or extra rows for its support."""


class UnboundNameError(InputError):
    """A constraint was evaluated under an assignment missing a support name."""


class InvalidPermutationError(InputError):
    """A name mapping is not a bijection on its kernel."""


class DegenerateFusionError(InputError):
    """A fusion constraint was requested for a name with itself."""


class EmptyUniverseError(InputError):
    """A program with variables was grounded over an empty constant set."""


class ParseError(InputError):
    """A text input could not be parsed.  Carries the offending line."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FunctionSymbolError(ParseError):
    """A program term uses a function symbol; only constants and variables
    are supported."""


class FormatError(InputError):
    """A structured (JSON) input file violates its schema."""


class UnknownNodeError(InputError):
    """A query referenced a node that is not part of the road network."""


class ModeMismatchError(InputError):
    """Two frontiers with different dominance modes were combined."""


class NonConvergenceError(SoftcspError):
    """Fixpoint iteration did not stabilise within the iteration cap.

    ``previous`` and ``last`` hold the final two interpretations so the
    caller can inspect where the iteration was still moving.
    """

    def __init__(self, message, previous=None, last=None):
        self.previous = previous
        self.last = last
        super().__init__(message)
