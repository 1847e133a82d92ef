"""Exception hierarchy shared by all modules."""


class AbelRigidError(Exception):
    """Base class for every error raised by this package."""


class FormatError(AbelRigidError, ValueError):
    """Malformed figure, window, sequence or polynomial text."""


class DimensionError(AbelRigidError, ValueError):
    """Operands live in different (or unsupported) dimensions."""


class RepresentationError(AbelRigidError, ValueError):
    """A figure has no (u, v)-representation in the requested basis."""


class DegenerateHullError(AbelRigidError, ValueError):
    """The convex hull of a figure has empty interior."""


class WitnessError(AbelRigidError, ValueError):
    """A witness cannot be built for the given pattern and parameters."""


class WindowError(AbelRigidError, ValueError):
    """A window is too small, or a position falls outside it."""


class ConsistencyError(AbelRigidError, RuntimeError):
    """Two independent computations disagree; always an implementation bug."""
