"""Exception types raised by the kinematic and synthesis operations."""


class OrthoglideError(Exception):
    """Base class for all machine-model errors."""


class Unreachable(OrthoglideError):
    """Pose outside the reachable workspace (a leg radicand is negative).

    `leg` is the 0-based index of the first offending leg.
    """

    def __init__(self, message: str, leg: int | None = None):
        super().__init__(message)
        self.leg = leg


class SerialSingularity(OrthoglideError):
    """A leg's parallelogram is perpendicular to its slider (eta_i ~ 0)."""

    def __init__(self, message: str, leg: int | None = None):
        super().__init__(message)
        self.leg = leg


class ParallelSingularity(OrthoglideError):
    """det(Jinv) ~ 0: the tool gains uncontrolled mobility."""


class NoAssemblyMode(OrthoglideError):
    """The three leg spheres have no common point in the working mode."""


class DegenerateInput(OrthoglideError):
    """Slider coordinates leave the forward problem underdetermined."""


class InconsistentPair(OrthoglideError):
    """Pose and joint vector do not satisfy the leg closure constraint."""


class DegenerateBounds(OrthoglideError):
    """Transmission-factor bounds admit only the isotropic point itself."""


class RangeOutsideWorkspace(OrthoglideError):
    """Requested diagonal interval leaves the reachable workspace."""


class NonMonotoneTime(OrthoglideError):
    """Waypoint timestamps are not strictly increasing."""
