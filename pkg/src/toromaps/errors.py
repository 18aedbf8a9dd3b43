"""
Exception hierarchy.

MapError subclasses mean the input does not belong to the expected class of
maps (the CLI exits with status 1). AlgorithmError subclasses mean a guarded
invariant fired; they are defects and fail the test suite.
"""


class ToromapsError(Exception):
    """Base class for all package errors."""


# ===== INPUT / CLASS-MEMBERSHIP ERRORS =====


class MapError(ToromapsError, ValueError):
    """Input fails a structural or class predicate."""


class NotInvolution(MapError):
    pass


class InvalidRoot(MapError):
    pass


class NotPermutation(MapError):
    pass


class NotConnected(MapError):
    pass


class BadColoring(MapError):
    pass


class WrongGenus(MapError):
    pass


class NotBipartite(MapError):
    pass


class NotQuadrangulation(MapError):
    pass


class NotNullHomologous(MapError):
    pass


class NotUnicellular(MapError):
    pass


class NotPrecubic(MapError):
    pass


class NotACycle(MapError):
    pass


class NotBalanced(MapError):
    pass


class NotInH(MapError):
    pass


class NotInQ(MapError):
    pass


class NotInT(MapError):
    pass


class NotInT3(MapError):
    pass


class NotInD(MapError):
    pass


class NoPattern(MapError):
    pass


class NotSQuad(MapError):
    pass


class ClockwiseFace(MapError):
    pass


class NotRightBiorientation(MapError):
    pass


class NotPatchable(MapError):
    pass


class DemandMismatch(MapError):
    pass


class TmapFormatError(MapError):
    pass


# ===== GUARDED INVARIANTS =====


class AlgorithmError(ToromapsError, RuntimeError):
    """A guarded invariant fired."""


class NoProgress(AlgorithmError):
    pass


class StepBoundExceeded(AlgorithmError):
    pass


class ClosedFormMismatch(AlgorithmError):
    pass


class ExcessMismatch(AlgorithmError):
    pass


class CapExceeded(AlgorithmError):
    """Requested size is above the configured enumeration cap."""
