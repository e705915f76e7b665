"""Exception types shared across the package.

Two broad families matter to callers: InputError for arguments that are
rejected up front, ComputationError for numerical procedures that fail to
converge or to certify their result.  The command line maps the first
family to exit code 2 and the second to exit code 3.
"""


class WavesymError(Exception):
    """Base class for all package errors."""


class InputError(WavesymError):
    """Invalid argument or precondition violation detectable at call time."""


class ComputationError(WavesymError):
    """A numerical procedure failed to converge or to certify its result."""


class OutOfRange(InputError):
    """A parameter lies outside its documented range."""


class OutOfDomain(InputError):
    """A query point lies outside the field's rectangle."""


class NotBiaxial(InputError):
    """The dielectric tensor has a repeated eigenvalue."""


class MultiplePoint(ComputationError):
    """The traceless part vanishes, so every line is an eigenline."""


class RankZero(ComputationError):
    """The coefficient matrix vanishes, so the kernel line is undefined."""


class DegenerateField(ComputationError):
    """The determinant field vanishes identically on the sampling grid."""


class LiftFailure(ComputationError):
    """A continuous angle lift could not be certified (grid too coarse)."""


class ZeroOnVertex(ComputationError):
    """A section vanishes on a mesh vertex; perturb the mesh and retry."""


class GluingMismatch(ComputationError):
    """A boundary eigenline-angle map is not a degree +-1 circle map."""


class NotClosed(ComputationError):
    """The mesh has boundary edges where a closed surface is required."""


class NotConnected(ComputationError):
    """The mesh has several components where one is required."""
