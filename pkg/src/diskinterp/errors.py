"""Exception hierarchy shared by all diskinterp modules."""


class DiskInterpError(Exception):
    """Base class for all library errors."""


class PointOutsideDisk(DiskInterpError):
    """A point does not lie strictly inside the unit disk."""


class MalformedJet(DiskInterpError):
    """A jet constraint document or list is inconsistent."""


class DiameterOverflow(DiskInterpError):
    """A scheme component has pseudohyperbolic diameter too close to 1."""


class NoValidEpsilon(DiskInterpError):
    """The epsilon search exhausted its range without success."""


class SingularGram(DiskInterpError):
    """Kernel Gram matrix is numerically singular (condition > 1e12)."""


class InfeasibleConstraints(DiskInterpError):
    """Linear constraint system has no solution in the chosen basis."""


class NonConvergence(DiskInterpError):
    """Iterative minimization failed to reach its tolerance."""


class DegeneratePair(DiskInterpError):
    """Two-point interpolation nodes are (numerically) identical."""


class PairTooFar(DiskInterpError):
    """A point pair has pseudohyperbolic separation >= 0.99."""


class DuplicatePoint(DiskInterpError):
    """Distinct-point input contains a repeated point."""


class QuadratureDivergence(DiskInterpError):
    """A quadrature tail estimate exceeded its tolerance."""


class PositiveLaplacian(DiskInterpError):
    """A Laplacian that must be negative was positive at a sample."""


class StencilOutOfDomain(DiskInterpError):
    """A finite-difference stencil leaves the admissible region."""


class GridTooCoarse(DiskInterpError):
    """Too few grid nodes fall inside a required disk."""


class EmptyGrid(DiskInterpError):
    """A radius or center grid required to be nonempty is empty."""
