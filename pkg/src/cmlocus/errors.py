"""Exception types shared across the toolkit."""


class CMLocusError(Exception):
    """Base class for all toolkit errors."""


class NotAContentMultiset(CMLocusError):
    """The given integer multiset is not the content multiset of any partition."""


class BoxOutsideDiagram(CMLocusError):
    """Box coordinates fall outside the Young diagram."""


class ZeroPolynomial(CMLocusError):
    """Operation undefined for the zero polynomial."""


class NoConvergence(CMLocusError):
    """Iteration budget exhausted before reaching the requested tolerance."""


class CoincidentPoints(CMLocusError):
    """Two points are closer than the configured clustering tolerance."""


class NonTriangularMultiplicity(CMLocusError):
    """A root cluster size is not of the form m(m+1)/2 (clustering failure)."""


class EvaluationAtPole(CMLocusError):
    """Potential evaluated too close to one of its poles."""


class SingularJacobian(CMLocusError):
    """Newton refinement hit a singular Jacobian."""


class NonIntegerSpectrum(CMLocusError):
    """Eigenvalues could not be rounded to integers within tolerance."""


class SimplicityGateFailed(CMLocusError):
    """Wronskian has multiple roots; the simple-spectrum construction does not apply."""


class EmptyPartition(CMLocusError):
    """Construction requires a nonempty partition."""


class InconsistentBlockSystem(CMLocusError):
    """Block commutation equations are inconsistent (convention bug)."""


class DimensionMismatch(CMLocusError):
    """Operands have incompatible dimensions."""


class AsymmetricCharacter(CMLocusError):
    """Laurent polynomial is not invariant under inverting the variable."""


class NonzeroConstantTerm(CMLocusError):
    """Character has a nonzero constant term; weights are ill-defined."""


class ParseError(CMLocusError):
    """Malformed textual input."""
