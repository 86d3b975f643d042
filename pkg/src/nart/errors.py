"""Exception hierarchy.  Everything raised on purpose derives from NartError."""


class NartError(Exception):
    pass


class NonAdmissibleIdeal(NartError):
    """A relation is not in the square of the arrow ideal, or no arrow-ideal power lies in the ideal."""


class InfiniteDimensional(NonAdmissibleIdeal):
    """Residue-path closure exceeded the configured cap."""


class AlgebraMismatch(NartError):
    pass


class SplittingFailure(NartError):
    """Random Fitting attempts exhausted without splitting or certifying indecomposability."""


class ProjectiveInput(NartError):
    pass


class SocleSearchFailure(NartError):
    pass


class ResolutionOverrun(NartError):
    """A kernel failed to land in add(M) within n steps."""


class NotFiniteType(NartError):
    pass


class IncompleteARQuiver(NotFiniteType):
    pass


class SearchSpaceTooLarge(NartError):
    pass


class ShapeMismatch(NartError):
    pass


class ProjectiveEnd(NartError):
    pass


class ConstructionFailure(NartError):
    pass


class MemberEscape(NartError):
    """A term of a presentation is not in add(M)."""


class NotNExact(NartError):
    pass


class UnknownEntry(NartError, KeyError):
    pass
