"""Exception hierarchy shared by every kreinspec module."""


class KreinSpecError(Exception):
    """Base class for all kreinspec failures."""


class NumericalFailure(KreinSpecError):
    """A numerical stage could not produce a trustworthy result."""


class SingularMatrix(NumericalFailure):
    pass


class NoConvergence(NumericalFailure):
    pass


class Defective(NumericalFailure):
    """Raised when an eigenvalue cluster lacks a full eigenvector basis.

    In the PT setting this is the signature of an exceptional point.
    """


class DimensionTooLarge(KreinSpecError):
    pass


class DimensionMismatch(KreinSpecError, ValueError):
    pass


class OddDimension(KreinSpecError, ValueError):
    pass


class NonFiniteInput(KreinSpecError, ValueError):
    pass


class ComplexSpectrum(KreinSpecError):
    pass


class NotHermitian(KreinSpecError):
    pass


class NearSingular(KreinSpecError):
    pass


class DegenerateChi(NumericalFailure):
    pass


class BrokenPhase(KreinSpecError):
    pass


class SingularNormalization(KreinSpecError):
    pass


class PreconditionFailed(KreinSpecError):
    """A documented precondition does not hold.

    ``which`` names the failed precondition and ``residual`` carries the
    measured quantity that decided it.
    """

    def __init__(self, which, residual=None, detail=""):
        self.which = which
        self.residual = residual
        msg = f"precondition failed: {which}"
        if residual is not None:
            msg += f" (residual {residual:.3e})"
        if detail:
            msg += f"; {detail}"
        super().__init__(msg)
