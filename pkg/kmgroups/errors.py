"""The exceptions raised by this package. Every domain failure derives from
KacMoodyError so that callers (and the command line) can tell a refused
computation apart from a programming error.
"""

class KacMoodyError(Exception):
    """Base class for every domain error raised by kmgroups"""

class ParseError(KacMoodyError, ValueError):
    """A textual literal (matrix, root, word, scalar, Laurent polynomial)
    could not be parsed"""

class InvalidGcm(KacMoodyError):
    """The matrix violates one of the generalised Cartan matrix axioms.

    Attributes:
        reason (str): one of 'shape', 'diagonal', 'positivity' or
            'zero-symmetry'
        position (tuple[int, int], optional): the offending entry
    """
    def __init__(self, reason: str, position=None, message: str = None):
        if message is None:
            message = f'invalid generalised Cartan matrix ({reason})'
            if position is not None:
                message += f' at entry {position}'
        super().__init__(message)
        self.reason = reason
        self.position = position

class InternalInconsistency(KacMoodyError):
    """Two independent computations of the same quantity disagreed"""

class SearchBudgetExceeded(KacMoodyError):
    """A bounded search hit its iteration cap"""

class Undecided(KacMoodyError):
    """A decision procedure could not reach a verdict"""

class ResourceLimit(KacMoodyError):
    """A configured memory or step budget would be exceeded"""

class NotARealRoot(KacMoodyError):
    """The lattice vector is not a real root"""

class DeniedDenominator(KacMoodyError):
    """A computation over F_p produced a denominator divisible by p"""

class NotAUnit(KacMoodyError):
    """The element is not invertible (its constant term is not 1)"""

class NotPrenilpotent(KacMoodyError):
    """The pair of real roots is not prenilpotent"""

class NonIntegralConstant(KacMoodyError):
    """A commutator constant came out non-integral"""

class NilpotencyCapExceeded(KacMoodyError):
    """An iterated adjoint action did not vanish within the cap"""

class IntegralityError(KacMoodyError):
    """A rational value could not be reduced modulo p"""

class RelationFailed(KacMoodyError):
    """A group relation did not hold.

    Attributes:
        witness (object): the basis vector (or other datum) on which both
            sides differ
    """
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness

class NotProportional(KacMoodyError):
    """A vector expected to be a multiple of another one is not"""

class OutOfFixture(KacMoodyError):
    """The loop realization only exists for [[2,-2],[-2,2]]"""

class NotInGroup(KacMoodyError):
    """The Laurent matrix does not lie in SL_2(k[t,t^-1])"""

class PresentationMismatch(KacMoodyError):
    """The quotient by the maximal graded ideal and the Serre presentation
    have different dimensions in some degree"""

class NotGroupLike(KacMoodyError, ValueError):
    """The unit is not a product of exponentials of the envelope's letters"""
