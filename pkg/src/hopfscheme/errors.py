"""Exception hierarchy.

Every error raised for a violated algebraic axiom or contract derives from
:class:`HopfSchemeError` so callers (and the CLI) can tell mathematical
failures apart from plain misuse.
"""


class HopfSchemeError(Exception):
    pass


class ExactAlgError(HopfSchemeError, ValueError):
    pass


class UnsupportedHom(HopfSchemeError, ValueError):
    pass


# algebra axioms
class AlgebraAxiomError(HopfSchemeError):
    pass


class NonAssociative(AlgebraAxiomError):
    pass


class NonCommutative(AlgebraAxiomError):
    pass


class BadUnit(AlgebraAxiomError):
    pass


class NotFree(HopfSchemeError):
    def __init__(self, message, invariant_factors=()):
        super().__init__(message)
        self.invariant_factors = tuple(invariant_factors)


# Hopf axioms
class HopfAxiomError(HopfSchemeError):
    pass


class NotCoassociative(HopfAxiomError):
    pass


class CounitLawFails(HopfAxiomError):
    pass


class NotBialgebra(HopfAxiomError):
    pass


class AntipodeFails(HopfAxiomError):
    pass


class NotCocommutative(HopfAxiomError):
    pass


class RankNotOne(HopfSchemeError):
    pass


# short exact sequences / integration
class SESError(HopfSchemeError):
    pass


class NotInjective(SESError):
    pass


class NotSurjective(SESError):
    pass


class KernelMismatch(SESError):
    pass


class NotHopfHom(SESError):
    pass


class RankMismatch(HopfSchemeError):
    pass


class InputNotInvariant(HopfSchemeError):
    pass


class LiftFailed(HopfSchemeError):
    pass


# constructors / points
class CharacteristicMismatch(HopfSchemeError, ValueError):
    pass


class InvalidPoint(HopfSchemeError, ValueError):
    pass
