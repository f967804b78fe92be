"""Exception types raised across the package."""


class HallPaigeError(Exception):
    """Base class for every error raised by this package."""


# group construction

class GroupError(HallPaigeError, ValueError):
    pass


class NotLatin(GroupError):
    pass


class NotAssociative(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class NoInverse(GroupError):
    pass


class ClosureTooLarge(GroupError):
    pass


class UnsupportedSpec(GroupError):
    pass


class NotNormal(GroupError):
    pass


# structural predicates

class NotBad(HallPaigeError):
    pass


class BadPrecondition(HallPaigeError):
    pass


# complete mappings

class SizeMismatch(HallPaigeError, ValueError):
    pass


class TripleInvalid(HallPaigeError, ValueError):
    pass


class EvenOrder(HallPaigeError, ValueError):
    pass


class OddOrder(HallPaigeError, ValueError):
    pass


# lifting

class HasFixedPoint(HallPaigeError, ValueError):
    pass


class NotInvolution(HallPaigeError, ValueError):
    pass


class OrderMismatch(HallPaigeError, ValueError):
    pass


class MatchingFailed(HallPaigeError, RuntimeError):
    """A perfect matching that must exist was not found (internal bug)."""


class TripleViolation(HallPaigeError):
    pass


class BadSubmappings(HallPaigeError):
    pass


BadSubmapping = BadSubmappings


class NotCentralInvolution(HallPaigeError):
    pass


class QuotientOdd(HallPaigeError):
    pass


class SizeCondition(HallPaigeError):
    pass


class ContainmentFailed(HallPaigeError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class VerificationFailed(HallPaigeError, AssertionError):
    """A constructed mapping did not verify. Always an internal bug."""


# Coxeter machinery

class Unsupported(HallPaigeError, ValueError):
    pass


class SetTooLarge(HallPaigeError):
    pass


class NonCommutingCore(HallPaigeError, ValueError):
    pass


class MissingCertificate(HallPaigeError, KeyError):
    pass


# rank-1 Lie type

class UnsupportedQ(HallPaigeError, ValueError):
    pass


class BadGroup(HallPaigeError):
    pass


class VhNotFound(HallPaigeError, RuntimeError):
    pass
