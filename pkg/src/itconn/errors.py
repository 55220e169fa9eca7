"""Exception types shared across the package."""


class ItconnError(Exception):
    pass


class DescriptorMismatch(ItconnError):
    """Operands live in different truncated algebras."""


class NotAPthPower(ItconnError):
    pass


class Inconsistent(ItconnError):
    """A linear system or differential equation has no solution."""


class DenominatorNotUnit(ItconnError):
    pass


class NotEtale(ItconnError):
    """m'(y) is not invertible, so the extension admits no Newton lift."""


class RankDefect(ItconnError):
    """A descended lattice does not have full rank."""


class NotDescendable(ItconnError):
    """An induced structure fails to land in the Frobenius-twisted part."""


class InvariantViolation(ItconnError):
    pass


class ZeroInput(ItconnError):
    pass


class PoleAtOrigin(ItconnError):
    pass


class NotIso(ItconnError):
    pass


class NotEquivariant(ItconnError):
    pass


class IterativityFailure(ItconnError):
    pass


class ParseError(ItconnError):
    pass
