"""Exception hierarchy shared by all modules."""


class EdgeContractError(Exception):
    """Base class for every error raised by this package."""


class InvalidSystem(EdgeContractError):
    pass


class AsymmetricMatrix(InvalidSystem):
    pass


class BadDiagonal(InvalidSystem):
    pass


class WeightConflict(InvalidSystem):
    pass


class NotAnEdge(EdgeContractError):
    pass


class UnknownGenerator(EdgeContractError, KeyError):
    pass


class WeightMismatch(EdgeContractError):
    pass


class UnsupportedBond(EdgeContractError):
    pass


class SystemMismatch(EdgeContractError):
    pass


class BudgetExceeded(EdgeContractError):
    pass


class NotDivisible(EdgeContractError, ArithmeticError):
    pass


class NonIntegralK(EdgeContractError):
    pass


class NoBranch(EdgeContractError):
    pass


class IndexOutOfRange(EdgeContractError, IndexError):
    pass


class RankMismatch(EdgeContractError):
    pass


class RelationError(EdgeContractError):
    """A proposed generator image violates a defining relation."""
