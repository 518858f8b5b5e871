class OpalgError(ValueError):
    """
    Base class of the domain errors raised by opalg.
    """


class MismatchError(OpalgError):
    """
    Raised when two operands disagree on a size, a degree or a loop parameter.
    """


class SizeGuardError(OpalgError):
    """
    Raised when a computation would exceed one of the configured size guards.
    """

    def __init__(self, guard: str, value: int, limit: int):
        super().__init__(f"Size guard '{guard}' exceeded: {value} > {limit}")
        self.guard = guard
        self.value = value
        self.limit = limit


class SingularGramError(OpalgError):
    """
    Raised when a Gram matrix has to be inverted but is singular.
    """

    def __init__(self, rank: int, size: int):
        super().__init__(f"Gram matrix is singular: rank {rank} < {size}")
        self.rank = rank
        self.size = size


class NonPlanarTangleError(OpalgError):
    """
    Raised when the boundary reading of a tangle is not a noncrossing matching.
    """


class HadamardValidationError(OpalgError):
    """
    Raised when a matrix fails the unit-modulus or orthogonality test.
    """


class ConsistencyError(OpalgError):
    """
    Raised when two independent routes to the same quantity disagree.
    """
