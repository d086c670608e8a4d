"""Exception types raised by loctrop."""


class LocTropError(Exception):
    """Base class for all domain errors."""


class ZeroSeries(LocTropError):
    pass


class NegativeEntry(LocTropError):
    pass


class EmptyTropicalPolynomial(LocTropError):
    pass


class OriginOnly(LocTropError):
    """The cone is {0}; it has no nonzero relative-interior point."""


class NotAFan(LocTropError):
    def __init__(self, first, second, message=None):
        self.pair = (first, second)
        super().__init__(message or "cones do not meet in a common face")


class NotBivariate(LocTropError):
    pass


class TraversalIncomplete(LocTropError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"fan traversal left a region uncovered near {witness}")


class LiftFailed(LocTropError):
    def __init__(self, cone_id, message=None):
        self.cone_id = cone_id
        super().__init__(message or f"could not lift a monomial on cone {cone_id}")


class ParseError(LocTropError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{position}: {message}"
        super().__init__(message)


class DomainError(LocTropError):
    pass
