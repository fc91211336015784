"""Exception types shared across the package."""


class WellPoisedError(Exception):
    """Base class for all library errors."""


class InputError(WellPoisedError):
    """Malformed user input.  Carries an optional (line, column)."""

    def __init__(self, msg, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}, column {column or 1}: "
        super().__init__(loc + msg)


class NotPointed(WellPoisedError):
    pass


class UnboundedBelow(WellPoisedError):
    pass


class TailMismatch(WellPoisedError):
    pass


class ZeroPolynomial(WellPoisedError):
    pass


class NotBinomial(WellPoisedError):
    pass


class ImproperDivisor(WellPoisedError):
    pass


class NotGroebner(WellPoisedError):
    pass


class DimensionMismatch(WellPoisedError):
    pass


class MonomialInInitial(WellPoisedError):
    """The initial ideal contains a monomial, so the weight is not tropical."""


class NotFullRank(WellPoisedError):
    pass


class RankDeficient(WellPoisedError):
    pass


class NotGeneric(WellPoisedError):
    pass


class NotDegreeOneGenerated(WellPoisedError):
    pass


class CapExceeded(WellPoisedError):
    pass


class BadBlockSizes(WellPoisedError):
    pass
