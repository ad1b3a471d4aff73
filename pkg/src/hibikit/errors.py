"""Exception hierarchy shared by all modules."""


class HibiError(Exception):
    """Base class for every error raised by hibikit."""


class CycleDetected(HibiError):
    pass


class UnknownLabel(HibiError):
    pass


class LabelClash(HibiError):
    pass


class NotComparable(HibiError):
    pass


class BoundExceeded(HibiError):
    """A configured size bound would be exceeded.

    ``bound`` names the bound; ``partial`` may carry whatever was computed
    before giving up.
    """

    def __init__(self, bound, message=None, partial=None):
        self.bound = bound
        self.partial = partial
        super().__init__(message or f"bound exceeded: {bound}")


class NotALattice(HibiError):
    def __init__(self, pair, message=None):
        self.pair = pair
        super().__init__(message or f"no join or meet for pair {pair!r}")


class IsoNotFound(HibiError):
    pass


class NotHyperPlanar(HibiError):
    pass


class TheoremViolated(HibiError):
    """A checked identity failed. Carries the check name and a witness."""

    def __init__(self, check, witness=None, message=None):
        self.check = check
        self.witness = witness
        super().__init__(message or f"check {check!r} failed; witness: {witness!r}")


class NotInSemigroup(HibiError):
    pass


class NotASublattice(HibiError):
    pass


class NotConnected(HibiError):
    pass


class EmptyResult(HibiError):
    pass


class NotSimpleAfterReduction(HibiError):
    pass


class ParseError(HibiError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class NotDistributive(HibiError):
    def __init__(self, witness=None, message=None):
        self.witness = witness
        super().__init__(message or f"lattice is not distributive; witness {witness!r}")
