"""Exception hierarchy shared by every module."""


class SubelectError(ValueError):
    """Base class for all errors raised by this package."""


class ParseError(SubelectError):
    """Raised when a profile file cannot be read."""


class MalformedHeader(ParseError):
    pass


class NotAPermutation(ParseError):
    def __init__(self, voter_index, detail=""):
        self.voter_index = voter_index
        msg = f"vote {voter_index} is not a permutation of the candidates"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class UnknownCandidate(ParseError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"unknown candidate label {label!r}")


class SizeError(SubelectError):
    """Raised for out-of-range subelection sizes or empty selections."""


class EmptySelection(SizeError):
    pass


class BadWidth(SizeError):
    pass


class BadVoterCount(SizeError):
    pass


class OddVoterCount(SizeError):
    pass


class BudgetExceeded(SubelectError):
    """An enumeration or the solver visited more nodes than allowed."""


class InvalidSpec(SubelectError):
    pass


class NotOptimal(SubelectError):
    pass
