"""Exception hierarchy shared by all modules."""


class PullstabError(Exception):
    """Base class for every error raised by this package."""


class DegreeMismatch(PullstabError, ValueError):
    pass


class InvariantViolation(PullstabError, ValueError):
    """A partition is not preserved by a permutation it was paired with."""


class NotTransitive(PullstabError, ValueError):
    pass


class DegreeCapExceeded(PullstabError):
    def __init__(self, degree, cap):
        super().__init__(f"degree cap exceeded: degree {degree} > cap {cap}")
        self.degree = degree
        self.cap = cap


class InvalidCover(PullstabError, ValueError):
    """Monodromy data violating one or more cover invariants.

    ``violations`` lists every failed check, not only the first one.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class NamespaceMismatch(PullstabError, ValueError):
    pass


class SelfCheckError(PullstabError, AssertionError):
    """An identity that must hold for all valid input failed.

    Raised instead of returning a wrong answer; indicates a bug or corrupted
    data, never a user error.
    """
