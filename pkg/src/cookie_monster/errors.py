"""Exception types shared by the solver modules."""


class DomainError(ValueError):
    """An input violates an operation's precondition."""


class InvalidMoveError(DomainError):
    """A move cannot be applied to the current jar set."""


class ResourceError(RuntimeError):
    """A node budget, state cap or value width was exceeded.

    ``lower`` and ``upper`` carry the best bounds on the answer known when
    the search gave up (either may be None).
    """

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
