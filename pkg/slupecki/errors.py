"""
Exceptions raised by Slupecki Lab
"""


class SlupeckiError(Exception):
    """Base class for every error raised by the library"""


class DigraphError(SlupeckiError):
    """Invalid digraph construction (range, empty vertex set, bad word)"""


class ArityError(SlupeckiError):
    """Arity, base size or table length mismatch"""


class GuardError(SlupeckiError):
    """Instance exceeds a search-space guard"""


class FormatError(SlupeckiError):
    """Malformed .dg / .op input"""

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class PreconditionError(SlupeckiError):
    """Input does not satisfy the hypothesis of an operation"""


class ConstructionRefused(PreconditionError):
    """A witness construction was refused; `reason` says why"""

    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)


class BudgetExhausted(SlupeckiError):
    """A search that must be complete ran out of nodes or time"""

    def __init__(self, message, stats=None):
        self.stats = stats
        super().__init__(message)
