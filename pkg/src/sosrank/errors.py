class BudgetExceeded(RuntimeError):
    """A search hit its configured enumeration cap before finishing."""


class DisconnectedDiagram(ValueError):
    """The Newton diagram of q has more than one connected component."""


class SearchExhausted(RuntimeError):
    """No extension satisfied the filling inequality."""


class NotInClassP(ValueError):
    """The polynomial is not identically 1 on the hyperplane sum(x) = 1."""


class NegativeCoefficient(ValueError):
    """A class-P candidate has a negative coefficient."""


class ParseError(ValueError):
    """Malformed polynomial or ideal text."""
