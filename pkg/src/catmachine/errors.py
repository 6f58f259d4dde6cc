"""Exception types raised across the package."""


class CatMachineError(Exception):
    pass


class MorphismTypeError(CatMachineError, TypeError):
    """A morphism expression failed to type.

    ``expr`` is the offending sub-expression; ``expected`` and ``actual``
    are the two domains that should have matched.
    """

    def __init__(self, expr, expected, actual, reason=""):
        self.expr = expr
        self.expected = expected
        self.actual = actual
        self.reason = reason
        msg = f"{reason or 'type mismatch'} in {expr}: expected {expected}, got {actual}"
        super().__init__(msg)


class ParseError(CatMachineError, ValueError):
    def __init__(self, message, pos=None, line=None, col=None):
        self.message = message
        self.pos = pos
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" at line {line}, column {col}"
        elif pos is not None:
            where = f" at position {pos}"
        super().__init__(message + where)


class ScopeError(CatMachineError):
    pass


class ShapeError(CatMachineError, ValueError):
    pass


class UnknownDomain(CatMachineError, LookupError):
    pass


class UnknownAtom(CatMachineError, LookupError):
    pass


class UnknownPrimitive(CatMachineError, LookupError):
    pass


class UnknownCase(CatMachineError, LookupError):
    pass


class SizeLimit(CatMachineError):
    pass


class RuntimeTypeFault(CatMachineError):
    """A value reached a morphism whose domain it does not inhabit."""


class ApplyNonFunction(CatMachineError):
    pass


class DiagramError(CatMachineError):
    pass
