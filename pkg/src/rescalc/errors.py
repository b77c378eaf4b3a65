"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all errors raised by rescalc."""


class DimensionMismatch(EngineError):
    """Operands live over different numbers of variables."""


class ParseError(EngineError):
    """Syntax error in an expression, with 1-based position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.message = message
        self.line = line
        self.col = col


class NonMonomialAnnihilator(EngineError):
    """The certification pass found a killer outside the monomial module.

    The annihilator of the current is not generated by monomials; the
    offending polynomial vector is kept as a witness.
    """

    def __init__(self, witness: str, component: str = ""):
        tag = f" [{component}]" if component else ""
        super().__init__(f"annihilator is not monomially generated{tag}: witness {witness}")
        self.witness = witness
        self.component = component


class DualityMismatch(EngineError):
    """The annihilator of the input current does not equal the input module."""

    def __init__(self, computed: str, expected: str):
        super().__init__(
            f"inconsistent inputs: annihilator of the current is {computed}, expected {expected}"
        )
        self.computed = computed
        self.expected = expected
