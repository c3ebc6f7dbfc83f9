"""Exception taxonomy shared across the package."""


class WebflatError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(WebflatError):
    """Polynomial text failed to parse; carries line/column of the offence."""

    def __init__(self, message, line, col):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class UndefinedInputError(WebflatError):
    """An operation was called on inputs for which it is undefined."""


class NonReducedError(WebflatError):
    """Input violates a reducedness/coprimality invariant."""


class InvariantViolation(WebflatError):
    """A declared property of the input does not actually hold."""


class RadialPencilError(WebflatError):
    """Tangency order is undefined: the foliation is the radial pencil at s."""


class DiscriminantProximityError(WebflatError):
    """Base point too close to the discriminant for branch lifting."""


class PrecisionError(WebflatError):
    """Numeric iteration failed to converge at the working precision."""


class SamplingError(WebflatError):
    """Could not find enough generic base points within the retry budget."""


class StructureEquationError(WebflatError):
    """The third structure equation failed beyond tolerance (inconsistent web data)."""
