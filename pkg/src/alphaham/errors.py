"""Exception hierarchy shared by every solver module."""


class AlphahamError(Exception):
    """Base class for all library errors."""


class ParseError(AlphahamError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class LoopError(ParseError):
    pass


class OutOfRange(AlphahamError, IndexError):
    pass


class DegreeError(AlphahamError):
    pass


class StructureError(AlphahamError):
    pass


class PreconditionError(AlphahamError, ValueError):
    pass


class ConnectivityError(PreconditionError):
    """A graph is less connected than an algorithm's guarantee requires."""


class DegeneratePair(PreconditionError):
    pass


class FlowDeficit(AlphahamError):
    pass


class SizeCap(AlphahamError):
    """Instance exceeds a brute-force size ceiling."""


class StateError(AlphahamError):
    pass


class GuardrailAbort(AlphahamError):
    """A configured enumeration ceiling was hit."""
