"""Exception types raised across the package."""


class MaqaoaError(ValueError):
    """Base class for invalid inputs to any construction or simulation."""


class DimensionError(MaqaoaError):
    pass


class NotHermitianError(MaqaoaError):
    pass


class NotUnitaryError(MaqaoaError):
    pass


class RestrictionError(MaqaoaError):
    """A dynamic graph step that no ma-QAOA half-layer can express."""


class ZeroAdjacencyError(MaqaoaError):
    pass


class CircuitParseError(MaqaoaError):
    def __init__(self, message: str, line: int | None = None, token: str | None = None):
        self.line = line
        self.token = token
        where = f", line {line}" if line is not None else ""
        super().__init__(f"{message}{where}")
