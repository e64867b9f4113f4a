"""Exception types shared across the package."""


class PrecisionFailure(ArithmeticError):
    """Adaptive parameter escalation hit its cap without converging."""


class PoleError(ValueError):
    """Evaluation requested inside the exclusion radius around s = 1."""


class ConsistencyError(ArithmeticError):
    """Two independent computation routes disagree beyond tolerance."""


class ZerosFileError(ValueError):
    """A zeros data file failed to parse or validate."""
