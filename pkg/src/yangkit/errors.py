"""Exceptions shared across the kit."""


class YangkitError(Exception):
    pass


class SpecMismatchError(YangkitError):
    """Two objects tagged with different Lie-algebra specs were combined."""


class IndexRangeError(YangkitError):
    """A row/column label is outside the spec's index list."""


class PoleEvaluationError(YangkitError):
    """A rational function was evaluated at a root of its denominator."""

    def __init__(self, point):
        self.point = point
        super().__init__(f"evaluation at pole u = {point}")


class ImproperAtInfinityError(YangkitError):
    """Series expansion at u = infinity of a rational function with positive degree."""

    def __init__(self, gap):
        self.gap = gap
        super().__init__(f"rational function has positive degree {gap} at infinity")


class TableRangeError(YangkitError):
    """A representation table does not cover the generator range a check needs."""


class ReconstructionError(YangkitError):
    """Polynomial/rational reconstruction from series data failed or is inconsistent."""


class HighestWeightError(YangkitError):
    """A module is not of highest weight type within the stored generator range."""


class BudgetExceededError(YangkitError):
    """A construction would exceed its configured size guard."""


class ConfigError(YangkitError):
    """Invalid batch-runner configuration."""
