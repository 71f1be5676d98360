"""Exception types raised across the package."""


class ClearError(ValueError):
    """Base class for all input and model errors."""


class NonPositiveFactor(ClearError):
    pass


class DimensionMismatch(ClearError):
    pass


class IncomparableFom(TypeError):
    """Ordering requested between values of different level or unit signature."""


class EmptyOptionSet(ClearError):
    pass


class NonPositiveTemperature(ClearError):
    pass


class InvalidParams(ClearError):
    pass


class NegativeInput(ClearError):
    pass


class NonPositiveLength(ClearError):
    pass


class MalformedHeader(ClearError):
    pass


class MalformedRow(ClearError):
    def __init__(self, row: int, column: str, detail: str = ""):
        self.row = row
        self.column = column
        msg = f"row {row}, column {column!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class EmptyDataset(ClearError):
    pass


class NoUsableRecords(ClearError):
    pass


class InsufficientPoints(ClearError):
    pass


class DegenerateYears(ClearError):
    pass


class InvalidRange(ClearError):
    pass


class NonPositiveEvaluation(ClearError):
    pass


class EmptyData(ClearError):
    pass


class SinkWriteError(ClearError):
    pass
