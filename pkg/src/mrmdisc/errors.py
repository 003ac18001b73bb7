"""Exception hierarchy shared across the package."""


class MrmdiscError(Exception):
    """Base class for all package errors."""


class DatasetError(MrmdiscError, ValueError):
    pass


class ParseError(DatasetError):
    def __init__(self, message: str, row: int | None = None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class SchemaError(DatasetError):
    pass


class EmptyDatasetError(DatasetError):
    pass


class ImputationError(DatasetError):
    def __init__(self, attribute: str):
        self.attribute = attribute
        super().__init__(f"attribute {attribute!r} has no observed values to impute from")


class FoldError(DatasetError):
    pass


class ShapeError(MrmdiscError, ValueError):
    pass


class UndefinedStatisticError(MrmdiscError, ValueError):
    pass


class InfiniteDivergenceError(MrmdiscError, ValueError):
    pass


class ConfigurationError(MrmdiscError, ValueError):
    pass


class FitError(MrmdiscError, ValueError):
    pass
