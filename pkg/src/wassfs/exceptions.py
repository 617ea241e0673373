"""Exception types raised across the package."""


class WassfsError(Exception):
    """Base class for all package errors."""


class DatasetError(WassfsError, ValueError):
    """Malformed dataset, bad index, or unreadable input file."""


class MeasureError(WassfsError, ValueError):
    """Invalid empirical measure or a measure passed to the wrong estimator."""


class SinkhornError(WassfsError, RuntimeError):
    """Numerical breakdown inside the Sinkhorn solver."""


class EstimatorError(WassfsError, ValueError):
    """Estimator choice incompatible with the requested feature subset."""


class OracleError(WassfsError, ValueError):
    """Brute-force oracle called outside its supported size or input class."""


class InputFileError(DatasetError):
    """Input file missing or unreadable."""


class CellParseError(DatasetError):
    """A feature cell is empty or not a number."""


class LabelColumnError(DatasetError):
    """The requested label column does not exist."""


class ClassCountError(DatasetError):
    """Fewer than two classes present."""
