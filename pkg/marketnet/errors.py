from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Tuple

if TYPE_CHECKING:
    from marketnet.model import SnapshotViolation


class MarketNetError(Exception):
    """Parent class for all the errors raised when the supplied data cannot be analyzed.
    """


class InvalidRosterError(MarketNetError):
    """Raised when trying to create an EngineRoster with missing, duplicate or out-of-range values.
    """


class InvalidSeriesError(MarketNetError):
    """Raised when trying to create a SnapshotSeries whose snapshots do not share a roster or are not in date order.
    """


class InvalidParameterError(MarketNetError):
    """Raised when an analysis parameter (overlap, k, threshold, grid value...) is out of its allowed range.
    """


class InvalidFeatureTableError(MarketNetError):
    """Raised when trying to create a FeatureTable with duplicate ids or implausible setup years.
    """


@dataclass(frozen=True)
class UnknownNodeError(MarketNetError):
    node_id: str

    def __str__(self) -> str:
        return f'Unknown node "{self.node_id}": not in the roster.'


@dataclass(frozen=True)
class InvalidSnapshotError(MarketNetError):
    """Raised when running a metric on a snapshot that did not pass validation.
    """

    snapshot_date: str
    violations: Tuple["SnapshotViolation", ...]

    def __str__(self) -> str:
        violations_str = "; ".join(str(violation) for violation in self.violations)
        return f"Invalid snapshot {self.snapshot_date}: {violations_str}."


@dataclass(frozen=True)
class InsufficientNodesError(MarketNetError):
    operation: str
    node_count: int
    minimum_node_count: int

    def __str__(self) -> str:
        return (
            f"{self.operation} requires at least {self.minimum_node_count} nodes but the network has "
            f"{self.node_count}."
        )


@dataclass(frozen=True)
class MissingReachError(MarketNetError):
    """Raised when an operation needs the audience reach of every roster entry and one of them has none.
    """

    node_id: str

    def __str__(self) -> str:
        return f'No audience reach for "{self.node_id}".'


class DegenerateReachError(MarketNetError):
    """Raised when the audience reach of every roster entry is zero, which leaves market shares undefined.
    """


class SingularMatrixError(MarketNetError):
    """Raised when the information centrality matrix of a connected component cannot be inverted.
    """


@dataclass(frozen=True)
class InsufficientObservationsError(MarketNetError):
    observation_count: int
    minimum_observation_count: int

    def __str__(self) -> str:
        return (
            f"Need at least {self.minimum_observation_count} observations but received {self.observation_count}."
        )


class DegenerateOutcomeError(MarketNetError):
    """Raised when fitting a logistic regression on an outcome that only contains one class.
    """


@dataclass(frozen=True)
class SeparationError(MarketNetError):
    """Raised when the outcome is (quasi-)completely separated by the regressor, so no finite estimate exists.
    """

    slope: float
    separation_bound: float

    def __str__(self) -> str:
        return f"Complete separation: |slope| reached {abs(self.slope):.2f} (bound {self.separation_bound:.2f})."


class NoRegressorVarianceError(MarketNetError):
    """Raised when fitting a regression on a regressor that has no variance.
    """


class NonFiniteInputError(MarketNetError):
    """Raised when a tail probability is requested for a non-finite statistic.
    """


@dataclass(frozen=True)
class DataFileParsingError(MarketNetError):
    """Raised when a roster, snapshot or feature file cannot be turned into a valid domain object.

    Attributes:
        file_path: The file that was being parsed.
        line_number: The 1-based line of the problem, or 0 if it concerns the whole file.
        column_number: The 1-based column of the problem, or 0 if it concerns the whole line.
        error_message: What is wrong.
    """

    file_path: Path
    line_number: int
    column_number: int
    error_message: str

    def __str__(self) -> str:
        return f"{self.file_path}:{self.line_number}:{self.column_number}: {self.error_message}"
