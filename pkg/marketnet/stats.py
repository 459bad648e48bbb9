"""Regression kernel: logistic regression of a binary feature on one regressor, simple OLS and their tail probabilities.
"""
import logging
from dataclasses import dataclass
from math import exp, isfinite, log, sqrt
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import betainc, expit, gammaincc

from marketnet.errors import (
    DegenerateOutcomeError,
    InsufficientObservationsError,
    InvalidFeatureTableError,
    InvalidParameterError,
    NonFiniteInputError,
    NoRegressorVarianceError,
    SeparationError,
    UnknownNodeError,
)

_logger = logging.getLogger(__name__)


FEATURE_NAMES = ("non_personalized", "personalized", "platform")

# Setup years outside of this range are treated as data entry errors
_MIN_SETUP_YEAR = 1990
_MAX_SETUP_YEAR = 2005


@dataclass(frozen=True)
class FeatureRow:
    """Attributes:
        id: The organization's id.
        setup_year: The calendar year the organization was set up.
        features: The value (0 or 1) of each product feature, keyed by feature name.
        reach_pct: The organization's audience reach, if known.
    """

    id: str
    setup_year: int
    features: Tuple[Tuple[str, int], ...]
    reach_pct: Optional[float] = None

    def flag(self, feature_name: str) -> int:
        for name, value in self.features:
            if name == feature_name:
                return value
        raise InvalidParameterError(f'Unknown feature "{feature_name}".')


@dataclass(frozen=True)
class FeatureTable:
    rows: Tuple[FeatureRow, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        seen_ids = set()
        for row in self.rows:
            if row.id in seen_ids:
                raise InvalidFeatureTableError(f'Duplicate id "{row.id}" in feature table.')
            seen_ids.add(row.id)

            if not _MIN_SETUP_YEAR <= row.setup_year <= _MAX_SETUP_YEAR:
                raise InvalidFeatureTableError(
                    f'Implausible setup year for "{row.id}": {row.setup_year} is not in '
                    f"[{_MIN_SETUP_YEAR}, {_MAX_SETUP_YEAR}]."
                )
            for name, value in row.features:
                if value not in (0, 1):
                    raise InvalidFeatureTableError(f'Feature "{name}" of "{row.id}" must be 0 or 1, got {value!r}.')

    @property
    def ids(self) -> Tuple[str, ...]:
        return tuple(row.id for row in self.rows)

    @property
    def feature_names(self) -> Tuple[str, ...]:
        if not self.rows:
            return ()
        return tuple(name for name, _ in self.rows[0].features)

    def setup_years(self) -> Tuple[int, ...]:
        return tuple(row.setup_year for row in self.rows)

    def flags(self, feature_name: str) -> Tuple[int, ...]:
        return tuple(row.flag(feature_name) for row in self.rows)


@dataclass(frozen=True)
class LogisticFit:
    """A maximum-likelihood logistic regression of a binary outcome on one regressor.

    Attributes:
        intercept: The log-odds at x = 0.
        slope: The change in log-odds per unit of x.
        odds_ratio: exp(slope).
        p_value: The upper tail of the chi-square(1) distribution at the likelihood-ratio statistic.
        r2_nagelkerke: The maximum rescaled R2, in [0, 1].
        converged: False if the iterations ran out before the coefficients settled.
        iterations: The number of iterations that were run.
        log_likelihood: The log-likelihood of the fitted model.
        null_log_likelihood: The log-likelihood of the intercept-only model.
    """

    intercept: float
    slope: float
    odds_ratio: float
    p_value: float
    r2_nagelkerke: float
    converged: bool
    iterations: int
    log_likelihood: float
    null_log_likelihood: float


@dataclass(frozen=True)
class OlsFit:
    intercept: float
    slope: float
    slope_std_error: float
    # Two-sided, t distribution with n - 2 degrees of freedom
    slope_p_value: float
    r2: float


def chi_square_sf(stat: float, df: int = 1) -> float:
    """Upper tail probability of the chi-square distribution, via the regularized upper incomplete gamma function.
    """
    if not isfinite(stat):
        raise NonFiniteInputError(f"Cannot compute a chi-square tail probability for {stat}.")
    if df < 1:
        raise InvalidParameterError(f"Degrees of freedom must be at least 1, got {df}.")
    if stat <= 0:
        return 1.0
    return float(gammaincc(df / 2, stat / 2))


def t_sf(stat: float, df: int) -> float:
    """Upper tail probability of Student's t distribution, via the regularized incomplete beta function.
    """
    if not isfinite(stat):
        raise NonFiniteInputError(f"Cannot compute a t tail probability for {stat}.")
    if df < 1:
        raise InvalidParameterError(f"Degrees of freedom must be at least 1, got {df}.")
    tail = 0.5 * float(betainc(df / 2, 0.5, df / (df + stat * stat)))
    return tail if stat >= 0 else 1.0 - tail


def _validate_regression_inputs(x: Sequence[float], y: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    if len(x) != len(y):
        raise InvalidParameterError(f"Got {len(x)} regressor values but {len(y)} outcome values.")
    if len(x) < 3:
        raise InsufficientObservationsError(observation_count=len(x), minimum_observation_count=3)

    x_array = np.asarray(x, dtype=np.float64)
    y_array = np.asarray(y, dtype=np.float64)
    if not (np.all(np.isfinite(x_array)) and np.all(np.isfinite(y_array))):
        raise NonFiniteInputError("Regression inputs must be finite.")
    if np.all(x_array == x_array[0]):
        raise NoRegressorVarianceError(f"The regressor is constant ({x_array[0]}); nothing can be estimated.")
    return x_array, y_array


def _log_likelihood(design: np.ndarray, outcome: np.ndarray, coefficients: np.ndarray) -> float:
    linear_predictor = design @ coefficients
    # log(p) = -log(1 + exp(-eta)) and log(1 - p) = -log(1 + exp(eta)), without overflow
    return float(
        -np.sum(outcome * np.logaddexp(0, -linear_predictor) + (1 - outcome) * np.logaddexp(0, linear_predictor))
    )


def _is_separated(x_array: np.ndarray, y_array: np.ndarray) -> bool:
    """Whether a cut on the regressor puts every 0 on one side and every 1 on the other, ties allowed.
    """
    negatives = x_array[y_array == 0]
    positives = x_array[y_array == 1]
    return bool(negatives.max() <= positives.min() or positives.max() <= negatives.min())


def logistic_fit(
    x: Sequence[float],
    y: Sequence[int],
    max_iterations: int = 50,
    tolerance: float = 1e-10,
    separation_bound: float = 30.0,
) -> LogisticFit:
    """Fit P(y = 1) = 1 / (1 + exp(-(intercept + slope * x))) by iteratively reweighted least squares.

    The iterations stop when no coefficient moves by more than the tolerance, or after max_iterations. A slope beyond
    the separation bound is only rejected while the likelihood is still improving on separated data; a steep slope on a
    small-scale regressor is kept.
    """
    x_array, y_array = _validate_regression_inputs(x, y)
    if not np.all((y_array == 0) | (y_array == 1)):
        raise InvalidParameterError("The outcome of a logistic regression must only contain 0 and 1.")
    positive_count = int(y_array.sum())
    observation_count = len(y_array)
    if positive_count in (0, observation_count):
        raise DegenerateOutcomeError(f"The outcome only contains {int(y_array[0])}; both classes are needed.")

    design = np.column_stack([np.ones(observation_count), x_array])
    coefficients = np.zeros(2)
    converged = False
    iterations = 0
    previous_log_likelihood = _log_likelihood(design, y_array, coefficients)
    is_separated = _is_separated(x_array, y_array)
    while iterations < max_iterations:
        iterations += 1
        probabilities = expit(design @ coefficients)
        weights = probabilities * (1 - probabilities)
        information_matrix = design.T @ (design * weights[:, np.newaxis])
        score = design.T @ (y_array - probabilities)
        try:
            step = np.linalg.solve(information_matrix, score)
        except np.linalg.LinAlgError:
            raise SeparationError(slope=float(coefficients[1]), separation_bound=separation_bound)

        coefficients = coefficients + step
        current_log_likelihood = _log_likelihood(design, y_array, coefficients)
        is_improving = current_log_likelihood > previous_log_likelihood
        previous_log_likelihood = current_log_likelihood
        if abs(coefficients[1]) > separation_bound and is_improving and is_separated:
            raise SeparationError(slope=float(coefficients[1]), separation_bound=separation_bound)
        if np.max(np.abs(step)) < tolerance:
            converged = True
            break

    if converged:
        _logger.debug(f"Logistic regression converged after {iterations} iterations")
    else:
        _logger.warning(f"Logistic regression did not converge after {iterations} iterations")

    log_likelihood = _log_likelihood(design, y_array, coefficients)
    negative_count = observation_count - positive_count
    null_log_likelihood = positive_count * log(positive_count / observation_count) + negative_count * log(
        negative_count / observation_count
    )

    likelihood_ratio = max(0.0, 2 * (log_likelihood - null_log_likelihood))
    cox_snell_r2 = 1 - exp(2 * (null_log_likelihood - log_likelihood) / observation_count)
    max_cox_snell_r2 = 1 - exp(2 * null_log_likelihood / observation_count)
    r2_nagelkerke = min(1.0, max(0.0, cox_snell_r2 / max_cox_snell_r2))

    intercept, slope = float(coefficients[0]), float(coefficients[1])
    return LogisticFit(
        intercept=intercept,
        slope=slope,
        odds_ratio=exp(slope),
        p_value=chi_square_sf(likelihood_ratio, 1),
        r2_nagelkerke=r2_nagelkerke,
        converged=converged,
        iterations=iterations,
        log_likelihood=log_likelihood,
        null_log_likelihood=null_log_likelihood,
    )


def predict_probability(fit: LogisticFit, x: float) -> float:
    return float(expit(fit.intercept + fit.slope * x))


def predicted_probability_curve(fit: LogisticFit, xs: Iterable[float]) -> List[Tuple[float, float]]:
    """Plot-ready (x, predicted probability) points.
    """
    return [(x, predict_probability(fit, x)) for x in xs]


def ols_fit(x: Sequence[float], y: Sequence[float]) -> OlsFit:
    """Least-squares line through the points, with a two-sided t test on the slope.
    """
    x_array, y_array = _validate_regression_inputs(x, y)
    observation_count = len(x_array)

    x_mean = x_array.mean()
    y_mean = y_array.mean()
    x_deviations = x_array - x_mean
    sxx = float(x_deviations @ x_deviations)
    slope = float(x_deviations @ (y_array - y_mean)) / sxx
    intercept = float(y_mean) - slope * float(x_mean)

    residuals = y_array - (intercept + slope * x_array)
    residual_sum_of_squares = float(residuals @ residuals)
    total_sum_of_squares = float((y_array - y_mean) @ (y_array - y_mean))
    degrees_of_freedom = observation_count - 2
    slope_std_error = sqrt(residual_sum_of_squares / degrees_of_freedom / sxx)

    if slope_std_error == 0:
        slope_p_value = 1.0 if slope == 0 else 0.0
    else:
        slope_p_value = min(1.0, 2 * t_sf(abs(slope / slope_std_error), degrees_of_freedom))

    # A constant outcome is fitted perfectly
    r2 = 1.0 if total_sum_of_squares == 0 else 1 - residual_sum_of_squares / total_sum_of_squares
    return OlsFit(
        intercept=intercept, slope=slope, slope_std_error=slope_std_error, slope_p_value=slope_p_value, r2=r2
    )


@dataclass(frozen=True)
class FeatureGroupCounts:
    """How many organizations of a group offer each product feature.
    """

    label: str
    ids: Tuple[str, ...]
    feature_counts: Tuple[Tuple[str, int], ...]

    @property
    def organization_count(self) -> int:
        return len(self.ids)

    def percentage_of(self, feature_name: str) -> float:
        if not self.ids:
            return 0.0
        for name, count in self.feature_counts:
            if name == feature_name:
                return 100 * count / len(self.ids)
        raise InvalidParameterError(f'Unknown feature "{feature_name}".')


def _count_features(table: FeatureTable, label: str, rows: Sequence[FeatureRow]) -> FeatureGroupCounts:
    return FeatureGroupCounts(
        label=label,
        ids=tuple(row.id for row in rows),
        feature_counts=tuple((name, sum(row.flag(name) for row in rows)) for name in table.feature_names),
    )


def feature_group_counts(
    table: FeatureTable, split_year: int = 1998
) -> Tuple[FeatureGroupCounts, FeatureGroupCounts]:
    """Cross-tabulate the features of the organizations set up before the split year against the later ones.
    """
    old_rows = [row for row in table.rows if row.setup_year < split_year]
    new_rows = [row for row in table.rows if row.setup_year >= split_year]
    return (
        _count_features(table, f"set up before {split_year}", old_rows),
        _count_features(table, f"set up in {split_year} or later", new_rows),
    )


def top_group_counts(
    table: FeatureTable, top_ids: Iterable[str]
) -> Tuple[FeatureGroupCounts, FeatureGroupCounts]:
    top_ids_set = set(top_ids)
    for node_id in sorted(top_ids_set):
        if node_id not in table.ids:
            raise UnknownNodeError(node_id=node_id)

    top_rows = [row for row in table.rows if row.id in top_ids_set]
    other_rows = [row for row in table.rows if row.id not in top_ids_set]
    return _count_features(table, "top", top_rows), _count_features(table, "others", other_rows)
