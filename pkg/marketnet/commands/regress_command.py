"""The regress command: how the age of an organization relates to the product features it offers and to its reach.
"""
from concurrent.futures._base import Future
from dataclasses import dataclass
from typing import List, Optional, Tuple, TYPE_CHECKING

from marketnet.commands.command_base import (
    AnalysisCommandArguments,
    AnalysisCommandCliConnector,
    AnalysisCommandImplementation,
    AnalysisCommandResult,
    AnalysisCommandWrongUsageError,
    AnalysisInputs,
    AnalysisJob,
)
from marketnet.stats import (
    FeatureGroupCounts,
    FeatureTable,
    LogisticFit,
    OlsFit,
    feature_group_counts,
    logistic_fit,
    ols_fit,
    predicted_probability_curve,
    top_group_counts,
)

if TYPE_CHECKING:
    from marketnet.cli.command_line_parser import RunConfig


@dataclass(frozen=True)
class RegressArguments(AnalysisCommandArguments):
    """Attributes:
        year_origin: The regressor is the setup year minus this year.
        split_year: Organizations set up before this year are the old ones.
        top_count: How many organizations, by audience reach, make up the top group.
    """

    year_origin: int = 1994
    split_year: int = 1998
    top_count: int = 4


@dataclass(frozen=True)
class FeatureRegression:
    feature: str
    fit: LogisticFit
    # (calendar year, predicted probability), one point per year between the oldest and the newest organization
    curve: Tuple[Tuple[int, float], ...]


@dataclass(frozen=True)
class RegressCommandResult(AnalysisCommandResult):
    """Attributes:
        year_origin: The year subtracted from the setup years before fitting.
        feature_regressions: One logistic regression of each feature on the setup year.
        reach_regression: The OLS regression of the audience reach on the setup year, if every reach is known.
        age_groups: The feature counts of the old and the new organizations.
        reach_groups: The feature counts of the top organizations by reach and of the others, if every reach is known.
    """

    year_origin: int
    feature_regressions: Tuple[FeatureRegression, ...]
    reach_regression: Optional[OlsFit]
    age_groups: Tuple[FeatureGroupCounts, FeatureGroupCounts]
    reach_groups: Optional[Tuple[FeatureGroupCounts, FeatureGroupCounts]]


def _regress_feature(table: FeatureTable, feature: str, year_origin: int) -> FeatureRegression:
    setup_years = table.setup_years()
    fit = logistic_fit([year - year_origin for year in setup_years], table.flags(feature))
    years = range(min(setup_years), max(setup_years) + 1)
    curve = predicted_probability_curve(fit, [year - year_origin for year in years])
    return FeatureRegression(
        feature=feature,
        fit=fit,
        curve=tuple((year, probability) for year, (_, probability) in zip(years, curve)),
    )


def _regress_reach(table: FeatureTable, year_origin: int) -> OlsFit:
    rows_with_reach = [row for row in table.rows if row.reach_pct is not None]
    return ols_fit(
        [row.setup_year - year_origin for row in rows_with_reach],
        [float(row.reach_pct or 0.0) for row in rows_with_reach],
    )


def _has_every_reach(table: FeatureTable) -> bool:
    return all(row.reach_pct is not None for row in table.rows)


class _RegressCliConnector(AnalysisCommandCliConnector[RegressCommandResult, RegressArguments]):

    _cli_command = "regress"
    _cli_description = "Regress each product feature and the audience reach on the setup year of the organizations."

    @classmethod
    def arguments_from_run_config(cls, run_config: "RunConfig") -> RegressArguments:
        return RegressArguments(top_count=run_config.top_k)

    @classmethod
    def _format_counts(cls, counts: FeatureGroupCounts) -> List[str]:
        lines = [cls._format_subtitle(f"Organizations {counts.label} ({counts.organization_count})")]
        for feature, count in counts.feature_counts:
            percentage = cls._format_float(counts.percentage_of(feature))
            lines.append(cls._format_field(f"{feature}:", f"{count} ({percentage}%)"))
        return lines

    @classmethod
    def result_to_console_output(cls, result: RegressCommandResult) -> List[str]:
        result_as_txt = [cls._format_title(f"Feature Regressions (years since {result.year_origin})")]
        for regression in result.feature_regressions:
            fit = regression.fit
            result_as_txt.append("")
            result_as_txt.append(cls._format_subtitle(regression.feature))
            result_as_txt.append(cls._format_field("Intercept / slope:", f"{fit.intercept:.2f} / {fit.slope:.2f}"))
            result_as_txt.append(cls._format_field("Odds ratio:", cls._format_float(fit.odds_ratio)))
            result_as_txt.append(cls._format_field("p-value:", cls._format_float(fit.p_value)))
            result_as_txt.append(cls._format_field("Nagelkerke R2:", cls._format_float(fit.r2_nagelkerke)))
            if not fit.converged:
                result_as_txt.append(cls._format_field("WARNING:", f"did not converge in {fit.iterations} iterations"))

        if result.reach_regression is not None:
            ols = result.reach_regression
            result_as_txt.append("")
            result_as_txt.append(cls._format_subtitle("Audience reach"))
            result_as_txt.append(cls._format_field("Intercept / slope:", f"{ols.intercept:.2f} / {ols.slope:.2f}"))
            result_as_txt.append(cls._format_field("p-value:", cls._format_float(ols.slope_p_value)))
            result_as_txt.append(cls._format_field("R2:", cls._format_float(ols.r2)))

        result_as_txt.append("")
        result_as_txt.append(cls._format_title("Feature Counts"))
        groups = list(result.age_groups) + (list(result.reach_groups) if result.reach_groups else [])
        for counts in groups:
            result_as_txt.extend(cls._format_counts(counts))
        return result_as_txt

    @classmethod
    def result_to_csv_rows(cls, result: RegressCommandResult) -> List[List[str]]:
        """The fitted models, then a blank row, then the plot-ready predicted probability curves.
        """
        rows = [["model", "outcome", "intercept", "slope", "odds_ratio", "p_value", "r2"]]
        for regression in result.feature_regressions:
            fit = regression.fit
            rows.append(
                [
                    "logistic",
                    regression.feature,
                    cls._format_csv_float(fit.intercept),
                    cls._format_csv_float(fit.slope),
                    cls._format_csv_float(fit.odds_ratio),
                    cls._format_csv_float(fit.p_value),
                    cls._format_csv_float(fit.r2_nagelkerke),
                ]
            )
        if result.reach_regression is not None:
            ols = result.reach_regression
            rows.append(
                [
                    "ols",
                    "reach_pct",
                    cls._format_csv_float(ols.intercept),
                    cls._format_csv_float(ols.slope),
                    "",
                    cls._format_csv_float(ols.slope_p_value),
                    cls._format_csv_float(ols.r2),
                ]
            )

        rows.append([])
        rows.append(["feature", "setup_year", "predicted_probability"])
        for regression in result.feature_regressions:
            for year, probability in regression.curve:
                rows.append([regression.feature, str(year), cls._format_csv_float(probability)])
        return rows


class RegressImplementation(AnalysisCommandImplementation[RegressCommandResult, RegressArguments]):
    """One logistic regression per product feature, plus one OLS regression of the reach, all on the setup year.
    """

    cli_connector_cls = _RegressCliConnector

    @classmethod
    def analysis_jobs_for_command(cls, inputs: AnalysisInputs, arguments: RegressArguments) -> List[AnalysisJob]:
        table = inputs.features
        if table is None:
            raise AnalysisCommandWrongUsageError("A feature table is required.")
        if not table.feature_names:
            raise AnalysisCommandWrongUsageError("The feature table has no feature column.")

        jobs = [
            AnalysisJob(function_to_call=_regress_feature, function_arguments=[table, feature, arguments.year_origin])
            for feature in table.feature_names
        ]
        if _has_every_reach(table):
            jobs.append(AnalysisJob(function_to_call=_regress_reach, function_arguments=[table, arguments.year_origin]))
        return jobs

    @classmethod
    def result_for_completed_jobs(
        cls, inputs: AnalysisInputs, arguments: RegressArguments, completed_jobs: List[Future]
    ) -> RegressCommandResult:
        table = inputs.features
        if table is None:
            raise AnalysisCommandWrongUsageError("A feature table is required.")
        feature_count = len(table.feature_names)
        has_every_reach = _has_every_reach(table)
        if len(completed_jobs) != feature_count + (1 if has_every_reach else 0):
            raise RuntimeError(f"Unexpected number of jobs received: {completed_jobs}")

        reach_groups = None
        if has_every_reach:
            rows_by_reach = sorted(table.rows, key=lambda row: -(row.reach_pct or 0.0))
            reach_groups = top_group_counts(table, [row.id for row in rows_by_reach[: arguments.top_count]])

        return RegressCommandResult(
            year_origin=arguments.year_origin,
            feature_regressions=tuple(job.result() for job in completed_jobs[:feature_count]),
            reach_regression=completed_jobs[feature_count].result() if has_every_reach else None,
            age_groups=feature_group_counts(table, arguments.split_year),
            reach_groups=reach_groups,
        )
