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
    OptParseCliOption,
)
from marketnet.longitudinal import (
    GroupComparison,
    SeriesReport,
    assemble_series_report,
    compare_groups,
    summarize_snapshot,
)
from marketnet.model import SnapshotSeries

if TYPE_CHECKING:
    from marketnet.cli.command_line_parser import RunConfig


@dataclass(frozen=True)
class TrendArguments(AnalysisCommandArguments):
    # Compare how these organizations link with how the rest of the market links; no comparison when empty
    group_ids: Tuple[str, ...] = ()


@dataclass(frozen=True)
class TrendCommandResult(AnalysisCommandResult):
    report: SeriesReport
    group_comparison: Optional[GroupComparison]


_CSV_COLUMNS = (
    "date",
    "mean_indegree",
    "stdev_indegree",
    "mean_outdegree",
    "stdev_outdegree",
    "mean_betweenness",
    "stdev_betweenness",
    "mean_information",
    "stdev_information",
    "density",
    "density_stdev",
)


class _TrendCliConnector(AnalysisCommandCliConnector[TrendCommandResult, TrendArguments]):

    _cli_command = "trend"
    _cli_description = "Average the centrality of the organizations at each date and tell how the network evolves."

    @classmethod
    def get_cli_options(cls) -> List[OptParseCliOption]:
        return [
            OptParseCliOption(
                option="group",
                help="Organization id to compare with the rest of the market. Can be repeated.",
                action="append",
            )
        ]

    @classmethod
    def arguments_from_run_config(cls, run_config: "RunConfig") -> TrendArguments:
        return TrendArguments(group_ids=run_config.group_ids)

    @classmethod
    def result_to_console_output(cls, result: TrendCommandResult) -> List[str]:
        result_as_txt = [cls._format_title("Network Trend")]
        for row in result.report.rows:
            result_as_txt.append("")
            result_as_txt.append(cls._format_subtitle(row.date.isoformat()))
            for title, mean, stdev in [
                ("Indegree", row.mean_indegree, row.stdev_indegree),
                ("Outdegree", row.mean_outdegree, row.stdev_outdegree),
                ("Betweenness (normalized, %)", row.mean_betweenness, row.stdev_betweenness),
                ("Information centrality", row.mean_information, row.stdev_information),
                ("Density", row.density, row.density_stdev),
            ]:
                result_as_txt.append(
                    cls._format_field(f"{title}:", f"{cls._format_float(mean)} ({cls._format_float(stdev)})")
                )

        if result.report.trends:
            result_as_txt.append("")
            result_as_txt.append(cls._format_subtitle("Trend from the first to the last date"))
            for metric, verdict in result.report.trends:
                result_as_txt.append(cls._format_field(f"{metric.value}:", verdict.value))

        comparison = result.group_comparison
        if comparison is not None:
            result_as_txt.append("")
            result_as_txt.append(cls._format_subtitle(f"Group {', '.join(comparison.group_ids)} vs. the rest"))
            result_as_txt.append(
                cls._format_field(
                    "Mean indegree:",
                    f"{cls._format_float(comparison.group_mean_indegree)} vs. "
                    f"{cls._format_float(comparison.rest_mean_indegree)}",
                )
            )
            result_as_txt.append(
                cls._format_field(
                    "Mean outdegree:",
                    f"{cls._format_float(comparison.group_mean_outdegree)} vs. "
                    f"{cls._format_float(comparison.rest_mean_outdegree)}",
                )
            )
            for member in comparison.member_means:
                result_as_txt.append(
                    cls._format_field(
                        f"{member.id} (in / out):",
                        f"{cls._format_float(member.mean_indegree)} / {cls._format_float(member.mean_outdegree)}",
                    )
                )
        return result_as_txt

    @classmethod
    def result_to_csv_rows(cls, result: TrendCommandResult) -> List[List[str]]:
        rows = [list(_CSV_COLUMNS)]
        for row in result.report.rows:
            rows.append(
                [row.date.isoformat(), *(cls._format_csv_float(getattr(row, column)) for column in _CSV_COLUMNS[1:])]
            )
        return rows


class TrendImplementation(AnalysisCommandImplementation[TrendCommandResult, TrendArguments]):
    """Summarize each snapshot of a series, then compare the dates.
    """

    cli_connector_cls = _TrendCliConnector

    @classmethod
    def analysis_jobs_for_command(cls, inputs: AnalysisInputs, arguments: TrendArguments) -> List[AnalysisJob]:
        if not inputs.snapshots:
            raise AnalysisCommandWrongUsageError("At least one snapshot is required.")
        series = SnapshotSeries(snapshots=inputs.snapshots)

        jobs = [
            AnalysisJob(function_to_call=summarize_snapshot, function_arguments=[snapshot])
            for snapshot in series.snapshots
        ]
        if arguments.group_ids:
            jobs.append(AnalysisJob(function_to_call=compare_groups, function_arguments=[series, arguments.group_ids]))
        return jobs

    @classmethod
    def result_for_completed_jobs(
        cls, inputs: AnalysisInputs, arguments: TrendArguments, completed_jobs: List[Future]
    ) -> TrendCommandResult:
        expected_jobs_count = len(inputs.snapshots) + (1 if arguments.group_ids else 0)
        if len(completed_jobs) != expected_jobs_count:
            raise RuntimeError(f"Unexpected number of jobs received: {completed_jobs}")

        summary_jobs = completed_jobs[: len(inputs.snapshots)]
        return TrendCommandResult(
            report=assemble_series_report(job.result() for job in summary_jobs),
            group_comparison=completed_jobs[-1].result() if arguments.group_ids else None,
        )
