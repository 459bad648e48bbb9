from concurrent.futures._base import Future
from dataclasses import dataclass
from datetime import date
from itertools import groupby
from typing import List, Optional, Tuple, TYPE_CHECKING

from marketnet.centrality import (
    CentralityMetricEnum,
    CentralityReport,
    betweenness,
    degree_report,
    information_centrality,
    reach_report,
    top_k,
)
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
from marketnet.model import EngineRoster, NetworkSnapshot, density, density_stdev, isolates, link_count

if TYPE_CHECKING:
    from marketnet.cli.command_line_parser import RunConfig


# The names accepted by --metric
CLI_METRIC_NAMES = {
    "indegree": CentralityMetricEnum.INDEGREE,
    "outdegree": CentralityMetricEnum.OUTDEGREE,
    "betweenness": CentralityMetricEnum.BETWEENNESS_NORMALIZED,
    "information": CentralityMetricEnum.INFORMATION,
    "reach": CentralityMetricEnum.AUDIENCE_REACH,
}

_NETWORK_METRICS = (
    CentralityMetricEnum.INDEGREE,
    CentralityMetricEnum.OUTDEGREE,
    CentralityMetricEnum.BETWEENNESS_NORMALIZED,
    CentralityMetricEnum.INFORMATION,
)

_METRIC_TITLES = {
    CentralityMetricEnum.INDEGREE: "Indegree",
    CentralityMetricEnum.OUTDEGREE: "Outdegree",
    CentralityMetricEnum.BETWEENNESS_NORMALIZED: "Betweenness (normalized, %)",
    CentralityMetricEnum.INFORMATION: "Information centrality",
    CentralityMetricEnum.AUDIENCE_REACH: "Audience reach (%)",
}


@dataclass(frozen=True)
class CentralityArguments(AnalysisCommandArguments):
    metrics: Tuple[CentralityMetricEnum, ...] = _NETWORK_METRICS
    top_k: int = 4


@dataclass(frozen=True)
class MetricRanking:
    report: CentralityReport
    # Tie blocks at the k-th position are kept whole, so this can hold more than k entries
    top: Tuple[Tuple[str, float], ...]


@dataclass(frozen=True)
class CentralityCommandResult(AnalysisCommandResult):
    """The centrality of every organization in one network, and the top organizations under each metric.

    Attributes:
        snapshot_date: When the network was observed.
        link_count: The number of links in the network.
        density: The fraction of possible links that are present.
        density_stdev: The standard deviation of the matrix cells, seen as one Bernoulli variable.
        isolates: The organizations with no link at all.
        rankings: One ranking per requested metric, in the requested order.
    """

    snapshot_date: date
    link_count: int
    density: float
    density_stdev: float
    isolates: Tuple[str, ...]
    rankings: Tuple[MetricRanking, ...]


def _rank_metric(
    snapshot: NetworkSnapshot, roster: Optional[EngineRoster], metric: CentralityMetricEnum, k: int
) -> MetricRanking:
    if metric == CentralityMetricEnum.BETWEENNESS_NORMALIZED:
        report = betweenness(snapshot)
    elif metric == CentralityMetricEnum.INFORMATION:
        report = information_centrality(snapshot)
    elif metric == CentralityMetricEnum.AUDIENCE_REACH:
        if roster is None:
            raise AnalysisCommandWrongUsageError("Ranking by audience reach requires a roster.")
        report = reach_report(roster)
    else:
        report = degree_report(snapshot, metric)
    return MetricRanking(report=report, top=tuple(top_k(report, k)))


class _CentralityCliConnector(AnalysisCommandCliConnector[CentralityCommandResult, CentralityArguments]):

    _cli_command = "centrality"
    _cli_description = "Rank the organizations of one network by degree, betweenness and information centrality."

    @classmethod
    def get_cli_options(cls) -> List[OptParseCliOption]:
        return [
            OptParseCliOption(
                option="metric",
                help=f"Metric to rank the organizations with; one of {', '.join(CLI_METRIC_NAMES)}. Can be repeated;"
                " defaults to every network metric.",
                action="append",
            )
        ]

    @classmethod
    def arguments_from_run_config(cls, run_config: "RunConfig") -> CentralityArguments:
        metrics = tuple(CLI_METRIC_NAMES[name] for name in run_config.metrics) if run_config.metrics else None
        if metrics is None:
            return CentralityArguments(top_k=run_config.top_k)
        return CentralityArguments(metrics=metrics, top_k=run_config.top_k)

    @classmethod
    def _format_score(cls, metric: CentralityMetricEnum, score: float) -> str:
        if metric in (CentralityMetricEnum.INDEGREE, CentralityMetricEnum.OUTDEGREE):
            return str(int(score))
        return cls._format_float(score)

    @classmethod
    def result_to_console_output(cls, result: CentralityCommandResult) -> List[str]:
        result_as_txt = [cls._format_title(f"Centrality of the {result.snapshot_date.isoformat()} network")]
        result_as_txt.append(cls._format_field("Links:", str(result.link_count)))
        result_as_txt.append(
            cls._format_field(
                "Density:", f"{cls._format_float(result.density)} ({cls._format_float(result.density_stdev)})"
            )
        )
        result_as_txt.append(cls._format_field("Isolated organizations:", ", ".join(result.isolates) or "none"))

        for ranking in result.rankings:
            metric = ranking.report.metric
            result_as_txt.append("")
            result_as_txt.append(cls._format_subtitle(_METRIC_TITLES[metric]))
            result_as_txt.append(
                cls._format_field(
                    "Mean (stdev):",
                    f"{cls._format_float(ranking.report.mean)} ({cls._format_float(ranking.report.stdev)})",
                )
            )
            # Organizations with the same score are listed together
            for score, tied_entries in groupby(ranking.top, key=lambda id_and_score: id_and_score[1]):
                tied_ids = ", ".join(node_id for node_id, _ in tied_entries)
                result_as_txt.append(cls._format_field(tied_ids, cls._format_score(metric, score)))
        return result_as_txt

    @classmethod
    def result_to_csv_rows(cls, result: CentralityCommandResult) -> List[List[str]]:
        rows = [["metric", "rank", "id", "score"]]
        for ranking in result.rankings:
            for rank, (node_id, score) in enumerate(ranking.top, start=1):
                rows.append([ranking.report.metric.value, str(rank), node_id, cls._format_csv_float(score)])
        return rows


class CentralityImplementation(AnalysisCommandImplementation[CentralityCommandResult, CentralityArguments]):
    """Rank the organizations of one network under each centrality metric.
    """

    cli_connector_cls = _CentralityCliConnector

    @classmethod
    def analysis_jobs_for_command(cls, inputs: AnalysisInputs, arguments: CentralityArguments) -> List[AnalysisJob]:
        snapshot = inputs.single_snapshot()
        if not arguments.metrics:
            raise AnalysisCommandWrongUsageError("No metric to compute.")
        if CentralityMetricEnum.AUDIENCE_REACH in arguments.metrics and inputs.roster is None:
            raise AnalysisCommandWrongUsageError("Ranking by audience reach requires a roster.")

        return [
            AnalysisJob(
                function_to_call=_rank_metric,
                function_arguments=[snapshot, inputs.roster, metric, arguments.top_k],
            )
            for metric in arguments.metrics
        ]

    @classmethod
    def result_for_completed_jobs(
        cls, inputs: AnalysisInputs, arguments: CentralityArguments, completed_jobs: List[Future]
    ) -> CentralityCommandResult:
        if len(completed_jobs) != len(arguments.metrics):
            raise RuntimeError(f"Unexpected number of jobs received: {completed_jobs}")

        snapshot = inputs.single_snapshot()
        return CentralityCommandResult(
            snapshot_date=snapshot.date,
            link_count=link_count(snapshot),
            density=density(snapshot),
            density_stdev=density_stdev(snapshot),
            isolates=isolates(snapshot),
            rankings=tuple(job.result() for job in completed_jobs),
        )
