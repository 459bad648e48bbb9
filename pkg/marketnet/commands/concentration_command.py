from concurrent.futures._base import Future
from dataclasses import dataclass
from typing import List, Optional, TYPE_CHECKING

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
from marketnet.concentration import ConcentrationReport, PossibleReach, concentration_report, possible_reach
from marketnet.model import ShareTable, shares_from_reach

if TYPE_CHECKING:
    from marketnet.cli.command_line_parser import RunConfig


@dataclass(frozen=True)
class ConcentrationArguments(AnalysisCommandArguments):
    k: int = 4
    overlap: float = 0.3


@dataclass(frozen=True)
class ConcentrationCommandResult(AnalysisCommandResult):
    """The concentration of the audience reach, adjusted for the network when one was supplied.

    Attributes:
        report: CR_k, HHI and NAHHI with their guideline bands.
        shares: The audience reach share of each organization.
        possible_reach: The reach each organization could get through incoming links, if a network was supplied.
    """

    report: ConcentrationReport
    shares: ShareTable
    possible_reach: Optional[PossibleReach]


class _ConcentrationCliConnector(AnalysisCommandCliConnector[ConcentrationCommandResult, ConcentrationArguments]):

    _cli_command = "concentration"
    _cli_description = "Compute CR_k, the HHI and, with a network, the network-adjusted HHI of the market."

    @classmethod
    def get_cli_options(cls) -> List[OptParseCliOption]:
        return [
            OptParseCliOption(
                option="overlap",
                help="Share of a linking organization's audience assumed to already reach the linked one, in [0, 1]."
                " Default is 0.3.",
                default="0.3",
            )
        ]

    @classmethod
    def arguments_from_run_config(cls, run_config: "RunConfig") -> ConcentrationArguments:
        return ConcentrationArguments(k=run_config.top_k, overlap=run_config.overlap)

    @classmethod
    def result_to_console_output(cls, result: ConcentrationCommandResult) -> List[str]:
        report = result.report
        result_as_txt = [cls._format_title("Audience Concentration")]
        result_as_txt.append(cls._format_field(f"CR{report.k}:", cls._format_float(report.cr_k)))
        result_as_txt.append(
            cls._format_field("HHI:", f"{cls._format_float(report.hhi)} ({report.classification.value})")
        )
        if report.nahhi is not None and report.nahhi_classification is not None:
            result_as_txt.append(
                cls._format_field(
                    f"NAHHI (overlap {cls._format_float(report.overlap)}):",
                    f"{cls._format_float(report.nahhi)} ({report.nahhi_classification.value})",
                )
            )

        result_as_txt.append("")
        if result.possible_reach is None:
            result_as_txt.append(cls._format_subtitle("Share of audience reach (%)"))
            for node_id, share in zip(result.shares.ids, result.shares.values):
                result_as_txt.append(cls._format_field(node_id, cls._format_float(100 * share)))
        else:
            result_as_txt.append(cls._format_subtitle("Audience reach / possible audience reach (%)"))
            for node_id, reach, adjusted_reach in zip(
                result.possible_reach.ids, result.possible_reach.reach, result.possible_reach.possible_reach
            ):
                result_as_txt.append(
                    cls._format_field(node_id, f"{cls._format_float(reach)} / {cls._format_float(adjusted_reach)}")
                )
        return result_as_txt

    @classmethod
    def result_to_csv_rows(cls, result: ConcentrationCommandResult) -> List[List[str]]:
        report = result.report
        rows = [
            ["measure", "value", "classification"],
            [f"cr{report.k}", cls._format_csv_float(report.cr_k), ""],
            ["hhi", cls._format_csv_float(report.hhi), report.classification.value],
        ]
        if report.nahhi is not None and report.nahhi_classification is not None:
            rows.append(["overlap", cls._format_csv_float(report.overlap), ""])
            rows.append(["nahhi", cls._format_csv_float(report.nahhi), report.nahhi_classification.value])
        return rows


class ConcentrationImplementation(AnalysisCommandImplementation[ConcentrationCommandResult, ConcentrationArguments]):
    """Measure how concentrated the audience reach is, with or without the network of links.
    """

    cli_connector_cls = _ConcentrationCliConnector

    @classmethod
    def analysis_jobs_for_command(cls, inputs: AnalysisInputs, arguments: ConcentrationArguments) -> List[AnalysisJob]:
        roster = inputs.required_roster()
        if len(inputs.snapshots) > 1:
            raise AnalysisCommandWrongUsageError("The concentration of the market is computed on one network at most.")
        snapshot = inputs.snapshots[0] if inputs.snapshots else None

        jobs = [
            AnalysisJob(
                function_to_call=concentration_report,
                function_arguments=[roster, snapshot, arguments.k, arguments.overlap],
            ),
            AnalysisJob(function_to_call=shares_from_reach, function_arguments=[roster]),
        ]
        if snapshot is not None:
            jobs.append(
                AnalysisJob(function_to_call=possible_reach, function_arguments=[roster, snapshot, arguments.overlap])
            )
        return jobs

    @classmethod
    def result_for_completed_jobs(
        cls, inputs: AnalysisInputs, arguments: ConcentrationArguments, completed_jobs: List[Future]
    ) -> ConcentrationCommandResult:
        if len(completed_jobs) not in (2, 3):
            raise RuntimeError(f"Unexpected number of jobs received: {completed_jobs}")

        return ConcentrationCommandResult(
            report=completed_jobs[0].result(),
            shares=completed_jobs[1].result(),
            possible_reach=completed_jobs[2].result() if len(completed_jobs) == 3 else None,
        )
