from concurrent.futures._base import Future
from dataclasses import dataclass
from typing import Any, Dict, List, TYPE_CHECKING

from marketnet.commands.command_base import (
    AnalysisCommandArguments,
    AnalysisCommandCliConnector,
    AnalysisCommandImplementation,
    AnalysisCommandResult,
    AnalysisInputs,
    AnalysisJob,
    OptParseCliOption,
)
from marketnet.concentration import MergerScreenMatrix, hhi, merger_screen
from marketnet.model import ShareTable, shares_from_reach

if TYPE_CHECKING:
    from marketnet.cli.command_line_parser import RunConfig


@dataclass(frozen=True)
class MergerScreenArguments(AnalysisCommandArguments):
    threshold: float = 100.0


@dataclass(frozen=True)
class MergerScreenCommandResult(AnalysisCommandResult):
    hhi_before_merger: float
    screen: MergerScreenMatrix


def _screen_mergers(shares: ShareTable, threshold: float) -> MergerScreenCommandResult:
    return MergerScreenCommandResult(hhi_before_merger=hhi(shares), screen=merger_screen(shares, threshold))


class _MergerScreenCliConnector(AnalysisCommandCliConnector[MergerScreenCommandResult, MergerScreenArguments]):

    _cli_command = "merger-screen"
    _cli_description = "Compute the HHI increase of every possible merger and flag those above a threshold."

    @classmethod
    def get_cli_options(cls) -> List[OptParseCliOption]:
        return [
            OptParseCliOption(
                option="threshold",
                help="Flag the mergers increasing the HHI by strictly more than this value. Default is 100.",
                default="100",
            )
        ]

    @classmethod
    def arguments_from_run_config(cls, run_config: "RunConfig") -> MergerScreenArguments:
        return MergerScreenArguments(threshold=run_config.threshold)

    @classmethod
    def result_to_console_output(cls, result: MergerScreenCommandResult) -> List[str]:
        screen = result.screen
        flagged_pairs = sorted(screen.flagged_pairs, key=lambda pair: pair.delta, reverse=True)
        result_as_txt = [cls._format_title("Merger Screen")]
        result_as_txt.append(cls._format_field("HHI before any merger:", cls._format_float(result.hhi_before_merger)))
        result_as_txt.append(cls._format_field("Threshold:", cls._format_float(screen.threshold)))
        result_as_txt.append(cls._format_field("Flagged mergers:", f"{len(flagged_pairs)} of {len(screen.pairs)}"))
        if flagged_pairs:
            result_as_txt.append("")
            result_as_txt.append(cls._format_subtitle("HHI increase of the flagged mergers"))
            for pair in flagged_pairs:
                result_as_txt.append(cls._format_field(f"{pair.firm_a} + {pair.firm_b}", cls._format_float(pair.delta)))
        return result_as_txt

    @classmethod
    def result_to_csv_rows(cls, result: MergerScreenCommandResult) -> List[List[str]]:
        """An upper-triangular matrix; flagged mergers have their increase suffixed with "*".
        """
        screen = result.screen
        delta_per_pair = {(pair.firm_a, pair.firm_b): pair for pair in screen.pairs}
        rows = [["", *screen.ids]]
        for row_index, firm_a in enumerate(screen.ids):
            row = [firm_a]
            for column_index, firm_b in enumerate(screen.ids):
                if column_index <= row_index:
                    row.append("")
                    continue
                pair = delta_per_pair[(firm_a, firm_b)]
                row.append(cls._format_csv_float(pair.delta) + ("*" if pair.flagged else ""))
            rows.append(row)
        return rows

    @classmethod
    def result_as_json(cls, result: MergerScreenCommandResult) -> Any:
        pairs_as_json: List[Dict[str, Any]] = [
            {"firm_a": pair.firm_a, "firm_b": pair.firm_b, "delta": pair.delta, "flagged": pair.flagged}
            for pair in result.screen.pairs
        ]
        return pairs_as_json


class MergerScreenImplementation(AnalysisCommandImplementation[MergerScreenCommandResult, MergerScreenArguments]):
    """Screen every pairwise merger of the market by how much it would raise the HHI.
    """

    cli_connector_cls = _MergerScreenCliConnector

    @classmethod
    def analysis_jobs_for_command(cls, inputs: AnalysisInputs, arguments: MergerScreenArguments) -> List[AnalysisJob]:
        shares = shares_from_reach(inputs.required_roster())
        return [AnalysisJob(function_to_call=_screen_mergers, function_arguments=[shares, arguments.threshold])]

    @classmethod
    def result_for_completed_jobs(
        cls, inputs: AnalysisInputs, arguments: MergerScreenArguments, completed_jobs: List[Future]
    ) -> MergerScreenCommandResult:
        if len(completed_jobs) != 1:
            raise RuntimeError(f"Unexpected number of jobs received: {completed_jobs}")
        return completed_jobs[0].result()
