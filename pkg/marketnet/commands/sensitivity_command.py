from concurrent.futures._base import Future
from dataclasses import dataclass
from typing import List, Tuple, TYPE_CHECKING

from marketnet.commands.command_base import (
    AnalysisCommandArguments,
    AnalysisCommandCliConnector,
    AnalysisCommandImplementation,
    AnalysisCommandResult,
    AnalysisInputs,
    AnalysisJob,
    OptParseCliOption,
)
from marketnet.concentration import ConcentrationClassEnum, classify_concentration, hhi, nahhi
from marketnet.model import EngineRoster, NetworkSnapshot, shares_from_reach

if TYPE_CHECKING:
    from marketnet.cli.command_line_parser import RunConfig


DEFAULT_OVERLAP_GRID = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


@dataclass(frozen=True)
class SensitivityArguments(AnalysisCommandArguments):
    grid: Tuple[float, ...] = DEFAULT_OVERLAP_GRID


@dataclass(frozen=True)
class SensitivityPoint:
    overlap: float
    nahhi: float
    classification: ConcentrationClassEnum


@dataclass(frozen=True)
class SensitivityCommandResult(AnalysisCommandResult):
    hhi: float
    hhi_classification: ConcentrationClassEnum
    points: Tuple[SensitivityPoint, ...]


class _SensitivityCliConnector(AnalysisCommandCliConnector[SensitivityCommandResult, SensitivityArguments]):

    _cli_command = "sensitivity"
    _cli_description = "Compute the network-adjusted HHI over a grid of overlap rates."

    @classmethod
    def get_cli_options(cls) -> List[OptParseCliOption]:
        return [
            OptParseCliOption(
                option="grid",
                help="Comma-separated overlap rates in [0, 1]. Default is 0,0.1,...,0.9.",
            )
        ]

    @classmethod
    def arguments_from_run_config(cls, run_config: "RunConfig") -> SensitivityArguments:
        return SensitivityArguments(grid=run_config.grid) if run_config.grid else SensitivityArguments()

    @classmethod
    def result_to_console_output(cls, result: SensitivityCommandResult) -> List[str]:
        result_as_txt = [cls._format_title("Overlap Sensitivity")]
        result_as_txt.append(
            cls._format_field("HHI:", f"{cls._format_float(result.hhi)} ({result.hhi_classification.value})")
        )
        result_as_txt.append("")
        result_as_txt.append(cls._format_subtitle("NAHHI per overlap rate"))
        for point in result.points:
            result_as_txt.append(
                cls._format_field(
                    cls._format_float(point.overlap), f"{cls._format_float(point.nahhi)} ({point.classification.value})"
                )
            )
        return result_as_txt

    @classmethod
    def result_to_csv_rows(cls, result: SensitivityCommandResult) -> List[List[str]]:
        rows = [["overlap", "nahhi", "classification"]]
        for point in result.points:
            rows.append(
                [cls._format_csv_float(point.overlap), cls._format_csv_float(point.nahhi), point.classification.value]
            )
        return rows


def _sensitivity_point(roster: EngineRoster, snapshot: NetworkSnapshot, overlap: float) -> SensitivityPoint:
    nahhi_value = nahhi(roster, snapshot, overlap)
    return SensitivityPoint(overlap=overlap, nahhi=nahhi_value, classification=classify_concentration(nahhi_value))


class SensitivityImplementation(AnalysisCommandImplementation[SensitivityCommandResult, SensitivityArguments]):
    """Sweep the overlap rate to see how much the network-adjusted HHI depends on it.
    """

    cli_connector_cls = _SensitivityCliConnector

    @classmethod
    def analysis_jobs_for_command(cls, inputs: AnalysisInputs, arguments: SensitivityArguments) -> List[AnalysisJob]:
        roster = inputs.required_roster()
        snapshot = inputs.single_snapshot()
        return [
            AnalysisJob(function_to_call=_sensitivity_point, function_arguments=[roster, snapshot, overlap])
            for overlap in arguments.grid
        ]

    @classmethod
    def result_for_completed_jobs(
        cls, inputs: AnalysisInputs, arguments: SensitivityArguments, completed_jobs: List[Future]
    ) -> SensitivityCommandResult:
        if len(completed_jobs) != len(arguments.grid):
            raise RuntimeError(f"Unexpected number of jobs received: {completed_jobs}")

        hhi_value = hhi(shares_from_reach(inputs.required_roster()))
        return SensitivityCommandResult(
            hhi=hhi_value,
            hhi_classification=classify_concentration(hhi_value),
            points=tuple(job.result() for job in completed_jobs),
        )
