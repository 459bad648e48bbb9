from dataclasses import dataclass
from typing import Any, Dict, List, TextIO

from marketnet.__version__ import __version__
from marketnet.analyzer import AnalysisResult
from marketnet.cli.command_line_parser import RunConfig
from marketnet.cli.output_generator import OutputGenerator
from marketnet.commands.analysis_commands import AnalysisCommandsRepository
from marketnet.json import to_json


@dataclass(frozen=True)
class _AnalysisResultAsJson:
    command: str
    result: Any


class JsonOutputGenerator(OutputGenerator):
    def __init__(self, file_to: TextIO) -> None:
        super().__init__(file_to)
        self._analysis_results: List[_AnalysisResultAsJson] = []

    def command_line_parsed(self, run_config: RunConfig) -> None:
        pass

    def analysis_completed(self, analysis_result: AnalysisResult) -> None:
        if analysis_result.result is None:
            raise ValueError("Only successful analyses are written out")

        cli_connector_cls = AnalysisCommandsRepository.get_implementation_cls(
            analysis_result.analysis_command
        ).cli_connector_cls
        self._analysis_results.append(
            _AnalysisResultAsJson(
                command=analysis_result.analysis_command,
                result=cli_connector_cls.result_as_json(analysis_result.result),
            )
        )

    def analyses_completed(self) -> None:
        # The "root" dictionary of the JSON output
        final_json_output: Dict[str, Any] = {
            "marketnet_version": __version__,
            "analysis_results": [
                {"command": analysis_result.command, "result": analysis_result.result}
                for analysis_result in self._analysis_results
            ],
        }
        self._file_to.write(to_json(final_json_output))
        self._file_to.write("\n")
