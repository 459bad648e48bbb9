from typing import Optional, TextIO

from marketnet.analyzer import AnalysisResult
from marketnet.cli.command_line_parser import OutputFormatEnum, RunConfig
from marketnet.cli.console_output import ConsoleOutputGenerator
from marketnet.cli.csv_output import CsvOutputGenerator
from marketnet.cli.json_output import JsonOutputGenerator
from marketnet.cli.output_generator import OutputGenerator


class OutputHub:
    """Configure the marketnet CLI's output and forward notification of events to the selected output generator.
    """

    def __init__(self, file_to: TextIO) -> None:
        self._file_to = file_to
        self._output_generator: Optional[OutputGenerator] = None

    def command_line_parsed(self, run_config: RunConfig) -> None:
        if run_config.output_format == OutputFormatEnum.JSON:
            self._output_generator = JsonOutputGenerator(self._file_to)
        elif run_config.output_format == OutputFormatEnum.CSV:
            self._output_generator = CsvOutputGenerator(self._file_to)
        else:
            self._output_generator = ConsoleOutputGenerator(self._file_to)

        self._output_generator.command_line_parsed(run_config)

    def analysis_completed(self, analysis_result: AnalysisResult) -> None:
        if self._output_generator is None:
            raise RuntimeError("command_line_parsed() was not called")
        self._output_generator.analysis_completed(analysis_result)

    def analyses_completed(self) -> None:
        if self._output_generator is None:
            raise RuntimeError("command_line_parsed() was not called")
        # stdout is not ours to close
        self._output_generator.analyses_completed()
