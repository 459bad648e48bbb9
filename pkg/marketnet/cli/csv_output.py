import csv
from typing import TextIO

from marketnet.analyzer import AnalysisResult
from marketnet.cli.command_line_parser import RunConfig
from marketnet.cli.output_generator import OutputGenerator
from marketnet.commands.analysis_commands import AnalysisCommandsRepository


class CsvOutputGenerator(OutputGenerator):
    """Write the result of each analysis as CSV rows, with full float precision.
    """

    def __init__(self, file_to: TextIO) -> None:
        super().__init__(file_to)
        self._csv_writer = csv.writer(file_to, lineterminator="\n")

    def command_line_parsed(self, run_config: RunConfig) -> None:
        pass

    def analysis_completed(self, analysis_result: AnalysisResult) -> None:
        if analysis_result.result is None:
            raise ValueError("Only successful analyses are written out")

        cli_connector_cls = AnalysisCommandsRepository.get_implementation_cls(
            analysis_result.analysis_command
        ).cli_connector_cls
        self._csv_writer.writerows(cli_connector_cls.result_to_csv_rows(analysis_result.result))

    def analyses_completed(self) -> None:
        pass
