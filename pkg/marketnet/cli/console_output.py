from typing import TextIO

from marketnet.analyzer import AnalysisResult
from marketnet.cli.command_line_parser import RunConfig
from marketnet.cli.output_generator import OutputGenerator
from marketnet.commands.analysis_commands import AnalysisCommandsRepository


class ConsoleOutputGenerator(OutputGenerator):
    def __init__(self, file_to: TextIO) -> None:
        super().__init__(file_to)

    @classmethod
    def _format_title(cls, title: str) -> str:
        return f" {title.upper()}\n {'-' * len(title)}\n"

    def command_line_parsed(self, run_config: RunConfig) -> None:
        self._file_to.write("\n")
        self._file_to.write(self._format_title("Data files"))
        self._file_to.write("\n")
        for file_kind, paths in [
            ("Roster", [run_config.roster_path] if run_config.roster_path else []),
            ("Snapshot", list(run_config.snapshot_paths)),
            ("Features", [run_config.features_path] if run_config.features_path else []),
        ]:
            for path in paths:
                self._file_to.write(f"   {file_kind:<35}{path.name}\n")
        self._file_to.write("\n\n")

    def analysis_completed(self, analysis_result: AnalysisResult) -> None:
        if analysis_result.result is None:
            raise ValueError("Only successful analyses are written out")

        cli_connector_cls = AnalysisCommandsRepository.get_implementation_cls(
            analysis_result.analysis_command
        ).cli_connector_cls
        result_as_txt = self._format_title(f"{cli_connector_cls.get_cli_command()} results")
        result_as_txt += "\n"
        for line in cli_connector_cls.result_to_console_output(analysis_result.result):
            result_as_txt += line + "\n"
        self._file_to.write(result_as_txt + "\n")

    def analyses_completed(self) -> None:
        pass
