from abc import ABC, abstractmethod
from typing import TextIO

from marketnet.analyzer import AnalysisResult
from marketnet.cli.command_line_parser import RunConfig


class OutputGenerator(ABC):
    """The abstract class output generator classes should inherit from.

    Each method must be implemented and will be called in the order below, once every analysis has succeeded.
    """

    def __init__(self, file_to: TextIO) -> None:
        self._file_to = file_to

    def close(self) -> None:
        self._file_to.close()

    @abstractmethod
    def command_line_parsed(self, run_config: RunConfig) -> None:
        """The CLI was just started and successfully parsed the command line.
        """

    @abstractmethod
    def analysis_completed(self, analysis_result: AnalysisResult) -> None:
        """The CLI has finished running one analysis command.
        """

    @abstractmethod
    def analyses_completed(self) -> None:
        """The CLI has finished running every analysis command and will now exit.
        """
