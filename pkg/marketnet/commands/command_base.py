"""Main abstract command classes from which all the analysis commands should inherit.
"""
from abc import ABC, abstractmethod
from concurrent.futures import Future, ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING, Any, Callable, ClassVar, Generic, List, Optional, Sequence, Tuple, Type, TypeVar

from marketnet.model import EngineRoster, NetworkSnapshot
from marketnet.stats import FeatureTable

if TYPE_CHECKING:
    from marketnet.cli.command_line_parser import RunConfig  # noqa: F401


class AnalysisCommandResult(ABC):
    pass


class AnalysisCommandArguments(ABC):
    pass


class AnalysisCommandWrongUsageError(Exception):
    """Raised when the inputs or arguments passed to an analysis command are wrong.
    """


@dataclass(frozen=True)
class AnalysisInputs:
    """The data files an analysis command runs on, already parsed.

    Attributes:
        roster: The organizations of the market, with their audience reach.
        snapshots: The networks, in date order.
        features: The setup years and product features of the organizations.
    """

    roster: Optional[EngineRoster] = None
    snapshots: Tuple[NetworkSnapshot, ...] = ()
    features: Optional[FeatureTable] = None

    def single_snapshot(self) -> NetworkSnapshot:
        if len(self.snapshots) != 1:
            raise AnalysisCommandWrongUsageError(f"Expected exactly one snapshot, received {len(self.snapshots)}.")
        return self.snapshots[0]

    def required_roster(self) -> EngineRoster:
        if self.roster is None:
            raise AnalysisCommandWrongUsageError("A roster with the audience reach of each organization is required.")
        return self.roster


@dataclass(frozen=True)
class AnalysisJob:
    """One unit of computation (one metric, one snapshot or one grid point) that can run on its own thread.
    """

    function_to_call: Callable
    function_arguments: Sequence[Any]


_ResultTypeVar = TypeVar("_ResultTypeVar", bound=AnalysisCommandResult)
_ArgumentsTypeVar = TypeVar("_ArgumentsTypeVar", bound=AnalysisCommandArguments)


class AnalysisCommandImplementation(Generic[_ResultTypeVar, _ArgumentsTypeVar]):
    """Describes everything needed to run a specific analysis command.
    """

    # Contains all the logic for making the command available via the CLI
    cli_connector_cls: ClassVar[Type["AnalysisCommandCliConnector"]]

    @classmethod
    @abstractmethod
    def analysis_jobs_for_command(cls, inputs: AnalysisInputs, arguments: _ArgumentsTypeVar) -> List[AnalysisJob]:
        """Split the command into jobs that can run concurrently.
        """

    @classmethod
    @abstractmethod
    def result_for_completed_jobs(
        cls, inputs: AnalysisInputs, arguments: _ArgumentsTypeVar, completed_jobs: List[Future]
    ) -> _ResultTypeVar:
        """Turn the completed jobs, received in the order they were created, into the command's result.
        """

    @classmethod
    def run_analysis(cls, inputs: AnalysisInputs, arguments: _ArgumentsTypeVar) -> _ResultTypeVar:
        """Utility method to run a command directly, without an Analyzer.
        """
        with ThreadPoolExecutor(max_workers=5) as thread_pool:
            all_futures = [
                thread_pool.submit(job.function_to_call, *job.function_arguments)
                for job in cls.analysis_jobs_for_command(inputs, arguments)
            ]
            return cls.result_for_completed_jobs(inputs, arguments, all_futures)


@dataclass(frozen=True)
class OptParseCliOption:
    option: str
    help: str
    action: str = "store"
    default: Any = None


class AnalysisCommandCliConnector(Generic[_ResultTypeVar, _ArgumentsTypeVar]):
    """Contains all the logic for making an analysis command available via the CLI.
    """

    _cli_command: ClassVar[str]
    _cli_description: ClassVar[str]

    @classmethod
    def get_cli_command(cls) -> str:
        return cls._cli_command

    @classmethod
    def get_cli_description(cls) -> str:
        return cls._cli_description

    @classmethod
    def get_cli_options(cls) -> List[OptParseCliOption]:
        """Return the CLI options only relevant to this command; the options shared by all commands are not included.
        """
        return []

    @classmethod
    @abstractmethod
    def arguments_from_run_config(cls, run_config: "RunConfig") -> _ArgumentsTypeVar:
        pass

    @classmethod
    @abstractmethod
    def result_to_console_output(cls, result: _ResultTypeVar) -> List[str]:
        """Transform the result of the command into lines of text to be printed by the CLI.
        """

    @classmethod
    @abstractmethod
    def result_to_csv_rows(cls, result: _ResultTypeVar) -> List[List[str]]:
        """Transform the result of the command into CSV rows, header row first.
        """

    @classmethod
    def result_as_json(cls, result: _ResultTypeVar) -> Any:
        """The object to serialize with the JsonEncoder; by default the result's fields.
        """
        return asdict(result)

    @classmethod
    def result_exit_code(cls, result: _ResultTypeVar) -> int:
        """The exit code of the CLI when the command succeeded; commands that find problems in the data override this.
        """
        return 0

    # Common formatting methods to have a consistent console output
    @staticmethod
    def _format_title(title: str) -> str:
        return " * {0}:".format(title)

    @staticmethod
    def _format_subtitle(subtitle: str) -> str:
        return "     {0}".format(subtitle)

    @staticmethod
    def _format_field(title: str, value: str = "") -> str:
        return "       {0:<35}{1}".format(title, value)

    @staticmethod
    def _format_float(value: Optional[float]) -> str:
        return "n/a" if value is None else f"{value:.2f}"

    @staticmethod
    def _format_csv_float(value: Optional[float]) -> str:
        return "" if value is None else repr(float(value))
