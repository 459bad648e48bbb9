from typing import Dict, List, Literal, Type, TYPE_CHECKING

from marketnet.commands.centrality_command import CentralityImplementation
from marketnet.commands.concentration_command import ConcentrationImplementation
from marketnet.commands.merger_screen_command import MergerScreenImplementation
from marketnet.commands.regress_command import RegressImplementation
from marketnet.commands.sensitivity_command import SensitivityImplementation
from marketnet.commands.trend_command import TrendImplementation
from marketnet.commands.validate_command import ValidateImplementation

if TYPE_CHECKING:
    from marketnet.commands.command_base import AnalysisCommandImplementation  # noqa: F401


AnalysisCommandType = Literal[
    "centrality", "concentration", "merger_screen", "sensitivity", "trend", "regress", "validate",
]


# Almost like a re-implementation of an enum
class AnalysisCommand:
    """The list of all analysis commands supported by marketnet.
    """

    CENTRALITY: Literal["centrality"] = "centrality"

    CONCENTRATION: Literal["concentration"] = "concentration"
    MERGER_SCREEN: Literal["merger_screen"] = "merger_screen"
    SENSITIVITY: Literal["sensitivity"] = "sensitivity"

    TREND: Literal["trend"] = "trend"
    REGRESS: Literal["regress"] = "regress"

    VALIDATE: Literal["validate"] = "validate"


class AnalysisCommandsRepository:
    @staticmethod
    def get_implementation_cls(analysis_command: AnalysisCommandType) -> Type["AnalysisCommandImplementation"]:
        return _IMPLEMENTATION_CLASSES[analysis_command]

    @staticmethod
    def get_all_analysis_commands() -> List[AnalysisCommandType]:
        return list(_IMPLEMENTATION_CLASSES.keys())

    @staticmethod
    def get_analysis_command_for_cli_command(cli_command: str) -> AnalysisCommandType:
        for analysis_command, implementation_cls in _IMPLEMENTATION_CLASSES.items():
            if implementation_cls.cli_connector_cls.get_cli_command() == cli_command:
                return analysis_command
        raise KeyError(cli_command)


_IMPLEMENTATION_CLASSES: Dict[AnalysisCommandType, Type["AnalysisCommandImplementation"]] = {
    AnalysisCommand.CENTRALITY: CentralityImplementation,
    AnalysisCommand.CONCENTRATION: ConcentrationImplementation,
    AnalysisCommand.MERGER_SCREEN: MergerScreenImplementation,
    AnalysisCommand.SENSITIVITY: SensitivityImplementation,
    AnalysisCommand.TREND: TrendImplementation,
    AnalysisCommand.REGRESS: RegressImplementation,
    AnalysisCommand.VALIDATE: ValidateImplementation,
}
