# flake8: noqa

# Errors raised when the supplied data cannot be analyzed
from marketnet.errors import (
    MarketNetError,
    DataFileParsingError,
    InvalidSnapshotError,
    InvalidParameterError,
    UnknownNodeError,
    MissingReachError,
    SeparationError,
)

# Classes holding the data to analyze
from marketnet.model import (
    RosterEntry,
    EngineRoster,
    NetworkSnapshot,
    SnapshotSeries,
    ShareTable,
    SnapshotViolation,
    SnapshotViolationEnum,
    validate_snapshot,
    shares_from_reach,
)
from marketnet.file_parsers import parse_roster, parse_snapshot, parse_series, parse_features, resolve_data_path

# Network and market analyses
from marketnet.centrality import (
    CentralityMetricEnum,
    CentralityReport,
    betweenness,
    degree_report,
    information_centrality,
    reach_report,
    top_k,
)
from marketnet.concentration import (
    ConcentrationClassEnum,
    ConcentrationReport,
    MergerScreenMatrix,
    classify_concentration,
    concentration_report,
    cr_k,
    hhi,
    nahhi,
    merger_screen,
    overlap_sensitivity,
)
from marketnet.longitudinal import SeriesReport, TrendVerdictEnum, compare_groups, summarize_series
from marketnet.stats import FeatureTable, LogisticFit, OlsFit, logistic_fit, ols_fit

# Classes for running analysis commands
from marketnet.commands.analysis_commands import AnalysisCommand, AnalysisCommandType
from marketnet.commands.command_base import AnalysisInputs
from marketnet.commands.centrality_command import CentralityArguments, CentralityCommandResult
from marketnet.commands.concentration_command import ConcentrationArguments, ConcentrationCommandResult
from marketnet.commands.merger_screen_command import MergerScreenArguments, MergerScreenCommandResult
from marketnet.commands.sensitivity_command import SensitivityArguments, SensitivityCommandResult
from marketnet.commands.trend_command import TrendArguments, TrendCommandResult
from marketnet.commands.regress_command import RegressArguments, RegressCommandResult
from marketnet.commands.validate_command import ValidateArguments, ValidateCommandResult

from marketnet.json import JsonEncoder

from marketnet.analyzer import (
    AnalysisCommandError,
    AnalysisCommandErrorReasonEnum,
    AnalysisRequest,
    AnalysisResult,
    Analyzer,
)
