import logging
from typing import Tuple

from marketnet.cli.command_line_parser import RunConfig
from marketnet.commands.analysis_commands import AnalysisCommand
from marketnet.commands.command_base import AnalysisInputs
from marketnet.file_parsers import parse_features, parse_roster, parse_series, parse_snapshot
from marketnet.model import NetworkSnapshot

_logger = logging.getLogger(__name__)


def load_analysis_inputs(run_config: RunConfig) -> AnalysisInputs:
    """Parse every data file of the run before any computation starts.

    The validate command reads the snapshots without checking them, so that it can report each problem itself,
    including a matrix whose ids do not match the roster.
    """
    roster = parse_roster(run_config.roster_path) if run_config.roster_path else None

    snapshots: Tuple[NetworkSnapshot, ...] = ()
    if run_config.analysis_command == AnalysisCommand.VALIDATE:
        snapshots = tuple(parse_snapshot(path, validate=False) for path in run_config.snapshot_paths)
    elif run_config.snapshot_paths:
        snapshots = parse_series(run_config.snapshot_paths, roster).snapshots

    features = parse_features(run_config.features_path) if run_config.features_path else None
    _logger.info(
        f"Loaded {len(roster) if roster else 0} roster entries, {len(snapshots)} snapshots"
        f" and {len(features.rows) if features else 0} feature rows"
    )
    return AnalysisInputs(roster=roster, snapshots=snapshots, features=features)
