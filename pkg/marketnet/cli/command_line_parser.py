from dataclasses import dataclass
from enum import Enum, unique
from math import isfinite
from optparse import OptionGroup, OptionParser
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple

from marketnet.commands.analysis_commands import AnalysisCommand, AnalysisCommandType, AnalysisCommandsRepository
from marketnet.commands.centrality_command import CLI_METRIC_NAMES
from marketnet.file_parsers import resolve_data_path


class CommandLineParsingError(Exception):

    PARSING_ERROR_FORMAT = "  Command line error: {0}\n  Use -h for help."

    def get_error_msg(self) -> str:
        return self.PARSING_ERROR_FORMAT.format(self)


@unique
class OutputFormatEnum(Enum):
    TABLE = "table"
    CSV = "csv"
    JSON = "json"


@dataclass(frozen=True)
class RunConfig:
    """The result of parsing a command line used to launch marketnet.

    Attributes:
        analysis_command: The command to run.
        roster_path: The roster file, with bundled data aliases already resolved.
        snapshot_paths: The snapshot files, in the order they were supplied.
        features_path: The feature table file.
        metrics: The --metric names, empty for the default metrics.
        top_k: How many organizations to list in the rankings and in CR_k.
        overlap: The overlap rate of the network-adjusted HHI, in [0, 1].
        threshold: The HHI increase above which a merger is flagged.
        grid: The overlap rates of the sensitivity analysis, empty for the default grid.
        group_ids: The organizations to compare with the rest of the market.
        output_format: How the result is written to stdout.
        verbose: Log debug messages to stderr.
    """

    analysis_command: AnalysisCommandType
    roster_path: Optional[Path] = None
    snapshot_paths: Tuple[Path, ...] = ()
    features_path: Optional[Path] = None

    metrics: Tuple[str, ...] = ()
    top_k: int = 4
    overlap: float = 0.3
    threshold: float = 100.0
    grid: Tuple[float, ...] = ()
    group_ids: Tuple[str, ...] = ()

    output_format: OutputFormatEnum = OutputFormatEnum.TABLE
    verbose: bool = False


# The data files each command cannot run without
_REQUIRED_INPUTS: Dict[AnalysisCommandType, Tuple[str, ...]] = {
    AnalysisCommand.CENTRALITY: ("snapshot",),
    AnalysisCommand.CONCENTRATION: ("roster",),
    AnalysisCommand.MERGER_SCREEN: ("roster",),
    AnalysisCommand.SENSITIVITY: ("roster", "snapshot"),
    AnalysisCommand.TREND: ("snapshot",),
    AnalysisCommand.REGRESS: ("features",),
    AnalysisCommand.VALIDATE: ("snapshot",),
}


def _parse_float(option_name: str, value: str) -> float:
    try:
        parsed_value = float(value)
    except ValueError:
        raise CommandLineParsingError(f'--{option_name} must be a number, got "{value}".')
    if not isfinite(parsed_value):
        raise CommandLineParsingError(f"--{option_name} must be a finite number, got {value}.")
    return parsed_value


def _parse_overlap(option_name: str, value: str) -> float:
    overlap = _parse_float(option_name, value)
    if not 0 <= overlap <= 1:
        raise CommandLineParsingError(f"--{option_name} must be in [0, 1], got {value}.")
    return overlap


class CommandLineParser:

    MARKETNET_USAGE = "usage: %prog COMMAND [options]\n\nCommands: {}"

    def __init__(self, marketnet_version: str) -> None:
        """Generate marketnet's command line parser.
        """
        self._cli_commands = {
            AnalysisCommandsRepository.get_implementation_cls(command).cli_connector_cls.get_cli_command(): command
            for command in AnalysisCommandsRepository.get_all_analysis_commands()
        }
        self._parser = OptionParser(
            version=marketnet_version, usage=self.MARKETNET_USAGE.format(", ".join(self._cli_commands))
        )

        # Add generic command line options to the parser
        self._add_default_options()

        # Add the options only relevant to one command
        for analysis_command in AnalysisCommandsRepository.get_all_analysis_commands():
            cli_connector_cls = AnalysisCommandsRepository.get_implementation_cls(analysis_command).cli_connector_cls
            command_options = cli_connector_cls.get_cli_options()
            if not command_options:
                continue
            command_group = OptionGroup(
                self._parser,
                f"{cli_connector_cls.get_cli_command()} options",
                cli_connector_cls.get_cli_description(),
            )
            for option in command_options:
                command_group.add_option(
                    f"--{option.option}",
                    help=option.help,
                    action=option.action,
                    dest=option.option.replace("-", "_"),
                    default=option.default,
                )
            self._parser.add_option_group(command_group)

    def parse_command_line(self, arguments: Optional[Sequence[str]] = None) -> RunConfig:
        """Parse the command line used to launch marketnet; sys.argv is used when no arguments are supplied.
        """
        (options, positional_arguments) = self._parser.parse_args(list(arguments) if arguments is not None else None)

        if not positional_arguments:
            raise CommandLineParsingError(f"No command supplied; one of {', '.join(self._cli_commands)} is required.")
        if len(positional_arguments) > 1:
            raise CommandLineParsingError(f"Unexpected arguments: {' '.join(positional_arguments[1:])}.")
        cli_command = positional_arguments[0]
        if cli_command not in self._cli_commands:
            raise CommandLineParsingError(f'Unknown command "{cli_command}".')
        analysis_command = self._cli_commands[cli_command]

        # Check that the data files the command needs were supplied
        supplied_inputs = {
            "roster": bool(options.roster),
            "snapshot": bool(options.snapshot),
            "features": bool(options.features),
        }
        for input_name in _REQUIRED_INPUTS[analysis_command]:
            if not supplied_inputs[input_name]:
                raise CommandLineParsingError(f"The {cli_command} command requires --{input_name}.")
        single_snapshot_commands = (
            AnalysisCommand.CENTRALITY,
            AnalysisCommand.CONCENTRATION,
            AnalysisCommand.SENSITIVITY,
        )
        if analysis_command in single_snapshot_commands and options.snapshot and len(options.snapshot) > 1:
            raise CommandLineParsingError(f"The {cli_command} command takes a single --snapshot.")

        metrics = tuple(options.metric or ())
        for metric in metrics:
            if metric not in CLI_METRIC_NAMES:
                raise CommandLineParsingError(
                    f'Unknown metric "{metric}"; use one of {", ".join(CLI_METRIC_NAMES)}.'
                )

        try:
            top_k = int(options.top_k)
        except ValueError:
            raise CommandLineParsingError(f'--top-k must be an integer, got "{options.top_k}".')
        if top_k < 1:
            raise CommandLineParsingError(f"--top-k must be at least 1, got {top_k}.")

        threshold = _parse_float("threshold", options.threshold)
        if threshold < 0:
            raise CommandLineParsingError(f"--threshold cannot be negative, got {options.threshold}.")

        grid: Tuple[float, ...] = ()
        if options.grid:
            grid = tuple(_parse_overlap("grid", value.strip()) for value in options.grid.split(",") if value.strip())
            if not grid:
                raise CommandLineParsingError("--grid must contain at least one overlap rate.")

        try:
            output_format = OutputFormatEnum(options.output_format)
        except ValueError:
            raise CommandLineParsingError(
                f'Unknown format "{options.output_format}"; use one of '
                f"{', '.join(output_format.value for output_format in OutputFormatEnum)}."
            )

        return RunConfig(
            analysis_command=analysis_command,
            roster_path=resolve_data_path(options.roster) if options.roster else None,
            snapshot_paths=tuple(resolve_data_path(path) for path in options.snapshot or ()),
            features_path=resolve_data_path(options.features) if options.features else None,
            metrics=metrics,
            top_k=top_k,
            overlap=_parse_overlap("overlap", options.overlap),
            threshold=threshold,
            grid=grid,
            group_ids=tuple(options.group or ()),
            output_format=output_format,
            verbose=options.verbose,
        )

    def _add_default_options(self) -> None:
        """Add default command line options to the parser.
        """
        input_group = OptionGroup(
            self._parser,
            "Input options",
            "Each file can also be one of the bundled data sets: aug2000 (a network), jun2000 (a roster) "
            "or features2000 (a feature table).",
        )
        input_group.add_option(
            "--roster", help="CSV file listing the organizations and their audience reach.", dest="roster"
        )
        input_group.add_option(
            "--snapshot",
            help="CSV file holding the adjacency matrix of the network at one date. Can be repeated.",
            dest="snapshot",
            action="append",
        )
        input_group.add_option(
            "--features", help="CSV file listing the setup year and the product features.", dest="features"
        )
        self._parser.add_option_group(input_group)

        settings_group = OptionGroup(self._parser, "Analysis options", "")
        settings_group.add_option(
            "--top-k",
            help="How many organizations to list in the rankings and to sum in CR_k. Default is 4.",
            dest="top_k",
            default="4",
        )
        self._parser.add_option_group(settings_group)

        output_group = OptionGroup(self._parser, "Output options", "")
        output_group.add_option(
            "--format",
            help="How to write the result to stdout: table (default), csv or json.",
            dest="output_format",
            default=OutputFormatEnum.TABLE.value,
        )
        output_group.add_option(
            "--verbose", help="Log debug messages to stderr.", dest="verbose", action="store_true", default=False
        )
        self._parser.add_option_group(output_group)

