import logging
import signal
import sys
from typing import Any, List, Optional, Sequence, TextIO

from marketnet.__version__ import __version__
from marketnet.analyzer import AnalysisCommandErrorReasonEnum, AnalysisRequest, AnalysisResult, Analyzer
from marketnet.cli.command_line_parser import CommandLineParser, CommandLineParsingError
from marketnet.cli.input_loader import load_analysis_inputs
from marketnet.cli.output_hub import OutputHub
from marketnet.commands.analysis_commands import AnalysisCommandsRepository
from marketnet.errors import MarketNetError

EXIT_SUCCESS = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE_ERROR = 2

global_analyzer: Optional[Analyzer] = None


def sigint_handler(signum: int, frame: Any) -> None:
    print("Analysis interrupted... shutting down.", file=sys.stderr)
    if global_analyzer:
        global_analyzer.emergency_shutdown()
    sys.exit(EXIT_DATA_ERROR)


def _write_analysis_error(analysis_result: AnalysisResult, file_to: TextIO) -> int:
    error = analysis_result.error
    if error is None:
        return EXIT_SUCCESS

    if error.reason == AnalysisCommandErrorReasonEnum.BUG_IN_MARKETNET:
        file_to.write(f"  Unexpected error while running {analysis_result.analysis_command}:\n")
        file_to.write("".join(error.exception_trace.format()))
        return EXIT_DATA_ERROR

    error_message = "".join(error.exception_trace.format_exception_only()).strip()
    if error.reason == AnalysisCommandErrorReasonEnum.WRONG_USAGE:
        file_to.write(f"  Command line error: {error_message}\n  Use -h for help.\n")
        return EXIT_USAGE_ERROR
    file_to.write(f"  Data error: {error_message}\n")
    return EXIT_DATA_ERROR


def main(arguments: Optional[Sequence[str]] = None, stdout: TextIO = sys.stdout, stderr: TextIO = sys.stderr) -> int:
    global global_analyzer

    # Handle SIGINT to terminate the analysis
    signal.signal(signal.SIGINT, sigint_handler)

    marketnet_parser = CommandLineParser(__version__)
    try:
        run_config = marketnet_parser.parse_command_line(arguments)
    except CommandLineParsingError as e:
        stderr.write(e.get_error_msg() + "\n")
        return EXIT_USAGE_ERROR

    logging.basicConfig(
        stream=stderr,
        level=logging.DEBUG if run_config.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        inputs = load_analysis_inputs(run_config)
    except MarketNetError as e:
        stderr.write(f"  Data error: {e}\n")
        return EXIT_DATA_ERROR

    cli_connector_cls = AnalysisCommandsRepository.get_implementation_cls(run_config.analysis_command).cli_connector_cls
    global_analyzer = Analyzer()
    global_analyzer.queue_analysis(
        AnalysisRequest(
            analysis_command=run_config.analysis_command,
            inputs=inputs,
            arguments=cli_connector_cls.arguments_from_run_config(run_config),
        )
    )

    # Nothing is written to stdout unless every analysis succeeded
    all_results: List[AnalysisResult] = list(global_analyzer.get_results())
    for analysis_result in all_results:
        exit_code = _write_analysis_error(analysis_result, stderr)
        if exit_code != EXIT_SUCCESS:
            return exit_code

    output_hub = OutputHub(stdout)
    output_hub.command_line_parsed(run_config)
    exit_code = EXIT_SUCCESS
    for analysis_result in all_results:
        output_hub.analysis_completed(analysis_result)
        if analysis_result.result is not None:
            exit_code = max(exit_code, cli_connector_cls.result_exit_code(analysis_result.result))
    output_hub.analyses_completed()
    return exit_code


def cli_entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    cli_entry_point()
