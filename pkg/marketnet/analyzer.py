import logging
from concurrent.futures import Future, wait
from concurrent.futures.thread import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum, auto, unique
from traceback import TracebackException
from typing import Iterable, List, Optional

from marketnet.commands.analysis_commands import AnalysisCommandType, AnalysisCommandsRepository
from marketnet.commands.command_base import (
    AnalysisCommandArguments,
    AnalysisCommandResult,
    AnalysisCommandWrongUsageError,
    AnalysisInputs,
)
from marketnet.errors import MarketNetError

_logger = logging.getLogger(__name__)


@unique
class AnalysisCommandErrorReasonEnum(Enum):
    BUG_IN_MARKETNET = auto()
    DATA_ERROR = auto()
    WRONG_USAGE = auto()


@dataclass(frozen=True)
class AnalysisCommandError:
    """An error that prevented an analysis command from completing.
    """

    reason: AnalysisCommandErrorReasonEnum
    exception_trace: TracebackException


@dataclass(frozen=True)
class AnalysisRequest:
    """A request to run one analysis command on the supplied inputs.
    """

    analysis_command: AnalysisCommandType
    inputs: AnalysisInputs
    arguments: AnalysisCommandArguments


@dataclass(frozen=True)
class AnalysisResult:
    """The result of an AnalysisRequest completed by an Analyzer; exactly one of result and error is set.
    """

    analysis_command: AnalysisCommandType
    result: Optional[AnalysisCommandResult]
    error: Optional[AnalysisCommandError]


@dataclass(frozen=True)
class _QueuedAnalysis:
    analysis_request: AnalysisRequest
    # In the order the command created them
    queued_jobs: List[Future]
    error_during_queuing: Optional[AnalysisCommandError]


def _error_for_exception(exception: Exception) -> AnalysisCommandError:
    if isinstance(exception, AnalysisCommandWrongUsageError):
        reason = AnalysisCommandErrorReasonEnum.WRONG_USAGE
    elif isinstance(exception, MarketNetError):
        reason = AnalysisCommandErrorReasonEnum.DATA_ERROR
    else:
        reason = AnalysisCommandErrorReasonEnum.BUG_IN_MARKETNET
    return AnalysisCommandError(reason=reason, exception_trace=TracebackException.from_exception(exception))


class Analyzer:
    """The main class to use in order to schedule marketnet's analysis commands from Python.

    Results are returned in the order the analyses were queued.
    """

    def __init__(self, concurrent_jobs_limit: Optional[int] = None):
        self._concurrent_jobs_count = 5 if concurrent_jobs_limit is None else concurrent_jobs_limit
        self._thread_pool: Optional[ThreadPoolExecutor] = None
        self._queued_analyses: List[_QueuedAnalysis] = []

    def _get_thread_pool(self) -> ThreadPoolExecutor:
        if self._thread_pool is None:
            self._thread_pool = ThreadPoolExecutor(max_workers=self._concurrent_jobs_count)
        return self._thread_pool

    def queue_analysis(self, analysis_request: AnalysisRequest) -> None:
        implementation_cls = AnalysisCommandsRepository.get_implementation_cls(analysis_request.analysis_command)

        jobs_to_run = []
        error_during_queuing = None
        try:
            jobs_to_run = implementation_cls.analysis_jobs_for_command(
                inputs=analysis_request.inputs, arguments=analysis_request.arguments
            )
        # Instantly "complete" the analysis if the call to create the jobs failed
        except Exception as e:
            error_during_queuing = _error_for_exception(e)

        thread_pool = self._get_thread_pool()
        queued_jobs = [thread_pool.submit(job.function_to_call, *job.function_arguments) for job in jobs_to_run]
        _logger.debug(f"Queued {len(queued_jobs)} jobs for {analysis_request.analysis_command}")
        self._queued_analyses.append(
            _QueuedAnalysis(
                analysis_request=analysis_request, queued_jobs=queued_jobs, error_during_queuing=error_during_queuing
            )
        )

    def get_results(self) -> Iterable[AnalysisResult]:
        """Return the completed analyses, in the order they were queued.
        """
        for queued_analysis in self._queued_analyses:
            request = queued_analysis.analysis_request
            if queued_analysis.error_during_queuing:
                yield AnalysisResult(
                    analysis_command=request.analysis_command, result=None, error=queued_analysis.error_during_queuing
                )
                continue

            wait(queued_analysis.queued_jobs)
            implementation_cls = AnalysisCommandsRepository.get_implementation_cls(request.analysis_command)
            try:
                result = implementation_cls.result_for_completed_jobs(
                    request.inputs, request.arguments, queued_analysis.queued_jobs
                )
            # Exceptions raised by the jobs are re-raised when the command reads their result
            except Exception as e:
                _logger.debug(f"Analysis {request.analysis_command} failed: {e}")
                yield AnalysisResult(
                    analysis_command=request.analysis_command, result=None, error=_error_for_exception(e)
                )
                continue

            yield AnalysisResult(analysis_command=request.analysis_command, result=result, error=None)

        self._shutdown_thread_pool()

    def _shutdown_thread_pool(self) -> None:
        self._queued_analyses = []
        if self._thread_pool is not None:
            self._thread_pool.shutdown(wait=True)
            self._thread_pool = None

    def emergency_shutdown(self) -> None:
        for queued_analysis in self._queued_analyses:
            for future in queued_analysis.queued_jobs:
                future.cancel()
        self._shutdown_thread_pool()
