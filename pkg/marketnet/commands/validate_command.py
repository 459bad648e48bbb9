from concurrent.futures._base import Future
from dataclasses import dataclass
from datetime import date
from typing import List, Optional, Tuple, TYPE_CHECKING

from marketnet.commands.command_base import (
    AnalysisCommandArguments,
    AnalysisCommandCliConnector,
    AnalysisCommandImplementation,
    AnalysisCommandResult,
    AnalysisCommandWrongUsageError,
    AnalysisInputs,
    AnalysisJob,
)
from marketnet.model import EngineRoster, NetworkSnapshot, SnapshotViolation, link_count, validate_snapshot

if TYPE_CHECKING:
    from marketnet.cli.command_line_parser import RunConfig


@dataclass(frozen=True)
class ValidateArguments(AnalysisCommandArguments):
    pass


@dataclass(frozen=True)
class SnapshotCheck:
    date: date
    node_count: int
    # Only counted for valid snapshots
    link_count: Optional[int]
    violations: Tuple[SnapshotViolation, ...]


@dataclass(frozen=True)
class ValidateCommandResult(AnalysisCommandResult):
    checks: Tuple[SnapshotCheck, ...]

    @property
    def is_ok(self) -> bool:
        return all(not check.violations for check in self.checks)


def _check_snapshot(snapshot: NetworkSnapshot, expected_roster: Optional[EngineRoster]) -> SnapshotCheck:
    validation_result = validate_snapshot(snapshot, expected_roster)
    return SnapshotCheck(
        date=snapshot.date,
        node_count=snapshot.node_count,
        link_count=link_count(snapshot) if validation_result.is_ok else None,
        violations=validation_result.violations,
    )


class _ValidateCliConnector(AnalysisCommandCliConnector[ValidateCommandResult, ValidateArguments]):

    _cli_command = "validate"
    _cli_description = "Check that each snapshot is a square 0/1 matrix without self-links, matching the roster."

    @classmethod
    def arguments_from_run_config(cls, run_config: "RunConfig") -> ValidateArguments:
        return ValidateArguments()

    @classmethod
    def result_exit_code(cls, result: ValidateCommandResult) -> int:
        return 0 if result.is_ok else 1

    @classmethod
    def result_to_console_output(cls, result: ValidateCommandResult) -> List[str]:
        result_as_txt = [cls._format_title("Snapshot Validation")]
        for check in result.checks:
            result_as_txt.append("")
            result_as_txt.append(cls._format_subtitle(f"{check.date.isoformat()} ({check.node_count} organizations)"))
            if not check.violations:
                result_as_txt.append(cls._format_field("OK", f"{check.link_count} links"))
            for violation in check.violations:
                result_as_txt.append(cls._format_field("VIOLATION", str(violation)))
        return result_as_txt

    @classmethod
    def result_to_csv_rows(cls, result: ValidateCommandResult) -> List[List[str]]:
        rows = [["date", "kind", "row", "column", "message"]]
        for check in result.checks:
            for violation in check.violations:
                rows.append(
                    [
                        check.date.isoformat(),
                        violation.kind.value,
                        "" if violation.row is None else str(violation.row),
                        "" if violation.column is None else str(violation.column),
                        violation.message,
                    ]
                )
        return rows


class ValidateImplementation(AnalysisCommandImplementation[ValidateCommandResult, ValidateArguments]):
    """Report every problem found in the snapshots instead of stopping at the first one.
    """

    cli_connector_cls = _ValidateCliConnector

    @classmethod
    def analysis_jobs_for_command(cls, inputs: AnalysisInputs, arguments: ValidateArguments) -> List[AnalysisJob]:
        if not inputs.snapshots:
            raise AnalysisCommandWrongUsageError("At least one snapshot is required.")
        return [
            AnalysisJob(function_to_call=_check_snapshot, function_arguments=[snapshot, inputs.roster])
            for snapshot in inputs.snapshots
        ]

    @classmethod
    def result_for_completed_jobs(
        cls, inputs: AnalysisInputs, arguments: ValidateArguments, completed_jobs: List[Future]
    ) -> ValidateCommandResult:
        if len(completed_jobs) != len(inputs.snapshots):
            raise RuntimeError(f"Unexpected number of jobs received: {completed_jobs}")
        return ValidateCommandResult(checks=tuple(job.result() for job in completed_jobs))
