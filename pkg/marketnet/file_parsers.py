"""Parsers and emitters for the roster, snapshot and feature table CSV files.

Lines starting with "#" are comments (the bundled files use them for provenance notes), except for the "#date" line
of a snapshot file. Blank lines are ignored everywhere.
"""
import csv
import io
import logging
from datetime import date
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from marketnet.errors import DataFileParsingError, InvalidFeatureTableError, InvalidRosterError
from marketnet.model import (
    EngineRoster,
    NetworkSnapshot,
    RosterEntry,
    SnapshotSeries,
    validate_snapshot,
)
from marketnet.stats import FeatureRow, FeatureTable

_logger = logging.getLogger(__name__)


_DATA_DIRECTORY = Path(__file__).parent / "data"

BUNDLED_DATA_ALIASES: Dict[str, str] = {
    "aug2000": "aug2000_adjacency.csv",
    "jun2000": "jun2000_reach.csv",
    "features2000": "features_2000.csv",
}

_ROSTER_HEADER = ("id", "name", "setup_year", "reach_pct")
_DATE_MARKER = "#date"


def resolve_data_path(path_or_alias: str) -> Path:
    """Turn the name of a bundled data file (ie. "aug2000") into its path; anything else is taken as a path.
    """
    if path_or_alias in BUNDLED_DATA_ALIASES:
        resolved_path = _DATA_DIRECTORY / BUNDLED_DATA_ALIASES[path_or_alias]
        _logger.debug(f"Resolved {path_or_alias} to bundled file {resolved_path}")
        return resolved_path
    return Path(path_or_alias)


def _read_rows(file_path: Path) -> Iterator[Tuple[int, List[str]]]:
    """Yield the line number and the cells of each row that is neither blank nor a comment.

    Comments are only recognized before the header, so an id starting with "#" is read as data.
    """
    try:
        with open(file_path, encoding="utf-8", newline="") as csv_file:
            csv_content = csv_file.read()
    except OSError as e:
        raise DataFileParsingError(
            file_path=file_path, line_number=0, column_number=0, error_message=e.strerror or str(e)
        )

    reader = csv.reader(io.StringIO(csv_content))
    is_before_header = True
    for row in reader:
        cells = [cell.strip() for cell in row]
        if not any(cells):
            continue
        if is_before_header and cells[0].startswith("#") and cells[0] != _DATE_MARKER:
            _logger.debug(f"{file_path}:{reader.line_num}: skipping comment {','.join(row)}")
            continue
        if cells[0] != _DATE_MARKER:
            is_before_header = False
        yield reader.line_num, cells


def _parse_optional_int(file_path: Path, line_number: int, column_number: int, cell: str) -> Optional[int]:
    if not cell:
        return None
    try:
        return int(cell)
    except ValueError:
        raise DataFileParsingError(file_path, line_number, column_number, f'"{cell}" is not an integer')


def _parse_optional_float(file_path: Path, line_number: int, column_number: int, cell: str) -> Optional[float]:
    if not cell:
        return None
    try:
        return float(cell)
    except ValueError:
        raise DataFileParsingError(file_path, line_number, column_number, f'"{cell}" is not a number')


def parse_roster(file_path: Path) -> EngineRoster:
    """Parse a roster CSV with the header id,name,setup_year,reach_pct; empty cells are absent values.
    """
    rows = _read_rows(file_path)
    header_line = next(rows, None)
    if header_line is None:
        raise DataFileParsingError(file_path, 0, 0, "empty roster file")
    line_number, header = header_line
    if tuple(header) != _ROSTER_HEADER:
        raise DataFileParsingError(file_path, line_number, 1, f"expected the header {','.join(_ROSTER_HEADER)}")

    entries = []
    line_number_per_id: Dict[str, int] = {}
    for line_number, cells in rows:
        if len(cells) != len(_ROSTER_HEADER):
            raise DataFileParsingError(
                file_path, line_number, 0, f"expected {len(_ROSTER_HEADER)} cells, found {len(cells)}"
            )
        node_id, name, setup_year_cell, reach_cell = cells
        if node_id in line_number_per_id:
            raise DataFileParsingError(
                file_path,
                line_number,
                1,
                f'duplicate id "{node_id}" (lines {line_number_per_id[node_id]} and {line_number})',
            )
        line_number_per_id[node_id] = line_number
        entries.append(
            RosterEntry(
                id=node_id,
                name=name,
                setup_year=_parse_optional_int(file_path, line_number, 3, setup_year_cell),
                reach_pct=_parse_optional_float(file_path, line_number, 4, reach_cell),
            )
        )

    try:
        roster = EngineRoster(entries=tuple(entries))
    except InvalidRosterError as e:
        raise DataFileParsingError(file_path, 0, 0, str(e))
    _logger.debug(f"Parsed roster of {len(roster)} organizations from {file_path}")
    return roster


def parse_snapshot(file_path: Path, roster: Optional[EngineRoster] = None, validate: bool = True) -> NetworkSnapshot:
    """Parse an adjacency matrix CSV into a snapshot.

    When no roster is supplied, one is built from the ids in the header. Cells other than 0 or 1 are always rejected;
    the shape and the diagonal are only checked when validate is True, so that callers can report every violation
    with validate_snapshot() instead.
    """
    rows = _read_rows(file_path)
    date_line = next(rows, None)
    if date_line is None or date_line[1][0] != _DATE_MARKER or len(date_line[1]) < 2:
        raise DataFileParsingError(file_path, date_line[0] if date_line else 0, 1, "expected a #date,YYYY-MM-DD row")
    line_number, date_cells = date_line
    try:
        snapshot_date = date.fromisoformat(date_cells[1])
    except ValueError:
        raise DataFileParsingError(file_path, line_number, 2, f'"{date_cells[1]}" is not a YYYY-MM-DD date')

    header_line = next(rows, None)
    if header_line is None or header_line[1][0] != "id":
        raise DataFileParsingError(file_path, header_line[0] if header_line else 0, 1, "expected an id,... header row")
    header_line_number, header = header_line
    header_ids = tuple(header[1:])

    if roster is None:
        try:
            roster = EngineRoster.from_ids(header_ids)
        except InvalidRosterError as e:
            raise DataFileParsingError(file_path, header_line_number, 0, str(e))
    elif header_ids != roster.ids:
        raise DataFileParsingError(
            file_path, header_line_number, 0, "the header ids do not match the roster (same ids, same order)"
        )

    adjacency = []
    row_line_numbers = []
    for row_index, (line_number, cells) in enumerate(rows):
        expected_id = header_ids[row_index] if row_index < len(header_ids) else None
        if cells[0] != expected_id:
            raise DataFileParsingError(
                file_path, line_number, 1, f'expected row "{expected_id}" but found "{cells[0]}"'
            )
        matrix_row = []
        for column_index, cell in enumerate(cells[1:]):
            if cell not in ("0", "1"):
                raise DataFileParsingError(file_path, line_number, column_index + 2, f'malformed cell "{cell}"')
            matrix_row.append(int(cell))
        adjacency.append(tuple(matrix_row))
        row_line_numbers.append(line_number)

    snapshot = NetworkSnapshot(date=snapshot_date, roster=roster, adjacency=tuple(adjacency))
    if validate:
        validation_result = validate_snapshot(snapshot)
        if not validation_result.is_ok:
            first_violation = validation_result.violations[0]
            raise DataFileParsingError(
                file_path,
                row_line_numbers[first_violation.row] if first_violation.row is not None else 0,
                first_violation.column + 2 if first_violation.column is not None else 0,
                str(first_violation),
            )
    _logger.debug(f"Parsed snapshot {snapshot.date} of {snapshot.node_count} organizations from {file_path}")
    return snapshot


def parse_series(file_paths: Sequence[Path], roster: Optional[EngineRoster] = None) -> SnapshotSeries:
    """Parse several snapshot files sharing one roster into a series, in date order.
    """
    snapshots = []
    for file_path in file_paths:
        snapshot = parse_snapshot(file_path, roster)
        roster = snapshot.roster
        snapshots.append(snapshot)
    return SnapshotSeries(snapshots=tuple(sorted(snapshots, key=lambda snapshot: snapshot.date)))


def parse_features(file_path: Path) -> FeatureTable:
    """Parse a feature table CSV: an id and a setup_year column, an optional reach_pct column and 0/1 feature columns.
    """
    rows = _read_rows(file_path)
    header_line = next(rows, None)
    if header_line is None:
        raise DataFileParsingError(file_path, 0, 0, "empty feature table file")
    header_line_number, header = header_line
    if header[:2] != ["id", "setup_year"]:
        raise DataFileParsingError(file_path, header_line_number, 1, "the header must start with id,setup_year")
    reach_column = header.index("reach_pct") if "reach_pct" in header else None
    feature_columns = [index for index in range(2, len(header)) if index != reach_column]

    feature_rows = []
    line_number_per_id: Dict[str, int] = {}
    for line_number, cells in rows:
        if len(cells) != len(header):
            raise DataFileParsingError(file_path, line_number, 0, f"expected {len(header)} cells, found {len(cells)}")
        node_id = cells[0]
        if node_id in line_number_per_id:
            raise DataFileParsingError(
                file_path,
                line_number,
                1,
                f'duplicate id "{node_id}" (lines {line_number_per_id[node_id]} and {line_number})',
            )
        line_number_per_id[node_id] = line_number

        setup_year = _parse_optional_int(file_path, line_number, 2, cells[1])
        if setup_year is None:
            raise DataFileParsingError(file_path, line_number, 2, "missing setup year")
        features = []
        for column in feature_columns:
            if cells[column] not in ("0", "1"):
                raise DataFileParsingError(file_path, line_number, column + 1, f'malformed flag "{cells[column]}"')
            features.append((header[column], int(cells[column])))
        feature_rows.append(
            FeatureRow(
                id=node_id,
                setup_year=setup_year,
                features=tuple(features),
                reach_pct=(
                    _parse_optional_float(file_path, line_number, reach_column + 1, cells[reach_column])
                    if reach_column is not None
                    else None
                ),
            )
        )

    try:
        return FeatureTable(rows=tuple(feature_rows))
    except InvalidFeatureTableError as e:
        raise DataFileParsingError(file_path, 0, 0, str(e))


def _format_optional(value: Optional[float]) -> str:
    return "" if value is None else repr(value)


def roster_to_csv(roster: EngineRoster) -> str:
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(_ROSTER_HEADER)
    for entry in roster:
        writer.writerow(
            [
                entry.id,
                entry.name,
                "" if entry.setup_year is None else str(entry.setup_year),
                _format_optional(entry.reach_pct),
            ]
        )
    return output.getvalue()


def snapshot_to_csv(snapshot: NetworkSnapshot) -> str:
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow([_DATE_MARKER, snapshot.date.isoformat()])
    writer.writerow(["id", *snapshot.roster.ids])
    for node_id, row in zip(snapshot.roster.ids, snapshot.adjacency):
        writer.writerow([node_id, *(str(cell) for cell in row)])
    return output.getvalue()
