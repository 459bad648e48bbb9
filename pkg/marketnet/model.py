"""Domain types for rosters, network snapshots and market share tables, plus the degree and density metrics.
"""
from dataclasses import dataclass
from datetime import date
from enum import Enum, unique
from functools import cached_property
from math import sqrt
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from marketnet.errors import (
    DegenerateReachError,
    InsufficientNodesError,
    InvalidParameterError,
    InvalidRosterError,
    InvalidSeriesError,
    InvalidSnapshotError,
    MissingReachError,
    UnknownNodeError,
)


@dataclass(frozen=True)
class RosterEntry:
    """One organization of the market.

    Attributes:
        id: A short unique token, used as the row/column label in snapshot files.
        name: The display name.
        setup_year: The calendar year the organization was set up, if known.
        reach_pct: The percentage of the surveyed audience that visited the organization's site, if known.
    """

    id: str
    name: str
    setup_year: Optional[int] = None
    reach_pct: Optional[float] = None


@dataclass(frozen=True)
class EngineRoster:
    """The ordered list of organizations in a market; the order defines the row/column order of snapshots.
    """

    entries: Tuple[RosterEntry, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))

        seen_ids = set()
        for entry in self.entries:
            if not entry.id:
                raise InvalidRosterError("Roster entries must have a non-empty id.")
            if entry.id in seen_ids:
                raise InvalidRosterError(f'Duplicate id "{entry.id}" in roster.')
            seen_ids.add(entry.id)

            # Reach values can sum to more than 100 as one surfer can visit many sites, but each one is a percentage
            if entry.reach_pct is not None and not 0 <= entry.reach_pct <= 100:
                raise InvalidRosterError(f'Audience reach of "{entry.id}" must be in [0, 100]: {entry.reach_pct}.')

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[RosterEntry]:
        return iter(self.entries)

    @cached_property
    def ids(self) -> Tuple[str, ...]:
        return tuple(entry.id for entry in self.entries)

    @cached_property
    def _index_per_id(self) -> Dict[str, int]:
        return {node_id: index for index, node_id in enumerate(self.ids)}

    def index_of(self, node_id: str) -> int:
        try:
            return self._index_per_id[node_id]
        except KeyError:
            raise UnknownNodeError(node_id=node_id)

    def entry(self, node_id: str) -> RosterEntry:
        return self.entries[self.index_of(node_id)]

    @classmethod
    def from_ids(cls, node_ids: Sequence[str]) -> "EngineRoster":
        """Helper factory method for a roster that only has ids (ie. one built from a snapshot file's header).
        """
        return cls(entries=tuple(RosterEntry(id=node_id, name=node_id) for node_id in node_ids))


@unique
class SnapshotViolationEnum(Enum):
    NON_SQUARE = "non-square"
    ROSTER_MISMATCH = "roster mismatch"
    SELF_LINK = "self-link"
    NON_BINARY = "non-binary cell"


@dataclass(frozen=True)
class SnapshotViolation:
    """One problem found in a snapshot's adjacency matrix; row and column are 0-based, None when not applicable.
    """

    kind: SnapshotViolationEnum
    message: str
    row: Optional[int] = None
    column: Optional[int] = None

    def __str__(self) -> str:
        if self.row is not None and self.column is not None:
            return f"{self.kind.value} at ({self.row},{self.column}): {self.message}"
        return f"{self.kind.value}: {self.message}"


@dataclass(frozen=True)
class SnapshotValidationResult:
    violations: Tuple[SnapshotViolation, ...]

    @property
    def is_ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class NetworkSnapshot:
    """Who links to whom at a given date.

    Attributes:
        date: When the network was observed.
        roster: The organizations indexing the rows and columns of the adjacency matrix.
        adjacency: Cell (i, j) is 1 when organization i places a hyperlink pointing to organization j.
    """

    date: date
    roster: EngineRoster
    adjacency: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "adjacency", tuple(tuple(row) for row in self.adjacency))

    @property
    def node_count(self) -> int:
        return len(self.roster)

    @cached_property
    def validation_result(self) -> SnapshotValidationResult:
        return validate_snapshot(self)

    @cached_property
    def matrix(self) -> np.ndarray:
        """The adjacency as a read-only numpy array; only available on a valid snapshot.
        """
        ensure_valid_snapshot(self)
        matrix = np.array(self.adjacency, dtype=np.int64).reshape((self.node_count, self.node_count))
        matrix.setflags(write=False)
        return matrix


@dataclass(frozen=True)
class SnapshotSeries:
    """Snapshots of one roster, in strictly increasing date order.
    """

    snapshots: Tuple[NetworkSnapshot, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "snapshots", tuple(self.snapshots))
        if not self.snapshots:
            raise InvalidSeriesError("A snapshot series needs at least one snapshot.")

        roster = self.snapshots[0].roster
        for previous_snapshot, snapshot in zip(self.snapshots, self.snapshots[1:]):
            if snapshot.roster != roster:
                raise InvalidSeriesError(f"Snapshot {snapshot.date} does not use the same roster as the series.")
            if snapshot.date <= previous_snapshot.date:
                raise InvalidSeriesError(f"Snapshot dates must be strictly increasing: {snapshot.date}.")

    @property
    def roster(self) -> EngineRoster:
        return self.snapshots[0].roster

    @property
    def dates(self) -> Tuple[date, ...]:
        return tuple(snapshot.date for snapshot in self.snapshots)


# Tolerance on the sum of the shares
_SHARES_SUM_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ShareTable:
    """Market shares as fractions summing to 1, in roster order.
    """

    ids: Tuple[str, ...]
    values: Tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "values", tuple(float(value) for value in self.values))
        if len(self.ids) != len(self.values):
            raise InvalidParameterError("A share table needs exactly one share per id.")
        if len(set(self.ids)) != len(self.ids):
            raise InvalidParameterError("A share table cannot contain the same id twice.")
        if any(value < 0 for value in self.values):
            raise InvalidParameterError("Market shares cannot be negative.")
        if abs(sum(self.values) - 1.0) > _SHARES_SUM_TOLERANCE:
            raise InvalidParameterError(f"Market shares must sum to 1, got {sum(self.values)!r}.")

    def __len__(self) -> int:
        return len(self.ids)

    def share_of(self, node_id: str) -> float:
        try:
            return self.values[self.ids.index(node_id)]
        except ValueError:
            raise UnknownNodeError(node_id=node_id)

    def as_dict(self) -> Dict[str, float]:
        return dict(zip(self.ids, self.values))


def validate_snapshot(
    snapshot: NetworkSnapshot, expected_roster: Optional[EngineRoster] = None
) -> SnapshotValidationResult:
    """Check the shape, the diagonal and the cells of a snapshot; violations are returned, never raised.

    When an expected roster is supplied, the snapshot's own ids must list the same organizations in the same order.
    """
    violations: List[SnapshotViolation] = []
    if expected_roster is not None and snapshot.roster.ids != expected_roster.ids:
        violations.append(
            SnapshotViolation(
                kind=SnapshotViolationEnum.ROSTER_MISMATCH,
                message=_describe_id_mismatch(snapshot.roster, expected_roster),
            )
        )
    row_count = len(snapshot.adjacency)
    column_counts = {len(row) for row in snapshot.adjacency}

    is_square = all(column_count == row_count for column_count in column_counts)
    if not is_square:
        columns_str = "/".join(str(count) for count in sorted(column_counts)) if column_counts else "0"
        violations.append(
            SnapshotViolation(
                kind=SnapshotViolationEnum.NON_SQUARE, message=f"{row_count} rows x {columns_str} columns"
            )
        )
    elif row_count != snapshot.node_count:
        violations.append(
            SnapshotViolation(
                kind=SnapshotViolationEnum.ROSTER_MISMATCH,
                message=f"{row_count}x{row_count} matrix for a roster of {snapshot.node_count}",
            )
        )

    for row_index, row in enumerate(snapshot.adjacency):
        for column_index, cell in enumerate(row):
            if cell not in (0, 1):
                violations.append(
                    SnapshotViolation(
                        kind=SnapshotViolationEnum.NON_BINARY,
                        message=f"found {cell!r}",
                        row=row_index,
                        column=column_index,
                    )
                )
            elif cell == 1 and row_index == column_index:
                violations.append(
                    SnapshotViolation(
                        kind=SnapshotViolationEnum.SELF_LINK,
                        message="the diagonal must be all zero",
                        row=row_index,
                        column=column_index,
                    )
                )

    return SnapshotValidationResult(violations=tuple(violations))


def _describe_id_mismatch(found_roster: EngineRoster, expected_roster: EngineRoster) -> str:
    found_ids = set(found_roster.ids)
    expected_ids = set(expected_roster.ids)
    missing_ids = [node_id for node_id in expected_roster.ids if node_id not in found_ids]
    unexpected_ids = [node_id for node_id in found_roster.ids if node_id not in expected_ids]
    if not missing_ids and not unexpected_ids:
        return "the matrix lists the roster's organizations in another order"
    descriptions = []
    if missing_ids:
        descriptions.append(f"missing {', '.join(missing_ids)}")
    if unexpected_ids:
        descriptions.append(f"not in the roster: {', '.join(unexpected_ids)}")
    return "; ".join(descriptions)


def ensure_valid_snapshot(snapshot: NetworkSnapshot) -> None:
    validation_result = snapshot.validation_result
    if not validation_result.is_ok:
        raise InvalidSnapshotError(snapshot_date=str(snapshot.date), violations=validation_result.violations)


def in_degree(snapshot: NetworkSnapshot, node_id: str) -> int:
    """The number of other organizations linking to the node (column sum).
    """
    return int(snapshot.matrix[:, snapshot.roster.index_of(node_id)].sum())


def out_degree(snapshot: NetworkSnapshot, node_id: str) -> int:
    """The number of other organizations the node links to (row sum).
    """
    return int(snapshot.matrix[snapshot.roster.index_of(node_id), :].sum())


def in_degrees(snapshot: NetworkSnapshot) -> Tuple[int, ...]:
    return tuple(int(value) for value in snapshot.matrix.sum(axis=0))


def out_degrees(snapshot: NetworkSnapshot) -> Tuple[int, ...]:
    return tuple(int(value) for value in snapshot.matrix.sum(axis=1))


def link_count(snapshot: NetworkSnapshot) -> int:
    return int(snapshot.matrix.sum())


def isolates(snapshot: NetworkSnapshot) -> Tuple[str, ...]:
    """The organizations that neither link to nor are linked by any other organization.
    """
    total_degrees = snapshot.matrix.sum(axis=0) + snapshot.matrix.sum(axis=1)
    return tuple(node_id for node_id, degree in zip(snapshot.roster.ids, total_degrees) if degree == 0)


def density(snapshot: NetworkSnapshot) -> float:
    """The fraction of the n(n-1) possible directed links that are present.
    """
    node_count = snapshot.node_count
    if node_count < 2:
        raise InsufficientNodesError(operation="density", node_count=node_count, minimum_node_count=2)
    return link_count(snapshot) / (node_count * (node_count - 1))


def density_stdev(snapshot: NetworkSnapshot) -> float:
    """The standard deviation of the off-diagonal cells seen as one Bernoulli variable, sqrt(d(1-d)).
    """
    snapshot_density = density(snapshot)
    return sqrt(snapshot_density * (1 - snapshot_density))


def shares_from_reach(roster: EngineRoster) -> ShareTable:
    """Normalize the audience reach of every roster entry into market shares.

    The roster is taken to be the whole market, so the shares are the reach values divided by their sum.
    """
    reach_values = []
    for entry in roster:
        if entry.reach_pct is None:
            raise MissingReachError(node_id=entry.id)
        reach_values.append(entry.reach_pct)

    total_reach = sum(reach_values)
    if total_reach <= 0:
        raise DegenerateReachError("Cannot derive market shares: the audience reach of every entry is zero.")

    return ShareTable(ids=roster.ids, values=tuple(reach / total_reach for reach in reach_values))
