"""Analysis of a network over several snapshots: average centrality per date, trends and group comparisons.
"""
from dataclasses import dataclass
from datetime import date
from enum import Enum, unique
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from marketnet.centrality import CentralityMetricEnum, betweenness, degree_report, information_centrality
from marketnet.errors import InsufficientObservationsError, InvalidParameterError
from marketnet.model import NetworkSnapshot, SnapshotSeries, density, density_stdev, in_degrees, out_degrees


@unique
class SeriesMetricEnum(Enum):
    MEAN_INDEGREE = "mean_indegree"
    MEAN_OUTDEGREE = "mean_outdegree"
    MEAN_BETWEENNESS = "mean_betweenness"
    MEAN_INFORMATION = "mean_information"
    DENSITY = "density"


@unique
class TrendVerdictEnum(Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    FLAT = "flat"
    NON_MONOTONIC_UP = "non-monotonic-up"
    NON_MONOTONIC_DOWN = "non-monotonic-down"


@dataclass(frozen=True)
class SeriesRow:
    """The average centrality of the organizations at one date; every stdev is a population stdev.
    """

    date: date
    mean_indegree: float
    stdev_indegree: float
    mean_outdegree: float
    stdev_outdegree: float
    mean_betweenness: float
    stdev_betweenness: float
    mean_information: float
    stdev_information: float
    density: float
    density_stdev: float

    def value_of(self, metric: SeriesMetricEnum) -> float:
        return getattr(self, metric.value)


@dataclass(frozen=True)
class SeriesReport:
    rows: Tuple[SeriesRow, ...]
    # Only available for series of at least two snapshots
    trends: Tuple[Tuple[SeriesMetricEnum, TrendVerdictEnum], ...]

    def values_of(self, metric: SeriesMetricEnum) -> Tuple[float, ...]:
        return tuple(row.value_of(metric) for row in self.rows)


def summarize_snapshot(snapshot: NetworkSnapshot) -> SeriesRow:
    indegree = degree_report(snapshot, CentralityMetricEnum.INDEGREE)
    outdegree = degree_report(snapshot, CentralityMetricEnum.OUTDEGREE)
    betweenness_report = betweenness(snapshot)
    information_report = information_centrality(snapshot)
    return SeriesRow(
        date=snapshot.date,
        mean_indegree=indegree.mean,
        stdev_indegree=indegree.stdev,
        mean_outdegree=outdegree.mean,
        stdev_outdegree=outdegree.stdev,
        mean_betweenness=betweenness_report.mean,
        stdev_betweenness=betweenness_report.stdev,
        mean_information=information_report.mean,
        stdev_information=information_report.stdev,
        density=density(snapshot),
        density_stdev=density_stdev(snapshot),
    )


def trend_verdict(values: Sequence[float]) -> TrendVerdictEnum:
    """Compare the last value with the first one, and check whether any step went the other way.

    Equal consecutive values do not break monotonicity. A series ending where it started is flat.
    """
    if len(values) < 2:
        raise InsufficientObservationsError(observation_count=len(values), minimum_observation_count=2)

    steps = [after - before for before, after in zip(values, values[1:])]
    if values[-1] > values[0]:
        return TrendVerdictEnum.NON_MONOTONIC_UP if any(step < 0 for step in steps) else TrendVerdictEnum.INCREASING
    elif values[-1] < values[0]:
        return TrendVerdictEnum.NON_MONOTONIC_DOWN if any(step > 0 for step in steps) else TrendVerdictEnum.DECREASING
    else:
        return TrendVerdictEnum.FLAT


def assemble_series_report(rows: Iterable[SeriesRow]) -> SeriesReport:
    """Build the report from rows already computed, in date order.
    """
    all_rows = tuple(rows)
    trends: Tuple[Tuple[SeriesMetricEnum, TrendVerdictEnum], ...] = ()
    if len(all_rows) >= 2:
        trends = tuple(
            (metric, trend_verdict([row.value_of(metric) for row in all_rows])) for metric in SeriesMetricEnum
        )
    return SeriesReport(rows=all_rows, trends=trends)


def summarize_series(series: SnapshotSeries) -> SeriesReport:
    return assemble_series_report(summarize_snapshot(snapshot) for snapshot in series.snapshots)


def structuration_trend(report: SeriesReport, metric: SeriesMetricEnum) -> TrendVerdictEnum:
    return trend_verdict(report.values_of(metric))


@dataclass(frozen=True)
class GroupSnapshotMeans:
    date: date
    group_mean_indegree: float
    group_mean_outdegree: float
    rest_mean_indegree: float
    rest_mean_outdegree: float


@dataclass(frozen=True)
class MemberMeans:
    """The degrees of one group member, averaged over every snapshot of the series.
    """

    id: str
    mean_indegree: float
    mean_outdegree: float


@dataclass(frozen=True)
class GroupComparison:
    """How a group of organizations links compared to the rest of the market.

    Attributes:
        group_ids: The members of the group, in roster order.
        rest_ids: Every other organization, in roster order.
        per_snapshot: The mean degrees of both groups at each date.
        group_mean_indegree: The per-snapshot group means, averaged over the series.
        group_mean_outdegree: The per-snapshot group means, averaged over the series.
        rest_mean_indegree: The per-snapshot means of the rest, averaged over the series.
        rest_mean_outdegree: The per-snapshot means of the rest, averaged over the series.
        member_means: The mean degrees of each group member over the series.
    """

    group_ids: Tuple[str, ...]
    rest_ids: Tuple[str, ...]
    per_snapshot: Tuple[GroupSnapshotMeans, ...]
    group_mean_indegree: float
    group_mean_outdegree: float
    rest_mean_indegree: float
    rest_mean_outdegree: float
    member_means: Tuple[MemberMeans, ...]


def compare_groups(series: SnapshotSeries, group_ids: Iterable[str]) -> GroupComparison:
    roster = series.roster
    requested_ids = set(group_ids)
    for node_id in sorted(requested_ids):
        roster.index_of(node_id)
    if not requested_ids or len(requested_ids) == len(roster):
        raise InvalidParameterError("The group must contain at least one organization, but not all of them.")

    group_indexes = [index for index, node_id in enumerate(roster.ids) if node_id in requested_ids]
    rest_indexes = [index for index, node_id in enumerate(roster.ids) if node_id not in requested_ids]

    per_snapshot: List[GroupSnapshotMeans] = []
    all_indegrees = []
    all_outdegrees = []
    for snapshot in series.snapshots:
        indegrees = np.array(in_degrees(snapshot), dtype=np.float64)
        outdegrees = np.array(out_degrees(snapshot), dtype=np.float64)
        all_indegrees.append(indegrees)
        all_outdegrees.append(outdegrees)
        per_snapshot.append(
            GroupSnapshotMeans(
                date=snapshot.date,
                group_mean_indegree=float(indegrees[group_indexes].mean()),
                group_mean_outdegree=float(outdegrees[group_indexes].mean()),
                rest_mean_indegree=float(indegrees[rest_indexes].mean()),
                rest_mean_outdegree=float(outdegrees[rest_indexes].mean()),
            )
        )

    indegree_per_node = np.mean(all_indegrees, axis=0)
    outdegree_per_node = np.mean(all_outdegrees, axis=0)
    member_means = tuple(
        MemberMeans(
            id=roster.ids[index],
            mean_indegree=float(indegree_per_node[index]),
            mean_outdegree=float(outdegree_per_node[index]),
        )
        for index in group_indexes
    )

    return GroupComparison(
        group_ids=tuple(roster.ids[index] for index in group_indexes),
        rest_ids=tuple(roster.ids[index] for index in rest_indexes),
        per_snapshot=tuple(per_snapshot),
        group_mean_indegree=float(np.mean([means.group_mean_indegree for means in per_snapshot])),
        group_mean_outdegree=float(np.mean([means.group_mean_outdegree for means in per_snapshot])),
        rest_mean_indegree=float(np.mean([means.rest_mean_indegree for means in per_snapshot])),
        rest_mean_outdegree=float(np.mean([means.rest_mean_outdegree for means in per_snapshot])),
        member_means=member_means,
    )
