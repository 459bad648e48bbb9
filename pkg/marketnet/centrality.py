"""Centrality metrics over directed snapshots: degrees, betweenness and information centrality.
"""
import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum, unique
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.sparse.csgraph import connected_components

from marketnet.errors import (
    InsufficientNodesError,
    InvalidParameterError,
    MissingReachError,
    SingularMatrixError,
)
from marketnet.model import EngineRoster, NetworkSnapshot, in_degrees, out_degrees

_logger = logging.getLogger(__name__)


@unique
class CentralityMetricEnum(Enum):
    INDEGREE = "indegree"
    OUTDEGREE = "outdegree"
    BETWEENNESS_NORMALIZED = "betweenness_normalized"
    INFORMATION = "information"
    AUDIENCE_REACH = "audience_reach"


@dataclass(frozen=True)
class CentralityReport:
    """The per-organization scores for one metric, with their summary statistics.

    Attributes:
        metric: The metric the scores were computed with.
        ids: The organization ids, in roster order.
        scores: One score per id; degree scores are integers.
        mean: The mean of the scores.
        stdev: The population standard deviation of the scores.
        convention_notes: How the metric was computed (direction, normalization).
    """

    metric: CentralityMetricEnum
    ids: Tuple[str, ...]
    scores: Tuple[float, ...]
    mean: float
    stdev: float
    convention_notes: str

    def score_of(self, node_id: str) -> float:
        return self.scores[self.ids.index(node_id)]

    def as_dict(self) -> Dict[str, float]:
        return dict(zip(self.ids, self.scores))


def centrality_summary(scores: Sequence[float]) -> Tuple[float, float]:
    """Return the mean and the population standard deviation of the scores.
    """
    if not scores:
        raise InvalidParameterError("Cannot summarize an empty list of scores.")
    scores_array = np.asarray(scores, dtype=np.float64)
    return float(scores_array.mean()), float(scores_array.std(ddof=0))


def _build_report(
    metric: CentralityMetricEnum, ids: Sequence[str], scores: Sequence[float], convention_notes: str
) -> CentralityReport:
    mean, stdev = centrality_summary(scores)
    return CentralityReport(
        metric=metric, ids=tuple(ids), scores=tuple(scores), mean=mean, stdev=stdev, convention_notes=convention_notes
    )


def degree_report(snapshot: NetworkSnapshot, metric: CentralityMetricEnum) -> CentralityReport:
    if metric == CentralityMetricEnum.INDEGREE:
        return _build_report(metric, snapshot.roster.ids, in_degrees(snapshot), "incoming links (column sums)")
    elif metric == CentralityMetricEnum.OUTDEGREE:
        return _build_report(metric, snapshot.roster.ids, out_degrees(snapshot), "outgoing links (row sums)")
    else:
        raise InvalidParameterError(f"{metric.value} is not a degree metric.")


def reach_report(roster: EngineRoster) -> CentralityReport:
    """Rank the organizations by audience reach, as another measure of power in the market.
    """
    reach_values = []
    for entry in roster:
        if entry.reach_pct is None:
            raise MissingReachError(node_id=entry.id)
        reach_values.append(entry.reach_pct)
    return _build_report(
        CentralityMetricEnum.AUDIENCE_REACH, roster.ids, reach_values, "percentage of the surveyed audience"
    )


def _successors_per_node(snapshot: NetworkSnapshot) -> List[List[int]]:
    return [[int(index) for index in np.flatnonzero(row)] for row in snapshot.matrix]


def _source_dependencies(successors_per_node: List[List[int]], source: int) -> List[Fraction]:
    """Return how much of the shortest paths starting at the source goes through each node.

    Shortest paths are found with a breadth-first search; path counts are integers and dependencies are exact
    fractions so the result does not depend on the order in which the sources are processed.
    """
    node_count = len(successors_per_node)
    distances = [-1] * node_count
    path_counts = [0] * node_count
    predecessors: List[List[int]] = [[] for _ in range(node_count)]
    distances[source] = 0
    path_counts[source] = 1

    visit_order = []
    queue = deque([source])
    while queue:
        node = queue.popleft()
        visit_order.append(node)
        for successor in successors_per_node[node]:
            if distances[successor] < 0:
                distances[successor] = distances[node] + 1
                queue.append(successor)
            if distances[successor] == distances[node] + 1:
                path_counts[successor] += path_counts[node]
                predecessors[successor].append(node)

    dependencies = [Fraction(0)] * node_count
    for node in reversed(visit_order):
        for predecessor in predecessors[node]:
            dependencies[predecessor] += Fraction(path_counts[predecessor], path_counts[node]) * (
                1 + dependencies[node]
            )
    dependencies[source] = Fraction(0)
    return dependencies


def raw_betweenness(snapshot: NetworkSnapshot) -> Tuple[Fraction, ...]:
    """The exact, non-normalized directed betweenness of every node, in roster order.
    """
    successors_per_node = _successors_per_node(snapshot)
    totals = [Fraction(0)] * snapshot.node_count
    for source in range(snapshot.node_count):
        for node, dependency in enumerate(_source_dependencies(successors_per_node, source)):
            totals[node] += dependency
    return tuple(totals)


def betweenness(snapshot: NetworkSnapshot) -> CentralityReport:
    """Directed betweenness, as a percentage of the (n-1)(n-2) ordered pairs a node could lie between.
    """
    node_count = snapshot.node_count
    if node_count < 3:
        raise InsufficientNodesError(operation="betweenness", node_count=node_count, minimum_node_count=3)

    pair_count = (node_count - 1) * (node_count - 2)
    scores = [float(100 * raw_score / pair_count) for raw_score in raw_betweenness(snapshot)]
    return _build_report(
        CentralityMetricEnum.BETWEENNESS_NORMALIZED,
        snapshot.roster.ids,
        scores,
        "directed shortest paths; 100 * raw / ((n-1)(n-2))",
    )


def _component_information_scores(symmetric_adjacency: np.ndarray) -> np.ndarray:
    component_size = symmetric_adjacency.shape[0]
    degrees = np.diag(symmetric_adjacency.sum(axis=1))
    b_matrix = degrees - symmetric_adjacency + np.ones((component_size, component_size))
    try:
        c_matrix = np.linalg.inv(b_matrix)
    except np.linalg.LinAlgError:
        raise SingularMatrixError(f"The information matrix of a {component_size}-node component is singular.")

    diagonal = np.diag(c_matrix)
    trace = diagonal.sum()
    row_sums = c_matrix.sum(axis=1)
    return 1.0 / (diagonal + (trace - 2 * row_sums) / component_size)


def information_centrality(snapshot: NetworkSnapshot) -> CentralityReport:
    """Information centrality of the symmetrized network.

    A link in either direction makes two organizations adjacent. Scores are computed separately within each connected
    component, and an organization with no link at all scores 0.
    """
    symmetric_adjacency = np.maximum(snapshot.matrix, snapshot.matrix.T).astype(np.float64)
    component_count, component_labels = connected_components(symmetric_adjacency, directed=False)
    if component_count > 1:
        _logger.info(f"Symmetrized network of {snapshot.date} has {component_count} connected components")

    scores = np.zeros(snapshot.node_count)
    for component_label in range(component_count):
        members = np.flatnonzero(component_labels == component_label)
        if len(members) == 1:
            _logger.info(f"{snapshot.roster.ids[members[0]]} is isolated in {snapshot.date}; scored 0")
            continue
        scores[members] = _component_information_scores(symmetric_adjacency[np.ix_(members, members)])

    return _build_report(
        CentralityMetricEnum.INFORMATION,
        snapshot.roster.ids,
        [float(score) for score in scores],
        "symmetrized links; raw scores per connected component; isolated nodes score 0",
    )


def top_k(report: CentralityReport, k: int) -> List[Tuple[str, float]]:
    """The k highest scores, in descending order and roster order among equal scores.

    When scores equal to the k-th one come after it, they are all returned too so a tie block is never cut.
    """
    if not 1 <= k <= len(report.ids):
        raise InvalidParameterError(f"k must be between 1 and {len(report.ids)}, got {k}.")

    ranked = sorted(
        zip(report.ids, report.scores, range(len(report.ids))),
        key=lambda ranked_score: (-ranked_score[1], ranked_score[2]),
    )
    kth_score = ranked[k - 1][1]
    end_index = k
    while end_index < len(ranked) and ranked[end_index][1] == kth_score:
        end_index += 1
    return [(node_id, score) for node_id, score, _ in ranked[:end_index]]
