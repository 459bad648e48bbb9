"""Market concentration: CR_k, HHI, the network-adjusted HHI and the merger screen.
"""
import logging
from dataclasses import dataclass
from enum import Enum, unique
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from marketnet.errors import DegenerateReachError, InvalidParameterError, MissingReachError, UnknownNodeError
from marketnet.model import EngineRoster, NetworkSnapshot, ShareTable, shares_from_reach

_logger = logging.getLogger(__name__)


# Guideline bands, both ends of the moderate band are inclusive
_UNCONCENTRATED_UPPER_BOUND = 1000.0
_MODERATELY_CONCENTRATED_UPPER_BOUND = 1800.0


@unique
class ConcentrationClassEnum(Enum):
    UNCONCENTRATED = "Unconcentrated"
    MODERATELY_CONCENTRATED = "ModeratelyConcentrated"
    HIGHLY_CONCENTRATED = "HighlyConcentrated"


@dataclass(frozen=True)
class PossibleReach:
    """The audience each organization could reach through its own site plus the links pointing to it.

    Attributes:
        ids: The organization ids, in roster order.
        reach: The audience reach of each organization.
        possible_reach: The reach plus (1 - overlap) times the reach of every organization linking to it.
        overlap: The assumed fraction of a linking organization's audience already shared with the linked one.
    """

    ids: Tuple[str, ...]
    reach: Tuple[float, ...]
    possible_reach: Tuple[float, ...]
    overlap: float

    def shares(self) -> ShareTable:
        total_possible_reach = sum(self.possible_reach)
        if total_possible_reach <= 0:
            raise DegenerateReachError(
                "Cannot derive market shares: the possible audience reach of every entry is zero."
            )
        return ShareTable(ids=self.ids, values=tuple(value / total_possible_reach for value in self.possible_reach))


@dataclass(frozen=True)
class MergerPair:
    firm_a: str
    firm_b: str
    delta: float
    flagged: bool


@dataclass(frozen=True)
class MergerScreenMatrix:
    """The HHI increase of every possible merger between two organizations.

    Attributes:
        ids: The organization ids, in share table order.
        pairs: One entry per unordered pair, in upper-triangle order (row by row).
        threshold: A merger is flagged when its HHI increase is strictly above this value.
    """

    ids: Tuple[str, ...]
    pairs: Tuple[MergerPair, ...]
    threshold: float

    @property
    def flagged_pairs(self) -> Tuple[MergerPair, ...]:
        return tuple(pair for pair in self.pairs if pair.flagged)

    @cached_property
    def _pair_per_firms(self) -> Dict[FrozenSet[str], MergerPair]:
        return {frozenset((pair.firm_a, pair.firm_b)): pair for pair in self.pairs}

    def delta(self, firm_a: str, firm_b: str) -> float:
        pair = self._pair_per_firms.get(frozenset((firm_a, firm_b)))
        if pair is not None:
            return pair.delta
        for firm in (firm_a, firm_b):
            if firm not in self.ids:
                raise UnknownNodeError(node_id=firm)
        raise InvalidParameterError("A firm cannot merge with itself.")


@dataclass(frozen=True)
class ConcentrationReport:
    """Attributes:
        k: The number of firms summed in cr_k.
        cr_k: The combined share of the k largest firms.
        hhi: The Herfindahl-Hirschman index of the audience reach shares.
        classification: The guideline band of the HHI.
        overlap: The overlap rate used for the NAHHI, if a network was supplied.
        nahhi: The network-adjusted HHI, if a network was supplied.
        nahhi_classification: The guideline band of the NAHHI, if a network was supplied.
    """

    k: int
    cr_k: float
    hhi: float
    classification: ConcentrationClassEnum
    overlap: Optional[float] = None
    nahhi: Optional[float] = None
    nahhi_classification: Optional[ConcentrationClassEnum] = None


def cr_k(shares: ShareTable, k: int) -> float:
    """The sum of the k largest shares.
    """
    if not 1 <= k <= len(shares):
        raise InvalidParameterError(f"k must be between 1 and {len(shares)}, got {k}.")
    return sum(sorted(shares.values, reverse=True)[:k])


def hhi(shares: ShareTable) -> float:
    return sum((100 * share) ** 2 for share in shares.values)


def classify_concentration(hhi_value: float) -> ConcentrationClassEnum:
    if hhi_value < 0:
        raise InvalidParameterError(f"An HHI cannot be negative: {hhi_value}.")
    if hhi_value < _UNCONCENTRATED_UPPER_BOUND:
        return ConcentrationClassEnum.UNCONCENTRATED
    elif hhi_value <= _MODERATELY_CONCENTRATED_UPPER_BOUND:
        return ConcentrationClassEnum.MODERATELY_CONCENTRATED
    else:
        return ConcentrationClassEnum.HIGHLY_CONCENTRATED


def _validate_overlap(overlap: float) -> None:
    if not 0 <= overlap <= 1:
        raise InvalidParameterError(f"The overlap rate must be in [0, 1], got {overlap}.")


def possible_reach(roster: EngineRoster, snapshot: NetworkSnapshot, overlap: float) -> PossibleReach:
    """Add to each organization's reach the discounted reach of every organization linking to it.

    The snapshot may list the organizations in another order than the roster, but it must cover the same ids.
    """
    _validate_overlap(overlap)
    if set(snapshot.roster.ids) != set(roster.ids):
        raise InvalidParameterError("The snapshot and the roster must cover the same organizations.")

    reach: List[float] = []
    for entry in roster:
        if entry.reach_pct is None:
            raise MissingReachError(node_id=entry.id)
        reach.append(entry.reach_pct)

    matrix = snapshot.matrix
    snapshot_indexes = [snapshot.roster.index_of(node_id) for node_id in roster.ids]
    all_possible_reach = []
    for target_position, target_index in enumerate(snapshot_indexes):
        inflow = sum(
            reach[source_position]
            for source_position, source_index in enumerate(snapshot_indexes)
            if matrix[source_index, target_index] == 1
        )
        all_possible_reach.append(reach[target_position] + (1 - overlap) * inflow)

    return PossibleReach(
        ids=roster.ids, reach=tuple(reach), possible_reach=tuple(all_possible_reach), overlap=overlap
    )


def nahhi(roster: EngineRoster, snapshot: NetworkSnapshot, overlap: float) -> float:
    """The HHI computed on possible audience reach instead of audience reach.
    """
    return hhi(possible_reach(roster, snapshot, overlap).shares())


def overlap_sensitivity(
    roster: EngineRoster, snapshot: NetworkSnapshot, grid: Sequence[float]
) -> List[Tuple[float, float]]:
    for overlap in grid:
        _validate_overlap(overlap)
    return [(overlap, nahhi(roster, snapshot, overlap)) for overlap in grid]


def merger_delta(shares: ShareTable, firm_a: str, firm_b: str) -> float:
    """The HHI increase caused by merging two firms, 2 * (100 * s_a) * (100 * s_b).
    """
    if firm_a == firm_b:
        raise InvalidParameterError("A firm cannot merge with itself.")
    return 2 * (100 * shares.share_of(firm_a)) * (100 * shares.share_of(firm_b))


def merged_shares(shares: ShareTable, firm_a: str, firm_b: str) -> ShareTable:
    """The share table after the two firms merged; the merged firm takes the first firm's place.
    """
    if firm_a == firm_b:
        raise InvalidParameterError("A firm cannot merge with itself.")
    merged_share = shares.share_of(firm_a) + shares.share_of(firm_b)

    ids = []
    values = []
    for node_id, value in zip(shares.ids, shares.values):
        if node_id == firm_a:
            ids.append(f"{firm_a}+{firm_b}")
            values.append(merged_share)
        elif node_id != firm_b:
            ids.append(node_id)
            values.append(value)
    return ShareTable(ids=tuple(ids), values=tuple(values))


def merger_screen(shares: ShareTable, threshold: float = 100.0) -> MergerScreenMatrix:
    if threshold < 0:
        raise InvalidParameterError(f"The screening threshold cannot be negative: {threshold}.")

    pairs = []
    share_count = len(shares)
    for index_a in range(share_count):
        firm_a, percent_a = shares.ids[index_a], 100 * shares.values[index_a]
        for index_b in range(index_a + 1, share_count):
            firm_b = shares.ids[index_b]
            delta = 2 * percent_a * (100 * shares.values[index_b])
            pairs.append(MergerPair(firm_a=firm_a, firm_b=firm_b, delta=delta, flagged=delta > threshold))

    screen = MergerScreenMatrix(ids=shares.ids, pairs=tuple(pairs), threshold=threshold)
    _logger.debug(f"Merger screen at {threshold}: {len(screen.flagged_pairs)} of {len(pairs)} pairs flagged")
    return screen


def concentration_report(
    roster: EngineRoster, snapshot: Optional[NetworkSnapshot] = None, k: int = 4, overlap: float = 0.3
) -> ConcentrationReport:
    """Combine CR_k, HHI and, when a network is supplied, the NAHHI into one report.
    """
    shares = shares_from_reach(roster)
    hhi_value = hhi(shares)
    if snapshot is None:
        return ConcentrationReport(
            k=k, cr_k=cr_k(shares, k), hhi=hhi_value, classification=classify_concentration(hhi_value)
        )

    nahhi_value = nahhi(roster, snapshot, overlap)
    return ConcentrationReport(
        k=k,
        cr_k=cr_k(shares, k),
        hhi=hhi_value,
        classification=classify_concentration(hhi_value),
        overlap=overlap,
        nahhi=nahhi_value,
        nahhi_classification=classify_concentration(nahhi_value),
    )
