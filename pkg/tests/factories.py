import random
from dataclasses import replace
from datetime import date
from traceback import TracebackException
from typing import List, Optional, Sequence, Tuple

from faker import Faker

from marketnet import parse_features, parse_roster, parse_snapshot, resolve_data_path
from marketnet.commands.command_base import AnalysisInputs
from marketnet.model import EngineRoster, NetworkSnapshot, RosterEntry
from marketnet.stats import FeatureRow, FeatureTable

fake = Faker()

Adjacency = Tuple[Tuple[int, ...], ...]


class AdjacencyFactory:
    """Adjacency matrices of well-known graph shapes, as nested tuples of 0/1.
    """

    @staticmethod
    def empty(node_count: int) -> Adjacency:
        return tuple(tuple(0 for _ in range(node_count)) for _ in range(node_count))

    @staticmethod
    def from_links(node_count: int, links: Sequence[Tuple[int, int]]) -> Adjacency:
        matrix = [[0] * node_count for _ in range(node_count)]
        for source, target in links:
            matrix[source][target] = 1
        return tuple(tuple(row) for row in matrix)

    @classmethod
    def directed_path(cls, node_count: int) -> Adjacency:
        return cls.from_links(node_count, [(index, index + 1) for index in range(node_count - 1)])

    @classmethod
    def directed_cycle(cls, node_count: int) -> Adjacency:
        return cls.from_links(node_count, [(index, (index + 1) % node_count) for index in range(node_count)])

    @classmethod
    def complete(cls, node_count: int) -> Adjacency:
        all_links = [
            (source, target) for source in range(node_count) for target in range(node_count) if source != target
        ]
        return cls.from_links(node_count, all_links)

    @classmethod
    def random(cls, node_count: int, link_probability: float, seed: int, connected: bool = False) -> Adjacency:
        """A random directed graph; when connected is True, a path through every node guarantees weak connectivity.
        """
        rng = random.Random(seed)
        links: List[Tuple[int, int]] = [
            (source, target)
            for source in range(node_count)
            for target in range(node_count)
            if source != target and rng.random() < link_probability
        ]
        if connected:
            links.extend((index, index + 1) for index in range(node_count - 1))
        return cls.from_links(node_count, links)


class RosterFactory:
    @staticmethod
    def with_reach_scaled(roster: EngineRoster, factor: float) -> EngineRoster:
        return EngineRoster(
            entries=tuple(
                replace(entry, reach_pct=None if entry.reach_pct is None else entry.reach_pct * factor)
                for entry in roster.entries
            )
        )

    @staticmethod
    def create(node_count: int, reach_values: Optional[Sequence[float]] = None) -> EngineRoster:
        final_reach_values = (
            reach_values
            if reach_values is not None
            else [round(fake.pyfloat(min_value=0.1, max_value=50.0), 1) for _ in range(node_count)]
        )
        return EngineRoster(
            entries=tuple(
                RosterEntry(
                    id=fake.unique.lexify(text="????????"),
                    name=fake.company(),
                    setup_year=fake.random_int(min=1994, max=2000),
                    reach_pct=reach_pct,
                )
                for reach_pct in final_reach_values
            )
        )


class NetworkSnapshotFactory:
    @staticmethod
    def create(
        adjacency: Adjacency, roster: Optional[EngineRoster] = None, snapshot_date: Optional[date] = None
    ) -> NetworkSnapshot:
        final_roster = roster if roster else RosterFactory.create(len(adjacency))
        final_date = snapshot_date if snapshot_date else date(2000, 8, 12)
        return NetworkSnapshot(date=final_date, roster=final_roster, adjacency=adjacency)

    @staticmethod
    def relabel(snapshot: NetworkSnapshot, permutation: Sequence[int]) -> NetworkSnapshot:
        """The same network with its organizations listed in another order.

        Position i of the new snapshot holds the organization at position permutation[i] of the original one.
        """
        entries = tuple(snapshot.roster.entries[old_index] for old_index in permutation)
        adjacency = tuple(
            tuple(snapshot.adjacency[old_source][old_target] for old_target in permutation)
            for old_source in permutation
        )
        return NetworkSnapshot(date=snapshot.date, roster=EngineRoster(entries=entries), adjacency=adjacency)


class FeatureTableFactory:
    @staticmethod
    def create(setup_years: Sequence[int], flags: Sequence[int]) -> FeatureTable:
        return FeatureTable(
            rows=tuple(
                FeatureRow(
                    id=fake.unique.lexify(text="????????"), setup_year=setup_year, features=(("platform", flag),)
                )
                for setup_year, flag in zip(setup_years, flags)
            )
        )


class BundledDataFactory:
    """The data sets shipped with marketnet.
    """

    @staticmethod
    def roster() -> EngineRoster:
        return parse_roster(resolve_data_path("jun2000"))

    @staticmethod
    def snapshot() -> NetworkSnapshot:
        return parse_snapshot(resolve_data_path("aug2000"), parse_roster(resolve_data_path("jun2000")))

    @staticmethod
    def features() -> FeatureTable:
        return parse_features(resolve_data_path("features2000"))

    @classmethod
    def inputs(cls) -> AnalysisInputs:
        roster = cls.roster()
        return AnalysisInputs(
            roster=roster,
            snapshots=(parse_snapshot(resolve_data_path("aug2000"), roster),),
            features=cls.features(),
        )


class TracebackExceptionFactory:
    @staticmethod
    def create() -> TracebackException:
        try:
            raise RuntimeError("test")
        except RuntimeError as e:
            traceback_exc = TracebackException.from_exception(e)
        return traceback_exc
