from itertools import combinations

import pytest

from marketnet.concentration import (
    ConcentrationClassEnum,
    classify_concentration,
    concentration_report,
    cr_k,
    hhi,
    merged_shares,
    merger_delta,
    merger_screen,
    nahhi,
    overlap_sensitivity,
    possible_reach,
)
from marketnet.errors import DegenerateReachError, InvalidParameterError, MissingReachError, UnknownNodeError
from marketnet.model import EngineRoster, RosterEntry, ShareTable, shares_from_reach
from tests.factories import AdjacencyFactory, BundledDataFactory, NetworkSnapshotFactory, RosterFactory


class TestIndices:
    def test_hhi_monopoly(self):
        assert hhi(ShareTable(ids=("a",), values=(1.0,))) == 10000

    def test_hhi_equal_shares(self):
        # Given n firms of equal size, the HHI is 10000 / n
        shares = ShareTable(ids=("a", "b", "c", "d"), values=(0.25, 0.25, 0.25, 0.25))
        assert hhi(shares) == pytest.approx(2500)

    def test_cr_k(self):
        shares = ShareTable(ids=("a", "b", "c"), values=(0.2, 0.5, 0.3))
        assert cr_k(shares, 1) == pytest.approx(0.5)
        assert cr_k(shares, 2) == pytest.approx(0.8)
        assert cr_k(shares, 3) == pytest.approx(1.0)

    def test_cr_k_out_of_range(self):
        shares = ShareTable(ids=("a", "b"), values=(0.5, 0.5))
        with pytest.raises(InvalidParameterError):
            cr_k(shares, 3)

    @pytest.mark.parametrize(
        "hhi_value, expected_class",
        [
            (0, ConcentrationClassEnum.UNCONCENTRATED),
            (999.99, ConcentrationClassEnum.UNCONCENTRATED),
            (1000, ConcentrationClassEnum.MODERATELY_CONCENTRATED),
            (1800, ConcentrationClassEnum.MODERATELY_CONCENTRATED),
            (1800.01, ConcentrationClassEnum.HIGHLY_CONCENTRATED),
            (10000, ConcentrationClassEnum.HIGHLY_CONCENTRATED),
        ],
    )
    def test_classify(self, hhi_value, expected_class):
        assert classify_concentration(hhi_value) == expected_class

    def test_classify_negative(self):
        with pytest.raises(InvalidParameterError):
            classify_concentration(-1)

    def test_cr_k_grows_with_k(self):
        # Given any share table
        shares = shares_from_reach(RosterFactory.create(8))

        # The k largest shares never cover less than the k - 1 largest ones, and all of them cover the market
        ratios = [cr_k(shares, k) for k in range(1, len(shares) + 1)]
        assert all(ratio <= next_ratio for ratio, next_ratio in zip(ratios, ratios[1:]))
        assert ratios[-1] == pytest.approx(1.0)

    def test_classification_follows_the_hhi(self):
        # Given increasing HHI values
        hhi_values = [0, 500, 999.99, 1000, 1500, 1800, 1800.01, 5000, 10000]
        severity = list(ConcentrationClassEnum)

        # The concentration class never goes down
        classes = [severity.index(classify_concentration(hhi_value)) for hhi_value in hhi_values]
        assert classes == sorted(classes)

    def test_hhi_ignores_the_reach_unit(self):
        # Given the bundled roster, and the same roster with every reach halved
        roster = BundledDataFactory.roster()
        halved_roster = RosterFactory.with_reach_scaled(roster, 0.5)

        # The HHI does not change
        assert hhi(shares_from_reach(halved_roster)) == pytest.approx(hhi(shares_from_reach(roster)))


class TestBundledMarket:
    def test_concentration_report(self):
        # Given the bundled roster and network
        roster = BundledDataFactory.roster()
        snapshot = BundledDataFactory.snapshot()

        # When computing the concentration report
        report = concentration_report(roster, snapshot, k=4, overlap=0.3)

        # The market is moderately concentrated by audience reach
        assert report.cr_k == pytest.approx(117.3 / 206.2)
        assert report.hhi == pytest.approx(1182.5, abs=0.5)
        assert report.classification == ConcentrationClassEnum.MODERATELY_CONCENTRATED

        # But unconcentrated once the links are taken into account
        assert report.overlap == 0.3
        assert report.nahhi == pytest.approx(855.4, abs=0.5)
        assert report.nahhi_classification == ConcentrationClassEnum.UNCONCENTRATED

    def test_concentration_report_without_network(self):
        report = concentration_report(BundledDataFactory.roster(), k=4)
        assert report.nahhi is None
        assert report.overlap is None
        assert report.nahhi_classification is None

    def test_merger_screen(self):
        # Given the market shares of the bundled roster
        shares = shares_from_reach(BundledDataFactory.roster())

        # When screening every possible merger
        screen = merger_screen(shares, threshold=100.0)

        # Every pair is screened once
        assert len(screen.pairs) == 19 * 18 // 2
        assert len(screen.flagged_pairs) == 29

        # And the largest increase is a merger of the two leaders
        largest_pair = max(screen.pairs, key=lambda pair: pair.delta)
        assert {largest_pair.firm_a, largest_pair.firm_b} == {"Yahoo", "MSN"}
        assert screen.delta("MSN", "Yahoo") == pytest.approx(791.5, abs=0.1)
        assert screen.delta("Yahoo", "Go") == pytest.approx(422.3, abs=0.1)

    def test_merger_deltas_follow_the_reach_order(self):
        # Given the bundled roster
        roster = BundledDataFactory.roster()
        reach_per_id = {entry.id: entry.reach_pct for entry in roster}
        screen = merger_screen(shares_from_reach(roster))

        # When listing Yahoo's merger partners from the largest audience to the smallest
        partners = sorted(
            (node_id for node_id in roster.ids if node_id != "Yahoo"), key=lambda node_id: -reach_per_id[node_id]
        )
        deltas = [screen.delta("Yahoo", partner) for partner in partners]

        # The increases go down with the partner's reach, and tied reach gives tied increases
        assert partners[:2] == ["MSN", "Go"]
        for (partner, delta), (next_partner, next_delta) in zip(zip(partners, deltas), zip(partners[1:], deltas[1:])):
            if reach_per_id[partner] > reach_per_id[next_partner]:
                assert delta > next_delta
            else:
                assert delta == next_delta

    def test_flagged_mergers_involve_the_largest_firms(self):
        # Given the screen of the bundled roster
        screen = merger_screen(shares_from_reach(BundledDataFactory.roster()))

        # When attributing each flagged merger to its larger firm, largest firms first
        row_order = ["Yahoo", "MSN", "Go", "Netscape", "Lycos", "AltaVista", "Excite"]
        row_rank = {firm: rank for rank, firm in enumerate(row_order)}
        flagged_per_row = {firm: 0 for firm in row_order}
        for pair in screen.flagged_pairs:
            assert pair.firm_a in row_order or pair.firm_b in row_order
            row_firm = min((pair.firm_a, pair.firm_b), key=lambda firm: row_rank.get(firm, len(row_order)))
            flagged_per_row[row_firm] += 1

        # The rows shrink from the leader down, as a staircase
        assert list(flagged_per_row.values()) == [10, 9, 4, 3, 2, 1, 0]

    def test_overlap_sensitivity(self):
        roster = BundledDataFactory.roster()
        snapshot = BundledDataFactory.snapshot()

        points = overlap_sensitivity(roster, snapshot, [0.0, 0.3, 0.9])

        assert [overlap for overlap, _ in points] == [0.0, 0.3, 0.9]
        assert points[0][1] == pytest.approx(893, abs=1)
        assert points[2][1] == pytest.approx(987, abs=1)
        for _, nahhi_value in points:
            assert classify_concentration(nahhi_value) == ConcentrationClassEnum.UNCONCENTRATED


class TestNahhi:
    def test_full_overlap_is_hhi(self):
        # Given any network
        roster = RosterFactory.create(6)
        snapshot = NetworkSnapshotFactory.create(AdjacencyFactory.random(6, 0.4, seed=3), roster=roster)

        # When the linking audiences are entirely shared, the NAHHI is the HHI
        assert nahhi(roster, snapshot, 1.0) == pytest.approx(hhi(shares_from_reach(roster)))

    def test_empty_network_is_hhi(self):
        roster = RosterFactory.create(5)
        snapshot = NetworkSnapshotFactory.create(AdjacencyFactory.empty(5), roster=roster)
        assert nahhi(roster, snapshot, 0.3) == pytest.approx(hhi(shares_from_reach(roster)))

    def test_possible_reach(self):
        # Given a -> b, and c -> b
        roster = RosterFactory.create(3, reach_values=[10.0, 20.0, 30.0])
        snapshot = NetworkSnapshotFactory.create(AdjacencyFactory.from_links(3, [(0, 1), (2, 1)]), roster=roster)

        # b can also reach part of the audience of a and c
        result = possible_reach(roster, snapshot, 0.5)
        assert result.possible_reach == pytest.approx((10.0, 20.0 + 0.5 * (10.0 + 30.0), 30.0))

    def test_snapshot_in_another_order(self):
        # Given a snapshot listing the organizations in reverse roster order
        roster = RosterFactory.create(3, reach_values=[10.0, 20.0, 30.0])
        reversed_roster = EngineRoster(entries=tuple(reversed(roster.entries)))
        snapshot = NetworkSnapshotFactory.create(AdjacencyFactory.from_links(3, [(2, 1)]), roster=reversed_roster)

        # The links are matched by id
        result = possible_reach(roster, snapshot, 0.0)
        assert result.possible_reach == pytest.approx((10.0, 20.0 + 10.0, 30.0))

    @pytest.mark.parametrize("overlap", [-0.1, 1.1])
    def test_overlap_out_of_range(self, overlap):
        roster = RosterFactory.create(3)
        snapshot = NetworkSnapshotFactory.create(AdjacencyFactory.empty(3), roster=roster)
        with pytest.raises(InvalidParameterError):
            nahhi(roster, snapshot, overlap)

    def test_missing_reach(self):
        roster = EngineRoster.from_ids(["a", "b"])
        snapshot = NetworkSnapshotFactory.create(AdjacencyFactory.empty(2), roster=roster)
        with pytest.raises(MissingReachError):
            nahhi(roster, snapshot, 0.3)

    def test_scale_invariance(self):
        # Given a roster, and the same roster with every reach doubled
        roster = RosterFactory.create(4, reach_values=[10.0, 20.0, 5.0, 12.5])
        doubled_roster = EngineRoster(
            entries=tuple(
                RosterEntry(id=entry.id, name=entry.name, reach_pct=2 * entry.reach_pct) for entry in roster
            )
        )
        adjacency = AdjacencyFactory.random(4, 0.5, seed=7)
        snapshot = NetworkSnapshotFactory.create(adjacency, roster=roster)

        # The NAHHI does not change
        assert nahhi(doubled_roster, snapshot, 0.3) == nahhi(roster, snapshot, 0.3)

    def test_zero_reach_everywhere(self):
        # Given a roster where no organization has any audience
        roster = RosterFactory.create(3, reach_values=[0.0, 0.0, 0.0])
        snapshot = NetworkSnapshotFactory.create(AdjacencyFactory.from_links(3, [(0, 1), (1, 2)]), roster=roster)

        # No market share can be derived, whatever the overlap
        with pytest.raises(DegenerateReachError):
            nahhi(roster, snapshot, 0.3)
        with pytest.raises(DegenerateReachError):
            overlap_sensitivity(roster, snapshot, [0.0, 0.5])


class TestMergers:
    def test_delta_is_hhi_increase(self):
        # Given any share table
        shares = shares_from_reach(RosterFactory.create(5))

        # The delta of every merger is the increase of the HHI it causes
        for firm_a, firm_b in combinations(shares.ids, 2):
            increase = hhi(merged_shares(shares, firm_a, firm_b)) - hhi(shares)
            assert merger_delta(shares, firm_a, firm_b) == pytest.approx(increase)

    def test_delta_is_symmetric(self):
        shares = ShareTable(ids=("a", "b", "c"), values=(0.5, 0.3, 0.2))
        assert merger_delta(shares, "a", "b") == pytest.approx(merger_delta(shares, "b", "a"))
        assert merger_delta(shares, "a", "b") == pytest.approx(3000)

    def test_self_merger(self):
        shares = ShareTable(ids=("a", "b"), values=(0.5, 0.5))
        with pytest.raises(InvalidParameterError):
            merger_delta(shares, "a", "a")

    def test_unknown_firm(self):
        shares = ShareTable(ids=("a", "b"), values=(0.5, 0.5))
        with pytest.raises(UnknownNodeError):
            merger_delta(shares, "a", "z")
        with pytest.raises(UnknownNodeError):
            merger_screen(shares).delta("a", "z")

    def test_threshold_is_strict(self):
        # Given two firms whose merger raises the HHI by exactly 5000
        shares = ShareTable(ids=("a", "b"), values=(0.5, 0.5))

        # A merger at the threshold is not flagged
        assert not merger_screen(shares, threshold=5000).flagged_pairs
        assert merger_screen(shares, threshold=4999).flagged_pairs

    def test_negative_threshold(self):
        shares = ShareTable(ids=("a", "b"), values=(0.5, 0.5))
        with pytest.raises(InvalidParameterError):
            merger_screen(shares, threshold=-1)

    def test_screen_of_a_large_market(self):
        # Given a market of 600 firms of equal size
        firm_count = 600
        shares = ShareTable(
            ids=tuple(f"firm{index}" for index in range(firm_count)), values=(1 / firm_count,) * firm_count
        )

        # When screening every possible merger with a low threshold
        screen = merger_screen(shares, threshold=0.05)

        # Every pair is screened once, and every pair can be looked up in either order
        assert len(screen.pairs) == firm_count * (firm_count - 1) // 2
        assert len(screen.flagged_pairs) == len(screen.pairs)
        expected_delta = 2 * (100 / firm_count) ** 2
        assert screen.delta("firm0", "firm599") == pytest.approx(expected_delta)
        assert screen.delta("firm599", "firm0") == pytest.approx(expected_delta)
        assert screen.delta("firm300", "firm17") == pytest.approx(expected_delta)
