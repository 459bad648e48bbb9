from datetime import date

import pytest

from marketnet.errors import DataFileParsingError
from marketnet.file_parsers import (
    parse_features,
    parse_roster,
    parse_series,
    parse_snapshot,
    resolve_data_path,
    roster_to_csv,
    snapshot_to_csv,
)
from marketnet.model import EngineRoster, SnapshotViolationEnum
from tests.factories import AdjacencyFactory, BundledDataFactory, NetworkSnapshotFactory, RosterFactory


class TestBundledData:
    def test_aliases(self):
        assert resolve_data_path("aug2000").name == "aug2000_adjacency.csv"
        assert resolve_data_path("jun2000").is_file()
        assert resolve_data_path("some/file.csv").as_posix() == "some/file.csv"

    def test_bundled_files(self):
        # When parsing the bundled files, they are consistent with each other
        roster = BundledDataFactory.roster()
        snapshot = BundledDataFactory.snapshot()
        features = BundledDataFactory.features()

        assert len(roster) == 19
        assert snapshot.date == date(2000, 8, 12)
        assert snapshot.roster == roster
        assert features.ids == roster.ids
        assert roster.entry("Yahoo").reach_pct == 47.0
        assert roster.entry("Go").name == "Go (Infoseek)"


class TestParseRoster:
    def test_round_trip(self, tmp_path):
        # Given a roster
        roster = RosterFactory.create(5)

        # When writing it to a CSV file and parsing it back
        roster_path = tmp_path / "roster.csv"
        roster_path.write_text(roster_to_csv(roster), encoding="utf-8")

        # The same roster is returned
        assert parse_roster(roster_path) == roster

    def test_empty_cells(self, tmp_path):
        roster_path = tmp_path / "roster.csv"
        roster_path.write_text("# A comment\nid,name,setup_year,reach_pct\n\na,Alpha,,\n", encoding="utf-8")
        roster = parse_roster(roster_path)
        assert roster.entry("a").setup_year is None
        assert roster.entry("a").reach_pct is None

    def test_id_starting_with_a_hash(self, tmp_path):
        # Given a roster with a comment before the header and an organization whose id starts with "#"
        roster_path = tmp_path / "roster.csv"
        roster_path.write_text(
            "# A comment\nid,name,setup_year,reach_pct\n#x,Hash,1998,4.5\na,Alpha,,\n", encoding="utf-8"
        )

        # When parsing it
        roster = parse_roster(roster_path)

        # The comment is skipped but the organization is kept
        assert roster.ids == ("#x", "a")
        assert roster.entry("#x").reach_pct == 4.5

    def test_duplicate_id(self, tmp_path):
        roster_path = tmp_path / "roster.csv"
        roster_path.write_text("id,name,setup_year,reach_pct\na,A,1995,1\na,B,1996,2\n", encoding="utf-8")
        with pytest.raises(DataFileParsingError) as exc_info:
            parse_roster(roster_path)
        assert exc_info.value.line_number == 3
        assert "duplicate" in exc_info.value.error_message

    def test_malformed_number(self, tmp_path):
        roster_path = tmp_path / "roster.csv"
        roster_path.write_text("id,name,setup_year,reach_pct\na,A,1995,lots\n", encoding="utf-8")
        with pytest.raises(DataFileParsingError) as exc_info:
            parse_roster(roster_path)
        assert (exc_info.value.line_number, exc_info.value.column_number) == (2, 4)

    def test_wrong_header(self, tmp_path):
        roster_path = tmp_path / "roster.csv"
        roster_path.write_text("id,name\na,A\n", encoding="utf-8")
        with pytest.raises(DataFileParsingError):
            parse_roster(roster_path)

    def test_reach_out_of_range(self, tmp_path):
        roster_path = tmp_path / "roster.csv"
        roster_path.write_text("id,name,setup_year,reach_pct\na,A,1995,150\n", encoding="utf-8")
        with pytest.raises(DataFileParsingError):
            parse_roster(roster_path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataFileParsingError):
            parse_roster(tmp_path / "nope.csv")


class TestParseSnapshot:
    def test_round_trip(self, tmp_path):
        # Given a snapshot
        snapshot = NetworkSnapshotFactory.create(AdjacencyFactory.random(6, 0.3, seed=1))

        # When writing it to a CSV file and parsing it back with its roster
        snapshot_path = tmp_path / "snapshot.csv"
        snapshot_path.write_text(snapshot_to_csv(snapshot), encoding="utf-8")

        # The same snapshot is returned
        assert parse_snapshot(snapshot_path, snapshot.roster) == snapshot

    def test_roster_from_header(self, tmp_path):
        snapshot_path = tmp_path / "snapshot.csv"
        snapshot_path.write_text("#date,2001-03-01\nid,a,b\na,0,1\nb,0,0\n", encoding="utf-8")
        snapshot = parse_snapshot(snapshot_path)
        assert snapshot.roster == EngineRoster.from_ids(["a", "b"])
        assert snapshot.adjacency == ((0, 1), (0, 0))

    def test_ids_starting_with_a_hash(self, tmp_path):
        snapshot_path = tmp_path / "snapshot.csv"
        snapshot_path.write_text("# Links\n#date,2001-03-01\nid,#a,b\n#a,0,1\nb,0,0\n", encoding="utf-8")
        snapshot = parse_snapshot(snapshot_path)
        assert snapshot.roster == EngineRoster.from_ids(["#a", "b"])
        assert snapshot.adjacency == ((0, 1), (0, 0))

    def test_malformed_cell(self, tmp_path):
        # Given a snapshot file with a cell that is not 0 or 1
        snapshot_path = tmp_path / "snapshot.csv"
        snapshot_path.write_text("#date,2001-03-01\nid,a,b\na,0,x\nb,0,0\n", encoding="utf-8")

        # When parsing it, the error points to the cell
        with pytest.raises(DataFileParsingError) as exc_info:
            parse_snapshot(snapshot_path)
        assert (exc_info.value.line_number, exc_info.value.column_number) == (3, 3)

    def test_self_link(self, tmp_path):
        snapshot_path = tmp_path / "snapshot.csv"
        snapshot_path.write_text("#date,2001-03-01\nid,a,b\na,0,1\nb,0,1\n", encoding="utf-8")

        with pytest.raises(DataFileParsingError) as exc_info:
            parse_snapshot(snapshot_path)
        assert (exc_info.value.line_number, exc_info.value.column_number) == (4, 3)

    def test_self_link_without_validation(self, tmp_path):
        snapshot_path = tmp_path / "snapshot.csv"
        snapshot_path.write_text("#date,2001-03-01\nid,a,b\na,0,1\nb,0,1\n", encoding="utf-8")

        snapshot = parse_snapshot(snapshot_path, validate=False)

        violations = snapshot.validation_result.violations
        assert [(violation.kind, violation.row, violation.column) for violation in violations] == [
            (SnapshotViolationEnum.SELF_LINK, 1, 1)
        ]

    def test_header_does_not_match_roster(self, tmp_path):
        snapshot_path = tmp_path / "snapshot.csv"
        snapshot_path.write_text("#date,2001-03-01\nid,b,a\nb,0,1\na,0,0\n", encoding="utf-8")
        with pytest.raises(DataFileParsingError):
            parse_snapshot(snapshot_path, EngineRoster.from_ids(["a", "b"]))

    def test_missing_date(self, tmp_path):
        snapshot_path = tmp_path / "snapshot.csv"
        snapshot_path.write_text("id,a,b\na,0,1\nb,0,0\n", encoding="utf-8")
        with pytest.raises(DataFileParsingError):
            parse_snapshot(snapshot_path)

    def test_bad_date(self, tmp_path):
        snapshot_path = tmp_path / "snapshot.csv"
        snapshot_path.write_text("#date,March 2001\nid,a,b\na,0,1\nb,0,0\n", encoding="utf-8")
        with pytest.raises(DataFileParsingError):
            parse_snapshot(snapshot_path)


class TestParseSeries:
    def test_sorted_by_date(self, tmp_path):
        # Given two snapshot files supplied out of date order
        later_path = tmp_path / "later.csv"
        later_path.write_text("#date,2001-03-01\nid,a,b\na,0,1\nb,1,0\n", encoding="utf-8")
        earlier_path = tmp_path / "earlier.csv"
        earlier_path.write_text("#date,2000-03-01\nid,a,b\na,0,1\nb,0,0\n", encoding="utf-8")

        # When parsing them as a series
        series = parse_series([later_path, earlier_path])

        # The snapshots are in date order
        assert series.dates == (date(2000, 3, 1), date(2001, 3, 1))


class TestParseFeatures:
    def test_without_reach(self, tmp_path):
        features_path = tmp_path / "features.csv"
        features_path.write_text("id,setup_year,platform\na,1995,1\nb,1999,0\n", encoding="utf-8")
        table = parse_features(features_path)
        assert table.feature_names == ("platform",)
        assert table.flags("platform") == (1, 0)
        assert table.rows[0].reach_pct is None

    def test_malformed_flag(self, tmp_path):
        features_path = tmp_path / "features.csv"
        features_path.write_text("id,setup_year,platform\na,1995,yes\n", encoding="utf-8")
        with pytest.raises(DataFileParsingError) as exc_info:
            parse_features(features_path)
        assert (exc_info.value.line_number, exc_info.value.column_number) == (2, 3)

    def test_missing_setup_year(self, tmp_path):
        features_path = tmp_path / "features.csv"
        features_path.write_text("id,setup_year,platform\na,,1\n", encoding="utf-8")
        with pytest.raises(DataFileParsingError):
            parse_features(features_path)

    def test_implausible_setup_year(self, tmp_path):
        features_path = tmp_path / "features.csv"
        features_path.write_text("id,setup_year,platform\na,1850,1\n", encoding="utf-8")
        with pytest.raises(DataFileParsingError):
            parse_features(features_path)
