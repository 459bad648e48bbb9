from datetime import date

import pytest

from marketnet.commands.command_base import AnalysisCommandWrongUsageError, AnalysisInputs
from marketnet.commands.trend_command import TrendArguments, TrendImplementation
from marketnet.longitudinal import SeriesMetricEnum, TrendVerdictEnum
from marketnet.model import NetworkSnapshot
from tests.factories import AdjacencyFactory, BundledDataFactory, RosterFactory


class TestTrendCommand:
    def test(self):
        # Given three snapshots of a network gaining links
        roster = RosterFactory.create(4)
        snapshots = tuple(
            NetworkSnapshot(date=date(2000, month, 1), roster=roster, adjacency=adjacency)
            for month, adjacency in [
                (1, AdjacencyFactory.directed_path(4)),
                (4, AdjacencyFactory.directed_cycle(4)),
                (7, AdjacencyFactory.complete(4)),
            ]
        )

        # When running the trend analysis with a group, it succeeds
        arguments = TrendArguments(group_ids=(roster.ids[0],))
        result = TrendImplementation.run_analysis(AnalysisInputs(snapshots=snapshots), arguments)

        # And the right result is returned
        assert [row.date for row in result.report.rows] == [snapshot.date for snapshot in snapshots]
        assert dict(result.report.trends)[SeriesMetricEnum.DENSITY] == TrendVerdictEnum.INCREASING
        assert result.group_comparison is not None
        assert result.group_comparison.group_ids == (roster.ids[0],)

        # And a CLI output can be generated
        console_output = TrendImplementation.cli_connector_cls.result_to_console_output(result)
        assert any("increasing" in line for line in console_output)

        # And CSV rows can be generated
        csv_rows = TrendImplementation.cli_connector_cls.result_to_csv_rows(result)
        assert csv_rows[0][0] == "date"
        assert [row[0] for row in csv_rows[1:]] == ["2000-01-01", "2000-04-01", "2000-07-01"]

    def test_bundled_group(self):
        inputs = BundledDataFactory.inputs()
        arguments = TrendArguments(group_ids=("Yahoo", "MSN", "Go", "Netscape"))

        result = TrendImplementation.run_analysis(inputs, arguments)

        assert result.report.trends == ()
        assert result.group_comparison.group_mean_outdegree == pytest.approx(1.5)

    def test_without_snapshot(self):
        with pytest.raises(AnalysisCommandWrongUsageError):
            TrendImplementation.run_analysis(AnalysisInputs(), TrendArguments())
