import pytest

from marketnet.centrality import CentralityMetricEnum
from marketnet.commands.centrality_command import CentralityArguments, CentralityImplementation
from marketnet.commands.command_base import AnalysisCommandWrongUsageError, AnalysisInputs
from tests.factories import AdjacencyFactory, BundledDataFactory, NetworkSnapshotFactory


class TestCentralityCommand:
    def test(self):
        # Given the bundled network
        inputs = BundledDataFactory.inputs()

        # When ranking the organizations with the default metrics, it succeeds
        result = CentralityImplementation.run_analysis(inputs, CentralityArguments(top_k=4))

        # And the right result is returned
        assert result.link_count == 35
        assert result.isolates == ("iWon", "Raging")
        assert [ranking.report.metric for ranking in result.rankings] == [
            CentralityMetricEnum.INDEGREE,
            CentralityMetricEnum.OUTDEGREE,
            CentralityMetricEnum.BETWEENNESS_NORMALIZED,
            CentralityMetricEnum.INFORMATION,
        ]
        assert result.rankings[0].top[0] == ("AltaVista", 6)
        assert len(result.rankings[0].top) == 6

        # And a CLI output can be generated
        console_output = CentralityImplementation.cli_connector_cls.result_to_console_output(result)
        assert any("Excite, HotBot" in line for line in console_output)

        # And CSV rows can be generated
        csv_rows = CentralityImplementation.cli_connector_cls.result_to_csv_rows(result)
        assert csv_rows[0] == ["metric", "rank", "id", "score"]
        assert csv_rows[1] == ["indegree", "1", "AltaVista", "6.0"]

    def test_reach(self):
        inputs = BundledDataFactory.inputs()
        arguments = CentralityArguments(metrics=(CentralityMetricEnum.AUDIENCE_REACH,), top_k=1)

        result = CentralityImplementation.run_analysis(inputs, arguments)

        assert result.rankings[0].top == (("Yahoo", 47.0),)

    def test_reach_without_roster(self):
        snapshot = NetworkSnapshotFactory.create(AdjacencyFactory.directed_cycle(4))
        arguments = CentralityArguments(metrics=(CentralityMetricEnum.AUDIENCE_REACH,))
        with pytest.raises(AnalysisCommandWrongUsageError):
            CentralityImplementation.run_analysis(AnalysisInputs(snapshots=(snapshot,)), arguments)

    def test_two_snapshots(self):
        snapshot = NetworkSnapshotFactory.create(AdjacencyFactory.directed_cycle(4))
        with pytest.raises(AnalysisCommandWrongUsageError):
            CentralityImplementation.run_analysis(AnalysisInputs(snapshots=(snapshot, snapshot)), CentralityArguments())
