import pytest

from marketnet.commands.command_base import AnalysisCommandWrongUsageError, AnalysisInputs
from marketnet.commands.regress_command import RegressArguments, RegressImplementation
from marketnet.stats import FEATURE_NAMES
from tests.factories import BundledDataFactory, FeatureTableFactory


class TestRegressCommand:
    def test(self):
        # Given the bundled feature table
        inputs = AnalysisInputs(features=BundledDataFactory.features())

        # When regressing the features on the setup year, it succeeds
        result = RegressImplementation.run_analysis(inputs, RegressArguments())

        # And younger organizations offer each feature less often
        assert tuple(regression.feature for regression in result.feature_regressions) == FEATURE_NAMES
        for regression in result.feature_regressions:
            assert regression.fit.slope < 0
            assert [year for year, _ in regression.curve] == list(range(1994, 2001))

        # And have a smaller audience
        assert result.reach_regression is not None
        assert result.reach_regression.slope < 0

        # And the feature counts match the published cross-tabulations
        old_group, new_group = result.age_groups
        assert (old_group.organization_count, new_group.organization_count) == (14, 5)
        assert result.reach_groups is not None
        top_group, other_group = result.reach_groups
        assert dict(top_group.feature_counts) == {"non_personalized": 4, "personalized": 4, "platform": 4}
        assert other_group.organization_count == 15

        # And a CLI output can be generated
        assert RegressImplementation.cli_connector_cls.result_to_console_output(result)

        # And CSV rows can be generated: the fits, a blank row, then the curves
        csv_rows = RegressImplementation.cli_connector_cls.result_to_csv_rows(result)
        assert [row[0] for row in csv_rows[1:5]] == ["logistic", "logistic", "logistic", "ols"]
        assert csv_rows[5] == []
        assert csv_rows[6] == ["feature", "setup_year", "predicted_probability"]
        assert len(csv_rows) == 7 + 3 * 7

    def test_without_reach(self):
        # Given a feature table without audience reach
        table = FeatureTableFactory.create(setup_years=[1994, 1995, 1996, 1997, 1998], flags=[1, 1, 0, 1, 0])

        # When regressing the features
        result = RegressImplementation.run_analysis(AnalysisInputs(features=table), RegressArguments())

        # Only the logistic regressions are run
        assert len(result.feature_regressions) == 1
        assert result.reach_regression is None
        assert result.reach_groups is None

    def test_without_features(self):
        with pytest.raises(AnalysisCommandWrongUsageError):
            RegressImplementation.run_analysis(AnalysisInputs(), RegressArguments())
