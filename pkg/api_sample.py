from marketnet import (
    AnalysisCommand,
    AnalysisInputs,
    AnalysisRequest,
    Analyzer,
    CentralityArguments,
    ConcentrationArguments,
    MarketNetError,
    MergerScreenArguments,
    parse_roster,
    parse_snapshot,
    resolve_data_path,
)


def main() -> None:
    # First parse the bundled data sets
    try:
        roster = parse_roster(resolve_data_path("jun2000"))
        snapshot = parse_snapshot(resolve_data_path("aug2000"), roster)
    except MarketNetError as e:
        print(f"Error loading the bundled data: {e}")
        return

    inputs = AnalysisInputs(roster=roster, snapshots=(snapshot,))
    analyzer = Analyzer()

    # Then queue some analysis commands on the network
    analyzer.queue_analysis(
        AnalysisRequest(
            analysis_command=AnalysisCommand.CENTRALITY, inputs=inputs, arguments=CentralityArguments(top_k=4)
        )
    )
    analyzer.queue_analysis(
        AnalysisRequest(
            analysis_command=AnalysisCommand.CONCENTRATION,
            inputs=inputs,
            arguments=ConcentrationArguments(k=4, overlap=0.3),
        )
    )
    analyzer.queue_analysis(
        AnalysisRequest(
            analysis_command=AnalysisCommand.MERGER_SCREEN,
            inputs=AnalysisInputs(roster=roster),
            arguments=MergerScreenArguments(threshold=100.0),
        )
    )

    # Then retrieve the results, in the order the analyses were queued
    for analysis_result in analyzer.get_results():
        if analysis_result.error:
            print(f"\nError when running {analysis_result.analysis_command}:\n{analysis_result.error.exception_trace}")
            continue

        result = analysis_result.result
        print(f"\nResults for {analysis_result.analysis_command}:")
        if analysis_result.analysis_command == AnalysisCommand.CENTRALITY:
            for ranking in result.rankings:  # type: ignore
                top_ids = ", ".join(node_id for node_id, _ in ranking.top)
                print(f"* {ranking.report.metric.value}: {top_ids}")
        elif analysis_result.analysis_command == AnalysisCommand.CONCENTRATION:
            report = result.report  # type: ignore
            print(f"* CR{report.k} = {report.cr_k:.2f}, HHI = {report.hhi:.0f} ({report.classification.value})")
            print(f"* NAHHI at overlap {report.overlap} = {report.nahhi:.0f} ({report.nahhi_classification.value})")
        elif analysis_result.analysis_command == AnalysisCommand.MERGER_SCREEN:
            screen = result.screen  # type: ignore
            print(f"* {len(screen.flagged_pairs)} of {len(screen.pairs)} possible mergers need a closer look")


if __name__ == "__main__":
    main()
