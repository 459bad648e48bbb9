"""Reconstruct the June 2000 audience reach of the 19 search engines and check the bundled roster against the targets.

Only six reach values are known; the other thirteen are fitted with a bounded least-squares solver against
the published merger deltas, the published HHI and CR4, and the rank order of the audience reach chart.

Usage: python tools/reconstruct_reach.py
"""
from typing import Dict, List, Tuple

import numpy as np
from scipy.optimize import least_squares

from marketnet import (
    classify_concentration,
    concentration_report,
    cr_k,
    hhi,
    merger_screen,
    parse_roster,
    parse_snapshot,
    resolve_data_path,
    shares_from_reach,
)
from marketnet.model import ShareTable

# Known reach values
FIXED_REACH: Dict[str, float] = {
    "Yahoo": 47.0,
    "MSN": 35.8,
    "Go": 19.1,
    "Netscape": 15.4,
    "iWon": 6.7,
    "Raging": 0.1,
}

# The rank order of the chart's key, largest reach first
RANK_ORDER = (
    "Yahoo",
    "MSN",
    "Go",
    "Netscape",
    "Lycos",
    "AltaVista",
    "Excite",
    "LookSmart",
    "Snap",
    "GoTo",
    "iWon",
    "Google",
    "HotBot",
    "AskJeeves",
    "DirectHit",
    "WebCrawler",
    "NorthernLight",
    "OpenDirectory",
    "Raging",
)

# HHI increase of the mergers highlighted in the published merger table
PUBLISHED_DELTAS: List[Tuple[str, str, float]] = [
    ("MSN", "Yahoo", 1131),
    ("Go", "Yahoo", 519),
    ("Go", "MSN", 418),
    ("Netscape", "Yahoo", 395),
    ("Netscape", "MSN", 315),
    ("Netscape", "Go", 192),
    ("Lycos", "Yahoo", 395),
    ("Lycos", "MSN", 315),
    ("Lycos", "Go", 192),
    ("Lycos", "Netscape", 163),
    ("AltaVista", "Yahoo", 307),
    ("AltaVista", "MSN", 244),
    ("AltaVista", "Go", 145),
    ("AltaVista", "Netscape", 122),
    ("AltaVista", "Lycos", 122),
    ("Excite", "Yahoo", 336),
    ("Excite", "MSN", 267),
    ("Excite", "Go", 160),
    ("Excite", "Netscape", 135),
    ("Excite", "Lycos", 135),
    ("Excite", "AltaVista", 116),
    ("LookSmart", "Yahoo", 195),
    ("LookSmart", "MSN", 153),
    ("Snap", "Yahoo", 192),
    ("Snap", "MSN", 150),
    ("GoTo", "Yahoo", 166),
    ("GoTo", "MSN", 130),
    ("iWon", "Yahoo", 163),
    ("iWon", "MSN", 127),
]

TARGET_HHI = 1183.0
TARGET_CR4 = 0.58
TARGET_NAHHI = 870.0
TARGET_FLAGGED_PAIRS = 29

# The published deltas contradict the published CR4, so they weigh less than the aggregates
_DELTA_WEIGHT = 0.2
_AGGREGATE_WEIGHT = 5.0
_ORDER_WEIGHT = 50.0

UNKNOWN_IDS = tuple(node_id for node_id in RANK_ORDER if node_id not in FIXED_REACH)


def _full_reach(unknown_reach: np.ndarray) -> Dict[str, float]:
    reach = dict(FIXED_REACH)
    reach.update(zip(UNKNOWN_IDS, unknown_reach))
    return reach


def _residuals(unknown_reach: np.ndarray) -> np.ndarray:
    reach = _full_reach(unknown_reach)
    total_reach = sum(reach.values())
    shares = {node_id: value / total_reach for node_id, value in reach.items()}

    residuals = []
    for firm_a, firm_b, published_delta in PUBLISHED_DELTAS:
        delta = 2 * (100 * shares[firm_a]) * (100 * shares[firm_b])
        residuals.append(_DELTA_WEIGHT * (delta - published_delta) / published_delta)

    hhi_value = sum((100 * share) ** 2 for share in shares.values())
    cr4_value = sum(sorted(shares.values(), reverse=True)[:4])
    residuals.append(_AGGREGATE_WEIGHT * (hhi_value - TARGET_HHI) / TARGET_HHI)
    residuals.append(_AGGREGATE_WEIGHT * (cr4_value - TARGET_CR4) / TARGET_CR4)

    # Penalize every pair of neighbors that breaks the rank order
    for higher_id, lower_id in zip(RANK_ORDER, RANK_ORDER[1:]):
        residuals.append(_ORDER_WEIGHT * max(0.0, reach[lower_id] - reach[higher_id]))
    return np.array(residuals)


def reconstruct() -> Dict[str, float]:
    lower_bounds = np.full(len(UNKNOWN_IDS), FIXED_REACH["Raging"])
    upper_bounds = np.full(len(UNKNOWN_IDS), FIXED_REACH["Netscape"])
    # iWon splits the unknown values in two blocks
    iwon_rank = RANK_ORDER.index("iWon")
    for index, node_id in enumerate(UNKNOWN_IDS):
        if RANK_ORDER.index(node_id) < iwon_rank:
            lower_bounds[index] = FIXED_REACH["iWon"]
        else:
            upper_bounds[index] = FIXED_REACH["iWon"]

    initial_guess = (lower_bounds + upper_bounds) / 2
    fit = least_squares(_residuals, initial_guess, bounds=(lower_bounds, upper_bounds))
    return {node_id: round(value, 1) for node_id, value in _full_reach(fit.x).items()}


def _check(label: str, value: float, target: float, tolerance: float) -> str:
    status = "OK" if abs(value - target) <= tolerance else "OFF TARGET"
    return f"   {label:<35}{value:>10.2f}   target {target:.2f} +/- {tolerance:.2f}   {status}"


def main() -> None:
    fitted_reach = reconstruct()
    roster = parse_roster(resolve_data_path("jun2000"))
    snapshot = parse_snapshot(resolve_data_path("aug2000"), roster)

    print("\n FITTED VS. BUNDLED REACH\n ------------------------\n")
    for node_id in RANK_ORDER:
        bundled_reach = roster.entry(node_id).reach_pct or 0.0
        marker = "" if node_id not in FIXED_REACH else " (quoted)"
        print(f"   {node_id:<35}{fitted_reach[node_id]:>6.1f}{bundled_reach:>8.1f}{marker}")

    fitted_shares = ShareTable(
        ids=RANK_ORDER,
        values=tuple(fitted_reach[node_id] / sum(fitted_reach.values()) for node_id in RANK_ORDER),
    )
    print(f"\n   Fitted vector: CR4 {cr_k(fitted_shares, 4):.4f}, HHI {hhi(fitted_shares):.1f}")

    report = concentration_report(roster, snapshot, k=4, overlap=0.3)
    screen = merger_screen(shares_from_reach(roster), threshold=100.0)
    print("\n BUNDLED ROSTER ACCEPTANCE\n -------------------------\n")
    print(_check("CR4", report.cr_k, TARGET_CR4, 0.02))
    print(_check("HHI", report.hhi, TARGET_HHI, 25))
    if report.nahhi is not None:
        print(_check("NAHHI (overlap 0.30)", report.nahhi, TARGET_NAHHI, 30))
        print(f"   {'NAHHI band':<35}{classify_concentration(report.nahhi).value}")
    print(f"   {'HHI band':<35}{report.classification.value}")
    print(_check("Flagged mergers", len(screen.flagged_pairs), TARGET_FLAGGED_PAIRS, 0))
    print(_check("Yahoo x MSN", screen.delta("Yahoo", "MSN"), 1131, 0.05 * 1131))
    print(_check("Yahoo x Go", screen.delta("Yahoo", "Go"), 519, 0.05 * 519))


if __name__ == "__main__":
    main()
