"""
Reproduce the data sets of the marginal patterns, the model comparison and the accuracy curves
"""

from pprint import pprint

from qpf_rdm.analysis.model import compare_rows, quarter_gap
from qpf_rdm.cli import pattern_rows_for_qubit
from qpf_rdm.config import load_settings
from qpf_rdm.io import ACCURACY_COLUMNS, COMPARE_COLUMNS, PATTERN_COLUMNS, save_rows
from qpf_rdm.metrics import compute_pattern_mismatches, get_metrics
from qpf_rdm.search.finder import accuracy_sweep

# set sweep parameters
pattern_sizes = [3, 5]
accuracy_bits = [6, 7, 8]
show_metrics = True


def main():
    settings = load_settings()

    # peak patterns of every qubit as a function of the period
    for n in pattern_sizes:
        print(f"\nPeak pattern for n={n}")
        rows = [row for q in range(n) for row in pattern_rows_for_qubit((n, q, settings))]
        save_rows(rows, PATTERN_COLUMNS, f"data/outputs/pattern_n{n}.csv")
        print(f"mismatches: {compute_pattern_mismatches(rows)}")

    # approximate marginals against exact ones for the last two qubits
    print("\nApproximate model, n=6")
    save_rows(compare_rows(6, [0, 1]), COMPARE_COLUMNS, "data/outputs/compare_n6.csv")
    print(f"largest gap below N/4: {quarter_gap(6, [0, 1])}")

    # accuracy as a function of the number of extra qubits
    for bits in accuracy_bits:
        print(f"\nAccuracy for {bits}-bit periods")
        reports = accuracy_sweep(bits, list(range(bits + 1)), settings)
        save_rows(
            [report.as_row() for report in reports],
            ACCURACY_COLUMNS,
            f"data/outputs/accuracy_bits{bits}.csv",
        )
        if show_metrics:
            pprint(get_metrics(reports))


if __name__ == "__main__":
    main()
