import numpy as np

from qpf_rdm.models.finder import AccuracyReport


def compute_accuracy_statistics(reports: list[AccuracyReport]):
    """
    Main statistics of the accuracy across extra-qubit counts
    """
    accuracies = [report.accuracy for report in reports]

    return {
        "mean": np.mean(accuracies),
        "median": np.median(accuracies),
        "minimum": min(accuracies),
        "maximum": max(accuracies),
    }


def first_unit_accuracy_extra(reports: list[AccuracyReport]) -> int | None:
    """
    Smallest number of extra qubits that recovers every period of the sweep
    """
    unit = [report.extra for report in reports if report.correct == report.total_periods]
    return min(unit, default=None)


def compute_pattern_mismatches(rows: list[dict]) -> int:
    """
    Number of (q, r) pairs where the peak rule and the simulated a_z disagree
    """
    return sum(1 for row in rows if not row["match"])


def get_metrics(reports: list[AccuracyReport]):
    return {
        "number_of_sweeps": len(reports),
        "accuracy": compute_accuracy_statistics(reports),
        "first_unit_accuracy_extra": first_unit_accuracy_extra(reports),
    }
