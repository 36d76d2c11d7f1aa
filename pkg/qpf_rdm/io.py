"""
Input / Output
"""
import json
import sys
from pathlib import Path
from typing import TextIO

import pandas as pd

from qpf_rdm.config import SCHEMA_HEADER

SIMULATE_COLUMNS = ["n", "r", "q", "rho00", "rho01_re", "rho01_im", "ax", "ay", "az"]
PATTERN_COLUMNS = ["n", "q", "r", "predicted", "observed", "match"]
ACCURACY_COLUMNS = ["bits", "extra", "total", "correct", "accuracy"]
COMPARE_COLUMNS = ["n", "qprime", "r", "exact_az", "approx_az", "gap"]
A0_SCAN_COLUMNS = ["n", "r", "q", "x0", "a0", "multiplicity", "rho00", "rho01_re", "rho01_im"]
FIND_COLUMNS = ["period", "iterations", "qubits_used"]


def rows_to_frame(rows: list[dict], columns: list[str]) -> pd.DataFrame:
    return pd.DataFrame(rows, columns=columns)


def write_frame(df: pd.DataFrame, handle: TextIO):
    """
    Schema header line, then the table; floats keep their shortest round-trip repr
    """
    handle.write(SCHEMA_HEADER + "\n")
    df.to_csv(handle, index=False, lineterminator="\n")


def save_rows(rows: list[dict], columns: list[str], out: str | None = None):
    """
    Writes rows as CSV to `out`, or to standard output when no path is given
    """
    df = rows_to_frame(rows, columns)
    if out is None:
        write_frame(df, sys.stdout)
        return

    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        write_frame(df, handle)


def save_json(payload: dict, out: str | None = None):
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
        return

    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def save_table(rows: list[dict], columns: list[str], out: str | None = None, format: str = "csv"):
    """
    Writes rows in the requested format; JSON keeps the column order next to the records
    """
    if format == "json":
        records = rows_to_frame(rows, columns).to_dict(orient="records")
        save_json({"schema": SCHEMA_HEADER.lstrip("# "), "columns": columns, "rows": records}, out)
    else:
        save_rows(rows, columns, out)


def read_table(path: str) -> pd.DataFrame:
    return pd.read_csv(path, comment="#")
