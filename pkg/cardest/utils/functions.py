# cardest. GNU GPL-3.0 (see LICENSE file)
"""
Various functions for cardest, mostly reading and writing reports.
"""
import csv
import io
import json
import sys
from importlib import resources
from pathlib import Path

from cardest.bounds import Precision
from cardest.errors import ParameterDomainError, GridFormatError


class _paths:
    """Paths used by functions in this file"""
    base = Path(str(resources.files("cardest").joinpath("")))

    canonical_grid = base / "data" / "grids" / "canonical.csv"
    """Grid used by `cardest sweep` when no --grid is given"""

    example_lines = base / "data" / "examples" / "lines.txt"
    """Small file of distinct lines for file sources"""


# IMPORT AND EXPORT _______________________________________________________________________________

def as_json_text(data) -> str:
    """Serialize a report as JSON. Keys are sorted and floats use their shortest round-trip form,
    so the same report always gives the same bytes.
    """
    return json.dumps(data, sort_keys=True, indent=2, allow_nan=False) + "\n"


def as_csv_text(rows:list, columns:list) -> str:
    """Serialize rows (dicts) as CSV with a header, in `columns` order"""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def write_output(text:str, output_path=None):
    """Write text to a file, or to standard output when `output_path` is None"""
    if output_path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(output_path, "w", encoding="utf8", newline="") as f:
        f.write(text)


def export_json(output_path, data):
    """Write a JSON report at the specified output_path"""
    write_output(as_json_text(data), output_path)


def export_csv(output_path, rows:list, columns:list):
    """Write a CSV report at the specified output_path"""
    write_output(as_csv_text(rows, columns), output_path)


def import_grid_csv(path=None) -> list:
    """Read a sweep grid, a CSV with the header `n,delta_err,p_err`.

    ```
    n,delta_err,p_err
    100,0.5,0.5
    1000,0.3,0.2
    ```

    Args:
        path (str|Path, optional): grid file. Defaults to the bundled canonical grid.

    Raises:
        OSError: the file cannot be read
        GridFormatError: wrong header, no rows, or invalid rows (`error.lines` has their line numbers)

    Returns:
        list: `(n, Precision)` tuples in file order
    """
    path = _paths.canonical_grid if path is None else Path(path)
    with open(path, "r", encoding="utf8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["n", "delta_err", "p_err"]:
            raise GridFormatError(f"{path}: header must be 'n,delta_err,p_err', got {header}", lines=[1])

        grid, bad_lines, reasons = [], [], []
        for row in reader:
            if not row or all(not cell.strip() for cell in row):
                continue
            try:
                if len(row) != 3:
                    raise ValueError(f"expected 3 values, got {len(row)}")
                n = int(row[0])
                if n < 1:
                    raise ValueError(f"n must be at least 1, got {n}")
                grid.append((n, Precision(float(row[1]), float(row[2]))))
            except (ValueError, ParameterDomainError) as er:
                bad_lines.append(reader.line_num)
                reasons.append(f"line {reader.line_num}: {er}")

    if bad_lines:
        raise GridFormatError(f"{path}: malformed grid rows\n" + "\n".join(reasons), lines=bad_lines)
    if not grid:
        raise GridFormatError(f"{path}: the grid has no rows", lines=[])
    return grid
