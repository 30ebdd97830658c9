import csv
import io
import json
import logging
import os
from typing import Iterable, Optional, Sequence

from ..core.polyring import Polynomial, render_text, to_json
from ..core.trimatrix import UnitriMatrix
from ..methods.recur import CoeffTable

logger = logging.getLogger(__name__)

OUTPUT_DIR_ENV_VAR = "FCPOINCARE_OUTPUT_DIR"


def rows_to_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def polynomial_json(p: Polynomial) -> str:
    return json.dumps(to_json(p))


def coeff_table_rows(table: CoeffTable, view: str = "b") -> list[list[object]]:
    """(j, k, entry) triples in the b-view or, with view='B', the B-view."""
    accessor = table.B if view == "B" else table.b
    return [
        [j, k, render_text(accessor(j, k))]
        for j in range(1, table.N + 1)
        for k in range(1, j + 1)
    ]


def matrix_rows(M: UnitriMatrix) -> list[list[object]]:
    """(row, col, entry) for the lower triangle including the unit diagonal."""
    return [
        [i, j, render_text(M.entry(i, j))]
        for i in range(1, M.N + 1)
        for j in range(1, i + 1)
    ]


def resolve_output_path(out: str) -> str:
    if os.path.isabs(out):
        return out
    base_dir = os.getenv(OUTPUT_DIR_ENV_VAR)
    return os.path.join(base_dir, out) if base_dir else out


def write_output(content: str, out: Optional[str]) -> Optional[str]:
    """
    Print the report, or write it to `out` (relative paths land in
    FCPOINCARE_OUTPUT_DIR when that is set). Returns the written path.
    """
    if not out:
        print(content, end="" if content.endswith("\n") else "\n")
        return None

    path = resolve_output_path(out)
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', newline='', encoding='utf-8') as f:
        f.write(content)
    logger.info(f"Report written to: {path}")
    return path
