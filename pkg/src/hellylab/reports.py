"""Report emission: canonical CSV and aligned text summaries.

Reports are byte-identical across reruns with the same seed and worker
count: stable column order, exact rationals serialized as p/q, newline
always "\\n", and no timestamps (timing goes to stderr).
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Sequence


def fmt_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (frozenset, set)):
        return " ".join(str(x) for x in sorted(v))
    if isinstance(v, (tuple, list)):
        if v and isinstance(v[0], (tuple, frozenset, list)):
            return " | ".join(fmt_value(x) for x in v)
        return " ".join(str(x) for x in v)
    return str(v)


def rows_to_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt_value(row.get(c)) for c in columns])
    return buf.getvalue()


def rows_to_summary(rows: Sequence[dict], columns: Sequence[str]) -> str:
    cells = [[str(c) for c in columns]]
    for row in rows:
        cells.append([fmt_value(row.get(c)) for c in columns])
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    lines = []
    for j, r in enumerate(cells):
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if j == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def write_report(path: str, content: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(content)
