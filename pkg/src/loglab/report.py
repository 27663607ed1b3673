"""Report and plot-data emission.

CSV dialect is fixed: comma separator, '.' decimal point, one header row,
LF line endings, floats at 17 significant digits (lossless double round
trip).  JSON reports carry the same table as {command, columns, rows} and
validate against schemas/report.schema.json.  Reports are byte-identical
for identical config and seed; meta.json additionally records wall time and
is therefore excluded from that guarantee.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Mapping, Sequence


def format_cell(value: Any) -> Any:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return f"{value:.17g}"
    return value


def write_report_csv(path: str | Path, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_cell(v) for v in row])
    return path


def write_report_json(
    path: str | Path, command: str, columns: Sequence[str], rows: Sequence[Sequence[Any]]
) -> Path:
    path = Path(path)
    payload = {"command": command, "columns": list(columns), "rows": [list(r) for r in rows]}
    with open(path, "w", newline="") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def write_meta(path: str | Path, *, version: str, command: str, config: Mapping[str, Any],
               seed: int, wall_time_s: float, cache_dir: str) -> Path:
    path = Path(path)
    payload = {
        "version": version,
        "command": command,
        "config": dict(sorted(config.items())),
        "seed": seed,
        "rng": "numpy.random.default_rng (PCG64)",
        "wall_time_s": wall_time_s,
        "cache_dir": cache_dir,
    }
    with open(path, "w", newline="") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def emit_plotdata(path: str | Path, series: Mapping[str, Sequence[Any]]) -> Path:
    """Aligned named arrays to a wide CSV, one column per series."""
    lengths = {len(v) for v in series.values()}
    if len(lengths) > 1:
        raise ValueError(f"series lengths differ: { {k: len(v) for k, v in series.items()} }")
    names = list(series)
    rows = zip(*(series[name] for name in names)) if series else []
    return write_report_csv(path, names, list(rows))
