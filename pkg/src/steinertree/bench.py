"""Benchmark harness: solve every .stp file in a directory, emit CSV.

Per-file failures become rows with an error status; the run keeps going.
The final row summarizes max and mean ratios over the successful rows.
"""
from __future__ import annotations

import csv
import io
import logging
import os
from glob import glob

from .errors import SteinerError, UsageError
from .solver import RunConfig, RunResult, solve
from .stp import load_stp

log = logging.getLogger(__name__)


def run_benchmark(directory: str, config: RunConfig | None = None,
                  out_path: str | None = None) -> tuple[list[list[str]], str]:
    """Returns (rows, csv text). Rows include the header and summary."""
    config = config or RunConfig()
    config.validate()
    if not os.path.isdir(directory):
        raise UsageError(f"{directory} is not a directory")
    files = sorted(glob(os.path.join(directory, "*.stp")))
    if not files:
        log.warning("no .stp files in %s", directory)

    rows: list[list[str]] = [RunResult.csv_header()]
    ratios_opt: list[float] = []
    ratios_mst: list[float] = []
    errors = 0
    for path in files:
        name = os.path.splitext(os.path.basename(path))[0]
        try:
            result = solve(load_stp(path), config)
        except (SteinerError, OSError) as exc:
            errors += 1
            log.warning("%s failed: %s", name, exc)
            rows.append([name, "", "", "", str(config.k), "", "", "", "", "",
                         "", "", f"error: {exc}"])
            continue
        rows.append(result.to_csv_row())
        if result.opt_cost:
            ratios_opt.append(result.solution_cost / result.opt_cost)
        if result.mst_cost:
            ratios_mst.append(result.solution_cost / result.mst_cost)

    def _fmt(values: list[float]) -> str:
        if not values:
            return ""
        return f"max={max(values):.6f};mean={sum(values) / len(values):.6f}"

    if files:
        rows.append(["(summary)", "", "", "", str(config.k), "", "", "",
                     _fmt(ratios_opt), _fmt(ratios_mst), "", "",
                     f"ok={len(files) - errors};error={errors}"])

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    text = buf.getvalue()
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    if errors:
        log.warning("%d of %d files failed; see error rows", errors, len(files))
    return rows, text
