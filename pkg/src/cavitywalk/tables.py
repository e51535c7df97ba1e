"""Plain-text table output with stable formatting and a digest manifest.

All data files are comma-delimited with a single header line; numbers
carry 17 significant digits so identical runs are byte-identical and
cross-language comparison is exact.
"""

from __future__ import annotations

import hashlib
import json
import time
from pathlib import Path

import numpy as np


def format_number(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def write_table(path: Path, header: list[str], columns: list[np.ndarray]):
    """Write columns as CSV; returns the number of data rows."""
    n = len(columns[0])
    for c in columns:
        if len(c) != n:
            raise ValueError("ragged columns")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(n):
            fh.write(",".join(format_number(c[i]) for c in columns) + "\n")
    return n


def sha256_of(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


class Manifest:
    """Collects files, seeds, derived parameters and results of a run."""

    def __init__(self, kind: str, master_seed: int, code_version: str,
                 workers: int):
        self.data = {
            "kind": kind,
            "master_seed": master_seed,
            "code_version": code_version,
            "workers": workers,
            "wallclock_s": None,
            "parameters": {},
            "results": {},
            "files": [],
        }
        self._t0 = time.monotonic()

    def add_file(self, path: Path, rows: int | None = None):
        entry = {"name": path.name, "sha256": sha256_of(path)}
        if rows is not None:
            entry["rows"] = rows
        self.data["files"].append(entry)

    def write(self, out_dir: Path) -> Path:
        self.data["wallclock_s"] = round(time.monotonic() - self._t0, 3)
        path = out_dir / "manifest.json"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(self.data, fh, indent=2, sort_keys=True)
            fh.write("\n")
        return path
