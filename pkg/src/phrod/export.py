"""Deterministic CSV / JSON writers for trajectories and spectra."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


def fmt(x: float) -> str:
    """17 significant digits, scientific notation; empty field for NaN."""
    x = float(x)
    if math.isnan(x):
        return ""
    return f"{x:.16e}"


def write_table(path: Path, header: Sequence[str], columns: Iterable[np.ndarray], kind: str) -> Path:
    cols = [np.asarray(c) for c in columns]
    path = Path(path).with_suffix("." + kind)
    path.parent.mkdir(parents=True, exist_ok=True)
    if kind == "csv":
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in zip(*cols):
                w.writerow([v if isinstance(v, (int, np.integer)) else fmt(v) for v in row])
    else:
        data = {h: [None if isinstance(v, float) and math.isnan(v) else v for v in c.tolist()]
                for h, c in zip(header, cols)}
        with open(path, "w") as fh:
            json.dump(data, fh, indent=1)
            fh.write("\n")
    return path


def write_summary(path: Path, summary: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path
