"""Deterministic CSV emission for sweep and table output.

Values are written with 12 significant digits, rows end with a plain
newline, and any trailing summary lines are prefixed with '#'.  Column
names containing commas (the mixture columns) are double-quoted.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np


def _quote(name: str) -> str:
    if "," in name or '"' in name:
        return '"' + name.replace('"', '""') + '"'
    return name


def format_value(v: float) -> str:
    return f"{float(v):.12g}"


def emit_csv(
    columns: Mapping[str, Sequence[float]],
    footer_comments: Sequence[str] = (),
) -> str:
    names = list(columns)
    if not names:
        raise ValueError("no columns to emit")
    arrays = [np.asarray(columns[name], dtype=np.float64) for name in names]
    length = arrays[0].shape[0]
    for name, arr in zip(names, arrays):
        if arr.shape != (length,):
            raise ValueError(f"column {name!r} has shape {arr.shape}, expected ({length},)")
    lines = [",".join(_quote(n) for n in names)]
    for row in range(length):
        lines.append(",".join(format_value(arr[row]) for arr in arrays))
    for comment in footer_comments:
        lines.append(f"# {comment}")
    return "\n".join(lines) + "\n"
