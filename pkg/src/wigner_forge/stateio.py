"""Bit-exact state files: one JSON header line followed by raw float64 bytes.

The header names the grid, accumulated beta and log_norm, the byte order,
the element type, and the row-major [x][p] layout, so any language can read
the file with a JSON parser and a byte copy.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import StateFileError
from .grid import PhaseGrid, WignerState

__all__ = ["save_state", "load_state", "WST_MAGIC", "WST_VERSION"]

WST_MAGIC = "WST"
WST_VERSION = 1


def save_state(state: WignerState, path) -> None:
    """Write ``state`` to ``path`` in the .wst container."""
    g = state.grid
    header = {
        "magic": WST_MAGIC,
        "version": WST_VERSION,
        "n_x": g.n_x,
        "n_p": g.n_p,
        "x_min": g.x_min,
        "x_max": g.x_max,
        "p_min": g.p_min,
        "p_max": g.p_max,
        "hbar": g.hbar,
        "beta": state.beta,
        "log_norm": state.log_norm,
        "byte_order": "little",
        "dtype": "float64",
        "order": "row-major-xp",
    }
    payload = np.ascontiguousarray(state.w, dtype="<f8").tobytes()
    with open(path, "wb") as fh:
        fh.write(json.dumps(header, sort_keys=True).encode("utf-8"))
        fh.write(b"\n")
        fh.write(payload)


def load_state(path) -> WignerState:
    """Read a .wst file back into a WignerState, bit-exactly."""
    raw = Path(path).read_bytes()
    newline = raw.find(b"\n")
    if newline < 0:
        raise StateFileError(f"{path}: missing header line")
    try:
        header = json.loads(raw[:newline].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise StateFileError(f"{path}: malformed header: {exc}") from exc

    if header.get("magic") != WST_MAGIC:
        raise StateFileError(f"{path}: not a WST file (magic={header.get('magic')!r})")
    if header.get("version") != WST_VERSION:
        raise StateFileError(
            f"{path}: unsupported version {header.get('version')!r}, expected {WST_VERSION}"
        )
    if header.get("dtype") != "float64" or header.get("byte_order") != "little":
        raise StateFileError(f"{path}: unsupported element encoding in header")

    grid = PhaseGrid(
        n_x=int(header["n_x"]),
        n_p=int(header["n_p"]),
        x_min=float(header["x_min"]),
        x_max=float(header["x_max"]),
        p_min=float(header["p_min"]),
        p_max=float(header["p_max"]),
        hbar=float(header["hbar"]),
    )
    expected = grid.n_x * grid.n_p * 8
    payload = raw[newline + 1 :]
    if len(payload) != expected:
        found = len(payload) // 8
        raise StateFileError(
            f"{path}: array shape mismatch: header says {grid.shape} "
            f"({grid.n_x * grid.n_p} elements), file holds {found}"
        )
    w = np.frombuffer(payload, dtype="<f8").reshape(grid.shape).astype(np.float64)
    return WignerState(grid, w, beta=float(header["beta"]), log_norm=float(header["log_norm"]))
