"""Responses matrices: Hankel construction, input augmentation, row echelon.

An n x n responses matrix stacks translated windows of a sampled
response: entry (i, j) = y[i + j].  Rectangular variants support
augmented shapes and sweeps that use every available sample.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .signals import Signal

__all__ = [
    "HankelMatrix",
    "AugmentedHankel",
    "BOTTOM",
    "RIGHT",
    "build_hankel",
    "build_rectangular_hankel",
    "build_augmented",
    "rational_hankel",
    "row_echelon",
    "write_matrix_csv",
]

BOTTOM = "bottom_row_of_inputs"
RIGHT = "right_column_of_inputs"


@dataclass(frozen=True)
class HankelMatrix:
    """Dense matrix with anti-diagonal (shift) structure.

    ``source_length`` is the number of signal samples consumed:
    rows + cols - 1 (2n - 1 for the square n x n case).
    """

    entries: np.ndarray
    source_length: int

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries, dtype=float)
        if arr.ndim != 2:
            raise ValueError("entries must be 2-D")
        if self.source_length != arr.shape[0] + arr.shape[1] - 1:
            raise ValueError("source_length must equal rows + cols - 1")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape


@dataclass(frozen=True)
class AugmentedHankel:
    """Output Hankel block padded with translated input samples.

    The y block is the square n x n responses matrix; the padding is one
    extra row of u values at the bottom ((n+1) x n) or one extra column
    of u values at the right (n x (n+1)).
    """

    entries: np.ndarray
    augmentation_side: str

    def __post_init__(self) -> None:
        if self.augmentation_side not in (BOTTOM, RIGHT):
            raise ValueError(f"unknown augmentation side: {self.augmentation_side!r}")
        arr = np.asarray(self.entries, dtype=float).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape


def _window_matrix(samples: np.ndarray, rows: int, cols: int) -> np.ndarray:
    return samples[np.add.outer(np.arange(rows), np.arange(cols))]


def build_rectangular_hankel(signal: Signal, rows: int, cols: int) -> HankelMatrix:
    """Entry (i, j) = samples[i + j]; needs rows + cols - 1 samples."""
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    needed = rows + cols - 1
    if len(signal) < needed:
        raise ValueError(
            f"signal has {len(signal)} samples but a {rows}x{cols} Hankel "
            f"matrix requires rows + cols - 1 = {needed}"
        )
    return HankelMatrix(_window_matrix(signal.samples, rows, cols), needed)


def build_hankel(signal: Signal, n: int) -> HankelMatrix:
    """Square n x n responses matrix; needs 2n - 1 samples."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if len(signal) < 2 * n - 1:
        raise ValueError(
            f"signal has {len(signal)} samples but an {n}x{n} Hankel "
            f"matrix requires 2n - 1 = {2 * n - 1}"
        )
    return build_rectangular_hankel(signal, n, n)


def build_augmented(y: Signal, u: Signal, n: int, side: str = BOTTOM) -> AugmentedHankel:
    """Pad the n x n output Hankel block with translated input samples.

    When the input's modes already appear in the output, the padding row
    (or column) is linearly dependent on the y block and the rank is
    unchanged.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if side not in (BOTTOM, RIGHT):
        raise ValueError(f"side must be {BOTTOM!r} or {RIGHT!r}")
    if len(y) < 2 * n:
        raise ValueError(f"output signal needs at least 2n = {2 * n} samples, has {len(y)}")
    if len(u) < n + 1:
        raise ValueError(f"input signal needs at least n + 1 = {n + 1} samples, has {len(u)}")
    block = _window_matrix(y.samples, n, n)
    pad = u.samples[:n]
    if side == BOTTOM:
        entries = np.vstack([block, pad])
    else:
        entries = np.hstack([block, pad[:, None]])
    return AugmentedHankel(entries, side)


def rational_hankel(samples: Sequence, rows: int, cols: int) -> list[list]:
    """Hankel window layout over exact (e.g. Fraction) samples.

    Entries are taken as-is, so exact arithmetic survives; used to feed
    the exact rational rank oracle.
    """
    if len(samples) < rows + cols - 1:
        raise ValueError(
            f"need rows + cols - 1 = {rows + cols - 1} samples, have {len(samples)}"
        )
    return [[samples[i + j] for j in range(cols)] for i in range(rows)]


def row_echelon(matrix, pivot_tolerance: float = 0.0) -> tuple[np.ndarray, int]:
    """Forward Gaussian elimination with partial pivoting.

    A pivot is accepted only when its absolute value strictly exceeds
    ``pivot_tolerance`` times the largest absolute entry of the original
    matrix, so the accepted-pivot count doubles as a rank estimate whose
    tolerance semantics match a relative singular-value threshold.

    Works on float arrays and on object arrays of exact rationals; with
    exact entries and zero tolerance the pivot count is the exact rank.
    Returns (reduced matrix, pivot_count).
    """
    if pivot_tolerance < 0:
        raise ValueError("pivot_tolerance must be >= 0")
    a = np.array(matrix, copy=True)
    if a.ndim != 2:
        raise ValueError("matrix must be 2-D")
    rows, cols = a.shape
    scale = np.abs(a).max() if a.size else 0
    threshold = pivot_tolerance * scale
    r = 0
    pivots = 0
    for c in range(cols):
        if r == rows:
            break
        col = np.abs(a[r:, c])
        i = int(np.argmax(col)) + r
        if not (abs(a[i, c]) > threshold):
            continue
        if i != r:
            a[[r, i]] = a[[i, r]]
        below = a[r + 1 :, c] / a[r, c]
        a[r + 1 :] = a[r + 1 :] - np.outer(below, a[r])
        a[r + 1 :, c] = a[r, c] - a[r, c]  # exact zero in the entry's own type
        r += 1
        pivots += 1
    return a, pivots


def write_matrix_csv(matrix, path: str | Path) -> Path:
    """Row-major dump, one row per line, 17 significant digits."""
    arr = np.asarray(matrix, dtype=float)
    path = Path(path)
    lines = [",".join(format(v, ".17g") for v in row) for row in np.atleast_2d(arr)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
