"""Input validation helpers shared across the package.

Kept deliberately small: each helper either returns a normalized value
(contiguous complex ndarray, int, ...) or raises ValueError with a message
naming the offending argument.
"""

from __future__ import annotations

import numpy as np


def is_power_of_two(n: int) -> bool:
    return isinstance(n, (int, np.integer)) and n >= 1 and (n & (n - 1)) == 0


def check_power_of_two(n: int, name: str) -> int:
    if not is_power_of_two(n):
        raise ValueError(f"{name} must be a power of two, got {n!r}")
    return int(n)


def check_positive(value: float, name: str) -> float:
    value = float(value)
    if not value > 0:
        raise ValueError(f"{name} must be > 0, got {value}")
    return value


def as_complex_matrix(values, name: str, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Coerce to a 2-D complex128 array, optionally enforcing (rows, cols)."""
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-D matrix, got ndim={arr.ndim}")
    if shape is not None and arr.shape != tuple(shape):
        raise ValueError(f"{name} has shape {arr.shape}, expected {tuple(shape)}")
    return arr


def as_stream(values, name: str, min_len: int = 1) -> np.ndarray:
    """Coerce to a 1-D complex128 sample stream of at least ``min_len`` samples."""
    arr = np.asarray(values, dtype=np.complex128).ravel()
    if arr.size < min_len:
        raise ValueError(f"{name} must contain at least {min_len} samples, got {arr.size}")
    return arr


def check_index(value: int, bound: int, name: str) -> int:
    value = int(value)
    if not 0 <= value < bound:
        raise ValueError(f"{name} must be in [0, {bound}), got {value}")
    return value
