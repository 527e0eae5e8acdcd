"""Vectorized integer kernels for bulk divisibility tests in ``C^dual ∩ Z^n``.

Everything is done on int64 arrays.  ``m`` divides ``l`` in the semigroup
iff ``<l - m, v> >= 0`` for every ray ``v``, so points are compared through
their ray pairings.  Inputs are guarded so no intermediate can overflow.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import InvariantBreach
from .lattice import Vector

_LIMIT = 1 << 40
_BLOCK_CELLS = 1 << 22


def array(vectors: Iterable[Sequence[int]], width: int) -> np.ndarray:
    rows = [tuple(v) for v in vectors]
    a = np.array(rows, dtype=np.int64).reshape(len(rows), width)
    check_range(a)
    return a


def check_range(a: np.ndarray) -> None:
    if a.size and int(np.abs(a).max()) >= _LIMIT:
        raise InvariantBreach("coordinates too large for the vectorized kernels")


def vectors(a: np.ndarray) -> list[Vector]:
    return [tuple(int(x) for x in row) for row in a]


def pairings(a: np.ndarray, rays: np.ndarray) -> np.ndarray:
    """Row ``i`` holds the pairings of point ``i`` with every ray (``rays`` is k x n)."""
    return a @ rays.T


def unique_rows(a: np.ndarray) -> np.ndarray:
    if len(a) == 0:
        return a
    return np.unique(a, axis=0)


def divisible_mask(points: np.ndarray, divisors: np.ndarray) -> np.ndarray:
    """``out[i]`` is True iff some row of ``divisors`` is componentwise <= ``points[i]``.

    Both arguments are given in ray-pairing coordinates.
    """
    out = np.zeros(len(points), dtype=bool)
    if len(points) == 0 or len(divisors) == 0:
        return out
    step = max(1, _BLOCK_CELLS // (len(divisors) * points.shape[1] or 1))
    for lo in range(0, len(points), step):
        blk = points[lo:lo + step]
        out[lo:lo + step] = (divisors[None, :, :] <= blk[:, None, :]).all(axis=2).any(axis=1)
    return out


def minimal_rows(points: np.ndarray, rays: np.ndarray) -> np.ndarray:
    """Rows not divisible by any other row, sorted by degree then lexicographically.

    Rows are swept in increasing degree and each degree level is tested
    against the rows kept so far; distinct rows of equal degree never
    divide each other.
    """
    pts = sort_by_degree(unique_rows(points), rays)
    if len(pts) == 0:
        return pts
    pi = pairings(pts, rays)
    degree = pi.sum(axis=1)
    cuts = np.flatnonzero(np.diff(degree)) + 1
    keep = np.zeros(len(pts), dtype=bool)
    kept_pi = pi[:0]
    for lo, hi in zip(np.concatenate([[0], cuts]), np.concatenate([cuts, [len(pts)]])):
        fresh = ~divisible_mask(pi[lo:hi], kept_pi)
        keep[lo:hi] = fresh
        if fresh.any():
            kept_pi = np.concatenate([kept_pi, pi[lo:hi][fresh]])
    return pts[keep]


def sort_by_degree(points: np.ndarray, rays: np.ndarray) -> np.ndarray:
    if len(points) == 0:
        return points
    degree = pairings(points, rays).sum(axis=1)
    keys = [points[:, j] for j in range(points.shape[1] - 1, -1, -1)] + [degree]
    return points[np.lexsort(keys)]


def pairwise_sums(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = (a[:, None, :] + b[None, :, :]).reshape(-1, a.shape[1])
    check_range(out)
    return out
