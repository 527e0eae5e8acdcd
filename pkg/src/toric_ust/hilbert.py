"""Hilbert bases of the semigroup ``C^dual ∩ Z^n`` and truncated enumeration.

The dual cone is triangulated (pulling triangulation on its extreme rays);
every irreducible element is either a dual ray or a lattice point of the
half-open fundamental parallelepiped of one of the simplicial pieces.  The
candidates are then reduced to the irreducible ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _arrays
from . import lattice as lat
from .cones import Cone, _require_full, enumerate_faces
from .errors import DomainError
from .lattice import Vector


@dataclass(frozen=True)
class SemigroupBasis:
    cone: Cone
    elements: tuple[Vector, ...]
    grading_functional: Vector

    def degree(self, m: Sequence[int]) -> int:
        return lat.pairing(m, self.grading_functional)

    @property
    def max_degree(self) -> int:
        return max(self.degree(b) for b in self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def _dual_face_sets(c: Cone) -> dict[int, list[frozenset[int]]]:
    """Faces of the dual cone as sets of dual-ray indices, keyed by dimension."""
    out: dict[int, list[frozenset[int]]] = {}
    for f in enumerate_faces(c):
        idx = frozenset(j for j, w in enumerate(c.dual_rays)
                        if all(lat.pairing(w, v) == 0 for v in f.generators))
        out.setdefault(c.ambient_rank - f.dim, []).append(idx)
    return out


def triangulate_dual(c: Cone) -> list[tuple[int, ...]]:
    """Pulling triangulation of the dual cone; simplices are tuples of dual-ray indices."""
    _require_full(c, "triangulate_dual")
    faces = _dual_face_sets(c)

    @lru_cache(maxsize=None)
    def tri(face: frozenset[int], d: int) -> tuple[tuple[int, ...], ...]:
        if len(face) == d:
            return (tuple(sorted(face)),)
        apex = min(face)
        out = []
        for sub in faces.get(d - 1, ()):
            if sub < face and apex not in sub:
                out.extend(tuple(sorted(s + (apex,))) for s in tri(sub, d - 1))
        return tuple(out)

    top = frozenset(range(len(c.dual_rays)))
    return sorted(tri(top, c.ambient_rank))


def parallelepiped_points(generators: Sequence[Vector]) -> list[Vector]:
    """Lattice points of ``{sum t_i g_i : 0 <= t_i < 1}`` for independent ``g_i``.

    The points are coset representatives of ``Z^n / (g_i)``; they are read
    off the Smith normal form of the generator matrix and folded back into
    the parallelepiped.
    """
    n = len(generators)
    cols = lat.transpose(generators)  # columns are the generators
    snf = lat.smith_normal_form(cols)
    det = abs(lat.determinant(cols))
    # det * inverse is integral, so the fractional parts are residues mod det
    adj = np.array([[int(q * det) for q in row] for row in lat.inverse(cols)], dtype=np.int64)
    grids = np.meshgrid(*(np.arange(d, dtype=np.int64) for d in snf.diag), indexing="ij")
    digits = np.stack([g.ravel() for g in grids], axis=1)
    reps = digits @ np.array(snf.left_inv, dtype=np.int64).T
    _arrays.check_range(reps)
    coeffs = np.mod(reps @ adj.T, det)
    scaled = coeffs @ np.array(cols, dtype=np.int64).T
    _arrays.check_range(scaled)
    if np.any(scaled % det):
        raise AssertionError("parallelepiped point is not integral")
    return _arrays.vectors(scaled // det) if n else []


def _reduce_to_irreducibles(c: Cone, candidates: Iterable[Vector]) -> list[Vector]:
    # The candidates contain every irreducible element, so a candidate is
    # reducible iff some other nonzero candidate divides it.
    pts = _arrays.array((m for m in set(candidates) if any(m)), c.ambient_rank)
    return _arrays.vectors(_arrays.minimal_rows(pts, _arrays.array(c.rays, c.ambient_rank)))


@lru_cache(maxsize=256)
def hilbert_basis(c: Cone) -> SemigroupBasis:
    """Irreducible elements of ``C^dual ∩ Z^n``, sorted by degree then lexicographically."""
    _require_full(c, "hilbert_basis")
    candidates = set(c.dual_rays)
    for simplex in triangulate_dual(c):
        candidates.update(parallelepiped_points([c.dual_rays[j] for j in simplex]))
    elements = _reduce_to_irreducibles(c, candidates)
    return SemigroupBasis(cone=c, elements=tuple(elements), grading_functional=c.ray_sum)


def _independent_rays(c: Cone) -> list[Vector]:
    chosen: list[Vector] = []
    for v in c.rays:
        if lat.rank(chosen + [v], c.ambient_rank) > len(chosen):
            chosen.append(v)
    return chosen


def _bounded_compositions(n: int, total: int) -> np.ndarray:
    """All ``y in N^n`` with ``sum(y) <= total``, one per row."""
    ys = np.zeros((1, 0), dtype=np.int64)
    for _ in range(n):
        room = total - ys.sum(axis=1)
        ys = np.repeat(ys, room + 1, axis=0)
        ys = np.column_stack([ys, np.concatenate([np.arange(k + 1) for k in room])])
    return ys


@lru_cache(maxsize=256)
def _enumerate(c: Cone, max_degree: int) -> tuple[Vector, ...]:
    # Pairings y = R m with n independent rays are nonnegative and sum to at
    # most deg(m), so scanning that simplex and keeping the y for which
    # m = R^-1 y is integral covers every point, whatever the coordinate sizes.
    basis = _independent_rays(c)
    det = lat.determinant(basis)
    adj = _arrays.array(([int(x * det) for x in row] for row in lat.inverse(basis)),
                        c.ambient_rank)
    numer = _bounded_compositions(c.ambient_rank, max_degree) @ adj.T
    _arrays.check_range(numer)
    pts = numer[(numer % det == 0).all(axis=1)] // det
    rays = _arrays.array(c.rays, c.ambient_rank)
    pi = _arrays.pairings(pts, rays)
    pts = pts[(pi >= 0).all(axis=1) & (pi.sum(axis=1) <= max_degree)]
    return tuple(_arrays.vectors(_arrays.sort_by_degree(pts, rays)))


def enumerate_semigroup(c: Cone, max_degree: int) -> list[Vector]:
    """Every ``m in C^dual ∩ Z^n`` with ``<m, v_C> <= max_degree``.

    A direct lattice-point scan in ray-pairing coordinates, independent of
    the Hilbert basis, so it can serve as an oracle for it.
    """
    _require_full(c, "enumerate_semigroup")
    if max_degree < 0:
        raise DomainError("max_degree must be nonnegative")
    return list(_enumerate(c, max_degree))


def is_irreducible(c: Cone, basis_so_far: Sequence[Vector] | None, m: Sequence[int]) -> bool:
    """Whether ``m`` is not a sum of two nonzero semigroup elements.

    ``basis_so_far`` must contain every irreducible element of degree below
    ``deg(m)``; pass None to test against all semigroup elements of lower
    degree instead.
    """
    m = lat.vec(m)
    if not any(m) or not c.contains_dual(m):
        raise DomainError(f"{m} is not a nonzero semigroup element")
    if basis_so_far is None:
        basis_so_far = enumerate_semigroup(c, c.degree(m) - 1)
    return not any(b != m and any(b) and c.contains_dual(lat.sub(m, b)) for b in basis_so_far)
