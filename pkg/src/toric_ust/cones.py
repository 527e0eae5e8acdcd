"""Rational polyhedral cones, their duals and face lattices.

A :class:`Cone` lives in ``N_R = R^n`` and its dual in ``M_R = R^n``; the
pairing between them is the dot product.  Extreme rays on both sides are
computed with an exact double description method and stored as primitive
integer vectors in lexicographic order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from . import lattice as lat
from .errors import DegenerateInputError, DimensionError, NotFullError, NotPointedError
from .lattice import Matrix, Vector


def extreme_rays(constraints: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Primitive extreme rays of ``{x in R^dim : <a, x> >= 0 for all a}``.

    The constraint vectors must span ``R^dim`` (the cone is then pointed).
    Double description: start from the simplicial cone cut out by ``dim``
    independent constraints and add the remaining ones one at a time,
    combining adjacent positive/negative ray pairs.
    """
    cons = [tuple(a) for a in constraints if any(a)]
    if any(len(a) != dim for a in cons):
        raise DimensionError("constraint of the wrong rank")
    if dim == 0:
        return []
    basis_idx: list[int] = []
    for i, a in enumerate(cons):
        if lat.rank([cons[j] for j in basis_idx] + [a], dim) > len(basis_idx):
            basis_idx.append(i)
        if len(basis_idx) == dim:
            break
    if len(basis_idx) < dim:
        raise DegenerateInputError("constraints do not span; the cone is not pointed")

    inv = lat.inverse([cons[i] for i in basis_idx])
    rays: list[Vector] = []
    zeros: list[frozenset[int]] = []
    for j in range(dim):
        col = [inv[i][j] for i in range(dim)]
        den = math.lcm(*(q.denominator for q in col))
        rays.append(lat.primitivize([int(q * den) for q in col]))
        zeros.append(frozenset(basis_idx[i] for i in range(dim) if i != j))

    done = set(basis_idx)
    for k, a in enumerate(cons):
        if k in done:
            continue
        vals = [lat.pairing(a, r) for r in rays]
        pos = [i for i, s in enumerate(vals) if s > 0]
        neg = [i for i, s in enumerate(vals) if s < 0]
        new_rays = [rays[i] for i, s in enumerate(vals) if s >= 0]
        new_zeros = [zeros[i] | ({k} if vals[i] == 0 else frozenset())
                     for i, s in enumerate(vals) if s >= 0]
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if len(common) < dim - 2:
                    continue
                if any(common <= zeros[t] for t in range(len(rays)) if t != p and t != q):
                    continue
                combo = lat.sub(lat.scale(vals[p], rays[q]), lat.scale(vals[q], rays[p]))
                new_rays.append(lat.primitivize(combo))
                new_zeros.append(common | {k})
        rays, zeros = new_rays, new_zeros
        done.add(k)

    return sorted(set(rays))


@dataclass(frozen=True)
class Cone:
    """A pointed rational polyhedral cone ``Cone(generators)`` in ``R^ambient_rank``.

    ``dual_rays`` is empty when the cone is not full-dimensional, since the
    dual then contains a line and has no extreme rays.
    """

    ambient_rank: int
    generators: tuple[Vector, ...]
    rays: tuple[Vector, ...]
    dual_rays: tuple[Vector, ...]
    dim: int

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_rank

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    @cached_property
    def ray_sum(self) -> Vector:
        """``v_C``, the sum of the primitive ray generators."""
        return lat.vsum(self.rays, self.ambient_rank)

    def contains_dual(self, m: Sequence[int]) -> bool:
        """Whether ``m`` lies in the dual cone."""
        return all(lat.pairing(m, v) >= 0 for v in self.rays)

    def degree(self, m: Sequence[int]) -> int:
        """Grading of a character by pairing with ``v_C``."""
        return lat.pairing(m, self.ray_sum)

    def ray_matrix(self) -> Matrix:
        return tuple(self.rays)


def _span_coordinates(ambient_rank: int, generators: Sequence[Vector]):
    basis, k = lat.saturate_span(generators, ambient_rank)
    coords = [lat.coordinates_in_basis(g, basis) for g in generators]
    return basis, k, coords


def _check_generators(ambient_rank: int, generators) -> list[Vector]:
    if ambient_rank < 1:
        raise DegenerateInputError("ambient rank must be positive")
    gens = [lat.vec(g) for g in generators]
    if not gens:
        raise DegenerateInputError("a cone needs at least one generator")
    for g in gens:
        if len(g) != ambient_rank:
            raise DimensionError(f"generator {g} does not have rank {ambient_rank}")
        if not any(g):
            raise DegenerateInputError("zero generator")
    return gens


def make_cone(ambient_rank: int, generators: Sequence[Sequence[int]]) -> Cone:
    """Build the cone generated by ``generators``; rejects cones with a line."""
    gens = _check_generators(ambient_rank, generators)
    basis, k, coords = _span_coordinates(ambient_rank, gens)

    dual_k = extreme_rays(coords, k)
    if lat.rank(dual_k, k) < k:
        direction = lat.nullspace(dual_k, k)[0]
        lineal = lat.vsum((lat.scale(x, b) for x, b in zip(direction, basis)), ambient_rank)
        raise NotPointedError(
            f"cone contains the line spanned by {lineal}", lineality=lat.primitivize(lineal))
    rays_k = extreme_rays(dual_k, k)
    rays = sorted(lat.vsum((lat.scale(x, b) for x, b in zip(r, basis)), ambient_rank)
                  for r in rays_k)
    return Cone(
        ambient_rank=ambient_rank,
        generators=tuple(gens),
        rays=tuple(rays),
        dual_rays=tuple(dual_k) if k == ambient_rank else (),
        dim=k,
    )


def _require_full(c: Cone, what: str) -> None:
    if not c.is_full:
        raise NotFullError(
            f"{what} needs a full-dimensional cone; use reduce_to_full_pointed first")


def dual_cone(c: Cone) -> Cone:
    _require_full(c, "dual_cone")
    return Cone(ambient_rank=c.ambient_rank, generators=c.dual_rays, rays=c.dual_rays,
                dual_rays=c.rays, dim=c.ambient_rank)


@dataclass(frozen=True)
class Classification:
    pointed: bool
    full: bool
    simplicial: bool
    smooth: bool


def classify(c: Cone) -> Classification:
    simplicial = c.is_simplicial
    smooth = simplicial and lat.invariant_factors(c.rays) == (1,) * len(c.rays)
    # Cones are validated as pointed on construction.
    return Classification(pointed=True, full=c.is_full, simplicial=simplicial, smooth=smooth)


@dataclass(frozen=True)
class FaceDescriptor:
    """A face of ``parent`` given by the indices of the rays it contains."""

    ray_indices: tuple[int, ...]
    generators: tuple[Vector, ...]
    face_sum: Vector
    dim: int
    supporting_functional: Vector
    parent: Cone = field(compare=False, repr=False)

    @property
    def height(self) -> int:
        return self.dim

    @property
    def is_zero(self) -> bool:
        return not self.ray_indices


def _facet_sets(c: Cone) -> list[frozenset[int]]:
    return [frozenset(i for i, v in enumerate(c.rays) if lat.pairing(w, v) == 0)
            for w in c.dual_rays]


def _make_face(c: Cone, idx: frozenset[int]) -> FaceDescriptor:
    gens = tuple(c.rays[i] for i in sorted(idx))
    functional = lat.vsum((w for w in c.dual_rays
                           if all(lat.pairing(w, v) == 0 for v in gens)), c.ambient_rank)
    return FaceDescriptor(
        ray_indices=tuple(sorted(idx)),
        generators=gens,
        face_sum=lat.vsum(gens, c.ambient_rank),
        dim=lat.rank(gens, c.ambient_rank),
        supporting_functional=functional,
        parent=c,
    )


def enumerate_faces(c: Cone) -> list[FaceDescriptor]:
    """All faces of a full pointed cone, from ``{0}`` up to ``C`` itself.

    Every proper face is an intersection of facets, so the face lattice is
    the closure of the facet ray-sets under intersection.
    """
    _require_full(c, "enumerate_faces")
    facets = _facet_sets(c)
    top = frozenset(range(len(c.rays)))
    seen = {top}
    stack = [top]
    while stack:
        face = stack.pop()
        for fs in facets:
            sub = face & fs
            if sub not in seen:
                seen.add(sub)
                stack.append(sub)
    faces = [_make_face(c, s) for s in seen]
    faces.sort(key=lambda f: (f.dim, f.ray_indices))
    return faces


def face_from_rays(c: Cone, rays: Sequence[Sequence[int]]) -> FaceDescriptor:
    """The smallest face of ``c`` containing the given rays."""
    want = {lat.vec(r) for r in rays}
    missing = want - set(c.rays)
    if missing:
        raise DegenerateInputError(f"not rays of the cone: {sorted(missing)}")
    idx = frozenset(c.rays.index(r) for r in want)
    closure = frozenset(range(len(c.rays)))
    for fs in _facet_sets(c):
        if idx <= fs:
            closure &= fs
    return _make_face(c, closure)


def dual_face(c: Cone, f: FaceDescriptor) -> FaceDescriptor:
    """The face ``F* = {w in C^dual : <w, v> = 0 for v in F}`` of the dual cone.

    Its supporting functional is ``v_F``, which vanishes on ``F*`` and is
    positive on every other dual ray.
    """
    dc = dual_cone(c)
    idx = tuple(j for j, w in enumerate(dc.rays)
                if all(lat.pairing(w, v) == 0 for v in f.generators))
    gens = tuple(dc.rays[j] for j in idx)
    return FaceDescriptor(
        ray_indices=idx,
        generators=gens,
        face_sum=lat.vsum(gens, c.ambient_rank),
        dim=lat.rank(gens, c.ambient_rank),
        supporting_functional=f.face_sum,
        parent=dc,
    )


@dataclass(frozen=True)
class Reduction:
    cone: Cone
    laurent_rank: int
    embedding: Matrix  # ambient_rank x dim; columns are a basis of span(C) ∩ Z^n

    def __iter__(self):
        return iter((self.cone, self.laurent_rank, self.embedding))

    def lift(self, v: Sequence[int]) -> Vector:
        """Map reduced coordinates back to the original lattice."""
        return lat.matvec(self.embedding, v)


def reduce_to_full_pointed(ambient_rank: int, generators: Sequence[Sequence[int]]) -> Reduction:
    """Re-express a pointed cone as a full cone in the saturated lattice of its span."""
    gens = _check_generators(ambient_rank, generators)
    make_cone(ambient_rank, gens)  # raises on lineality
    basis, k, coords = _span_coordinates(ambient_rank, gens)
    cone = make_cone(k, coords)
    embedding = lat.transpose(basis) if basis else tuple(() for _ in range(ambient_rank))
    return Reduction(cone=cone, laurent_rank=ambient_rank - k, embedding=embedding)
