"""Monomial ideals of the semigroup ring ``k[C^dual ∩ Z^n]``.

A monomial ideal is stored as a finite set of exponent vectors.  Membership
is semigroup divisibility: ``l`` lies in the ideal iff ``l - g`` lies in the
dual cone for some generator ``g`` (the semigroup is saturated, so the
lattice condition is automatic).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _arrays
from . import lattice as lat
from .cones import Cone, FaceDescriptor
from .errors import DomainError
from .hilbert import SemigroupBasis
from .lattice import Vector


@dataclass(frozen=True)
class MonomialIdeal:
    cone: Cone = field(repr=False)
    gens: tuple[Vector, ...]
    minimal: bool = False

    def __contains__(self, ell) -> bool:
        return membership(self, ell)


@dataclass(frozen=True)
class MonomialPrime:
    """The monomial prime ``P_F`` of a nonzero face ``F``."""

    ideal: MonomialIdeal
    face: FaceDescriptor
    height: int
    basis: SemigroupBasis = field(compare=False, repr=False)

    @property
    def cone(self) -> Cone:
        return self.ideal.cone

    @property
    def gens(self) -> tuple[Vector, ...]:
        return self.ideal.gens

    @property
    def face_sum(self) -> Vector:
        return self.face.face_sum

    def valuation(self, ell: Sequence[int]) -> int:
        """``<l, v_F>``; positive exactly on members of the prime."""
        return lat.pairing(ell, self.face.face_sum)

    def __contains__(self, ell) -> bool:
        return membership(self.ideal, ell)


def _check_point(c: Cone, ell) -> Vector:
    ell = lat.vec(ell)
    if len(ell) != c.ambient_rank or not c.contains_dual(ell):
        raise DomainError(f"{ell} is not in the semigroup")
    return ell


def monomial_prime(c: Cone, basis: SemigroupBasis, f: FaceDescriptor) -> MonomialPrime:
    if f.is_zero:
        raise DomainError("the face {0} gives the zero ideal, which has no monomial generators")
    gens = tuple(b for b in basis.elements if lat.pairing(b, f.face_sum) > 0)
    # Hilbert basis elements are irreducible, so no generator divides another.
    return MonomialPrime(ideal=MonomialIdeal(c, gens, minimal=True), face=f, height=f.dim,
                         basis=basis)


def membership(ideal: MonomialIdeal, ell: Sequence[int]) -> bool:
    c = ideal.cone
    ell = _check_point(c, ell)
    return any(c.contains_dual(lat.sub(ell, g)) for g in ideal.gens)


def _ray_array(c: Cone) -> np.ndarray:
    return _arrays.array(c.rays, c.ambient_rank)


def _minimal_gens(c: Cone, gens: Iterable[Vector]) -> tuple[Vector, ...]:
    pts = _arrays.array(set(gens), c.ambient_rank)
    return tuple(_arrays.vectors(_arrays.minimal_rows(pts, _ray_array(c))))


def minimalize(ideal: MonomialIdeal) -> MonomialIdeal:
    if ideal.minimal:
        return ideal
    return MonomialIdeal(ideal.cone, _minimal_gens(ideal.cone, ideal.gens), minimal=True)


def _as_ideal(p: MonomialPrime | MonomialIdeal) -> MonomialIdeal:
    return p.ideal if isinstance(p, MonomialPrime) else p


@lru_cache(maxsize=4096)
def _power(ideal: MonomialIdeal, r: int) -> MonomialIdeal:
    if r == 1:
        return minimalize(ideal)
    c = ideal.cone
    prev = _arrays.array(_power(ideal, r - 1).gens, c.ambient_rank)
    base = _arrays.array(minimalize(ideal).gens, c.ambient_rank)
    sums = _arrays.minimal_rows(_arrays.pairwise_sums(prev, base), _ray_array(c))
    return MonomialIdeal(c, tuple(_arrays.vectors(sums)), minimal=True)


def ideal_power(p: MonomialPrime | MonomialIdeal, r: int) -> MonomialIdeal:
    """Minimal generators of the ordinary power ``P^r``."""
    if r < 1:
        raise DomainError("ideal powers need r >= 1")
    return _power(_as_ideal(p), r)


@lru_cache(maxsize=4096)
def _valuation_ideal(p: MonomialPrime, e: int) -> MonomialIdeal:
    c = p.cone
    n = c.ambient_rank
    rays = _ray_array(c)
    vf = np.array(p.face_sum, dtype=np.int64)
    gens = _arrays.array(p.gens, n)
    # A minimal generator is never divisible by a valuation-0 element, and
    # neither is any partial sum leading to it.
    units = _arrays.array((b for b in p.basis.elements if p.valuation(b) == 0), n)
    unit_pi = _arrays.pairings(units, rays)
    partial = np.zeros((1, n), dtype=np.int64)
    reached = []
    # Sums of at most e generators; each generator contributes at least 1.
    for _ in range(e):
        t = _arrays.unique_rows(_arrays.pairwise_sums(partial, gens))
        t = t[~_arrays.divisible_mask(_arrays.pairings(t, rays), unit_pi)]
        hit = t @ vf >= e
        reached.append(t[hit])
        partial = t[~hit]
        if not len(partial):
            break
    found = _arrays.minimal_rows(np.concatenate(reached), rays)
    return MonomialIdeal(c, tuple(_arrays.vectors(found)), minimal=True)


def valuation_ideal(p: MonomialPrime, e: int) -> MonomialIdeal:
    """Minimal generators of ``I_F(e) = (x^m : <m, v_F> >= e)``.

    Any ``l`` with ``<l, v_F> >= e`` splits off, from its Hilbert basis
    decomposition, a sub-sum of at most ``e`` prime generators whose
    valuation already reaches ``e``; those sub-sums generate the ideal.
    """
    if e < 1:
        raise DomainError("valuation ideals need e >= 1")
    return _valuation_ideal(p, e)


@lru_cache(maxsize=4096)
def _power_profiles(p: MonomialPrime, e: int) -> tuple[tuple[Vector, tuple[int, ...]], ...]:
    # Pareto-minimal values of (<g, v>)_{v in G_F} over generators g of P^e.
    face_gens = p.face.generators
    rows = []
    for g in ideal_power(p, e).gens:
        rows.append((g, tuple(lat.pairing(g, v) for v in face_gens)))
    rows.sort(key=lambda r: (sum(r[1]), r[1], r[0]))
    kept: list[tuple[Vector, tuple[int, ...]]] = []
    for g, prof in rows:
        if not any(all(a <= b for a, b in zip(kp, prof)) for _, kp in kept):
            kept.append((g, prof))
    return tuple(kept)


def symbolic_generator(p: MonomialPrime, e: int, ell: Sequence[int]) -> Vector | None:
    """A generator ``g`` of ``P^e`` with ``<l - g, v> >= 0`` for all ``v`` in ``G_F``.

    This is the membership test for the symbolic power ``P^(e)``: a monomial
    ``l`` lies in ``P^(e)`` iff ``l + q`` lies in ``P^e`` for some ``q`` in
    ``F* ∩ M`` (the monomials outside ``P``, which become units after
    localizing at ``P``).  Inverting them relaxes the semigroup to
    ``C^dual + span(F*)``, whose dual cone is ``F`` itself, so ``l + q - g``
    can be made a semigroup element exactly when ``l - g`` is nonnegative on
    the generators of ``F``.  Lattice feasibility of ``q`` is obtained by
    taking ``q`` a large multiple of the supporting functional of ``F``,
    which lies in ``F* ∩ M`` and is positive on every ray outside ``F``.
    """
    ell = _check_point(p.cone, ell)
    prof = tuple(lat.pairing(ell, v) for v in p.face.generators)
    for g, gp in _power_profiles(p, e):
        if all(a >= b for a, b in zip(prof, gp)):
            return g
    return None


def symbolic_membership(p: MonomialPrime, e: int, ell: Sequence[int]) -> bool:
    if e < 1:
        raise DomainError("symbolic powers need e >= 1")
    return symbolic_generator(p, e, ell) is not None


def symbolic_witness(p: MonomialPrime, e: int, ell: Sequence[int]) -> tuple[Vector, Vector] | None:
    """``(g, q)`` with ``g`` a generator of ``P^e``, ``q`` in ``F* ∩ M`` and
    ``l + q - g`` in the semigroup; None if ``l`` is not in ``P^(e)``."""
    g = symbolic_generator(p, e, ell)
    if g is None:
        return None
    c = p.cone
    u = lat.sub(ell, g)
    w = p.face.supporting_functional
    k = 0
    for v in c.rays:
        wv = lat.pairing(w, v)
        if wv > 0:
            k = max(k, -(lat.pairing(u, v) // wv))
    q = lat.scale(k, w)
    if not c.contains_dual(lat.add(u, q)):
        raise AssertionError("symbolic witness construction failed")
    return g, q


class _FaceSemigroup:
    """Elements of ``F* ∩ M`` sorted by degree, grown on demand."""

    def __init__(self, p: MonomialPrime):
        c = p.cone
        self.rays = _ray_array(c)
        self.grading = np.array(c.ray_sum, dtype=np.int64)
        vf = p.face_sum
        self.steps = _arrays.array((b for b in p.basis.elements if lat.pairing(b, vf) == 0),
                                   c.ambient_rank)
        self.min_step = int((self.steps @ self.grading).min()) if len(self.steps) else None
        self.limit = -1
        self.points = np.zeros((0, c.ambient_rank), dtype=np.int64)
        self.degrees = np.zeros(0, dtype=np.int64)

    def grow(self, max_degree: int) -> None:
        if max_degree <= self.limit:
            return
        n = self.points.shape[1]
        frontier = np.zeros((1, n), dtype=np.int64)
        layers = [frontier]
        while len(frontier) and len(self.steps):
            t = _arrays.unique_rows(_arrays.pairwise_sums(frontier, self.steps))
            frontier = t[t @ self.grading <= max_degree]
            layers.append(frontier)
        # a point can be reached with different numbers of steps
        seen = _arrays.unique_rows(np.concatenate(layers))
        degrees = seen @ self.grading
        keys = [seen[:, j] for j in range(n - 1, -1, -1)] + [degrees]
        order = np.lexsort(keys)
        self.points, self.degrees, self.limit = seen[order], degrees[order], max_degree

    def upto(self, max_degree: int) -> tuple[np.ndarray, np.ndarray]:
        """Truncation at ``max_degree`` and its maximal elements."""
        self.grow(max_degree)
        k = int(np.searchsorted(self.degrees, max_degree, side="right"))
        pts = self.points[:k]
        if self.min_step is None:
            return pts, pts
        # q can only be extended while deg(q) + min step degree stays in bounds
        return pts, pts[self.degrees[:k] > max_degree - self.min_step]


@lru_cache(maxsize=1024)
def _face_semigroup(p: MonomialPrime) -> _FaceSemigroup:
    return _FaceSemigroup(p)


def default_search_degree(p: MonomialPrime, e: int) -> int:
    return 10 * e * p.basis.max_degree


def symbolic_membership_bruteforce(p: MonomialPrime, e: int, ell: Sequence[int],
                                   search_degree: int | None = None) -> Vector | None:
    """Search ``q`` in ``F* ∩ M`` of degree at most ``search_degree`` with
    ``l + q`` in ``P^e``.

    Returns the lowest-degree witness ``q`` (ties broken lexicographically),
    or None when the search is exhausted, which is inconclusive.  Witnesses
    are closed under adding elements of ``F* ∩ M``, so exhaustion only needs
    the maximal elements of the truncated face semigroup.
    """
    if e < 1:
        raise DomainError("symbolic powers need e >= 1")
    ell = _check_point(p.cone, ell)
    if search_degree is None:
        search_degree = default_search_degree(p, e)
    fs = _face_semigroup(p)
    elements, maximal = fs.upto(search_degree)
    rays = fs.rays
    gens_pi = _arrays.pairings(_arrays.array(ideal_power(p, e).gens, p.cone.ambient_rank), rays)
    base = np.array(ell, dtype=np.int64)
    if not _arrays.divisible_mask(_arrays.pairings(maximal + base, rays), gens_pi).any():
        return None
    step = 4096
    for lo in range(0, len(elements), step):
        blk = elements[lo:lo + step]
        hit = np.flatnonzero(_arrays.divisible_mask(_arrays.pairings(blk + base, rays), gens_pi))
        if len(hit):
            return tuple(int(x) for x in blk[hit[0]])
    raise AssertionError("witness disappeared")  # pragma: no cover


def containment_witness(i: MonomialIdeal, j: MonomialIdeal) -> Vector | None:
    """First generator of ``i`` that is not in ``j``, or None if ``i ⊆ j``."""
    c = j.cone
    rays = _ray_array(c)
    pts = _arrays.array(i.gens, c.ambient_rank)
    inside = _arrays.divisible_mask(_arrays.pairings(pts, rays),
                                    _arrays.pairings(_arrays.array(j.gens, c.ambient_rank), rays))
    missing = np.flatnonzero(~inside)
    return i.gens[int(missing[0])] if len(missing) else None


def ideal_containment(i: MonomialIdeal, j: MonomialIdeal) -> bool:
    if i.cone != j.cone:
        raise DomainError("ideals live in different rings")
    return containment_witness(i, j) is None


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def face_multiplier(p: MonomialPrime) -> int:
    """``D'_F``, the largest valuation of a Hilbert basis element."""
    return max(p.valuation(b) for b in p.basis.elements)

