"""Multipliers, class group, F-signature and the containment/sharpness checks."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import lattice as lat
from .cones import Cone, FaceDescriptor, _require_full, classify, enumerate_faces
from .errors import DomainError, NotSimplicialError
from .hilbert import SemigroupBasis
from .ideals import (
    MonomialPrime,
    ceil_div,
    containment_witness,
    ideal_power,
    membership,
    monomial_prime,
    symbolic_membership,
    valuation_ideal,
)
from .lattice import Vector

MULTIPLIER_NOTE = (
    "T = max(D, exponent of Cl) and U = lcm(D, #Cl) are both reported; "
    "the max- and lcm-based multipliers are not reconciled."
)


# -- multipliers ------------------------------------------------------------

def compute_D(basis: SemigroupBasis) -> int:
    return max(basis.degree(b) for b in basis.elements)


def compute_Dprime(basis: SemigroupBasis, f: FaceDescriptor) -> int:
    if f.is_zero:
        raise DomainError("D' is undefined for the zero face")
    return max(lat.pairing(b, f.face_sum) for b in basis.elements)


def compute_B_sharp(c: Cone) -> int:
    """Largest degree of a primitive generator of the dual cone."""
    _require_full(c, "compute_B_sharp")
    return max(c.degree(w) for w in c.dual_rays)


# -- class group ------------------------------------------------------------

@dataclass(frozen=True)
class ClassGroupReport:
    free_rank: int
    invariant_factors: tuple[int, ...]
    order: int | None
    ray_orders: dict[int, int] = field(hash=False)

    @property
    def exponent(self) -> int | None:
        """Smallest positive integer killing the group (None if infinite)."""
        if self.order is None:
            return None
        return math.lcm(1, *self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors


def class_group(c: Cone) -> ClassGroupReport:
    """Cokernel of ``m -> (<m, u_rho>)_rho`` from ``M`` to the free group on the rays.

    Computed from the Smith form of the ray matrix (one row per ray); the
    class of the ray divisor ``P_rho`` is column ``rho`` of the left
    transform, read in the diagonal coordinates.
    """
    _require_full(c, "class_group")
    snf = lat.smith_normal_form(c.rays)
    nrays = len(c.rays)
    r = snf.rank
    free_rank = nrays - r
    factors = tuple(d for d in snf.diag if d > 1)
    order = math.prod(factors) if free_rank == 0 else None
    ray_orders = {}
    for rho in range(nrays):
        y = [snf.left[i][rho] for i in range(nrays)]
        if any(y[i] for i in range(r, nrays)):
            continue  # infinite order
        ray_orders[rho] = math.lcm(1, *(d // math.gcd(y[i], d) for i, d in enumerate(snf.diag)))
    return ClassGroupReport(free_rank=free_rank, invariant_factors=factors, order=order,
                            ray_orders=ray_orders)


def _facet_normal_for_ray(c: Cone, j: int) -> Vector:
    if not c.is_simplicial:
        raise NotSimplicialError("ray/facet-normal pairing needs a simplicial cone")
    others = [v for i, v in enumerate(c.rays) if i != j]
    for w in c.dual_rays:
        if all(lat.pairing(w, v) == 0 for v in others):
            return w
    raise AssertionError("no facet normal opposite the ray")  # pragma: no cover


def ray_class_order(c: Cone, j: int) -> int:
    """``<w_j, v_j>`` for the dual ray ``w_j`` vanishing on every other ray."""
    _require_full(c, "ray_class_order")
    return lat.pairing(_facet_normal_for_ray(c, j), c.rays[j])


def compute_T(basis: SemigroupBasis, cg: ClassGroupReport) -> int | None:
    """``max(D, e)`` where ``e`` is the exponent of a finite class group."""
    if cg.order is None:
        return None
    return max(compute_D(basis), cg.exponent)


def compute_U(basis: SemigroupBasis, cg: ClassGroupReport) -> int | None:
    if cg.order is None:
        return None
    return math.lcm(compute_D(basis), cg.order)


@dataclass(frozen=True)
class MultiplierReport:
    D: int
    per_face_Dprime: dict[tuple[int, ...], int] = field(hash=False)
    T: int | None
    U: int | None
    B_sharp: int
    simplicial: bool
    note: str = MULTIPLIER_NOTE


def multipliers(c: Cone, basis: SemigroupBasis, cg: ClassGroupReport | None = None) -> MultiplierReport:
    cg = cg or class_group(c)
    per_face = {f.ray_indices: compute_Dprime(basis, f)
                for f in enumerate_faces(c) if not f.is_zero}
    return MultiplierReport(
        D=compute_D(basis),
        per_face_Dprime=per_face,
        T=compute_T(basis, cg),
        U=compute_U(basis, cg),
        B_sharp=compute_B_sharp(c),
        simplicial=c.is_simplicial,
    )


# -- F-signature ------------------------------------------------------------

@dataclass(frozen=True)
class FSignatureReport:
    value: Fraction
    polytope_vertices: tuple[tuple[Fraction, ...], ...]
    simplicial_check: Fraction | None


def _polytope_vertices(rays: Sequence[Vector], n: int) -> list[tuple[Fraction, ...]]:
    verts = set()
    for subset in itertools.combinations(range(len(rays)), n):
        a = [rays[i] for i in subset]
        if lat.determinant(a) == 0:
            continue
        inv = lat.inverse(a)
        for rhs in itertools.product((0, 1), repeat=n):
            w = tuple(sum(inv[i][j] * rhs[j] for j in range(n)) for i in range(n))
            if all(0 <= sum(x * y for x, y in zip(w, v)) <= 1 for v in rays):
                verts.add(w)
    return sorted(verts)


def _affine_dim(points: Sequence[tuple[Fraction, ...]]) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [tuple(x - y for x, y in zip(p, base)) for p in points[1:]]
    return lat.rank(diffs, len(base)) if diffs else 0


def polytope_volume(rays: Sequence[Vector], n: int) -> tuple[Fraction, list[tuple[Fraction, ...]]]:
    """Exact volume of ``{w : 0 <= <w, v> <= 1 for all rays v}`` and its vertices.

    Pulling triangulation: cone the lowest-index vertex over the facets of
    each face that avoid it, recursing down to simplices.  Facets of every
    face are cut out by the defining hyperplanes.
    """
    verts = _polytope_vertices(rays, n)
    hyper = [(v, b) for v in rays for b in (0, 1)]
    on = [frozenset(h for h, (v, b) in enumerate(hyper)
                    if sum(x * y for x, y in zip(w, v)) == b) for w in verts]

    @lru_cache(maxsize=None)
    def simplices(face: frozenset[int], d: int) -> tuple[tuple[int, ...], ...]:
        if len(face) == d + 1:
            return (tuple(sorted(face)),)
        apex = min(face)
        facets = set()
        for h in range(len(hyper)):
            sub = frozenset(i for i in face if h in on[i])
            if apex in sub or len(sub) < d or sub in facets:
                continue
            if _affine_dim([verts[i] for i in sorted(sub)]) == d - 1:
                facets.add(sub)
        return tuple((apex,) + s for sub in sorted(facets, key=sorted) for s in simplices(sub, d - 1))

    total = Fraction(0)
    for s in simplices(frozenset(range(len(verts))), n):
        base = verts[s[0]]
        rows = [[x - y for x, y in zip(verts[i], base)] for i in s[1:]]
        total += abs(_fraction_det(rows))
    return total / math.factorial(n), verts


def _fraction_det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            m[k], m[p] = m[p], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return det


def f_signature(c: Cone) -> FSignatureReport:
    """F-signature as the volume of ``{0 <= <w, v> < 1}`` (unit lattice cube = 1)."""
    _require_full(c, "f_signature")
    value, verts = polytope_volume(c.rays, c.ambient_rank)
    check = None
    if c.is_simplicial:
        check = Fraction(1, class_group(c).order)
    return FSignatureReport(value=value, polytope_vertices=tuple(verts), simplicial_check=check)


# -- verification drivers ---------------------------------------------------

@dataclass(frozen=True)
class ContainmentVerdict:
    """Outcome of checking ``I_F(m(r-1)+1) ⊆ P_F^r`` for one multiplier ``m``."""

    face: tuple[int, ...]
    r: int
    label: str
    multiplier: int
    exponent: int
    holds: bool
    witness: Vector | None = None
    witness_in_symbolic_power: bool | None = None


def check_containment(p: MonomialPrime, r: int, multiplier: int, label: str) -> ContainmentVerdict:
    e = multiplier * (r - 1) + 1
    w = containment_witness(valuation_ideal(p, e), ideal_power(p, r))
    return ContainmentVerdict(
        face=p.face.ray_indices, r=r, label=label, multiplier=multiplier, exponent=e,
        holds=w is None, witness=w,
        witness_in_symbolic_power=None if w is None else symbolic_membership(p, e, w),
    )


def verify_containment(c: Cone, basis: SemigroupBasis, f: FaceDescriptor, r_max: int,
                       multiplier: int | None = None) -> list[ContainmentVerdict]:
    """Check the uniform containment for ``r = 1..r_max`` on the prime of ``f``.

    Uses ``I_F(D(r-1)+1) ⊆ P^r``, which implies the symbolic containment
    since ``P^(E) ⊆ I_F(E)``.  Each ``r`` gets a verdict for ``D`` (or the
    ``multiplier`` override) and one for the face-local ``D'``.
    """
    if r_max < 1:
        raise DomainError("r_max must be >= 1")
    p = monomial_prime(c, basis, f)
    main = compute_D(basis) if multiplier is None else multiplier
    label = "D" if multiplier is None else "override"
    dprime = compute_Dprime(basis, f)
    out = []
    for r in range(1, r_max + 1):
        out.append(check_containment(p, r, main, label))
        out.append(check_containment(p, r, dprime, "D_prime"))
    return out


@dataclass(frozen=True)
class SharpnessWitness:
    ray_index: int
    ray: Vector
    dual_ray: Vector
    B: int
    in_symbolic_power: bool
    in_square: bool

    @property
    def valid(self) -> bool:
        return self.in_symbolic_power and not self.in_square


def verify_sharpness(c: Cone, basis: SemigroupBasis) -> SharpnessWitness:
    """Locate the ray whose opposite facet normal ``w`` realizes ``B`` and test
    ``w in P^(B)`` and ``w not in P^2`` for the height-one prime of that ray."""
    _require_full(c, "verify_sharpness")
    if not c.is_simplicial:
        raise NotSimplicialError("sharpness witnesses need a simplicial cone")
    b = compute_B_sharp(c)
    j0 = next(j for j in range(len(c.rays))
              if c.degree(_facet_normal_for_ray(c, j)) == b)
    w = _facet_normal_for_ray(c, j0)
    faces = {f.ray_indices: f for f in enumerate_faces(c)}
    p = monomial_prime(c, basis, faces[(j0,)])
    return SharpnessWitness(
        ray_index=j0, ray=c.rays[j0], dual_ray=w, B=b,
        in_symbolic_power=symbolic_membership(p, b, w),
        in_square=membership(ideal_power(p, 2), w),
    )


def is_smooth(c: Cone) -> bool:
    return classify(c).smooth


def ceil_ratio(a: int, b: int) -> int:
    return ceil_div(a, b)
