"""Full analysis of a cone, its verification section, and a lossless JSON form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from . import lattice as lat
from .cones import Classification, classify, enumerate_faces, make_cone, reduce_to_full_pointed
from .errors import InvariantBreach
from .hilbert import hilbert_basis
from .ideals import monomial_prime, symbolic_membership_bruteforce
from .invariants import (
    ClassGroupReport,
    ContainmentVerdict,
    FSignatureReport,
    MultiplierReport,
    SharpnessWitness,
    class_group,
    f_signature,
    multipliers,
    ray_class_order,
    verify_containment,
    verify_sharpness,
)
from .lattice import Matrix, Vector


@dataclass(frozen=True)
class CrossCheck:
    """Brute-force confirmation of a containment counterexample."""

    face: tuple[int, ...]
    exponent: int
    point: Vector
    search_degree: int
    unit_witness: Vector | None


@dataclass(frozen=True)
class Verification:
    r_max: int
    multiplier: int | None
    verdicts: tuple[ContainmentVerdict, ...]
    sharpness: SharpnessWitness | None
    cross_checks: tuple[CrossCheck, ...] = ()

    @property
    def failures(self) -> tuple[ContainmentVerdict, ...]:
        return tuple(v for v in self.verdicts if not v.holds)

    @property
    def passed(self) -> bool:
        return not self.failures and (self.sharpness is None or self.sharpness.valid)


@dataclass(frozen=True)
class AnalysisReport:
    name: str | None
    input_rank: int
    input_generators: tuple[Vector, ...]
    laurent_rank: int
    embedding: Matrix
    classification: Classification
    rays: tuple[Vector, ...]
    dual_rays: tuple[Vector, ...]
    v_C: Vector
    hilbert_basis: tuple[Vector, ...]
    multipliers: MultiplierReport
    class_group: ClassGroupReport
    f_signature: FSignatureReport
    faces_by_dimension: tuple[int, ...]
    verification: Verification | None = None

    @property
    def rank(self) -> int:
        return len(self.v_C)


def _prepare(rank: int, generators: Sequence[Sequence[int]]):
    c = make_cone(rank, generators)
    if c.is_full:
        return c, 0, lat.identity(rank)
    red = reduce_to_full_pointed(rank, generators)
    return red.cone, red.laurent_rank, red.embedding


def analyze(rank: int, generators: Sequence[Sequence[int]], name: str | None = None,
            r_max: int | None = None, multiplier: int | None = None,
            search_degree: int | None = None) -> AnalysisReport:
    """Run the whole pipeline; with ``r_max`` also the containment and sharpness checks.

    A cone that is not full-dimensional is analysed in the saturated lattice of
    its span; ``embedding`` maps those coordinates back.
    """
    c, laurent_rank, embedding = _prepare(rank, generators)
    hb = hilbert_basis(c)
    cg = class_group(c)
    faces = enumerate_faces(c)
    counts = [0] * (c.ambient_rank + 1)
    for f in faces:
        counts[f.dim] += 1
    verification = None
    if r_max is not None:
        verification = _verify(c, hb, faces, r_max, multiplier, search_degree)
    report = AnalysisReport(
        name=name,
        input_rank=rank,
        input_generators=tuple(lat.vec(g) for g in generators),
        laurent_rank=laurent_rank,
        embedding=embedding,
        classification=classify(c),
        rays=c.rays,
        dual_rays=c.dual_rays,
        v_C=c.ray_sum,
        hilbert_basis=hb.elements,
        multipliers=multipliers(c, hb, cg),
        class_group=cg,
        f_signature=f_signature(c),
        faces_by_dimension=tuple(counts),
        verification=verification,
    )
    check_invariants(report, c)
    return report


def _verify(c, hb, faces, r_max, multiplier, search_degree) -> Verification:
    verdicts = []
    cross = []
    for f in faces:
        if f.is_zero:
            continue
        found = verify_containment(c, hb, f, r_max, multiplier)
        verdicts.extend(found)
        p = monomial_prime(c, hb, f)
        for v in found:
            if not v.holds:
                bound = search_degree if search_degree is not None else 10 * v.exponent * hb.max_degree
                q = symbolic_membership_bruteforce(p, v.exponent, v.witness, bound)
                cross.append(CrossCheck(f.ray_indices, v.exponent, v.witness, bound, q))
    sharp = verify_sharpness(c, hb) if c.is_simplicial else None
    return Verification(r_max=r_max, multiplier=multiplier, verdicts=tuple(verdicts),
                        sharpness=sharp, cross_checks=tuple(cross))


def check_invariants(report: AnalysisReport, c) -> None:
    """Relations that must hold for every cone; a violation is a bug, not an input error."""
    m, cg, fs = report.multipliers, report.class_group, report.f_signature
    problems = []
    if any(v > m.D or v < 1 for v in m.per_face_Dprime.values()):
        problems.append("per-face multiplier outside [1, D]")
    if m.per_face_Dprime[tuple(range(len(report.rays)))] != m.D:
        problems.append("D differs from the multiplier of the whole cone")
    if m.B_sharp > m.D:
        problems.append("B exceeds D")
    if cg.free_rank != len(report.rays) - report.rank:
        problems.append("class group rank differs from #rays - rank")
    if (m.T is None) == report.classification.simplicial:
        problems.append("T present exactly when the cone is simplicial is violated")
    if not 0 < fs.value <= 1 or (fs.value == 1) != report.classification.smooth:
        problems.append("F-signature out of range or inconsistent with smoothness")
    if report.classification.simplicial:
        if fs.value != fs.simplicial_check:
            problems.append("F-signature differs from 1/#Cl")
        if not m.B_sharp <= m.D <= m.T <= m.U:
            problems.append("B <= D <= T <= U is violated")
        for j in range(len(report.rays)):
            if ray_class_order(c, j) != cg.ray_orders.get(j):
                problems.append(f"order of ray {j} disagrees with the class group")
    if problems:
        raise InvariantBreach("; ".join(problems))


# -- JSON -------------------------------------------------------------------

def _q(x: Fraction) -> dict[str, str]:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _unq(d: dict[str, str]) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def _vecs(vs) -> list[list[int]]:
    return [list(v) for v in vs]


def _tup(vs) -> tuple[Vector, ...]:
    return tuple(tuple(int(x) for x in v) for v in vs)


def _opt_vec(v):
    return None if v is None else list(v)


def _opt_tup(v):
    return None if v is None else tuple(v)


def _verdict_dict(v: ContainmentVerdict) -> dict[str, Any]:
    return {
        "face": list(v.face), "r": v.r, "label": v.label, "multiplier": v.multiplier,
        "exponent": v.exponent, "holds": v.holds, "witness": _opt_vec(v.witness),
        "witness_in_symbolic_power": v.witness_in_symbolic_power,
    }


def _verdict_from(d) -> ContainmentVerdict:
    return ContainmentVerdict(
        face=tuple(d["face"]), r=d["r"], label=d["label"], multiplier=d["multiplier"],
        exponent=d["exponent"], holds=d["holds"], witness=_opt_tup(d["witness"]),
        witness_in_symbolic_power=d["witness_in_symbolic_power"],
    )


def _verification_dict(v: Verification) -> dict[str, Any]:
    s = v.sharpness
    return {
        "r_max": v.r_max,
        "multiplier": v.multiplier,
        "passed": v.passed,
        "verdicts": [_verdict_dict(x) for x in v.verdicts],
        "sharpness": None if s is None else {
            "ray_index": s.ray_index, "ray": list(s.ray), "dual_ray": list(s.dual_ray), "B": s.B,
            "in_symbolic_power": s.in_symbolic_power, "in_square": s.in_square, "valid": s.valid,
        },
        "cross_checks": [
            {"face": list(x.face), "exponent": x.exponent, "point": list(x.point),
             "search_degree": x.search_degree, "unit_witness": _opt_vec(x.unit_witness)}
            for x in v.cross_checks
        ],
    }


def _verification_from(d) -> Verification:
    s = d["sharpness"]
    return Verification(
        r_max=d["r_max"],
        multiplier=d["multiplier"],
        verdicts=tuple(_verdict_from(x) for x in d["verdicts"]),
        sharpness=None if s is None else SharpnessWitness(
            ray_index=s["ray_index"], ray=tuple(s["ray"]), dual_ray=tuple(s["dual_ray"]), B=s["B"],
            in_symbolic_power=s["in_symbolic_power"], in_square=s["in_square"]),
        cross_checks=tuple(
            CrossCheck(face=tuple(x["face"]), exponent=x["exponent"], point=tuple(x["point"]),
                       search_degree=x["search_degree"], unit_witness=_opt_tup(x["unit_witness"]))
            for x in d["cross_checks"]),
    )


def to_dict(r: AnalysisReport) -> dict[str, Any]:
    m, cg, fs, cl = r.multipliers, r.class_group, r.f_signature, r.classification
    return {
        "name": r.name,
        "input": {"rank": r.input_rank, "generators": _vecs(r.input_generators)},
        "rank": r.rank,
        "laurent_rank": r.laurent_rank,
        "embedding": _vecs(r.embedding),
        "classification": {"pointed": cl.pointed, "full": cl.full,
                           "simplicial": cl.simplicial, "smooth": cl.smooth},
        "rays": _vecs(r.rays),
        "dual_rays": _vecs(r.dual_rays),
        "v_C": list(r.v_C),
        "hilbert_basis": {"elements": _vecs(r.hilbert_basis), "size": len(r.hilbert_basis)},
        "multipliers": {
            "D": m.D,
            "per_face_Dprime": [{"face": list(k), "value": v}
                                for k, v in sorted(m.per_face_Dprime.items(),
                                                   key=lambda kv: (len(kv[0]), kv[0]))],
            "T": m.T,
            "U": m.U,
            "B": m.B_sharp,
            "simplicial": m.simplicial,
            "note": m.note,
        },
        "class_group": {
            "free_rank": cg.free_rank,
            "invariant_factors": list(cg.invariant_factors),
            "order": cg.order,
            "ray_orders": [{"ray": k, "order": v} for k, v in sorted(cg.ray_orders.items())],
        },
        "f_signature": {
            "value": _q(fs.value),
            "polytope_vertices": [[_q(x) for x in w] for w in fs.polytope_vertices],
            "simplicial_check": None if fs.simplicial_check is None else _q(fs.simplicial_check),
        },
        "faces": {"count": sum(r.faces_by_dimension),
                  "by_dimension": list(r.faces_by_dimension)},
        "verification": None if r.verification is None else _verification_dict(r.verification),
    }


def from_dict(d: dict[str, Any]) -> AnalysisReport:
    m, cg, fs, cl = d["multipliers"], d["class_group"], d["f_signature"], d["classification"]
    return AnalysisReport(
        name=d["name"],
        input_rank=d["input"]["rank"],
        input_generators=_tup(d["input"]["generators"]),
        laurent_rank=d["laurent_rank"],
        embedding=_tup(d["embedding"]),
        classification=Classification(pointed=cl["pointed"], full=cl["full"],
                                      simplicial=cl["simplicial"], smooth=cl["smooth"]),
        rays=_tup(d["rays"]),
        dual_rays=_tup(d["dual_rays"]),
        v_C=tuple(d["v_C"]),
        hilbert_basis=_tup(d["hilbert_basis"]["elements"]),
        multipliers=MultiplierReport(
            D=m["D"],
            per_face_Dprime={tuple(x["face"]): x["value"] for x in m["per_face_Dprime"]},
            T=m["T"], U=m["U"], B_sharp=m["B"], simplicial=m["simplicial"], note=m["note"]),
        class_group=ClassGroupReport(
            free_rank=cg["free_rank"], invariant_factors=tuple(cg["invariant_factors"]),
            order=cg["order"], ray_orders={x["ray"]: x["order"] for x in cg["ray_orders"]}),
        f_signature=FSignatureReport(
            value=_unq(fs["value"]),
            polytope_vertices=tuple(tuple(_unq(x) for x in w) for w in fs["polytope_vertices"]),
            simplicial_check=None if fs["simplicial_check"] is None else _unq(fs["simplicial_check"])),
        faces_by_dimension=tuple(d["faces"]["by_dimension"]),
        verification=None if d["verification"] is None else _verification_from(d["verification"]),
    )


def lookup(d: dict[str, Any], dotted: str):
    for part in dotted.split("."):
        d = d[part]
    return d


def diff_predictions(predicted: dict[str, Any], report: AnalysisReport | dict[str, Any]) -> list[dict]:
    """Entries of ``predicted`` that the report does not reproduce.

    Lists of vectors are compared as sets, since predictions carry no ordering.
    """
    d = to_dict(report) if isinstance(report, AnalysisReport) else report
    out = []
    for key in sorted(predicted):
        want = predicted[key]
        try:
            got = lookup(d, key)
        except (KeyError, TypeError):
            got = None
        if _normal(want) != _normal(got):
            out.append({"key": key, "predicted": want, "computed": got})
    return out


def _normal(x):
    if isinstance(x, list) and x and all(isinstance(v, list) for v in x):
        return sorted(map(tuple, x))
    return x
