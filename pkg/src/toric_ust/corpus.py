"""Seeded random cones for property suites."""

from __future__ import annotations

import random

from . import lattice as lat
from .cones import Cone, make_cone
from .errors import NotPointedError
from .hilbert import hilbert_basis


def random_full_pointed_cone(rng: random.Random, rank: int, bound: int = 5,
                             max_generators: int = 4) -> Cone:
    """Cone on ``rank``..``max_generators`` random vectors with entries in
    ``[-bound, bound]``; redrawn until full and pointed."""
    while True:
        count = rng.randint(rank, max(rank, max_generators))
        gens = [tuple(rng.randint(-bound, bound) for _ in range(rank)) for _ in range(count)]
        if any(not any(g) for g in gens) or lat.rank(gens, rank) < rank:
            continue
        try:
            return make_cone(rank, gens)
        except NotPointedError:
            continue


def random_unimodular_cone(rng: random.Random, rank: int, bound: int = 3) -> Cone:
    """Cone on the columns of a random unimodular matrix (a smooth cone)."""
    m = [list(row) for row in lat.identity(rank)]
    for _ in range(3 * rank):
        i, j = rng.sample(range(rank), 2) if rank > 1 else (0, 0)
        if i == j:
            break
        k = rng.randint(-bound, bound)
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
    if rank > 1 and rng.random() < 0.5:
        m[0], m[1] = m[1], m[0]
    return make_cone(rank, [tuple(col) for col in lat.transpose(m)])


def random_plane_cone(rng: random.Random, bound: int = 5, max_det: int = 20) -> Cone:
    """Full pointed rank-2 cone whose two rays span a sublattice of index <= ``max_det``."""
    while True:
        c = random_full_pointed_cone(rng, 2, bound=bound, max_generators=4)
        if abs(lat.determinant(c.rays)) <= max_det:
            return c


def random_corpus(seed: int, count: int = 20, max_rank: int = 3, bound: int = 5,
                  max_multiplier: int | None = 24) -> list[Cone]:
    """``count`` random full pointed cones of rank 2..``max_rank``.

    Cones whose multiplier ``D`` exceeds ``max_multiplier`` are redrawn: the
    valuation ideals checked at ``r = 4`` have generators in degree about
    ``3D``, and their number grows like a power of that.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        c = random_full_pointed_cone(rng, rng.randint(2, max_rank), bound=bound)
        if max_multiplier is not None and hilbert_basis(c).max_degree > max_multiplier:
            continue
        out.append(c)
    return out
