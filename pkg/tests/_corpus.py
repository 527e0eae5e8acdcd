"""Cone corpus shared by the acceptance and property suites."""

from __future__ import annotations

from functools import lru_cache

from toric_ust.cones import make_cone
from toric_ust.corpus import random_corpus
from toric_ust.families import hypersurface_cone, segre_veronese_cone, veronese_cone

SEGRE_GENERATORS = [(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)]
HYPERSURFACE = [(n, E) for n in (2, 3, 4) for E in (2, 3)]
VERONESE = [(E, n) for E in (2, 3, 4, 5) for n in (2, 3)]
SEGRE_VERONESE = [((1, 1), (2, 2)), ((2, 1), (2, 2)), ((2, 2), (2, 2)), ((1, 1, 1), (2, 2, 2))]
RANDOM_SEED = 2718
RANDOM_COUNT = 20


def segre():
    return make_cone(3, SEGRE_GENERATORS)


@lru_cache(maxsize=None)
def family_instances():
    out = [hypersurface_cone(n, E) for n, E in HYPERSURFACE]
    out += [veronese_cone(E, n) for E, n in VERONESE]
    out += [segre_veronese_cone(Es, ms) for Es, ms in SEGRE_VERONESE]
    return tuple(out)


@lru_cache(maxsize=None)
def corpus():
    """``(name, cone)`` pairs: the family matrix, the Segre cone and the random cones."""
    items = [(spec.name, cone) for cone, spec in family_instances()]
    items.append(("segre", segre()))
    items += [(f"random-{i:02d}", c)
              for i, c in enumerate(random_corpus(RANDOM_SEED, count=RANDOM_COUNT))]
    return tuple(items)
