"""Named example families, each paired with the invariants predicted for it.

Predictions are plain data keyed by dotted paths into the analysis report
(``"multipliers.D"``, ``"hilbert_basis.size"``, ...) so a harness can diff
them against what the library computes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Any, Sequence

from .cones import Cone, make_cone
from .errors import DomainError
from .lattice import Vector

KINDS = ("hypersurface", "veronese", "segre_veronese")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple
    generators: tuple[Vector, ...]
    predicted: dict[str, Any] = field(hash=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.generators[0])

    @property
    def name(self) -> str:
        return f"{self.kind}{_format_params(self.params)}"


def _format_params(params) -> str:
    return "(" + ",".join(str(p) if isinstance(p, int) else "(" + ",".join(map(str, p)) + ")"
                          for p in params) + ")"


def _unit(n: int, i: int, scale: int = 1) -> list[int]:
    v = [0] * n
    v[i] = scale
    return v


def hypersurface_cone(n: int, E: int) -> tuple[Cone, FamilySpec]:
    """Cone of ``k[x_1..x_n, z]/(z^E - x_1 ... x_n)``: ``e_n`` and ``E e_i + e_n``."""
    if n < 2 or E < 2:
        raise DomainError("hypersurface family needs n >= 2 and E >= 2")
    gens = [tuple(_unit(n, n - 1))]
    for i in range(n - 1):
        v = _unit(n, i, E)
        v[n - 1] = 1
        gens.append(tuple(v))
    last = [-1] * (n - 1) + [E]
    basis = sorted([tuple(_unit(n, i)) for i in range(n)] + [tuple(last)])
    predicted = {
        "hilbert_basis.elements": [list(b) for b in basis],
        "hilbert_basis.size": n + 1,
        "v_C": [E] * (n - 1) + [n],
        "class_group.free_rank": 0,
        "class_group.invariant_factors": [E] * (n - 1),
        "class_group.order": E ** (n - 1),
        "multipliers.T": max(n, E),
    }
    spec = FamilySpec("hypersurface", (n, E), tuple(gens), predicted)
    return make_cone(n, gens), spec


def _sv_check(Es: Sequence[int], ms: Sequence[int]) -> None:
    if not Es or len(Es) != len(ms):
        raise DomainError("E and m must be nonempty and of equal length")
    if any(e < 1 for e in Es):
        raise DomainError("every E_j must be >= 1")
    if any(m < 2 for m in ms):
        raise DomainError("every m_j must be >= 2")


def _block_offsets(ms: Sequence[int]) -> list[int]:
    """``d(j)`` for ``j = 0..k``: block ``j`` occupies coordinates ``d(j-1) .. d(j)-1``
    (0-based) after the first block, which also owns coordinate ``m_1 - 1``."""
    d = [0]
    for j, m in enumerate(ms):
        d.append(d[-1] + m - (0 if j == 0 else 1))
    return d


def _sv_generators(Es: Sequence[int], ms: Sequence[int]) -> list[Vector]:
    d = _block_offsets(ms)
    rank = d[-1]
    apex = ms[0] - 1  # the shared coordinate e_{m_1}
    gens = []
    for i in range(ms[0] - 1):
        gens.append(tuple(_unit(rank, i)))
    v = [0] * rank
    for i in range(ms[0] - 1):
        v[i] = -1
    v[apex] = Es[0]
    gens.append(tuple(v))
    for j in range(1, len(ms)):
        block = range(d[j], d[j + 1])
        for h in block:
            gens.append(tuple(_unit(rank, h)))
        v = _unit(rank, apex, Es[j])
        for h in block:
            v[h] = -1
        gens.append(tuple(v))
    return gens


def _sv_basis(Es: Sequence[int], ms: Sequence[int]) -> list[Vector]:
    d = _block_offsets(ms)
    rank = d[-1]
    apex = ms[0] - 1
    blocks = [range(0, ms[0] - 1)] + [range(d[j], d[j + 1]) for j in range(1, len(ms))]
    per_block = []
    for E, block in zip(Es, blocks):
        choices = [a for a in itertools.product(range(E + 1), repeat=len(block)) if sum(a) <= E]
        per_block.append([(block, a) for a in choices])
    out = []
    for combo in itertools.product(*per_block):
        v = _unit(rank, apex)
        for block, a in combo:
            for h, x in zip(block, a):
                v[h] += x
        out.append(tuple(v))
    return sorted(out)


def segre_veronese_cone(Es: Sequence[int], ms: Sequence[int], kind: str = "segre_veronese"
                        ) -> tuple[Cone, FamilySpec]:
    """Cone of the Segre product of the ``E_j``-th Veronese rings in ``m_j`` variables."""
    Es, ms = tuple(Es), tuple(ms)
    _sv_check(Es, ms)
    gens = _sv_generators(Es, ms)
    rank = len(gens[0])
    basis = _sv_basis(Es, ms)
    size = 1
    for E, m in zip(Es, ms):
        size *= comb(m - 1 + E, E)
    vc = [0] * rank
    vc[ms[0] - 1] = sum(Es)
    predicted = {
        "hilbert_basis.elements": [list(b) for b in basis],
        "hilbert_basis.size": size,
        "v_C": vc,
        "multipliers.D": sum(Es),
    }
    spec = FamilySpec(kind, (Es, ms), tuple(gens), predicted)
    return make_cone(rank, gens), spec


def veronese_cone(E: int, n: int) -> tuple[Cone, FamilySpec]:
    """``E``-th Veronese subring of the polynomial ring in ``n`` variables."""
    if E < 1 or n < 2:
        raise DomainError("veronese family needs E >= 1 and n >= 2")
    cone, spec = segre_veronese_cone((E,), (n,), kind="veronese")
    predicted = dict(spec.predicted)
    predicted["hilbert_basis.size"] = comb(n - 1 + E, E)
    predicted["multipliers.B"] = E
    return cone, FamilySpec("veronese", (E, n), spec.generators, predicted)


def build(kind: str, E, n_or_m) -> tuple[Cone, FamilySpec]:
    """Dispatch on ``kind`` with the parameter conventions of the command line."""
    kind = kind.replace("-", "_")
    if kind == "hypersurface":
        return hypersurface_cone(_scalar(n_or_m, "n"), _scalar(E, "E"))
    if kind == "veronese":
        return veronese_cone(_scalar(E, "E"), _scalar(n_or_m, "n"))
    if kind == "segre_veronese":
        return segre_veronese_cone(_tuple(E), _tuple(n_or_m))
    raise DomainError(f"unknown family {kind!r}; expected one of {', '.join(KINDS)}")


def _scalar(x, name: str) -> int:
    t = _tuple(x)
    if len(t) != 1:
        raise DomainError(f"{name} must be a single integer")
    return t[0]


def _tuple(x) -> tuple[int, ...]:
    if isinstance(x, int):
        return (x,)
    return tuple(int(v) for v in x)
