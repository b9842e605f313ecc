"""Arrow and relation counts of the reconstruction algebra of a dual graph.

The quiver has one vertex per exceptional curve plus a distinguished vertex
``star`` for the ring itself.  Arrow and relation counts between the simple
modules are closed-form expressions in the intersection data: the fundamental
cycle, the canonical cycle and the truncations a_plus / a_minus.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .dualgraph import (
    DualGraph,
    GraphInputError,
    fundamental_cycle,
    pairing,
    require_valid,
    row_pairing,
)

STAR = "star"


def a_plus(a):
    """max(a, 0); the positive part used throughout the count formulas."""
    return a if a > 0 else 0


def a_minus(a):
    """max(-a, 0)."""
    return -a if a < 0 else 0


@dataclass(frozen=True)
class ExtTable:
    """Dimensions ext^t(S_a, S_b) for t in {1,2,3}; sources/targets are curve ids or star."""

    vertices: tuple[str, ...]
    dims: dict

    def ext(self, src: str, tgt: str, t: int) -> int:
        return self.dims.get((src, tgt, t), 0)

    def nonzero(self):
        return sorted(self.dims.items())


def _check_star_free(g: DualGraph) -> None:
    if STAR in g.vertices:
        raise GraphInputError(f"vertex id {STAR!r} is reserved for the quiver")


def ext_table(g: DualGraph) -> ExtTable:
    """Ext dimensions between the simples attached to the curves and to star.

    For curves i, j:
        ext1(S_i,S_j) = (E_i.E_j)_+        ext2(S_i,S_j) = (-1-E_i.E_j)_+
        ext1(S_star,S_star) = 0            ext2(S_star,S_star) = e-2
        ext1(S_star,S_i) = -E_i.Z_f        ext2 = ext3 = 0
        ext^t(S_i,S_star) = (1-Z_f.E_i, 1, 0)                    if E_i^2 = -1
                          = (d_+, d_-, -E_i^2-2) with d = (Z_K-Z_f).E_i  else
    Z_K.E_i = E_i^2 + 2 by the defining property of the canonical cycle, so
    d is always an integer even though Z_K itself is only rational.
    """
    require_valid(g)
    _check_star_free(g)
    zf = fundamental_cycle(g)
    e = 1 - pairing(g, zf, zf)
    dims = {}

    def put(src, tgt, t, value):
        if value < 0 or value != int(value):
            raise ArithmeticError(f"ext^{t}({src},{tgt}) = {value} is not a nonnegative integer")
        if value:
            dims[(src, tgt, t)] = int(value)

    for i in g.vertices:
        for j in g.vertices:
            eij = g.labels[i] if i == j else (1 if j in g.neighbors(i) else 0)
            put(i, j, 1, a_plus(eij))
            put(i, j, 2, a_plus(-1 - eij))
    put(STAR, STAR, 2, e - 2)
    for i in g.vertices:
        zf_ei = row_pairing(g, zf, i)
        put(STAR, i, 1, -zf_ei)
        if g.labels[i] == -1:
            put(i, STAR, 1, 1 - zf_ei)
            put(i, STAR, 2, 1)
        else:
            d = (g.labels[i] + 2) - zf_ei
            put(i, STAR, 1, a_plus(d))
            put(i, STAR, 2, a_minus(d))
            put(i, STAR, 3, -g.labels[i] - 2)
    return ExtTable(g.vertices, dims)


def _normalized(counts: dict) -> dict:
    out = {}
    for key, value in counts.items():
        if value < 0 or value != int(value):
            raise ValueError(f"count {key} = {value} is not a nonnegative integer")
        if value:
            out[tuple(key)] = int(value)
    return out


@dataclass(frozen=True)
class ReconQuiver:
    """Quiver presentation data: arrow and relation counts over curves + star.

    ``zf_label`` carries the fundamental-cycle coefficient of each curve as
    display metadata.  Only nonzero counts are stored.
    """

    vertices: tuple[str, ...]
    zf_label: dict
    arrows: dict
    relations: dict

    def all_vertices(self) -> tuple[str, ...]:
        return (STAR,) + self.vertices

    def arrow_count(self, src: str, tgt: str) -> int:
        return self.arrows.get((src, tgt), 0)

    def relation_count(self, src: str, tgt: str) -> int:
        return self.relations.get((src, tgt), 0)

    def same_arrows(self, other: "ReconQuiver") -> bool:
        return set(self.vertices) == set(other.vertices) and self.arrows == other.arrows

    def to_jsonable(self) -> dict:
        return {
            "vertices": [STAR] + list(self.vertices),
            "zf": dict(self.zf_label),
            "arrows": {f"{s}->{t}": n for (s, t), n in sorted(self.arrows.items())},
            "relations": {f"{s}->{t}": n for (s, t), n in sorted(self.relations.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), sort_keys=True)

    @classmethod
    def from_counts(cls, vertices, zf_label, arrows, relations) -> "ReconQuiver":
        return cls(tuple(vertices), dict(zf_label), _normalized(arrows), _normalized(relations))


def build_quiver(g: DualGraph) -> ReconQuiver:
    """Quiver of the reconstruction algebra, straight from the ext table.

    Representations of the quiver are right modules while the ext table is
    computed between left-module simples, so source and target are swapped:
    arrows i->j = ext1(S_j, S_i) and relations i->j = ext2(S_j, S_i).
    """
    table = ext_table(g)
    zf = fundamental_cycle(g)
    vertices = g.vertices + (STAR,)
    arrows = {}
    relations = {}
    for i in vertices:
        for j in vertices:
            arrows[(i, j)] = table.ext(j, i, 1)
            relations[(i, j)] = table.ext(j, i, 2)
    return ReconQuiver.from_counts(g.vertices, zf, arrows, relations)


def global_dimension(g: DualGraph) -> int:
    """3 when some curve has self-intersection below -2, else 2."""
    require_valid(g)
    return 3 if any(g.labels[v] < -2 for v in g.vertices) else 2


def projective_dimensions(g: DualGraph) -> dict:
    """Projective dimensions of the simple left and right modules.

    Read off the ext table: the left simple at v has dimension
    max{t : ext^t(S_v, X) != 0 for some X}, the right one uses targets.
    """
    table = ext_table(g)
    everything = table.vertices + (STAR,)
    left = {v: 0 for v in everything}
    right = {v: 0 for v in everything}
    for (src, tgt, t), value in table.dims.items():
        if value:
            left[src] = max(left[src], t)
            right[tgt] = max(right[tgt], t)
    return {"left": left, "right": right}


def emit_dot(q: ReconQuiver) -> str:
    """Deterministic DOT rendering; one solid edge per arrow, dashed edges
    labelled with relation counts."""
    order = {v: i for i, v in enumerate(q.vertices)}
    order[STAR] = len(q.vertices)

    def key(pair):
        return (order[pair[0]], order[pair[1]])

    lines = ["digraph reconstruction_quiver {"]
    for v in q.vertices:
        label = f"{v} [{q.zf_label.get(v, '?')}]"
        lines.append(f'  "{v}" [shape=circle, label="{label}"];')
    lines.append(f'  "{STAR}" [shape=doublecircle, label="*"];')
    for (s, t) in sorted(q.arrows, key=key):
        for _ in range(q.arrows[(s, t)]):
            lines.append(f'  "{s}" -> "{t}";')
    for (s, t) in sorted(q.relations, key=key):
        lines.append(f'  "{s}" -> "{t}" [style=dashed, label="{q.relations[(s, t)]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
