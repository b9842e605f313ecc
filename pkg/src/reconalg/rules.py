"""Quiver construction straight from the labelled Dynkin diagram.

The arrow counts of the reconstruction algebra can be read off the diagram by
a trichotomy on the fundamental cycle: maximal (same as the all-(-2)
relabelling), reduced (all coefficients one) or mixed.  This module carries
that construction out and checks it against the intersection-theoretic
computation in :mod:`reconalg.quiver`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .dualgraph import DualGraph, fundamental_cycle, is_minimal, require_valid, row_pairing
from .quiver import STAR, ReconQuiver, build_quiver


class UnsupportedShapeError(ValueError):
    """The diagram is not a chain or a single-branch (ADE-shaped) tree."""


class RuleApplicationError(ValueError):
    """The mixed-cycle construction does not apply to this diagram."""


@dataclass(frozen=True)
class ZfClass:
    """Trichotomy of the fundamental cycle of an ADE-shaped diagram."""

    kind: str  # "maximal" | "reduced" | "mixed"
    middle_vertex: str | None = None
    c_vertex: str | None = None
    d_subdiagram: tuple[str, ...] | None = None


def _middle_vertex(g: DualGraph) -> str | None:
    """The unique trivalent vertex, or None for a chain; rejects other shapes."""
    if max(g.degree(v) for v in g.vertices) > 3:
        raise UnsupportedShapeError("a vertex meets more than three curves")
    branch = [v for v in g.vertices if g.degree(v) == 3]
    if len(branch) > 1:
        raise UnsupportedShapeError("more than one trivalent vertex")
    return branch[0] if branch else None


def _arms(g: DualGraph, middle: str) -> list[list[str]]:
    """The three arms out of the middle vertex, each ordered outward."""
    arms = []
    for first in g.neighbors(middle):
        arm = [first]
        prev, cur = middle, first
        while True:
            nxt = [w for w in g.neighbors(cur) if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            arm.append(cur)
        arms.append(arm)
    return arms


def _distances(g: DualGraph, start: str) -> dict[str, int]:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def _induced(g: DualGraph, keep: set[str], labels=None) -> DualGraph:
    vertices = [(v, (labels or g.labels)[v]) for v in g.vertices if v in keep]
    edges = [e for e in g.edges if e[0] in keep and e[1] in keep]
    return DualGraph(vertices, edges)


def _require_classifiable(g: DualGraph) -> None:
    require_valid(g)
    if not is_minimal(g):
        raise UnsupportedShapeError("diagram carries a (-1)-curve; rules need a minimal resolution")


def classify_zf(g: DualGraph) -> ZfClass:
    """Classify the fundamental cycle of a minimal ADE-shaped diagram."""
    _require_classifiable(g)
    middle = _middle_vertex(g)
    zf = fundamental_cycle(g)
    all_two = fundamental_cycle(g.relabel({v: -2 for v in g.vertices}))
    if zf == all_two:
        return ZfClass("maximal", middle)
    if all(r == 1 for r in zf.values()):
        return ZfClass("reduced", middle)
    try:
        c_vertex, sub = _mixed_data(g, middle, zf)
    except RuleApplicationError:
        # mixed, but outside the shapes the construction is certified for
        return ZfClass("mixed", middle)
    return ZfClass("mixed", middle, c_vertex, sub)


def _mixed_data(g: DualGraph, middle: str | None, zf: dict) -> tuple[str, tuple[str, ...]]:
    """The distinguished vertex C and the type-D subdiagram of a mixed cycle.

    The subdiagram is the run of coefficient-2 vertices together with all its
    coefficient-1 neighbours; its shape and the restriction of the cycle must
    match a maximal type-D configuration, otherwise the construction is not
    known to apply.
    """
    if middle is None:
        raise RuleApplicationError("mixed cycle on a chain diagram is unsupported")
    if any(r not in (1, 2) for r in zf.values()):
        raise RuleApplicationError("mixed construction needs coefficients 1 and 2 only")
    run = {v for v in g.vertices if zf[v] == 2}
    if middle not in run:
        raise RuleApplicationError("coefficient-2 region does not contain the middle vertex")
    run_graph = _induced(g, run)
    if len(_distances(run_graph, run_graph.vertices[0])) != len(run) or any(
        run_graph.degree(v) > 2 for v in run
    ):
        raise RuleApplicationError("coefficient-2 region is not a path")
    if sum(1 for w in g.neighbors(middle) if w in run) > 1:
        raise RuleApplicationError("middle vertex is interior to the coefficient-2 region")
    sub = set(run)
    for v in run:
        sub.update(g.neighbors(v))
    sub_graph = _induced(g, sub, labels={v: -2 for v in g.vertices})
    if fundamental_cycle(sub_graph) != {v: zf[v] for v in sub}:
        raise RuleApplicationError("coefficient-2 region does not close up to a maximal type-D cycle")
    dist = _distances(g, middle)
    arm_of = {v: tuple(arm) for arm in _arms(g, middle) for v in arm}
    deep = [v for v in g.vertices if g.labels[v] < -2]
    if not deep:
        raise RuleApplicationError("mixed cycle without a label below -2")
    c_vertex = min(deep, key=lambda v: (dist[v], -len(arm_of.get(v, ())), g.index(v)))
    return c_vertex, tuple(v for v in g.vertices if v in sub)


def apply_rules_traced(g: DualGraph) -> tuple[ReconQuiver, list[dict]]:
    """Arrow counts from the diagram rules, plus a trace of every addition.

    Relation counts are not produced by the rules; the returned quiver carries
    the intersection-theoretic relations for convenience.
    """
    cls = classify_zf(g)
    trace = []
    arrows = {}

    def add(src, tgt, count, why):
        if count:
            arrows[(src, tgt)] = arrows.get((src, tgt), 0) + count
            trace.append({"arrow": [src, tgt], "count": count, "rule": why})

    for a, b in g.edges:
        add(a, b, 1, "double edge")
        add(b, a, 1, "double edge")

    alphas = {v: -g.labels[v] for v in g.vertices}
    if cls.kind == "maximal":
        joins = _affine_joins(g)
        for v, count in joins.items():
            add(v, STAR, count, "extend to affine diagram")
            add(STAR, v, count, "extend to affine diagram")
        for v in g.vertices:
            add(v, STAR, alphas[v] - 2, "alpha-2 extras")
    elif cls.kind == "reduced":
        for arm in _arms(g, cls.middle_vertex):
            add(arm[-1], STAR, 1, "join star to arm end")
            add(STAR, arm[-1], 1, "join star to arm end")
        for v in g.vertices:
            if v == cls.middle_vertex:
                add(v, STAR, alphas[v] - 3, "alpha-3 extras at middle")
            else:
                add(v, STAR, alphas[v] - 2, "alpha-2 extras")
    else:
        c_vertex, subdiagram = _mixed_data(g, cls.middle_vertex, fundamental_cycle(g))
        sub = set(subdiagram)
        sub_graph = _induced(g, sub, labels={v: -2 for v in g.vertices})
        for v, count in _affine_joins(sub_graph).items():
            add(v, STAR, count, "extend type-D subdiagram to affine")
            add(STAR, v, count, "extend type-D subdiagram to affine")
        for arm in _arms(g, cls.middle_vertex):
            if arm[-1] not in sub:
                add(arm[-1], STAR, 1, "join star to arm end outside subdiagram")
                add(STAR, arm[-1], 1, "join star to arm end outside subdiagram")
        for v in g.vertices:
            if v == c_vertex:
                add(v, STAR, alphas[v] - 3, "alpha-3 extras at C")
            else:
                add(v, STAR, alphas[v] - 2, "alpha-2 extras")

    geometric = build_quiver(g)
    quiver = ReconQuiver.from_counts(
        g.vertices, fundamental_cycle(g), arrows, geometric.relations
    )
    return quiver, trace


def _affine_joins(g: DualGraph) -> dict[str, int]:
    """Multiplicity of the affine-diagram join of star to each vertex.

    On the all-(-2) relabelling, -Z_f.E_v is 1 exactly at the attachment
    vertex of the affine extension (2 for the one-vertex diagram, where the
    extended diagram is a double bond; both ends for a chain).
    """
    flat = g.relabel({v: -2 for v in g.vertices})
    z = fundamental_cycle(flat)
    return {v: -row_pairing(flat, z, v) for v in g.vertices if row_pairing(flat, z, v) != 0}


def apply_rules(g: DualGraph) -> ReconQuiver:
    return apply_rules_traced(g)[0]


def verify_against_geometric(g: DualGraph) -> bool:
    """True iff the rules and the intersection formulas give identical arrows."""
    return apply_rules(g).same_arrows(build_quiver(g))
