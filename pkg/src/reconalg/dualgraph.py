"""Labelled dual graphs of exceptional curve configurations.

A dual graph has one vertex per exceptional curve, labelled with the curve's
self-intersection number, and an edge whenever two curves meet.  This module
computes the intersection pairing, the fundamental cycle, the canonical cycle
and the standard validity checks.  All arithmetic is exact: integer cycles,
``fractions.Fraction`` solutions of linear systems, and definiteness decided
by exact leading-principal-minor signs.  No floating point anywhere.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction


class GraphInputError(ValueError):
    """Structurally malformed input: unknown ids, loop edges, bad cycle keys."""


class InvalidGraphError(ValueError):
    """An operation was applied to a graph that fails validation."""


class DualGraph:
    """Weighted undirected graph of exceptional curves.

    ``vertices`` is an ordered tuple of curve ids; the order fixes the row
    order of the intersection matrix.  ``labels`` maps each id to its
    self-intersection.  Edges are unordered pairs of distinct declared ids;
    duplicates are kept so that validation can report them.
    """

    def __init__(self, vertices, edges=()):
        pairs = [(str(v), int(s)) for v, s in vertices]
        if not pairs:
            raise GraphInputError("graph needs at least one vertex")
        ids = [v for v, _ in pairs]
        if len(set(ids)) != len(ids):
            raise GraphInputError("duplicate vertex id")
        if any(not v for v in ids):
            raise GraphInputError("vertex ids must be nonempty strings")
        self.vertices: tuple[str, ...] = tuple(ids)
        self.labels: dict[str, int] = dict(pairs)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        edge_list = []
        for a, b in edges:
            a, b = str(a), str(b)
            if a not in self.labels or b not in self.labels:
                raise GraphInputError(f"edge ({a},{b}) has an undeclared endpoint")
            if a == b:
                raise GraphInputError(f"loop edge at {a}")
            edge_list.append((a, b) if self._index[a] < self._index[b] else (b, a))
        self.edges: tuple[tuple[str, str], ...] = tuple(edge_list)
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        self._adj = {v: tuple(sorted(ws, key=self._index.__getitem__)) for v, ws in adj.items()}

    def index(self, v: str) -> int:
        return self._index[v]

    def neighbors(self, v: str) -> tuple[str, ...]:
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def intersection_matrix(self) -> list[list[int]]:
        """Matrix with self-intersections on the diagonal, 1 for each meeting pair."""
        n = len(self.vertices)
        m = [[0] * n for _ in range(n)]
        for i, v in enumerate(self.vertices):
            m[i][i] = self.labels[v]
        for a, b in set(self.edges):
            i, j = self._index[a], self._index[b]
            m[i][j] = m[j][i] = 1
        return m

    def relabel(self, labels: dict[str, int]) -> "DualGraph":
        """Same underlying graph with new self-intersections."""
        return DualGraph([(v, labels[v]) for v in self.vertices], self.edges)

    def __eq__(self, other):
        return (
            isinstance(other, DualGraph)
            and self.vertices == other.vertices
            and self.labels == other.labels
            and sorted(self.edges) == sorted(other.edges)
        )

    def __repr__(self):
        parts = ",".join(f"{v}:{self.labels[v]}" for v in self.vertices)
        return f"DualGraph({parts}; {len(self.edges)} edges)"

    def to_jsonable(self) -> dict:
        return {
            "vertices": [{"id": v, "self": self.labels[v]} for v in self.vertices],
            "edges": sorted([list(e) for e in self.edges]),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), sort_keys=True)

    @classmethod
    def from_jsonable(cls, data: dict) -> "DualGraph":
        try:
            vertices = [(rec["id"], rec["self"]) for rec in data["vertices"]]
            edges = [tuple(e) for e in data.get("edges", [])]
        except (KeyError, TypeError) as exc:
            raise GraphInputError(f"bad graph record: {exc}") from exc
        return cls(vertices, edges)

    @classmethod
    def from_json(cls, text: str) -> "DualGraph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphInputError(f"malformed JSON: {exc}") from exc
        return cls.from_jsonable(data)


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[tuple[str, str], ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def codes(self) -> tuple[str, ...]:
        return tuple(code for code, _ in self.failures)

    def to_jsonable(self) -> dict:
        return {
            "ok": self.ok,
            "failures": [{"code": c, "message": m} for c, m in self.failures],
        }


def validate_graph(g: DualGraph) -> ValidationReport:
    """Check the standing hypotheses on a resolution dual graph.

    Reported failure codes: ``duplicate-edge``, ``self-intersection``
    (some label >= 0), ``disconnected``, ``not-a-tree``,
    ``not-negative-definite``.  Negative definiteness is decided exactly via
    the signs of the leading principal minors.
    """
    failures = []
    seen = set()
    for e in g.edges:
        if e in seen:
            failures.append(("duplicate-edge", f"edge {e} declared more than once"))
        seen.add(e)
    for v in g.vertices:
        if g.labels[v] >= 0:
            failures.append(("self-intersection", f"vertex {v} has self-intersection {g.labels[v]} >= -1 required"))
    reached = _bfs(g, g.vertices[0])
    if len(reached) != len(g.vertices):
        missing = [v for v in g.vertices if v not in reached]
        failures.append(("disconnected", f"unreachable vertices: {', '.join(missing)}"))
    elif len(seen) != len(g.vertices) - 1:
        failures.append(("not-a-tree", "graph contains a cycle of curves"))
    if not _negative_definite(g.intersection_matrix()):
        failures.append(("not-negative-definite", "intersection matrix is not negative definite"))
    return ValidationReport(tuple(failures))


def require_valid(g: DualGraph) -> None:
    report = validate_graph(g)
    if not report.ok:
        raise InvalidGraphError("; ".join(m for _, m in report.failures))


def is_minimal(g: DualGraph) -> bool:
    """True when no curve is a (-1)-curve."""
    return all(g.labels[v] != -1 for v in g.vertices)


def _bfs(g: DualGraph, start: str) -> set[str]:
    reached = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in reached:
                reached.add(w)
                queue.append(w)
    return reached


def _negative_definite(m: list[list[int]]) -> bool:
    """Exact test via Gaussian pivots, which are the leading-minor ratios.

    M is negative definite iff det(M_k) has sign (-1)^k for every leading
    block, iff every pivot in swap-free elimination is negative.
    """
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    for k in range(n):
        pivot = a[k][k]
        if pivot >= 0:
            return False
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / pivot
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return True


def solve_exact(matrix: list[list], rhs: list) -> list[Fraction]:
    """Solve matrix*x = rhs over the rationals; raises on singular input."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(matrix, rhs)]
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k]), None)
        if pivot_row is None:
            raise ArithmeticError("singular matrix")
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k] / a[k][k]
                for j in range(k, n + 1):
                    a[i][j] -= f * a[k][j]
    return [a[i][n] / a[i][i] for i in range(n)]


def _check_keys(g: DualGraph, cycle: dict) -> None:
    if set(cycle) != set(g.vertices):
        raise GraphInputError("cycle keys do not match the graph's vertex set")


def pairing(g: DualGraph, c1: dict, c2: dict):
    """Intersection product c1^T M c2; symmetric, bilinear, exact.

    Integer cycles give an int, Fraction coefficients give a Fraction.
    """
    _check_keys(g, c1)
    _check_keys(g, c2)
    total = sum(g.labels[v] * c1[v] * c2[v] for v in g.vertices)
    for a, b in set(g.edges):
        total += c1[a] * c2[b] + c1[b] * c2[a]
    return total


def row_pairing(g: DualGraph, cycle: dict, v: str):
    """Pairing of a cycle with the single curve v (the cycle E_v)."""
    _check_keys(g, cycle)
    return g.labels[v] * cycle[v] + sum(cycle[w] for w in g.neighbors(v))


def fundamental_cycle(g: DualGraph) -> dict[str, int]:
    """Smallest cycle with all coefficients >= 1 pairing <= 0 with every curve.

    Computed by the Laufer iteration: start from all ones and repeatedly bump
    the first vertex (in declared order) whose pairing is positive.  Negative
    definiteness guarantees termination, and the result is independent of the
    bump order.
    """
    require_valid(g)
    z = {v: 1 for v in g.vertices}
    while True:
        for v in g.vertices:
            if g.labels[v] * z[v] + sum(z[w] for w in g.neighbors(v)) > 0:
                z[v] += 1
                break
        else:
            return z


def canonical_cycle(g: DualGraph) -> dict[str, Fraction]:
    """Rational cycle Z with Z.E_v = E_v^2 + 2 for every curve v."""
    require_valid(g)
    rhs = [g.labels[v] + 2 for v in g.vertices]
    sol = solve_exact(g.intersection_matrix(), rhs)
    return dict(zip(g.vertices, sol))


def embedding_dimension(g: DualGraph) -> int:
    """1 - Z_f.Z_f, the embedding dimension of the singularity."""
    zf = fundamental_cycle(g)
    return 1 - pairing(g, zf, zf)


def rationality_identity_check(g: DualGraph) -> bool:
    """True iff Z_K.Z_f = Z_f.Z_f + 2 exactly (arithmetic genus zero)."""
    zf = fundamental_cycle(g)
    zk = canonical_cycle(g)
    return pairing(g, zk, zf) == pairing(g, zf, zf) + 2


def cycle_to_jsonable(cycle: dict) -> dict:
    """Render a cycle; integral values as ints, true rationals as "p/q"."""
    out = {}
    for v, x in cycle.items():
        f = Fraction(x)
        out[v] = int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    return out


def cycle_from_jsonable(data: dict):
    cycle = {}
    for v, x in data.items():
        if isinstance(x, int):
            cycle[v] = x
        elif isinstance(x, str):
            try:
                cycle[v] = Fraction(x)
            except (ValueError, ZeroDivisionError) as exc:
                raise GraphInputError(f"bad rational {x!r} for {v}") from exc
        else:
            raise GraphInputError(f"bad coefficient {x!r} for {v}")
    return cycle
