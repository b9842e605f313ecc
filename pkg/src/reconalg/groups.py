"""Catalog of finite small subgroups of GL(2,C) and their resolution data.

Families: A (cyclic 1/r(1,a)), D, T (tetrahedral), O (octahedral),
I (icosahedral).  For each valid parameter set the module builds the labelled
dual graph of the minimal resolution and the expected quiver of the
reconstruction algebra, transcribed once from the classification figures.
The expected quivers are test fixtures: the library recomputes the same
counts from intersection theory and from the combinatorial rules, and all
three must agree.

Generator matrices of the groups are recorded for reference only:
    psi_k = diag(eps_k, eps_k^-1), tau = antidiag(i, i),
    phi_k = eps_k * Id, eta, omega, iota (order-5 data);
no group element is ever enumerated here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .dualgraph import DualGraph, fundamental_cycle
from .quiver import STAR, ReconQuiver

FAMILIES = ("A", "D", "T", "O", "I")

# family -> (modulus k, allowed residues); for T/O/I, m = k*(b-2) + residue.
RESIDUES = {
    "T": (6, (1, 3, 5)),
    "O": (12, (1, 5, 7, 11)),
    "I": (30, (1, 7, 11, 13, 17, 19, 23, 29)),
}


class GroupParamError(ValueError):
    """Parameters outside the classification table."""


@dataclass(frozen=True)
class GroupId:
    family: str
    params: tuple[int, ...]

    def __str__(self):
        return f"{self.family}:{','.join(str(p) for p in self.params)}"


def A(r, a):
    return GroupId("A", (int(r), int(a)))


def D(n, q):
    return GroupId("D", (int(n), int(q)))


def T(m):
    return GroupId("T", (int(m),))


def O(m):
    return GroupId("O", (int(m),))


def I(m):
    return GroupId("I", (int(m),))


def parse_group(spec: str) -> GroupId:
    """Parse "A:r,a", "D:n,q", "T:m", "O:m" or "I:m"."""
    try:
        family, raw = spec.split(":", 1)
        params = tuple(int(p) for p in raw.split(","))
    except ValueError as exc:
        raise GroupParamError(f"bad group spec {spec!r}") from exc
    if family not in FAMILIES:
        raise GroupParamError(f"unknown family {family!r}")
    gid = GroupId(family, params)
    validate_params(gid)
    return gid


def param_errors(gid: GroupId) -> list[str]:
    fam, p = gid.family, gid.params
    errors = []
    if fam in ("A", "D"):
        if len(p) != 2:
            return [f"family {fam} takes two parameters"]
        big, small = p
        names = ("r", "a") if fam == "A" else ("n", "q")
        if not 1 < small < big:
            errors.append(f"need 1 < {names[1]} < {names[0]}")
        if math.gcd(big, small) != 1:
            errors.append(f"need gcd({names[0]},{names[1]}) = 1")
    elif fam in RESIDUES:
        if len(p) != 1:
            return [f"family {fam} takes one parameter"]
        (m,) = p
        k, allowed = RESIDUES[fam]
        if m < 1 or m % k not in allowed:
            errors.append(f"need m = {m} congruent to one of {allowed} mod {k}")
    else:
        errors.append(f"unknown family {fam!r}")
    return errors


def validate_params(gid: GroupId) -> None:
    errors = param_errors(gid)
    if errors:
        raise GroupParamError(f"{gid}: " + "; ".join(errors))


def b_parameter(gid: GroupId) -> int:
    """The b with m = k(b-2) + residue for T/O/I; b = 2 is the base case."""
    validate_params(gid)
    if gid.family not in RESIDUES:
        raise GroupParamError(f"{gid}: b is only defined for T/O/I")
    k, _ = RESIDUES[gid.family]
    (m,) = gid.params
    return (m - m % k) // k + 2


def group_for_b(family: str, residue: int, b: int) -> GroupId:
    k, allowed = RESIDUES[family]
    if residue not in allowed or b < 2:
        raise GroupParamError(f"no member {family} residue {residue} with b={b}")
    return GroupId(family, (k * (b - 2) + residue,))


def jh_expand(r: int, a: int) -> list[int]:
    """Negative-regular continued fraction r/a = a1 - 1/(a2 - 1/(...)).

    Every a_i is >= 2; the reconstruction of r/a from the output is asserted.
    """
    if not (0 < a < r) or math.gcd(r, a) != 1:
        raise GroupParamError(f"jh_expand needs coprime 0 < a < r, got ({r},{a})")
    alphas = []
    rr, aa = r, a
    while aa:
        alpha = -(-rr // aa)
        alphas.append(alpha)
        rr, aa = aa, alpha * aa - rr
    if any(alpha < 2 for alpha in alphas) or jh_eval(alphas) != Fraction(r, a):
        raise ArithmeticError(f"continued fraction expansion of {r}/{a} failed")
    return alphas


def jh_eval(alphas: list[int]) -> Fraction:
    value = Fraction(alphas[-1])
    for alpha in reversed(alphas[:-1]):
        value = alpha - 1 / value
    return value


# T/O/I dual-graph templates: chain labels with None at the -b slot; the
# extra -2 branch curve always hangs off the -b vertex.  Transcribed from the
# classification figures, one entry per residue.
STAR_TEMPLATES = {
    ("T", 1): (-2, -2, None, -2, -2),
    ("T", 3): (-3, None, -2, -2),
    ("T", 5): (-3, None, -3),
    ("O", 1): (-2, -2, None, -2, -2, -2),
    ("O", 5): (-3, None, -2, -2, -2),
    ("O", 7): (-4, None, -2, -2),
    ("O", 11): (-3, None, -4),
    ("I", 1): (-2, -2, None, -2, -2, -2, -2),
    ("I", 7): (-2, -2, None, -2, -3),
    ("I", 11): (-3, None, -2, -2, -2, -2),
    ("I", 13): (-2, -2, None, -3, -2),
    ("I", 17): (-3, None, -2, -3),
    ("I", 19): (-5, None, -2, -2),
    ("I", 23): (-3, None, -3, -2),
    ("I", 29): (-3, None, -5),
}

BRANCH = "B"


def chain_graph(labels, prefix="E") -> DualGraph:
    ids = [f"{prefix}{i + 1}" for i in range(len(labels))]
    return DualGraph(zip(ids, labels), zip(ids, ids[1:]))


def branched_chain(labels, branch_at: int, branch_label: int = -2, prefix="C") -> DualGraph:
    """Chain with one extra curve attached to chain vertex ``branch_at`` (0-based)."""
    ids = [f"{prefix}{i + 1}" for i in range(len(labels))]
    vertices = list(zip(ids, labels)) + [(BRANCH, branch_label)]
    edges = list(zip(ids, ids[1:])) + [(ids[branch_at], BRANCH)]
    return DualGraph(vertices, edges)


def d_shape_graph(alphas) -> DualGraph:
    """Two -2 tips on the -a1 vertex, then the chain -a2, ..., -aN."""
    ids = [f"C{i + 1}" for i in range(len(alphas))]
    vertices = [("T1", -2), ("T2", -2)] + [(v, -a) for v, a in zip(ids, alphas)]
    edges = [("T1", "C1"), ("T2", "C1")] + list(zip(ids, ids[1:]))
    return DualGraph(vertices, edges)


def dual_graph(gid: GroupId) -> DualGraph:
    """Labelled dual graph of the minimal resolution of the quotient."""
    validate_params(gid)
    fam = gid.family
    if fam == "A":
        return chain_graph([-alpha for alpha in jh_expand(*gid.params)])
    if fam == "D":
        return d_shape_graph(jh_expand(*gid.params))
    k, _ = RESIDUES[fam]
    b = b_parameter(gid)
    template = STAR_TEMPLATES[(fam, gid.params[0] % k)]
    labels = [-b if x is None else x for x in template]
    return branched_chain(labels, template.index(None))


# Expected quivers for the T/O/I figures.  "joins" lists the vertices tied to
# star by one arrow each way; "greens" are extra arrows into star, with "b-3"
# standing for the parametric count at the -b vertex.
_BASE_QUIVERS = {
    ("T", 1): ((BRANCH,), ()),
    ("T", 3): (("C3",), (("C1", 1),)),
    ("T", 5): (("C2",), (("C1", 1), ("C3", 1))),
    ("O", 1): (("C1",), ()),
    ("O", 5): (("C4",), (("C1", 1),)),
    ("O", 7): (("C3",), (("C1", 2),)),
    ("O", 11): (("C2",), (("C1", 1), ("C3", 2))),
    ("I", 1): (("C7",), ()),
    ("I", 7): ((BRANCH,), (("C5", 1),)),
    ("I", 11): (("C5",), (("C1", 1),)),
    ("I", 13): (("C2", "C5"), ()),
    ("I", 17): (("C3",), (("C1", 1), ("C4", 1))),
    ("I", 19): (("C3",), (("C1", 3),)),
    ("I", 23): (("C2", "C4"), (("C1", 1),)),
    ("I", 29): (("C2",), (("C1", 1), ("C3", 3))),
}

_PARAM_QUIVERS = {
    ("T", 1): (("C1", "C5", BRANCH), (("C3", "b-3"),)),
    ("T", 3): (("C1", "C4", BRANCH), (("C1", 1), ("C2", "b-3"))),
    ("T", 5): (("C1", "C3", BRANCH), (("C1", 1), ("C3", 1), ("C2", "b-3"))),
    ("O", 1): (("C1", "C6", BRANCH), (("C3", "b-3"),)),
    ("O", 5): (("C1", "C5", BRANCH), (("C1", 1), ("C2", "b-3"))),
    ("O", 7): (("C1", "C4", BRANCH), (("C1", 2), ("C2", "b-3"))),
    ("O", 11): (("C1", "C3", BRANCH), (("C1", 1), ("C3", 2), ("C2", "b-3"))),
    ("I", 1): (("C1", "C7", BRANCH), (("C3", "b-3"),)),
    ("I", 7): (("C1", "C5", BRANCH), (("C5", 1), ("C3", "b-3"))),
    ("I", 11): (("C1", "C6", BRANCH), (("C1", 1), ("C2", "b-3"))),
    ("I", 13): (("C1", "C5", BRANCH), (("C4", 1), ("C3", "b-3"))),
    ("I", 17): (("C1", "C4", BRANCH), (("C1", 1), ("C4", 1), ("C2", "b-3"))),
    ("I", 19): (("C1", "C4", BRANCH), (("C1", 3), ("C2", "b-3"))),
    ("I", 23): (("C1", "C4", BRANCH), (("C1", 1), ("C3", 1), ("C2", "b-3"))),
    ("I", 29): (("C1", "C3", BRANCH), (("C1", 1), ("C3", 3), ("C2", "b-3"))),
}


def _add(arrows: dict, src: str, tgt: str, count: int = 1) -> None:
    if count:
        arrows[(src, tgt)] = arrows.get((src, tgt), 0) + count


def _arrows_from_edges(g: DualGraph) -> dict:
    arrows = {}
    for a, b in g.edges:
        _add(arrows, a, b)
        _add(arrows, b, a)
    return arrows


def _quiver_from(g: DualGraph, arrows: dict) -> ReconQuiver:
    return ReconQuiver.from_counts(g.vertices, fundamental_cycle(g), arrows, {})


def expected_quiver(gid: GroupId) -> ReconQuiver:
    """Arrow counts of the classification figure for this group (no relations)."""
    validate_params(gid)
    g = dual_graph(gid)
    fam = gid.family
    if fam == "A":
        return _expected_a(g)
    if fam == "D":
        return _expected_d(g)
    k, _ = RESIDUES[fam]
    b = b_parameter(gid)
    joins, greens = (_BASE_QUIVERS if b == 2 else _PARAM_QUIVERS)[(fam, gid.params[0] % k)]
    arrows = _arrows_from_edges(g)
    for v in joins:
        _add(arrows, v, STAR)
        _add(arrows, STAR, v)
    for v, count in greens:
        _add(arrows, v, STAR, b - 3 if count == "b-3" else count)
    return _quiver_from(g, arrows)


def _expected_a(g: DualGraph) -> ReconQuiver:
    # cycle through star on the extended diagram, plus alpha-2 extras into star
    arrows = _arrows_from_edges(g)
    for v in (g.vertices[0], g.vertices[-1]):
        _add(arrows, v, STAR)
        _add(arrows, STAR, v)
    for v in g.vertices:
        _add(arrows, v, STAR, -g.labels[v] - 2)
    return _quiver_from(g, arrows)


def _expected_d(g: DualGraph) -> ReconQuiver:
    """Three-case recipe on the D-shaped graph: tips T1, T2 on C1, chain C1..CN."""
    zf = fundamental_cycle(g)
    chain = [v for v in g.vertices if v.startswith("C")]
    alphas = {v: -g.labels[v] for v in chain}
    all_two = fundamental_cycle(g.relabel({v: -2 for v in g.vertices}))
    arrows = _arrows_from_edges(g)
    last = chain[-1]
    if zf == all_two:
        _add(arrows, chain[-2], STAR)
        _add(arrows, STAR, chain[-2])
        _add(arrows, last, STAR, alphas[last] - 2)
    elif all(r == 1 for r in zf.values()):
        for v in ("T1", "T2", last):
            _add(arrows, v, STAR)
            _add(arrows, STAR, v)
        _add(arrows, chain[0], STAR, alphas[chain[0]] - 3)
        for v in chain[1:]:
            _add(arrows, v, STAR, alphas[v] - 2)
    else:
        nu = sum(1 for v in chain if zf[v] == 2)
        for v in (chain[nu - 1], last):
            _add(arrows, v, STAR)
            _add(arrows, STAR, v)
        _add(arrows, chain[nu], STAR, alphas[chain[nu]] - 3)
        for v in chain[nu + 1:]:
            _add(arrows, v, STAR, alphas[v] - 2)
    return _quiver_from(g, arrows)
