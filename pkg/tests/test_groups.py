"""Group catalog: parameters, continued fractions, dual graphs, figure quivers."""

import math
from fractions import Fraction

import pytest

from reconalg.dualgraph import rationality_identity_check, validate_graph
from reconalg.groups import (
    BRANCH,
    RESIDUES,
    GroupId,
    GroupParamError,
    b_parameter,
    dual_graph,
    expected_quiver,
    group_for_b,
    jh_eval,
    jh_expand,
    param_errors,
    parse_group,
    validate_params,
)
from reconalg.quiver import STAR, build_quiver


def catalog(max_r=24, max_n=24, b_max=5):
    for r in range(3, max_r + 1):
        for a in range(2, r):
            if math.gcd(r, a) == 1:
                yield GroupId("A", (r, a))
    for n in range(3, max_n + 1):
        for q in range(2, n):
            if math.gcd(n, q) == 1:
                yield GroupId("D", (n, q))
    for family in ("T", "O", "I"):
        for residue in RESIDUES[family][1]:
            for b in range(2, b_max + 1):
                yield group_for_b(family, residue, b)


# -------------------------------------------------------------- parameters --

def test_parse_and_validate():
    assert parse_group("A:5,3") == GroupId("A", (5, 3))
    assert parse_group("I:7") == GroupId("I", (7,))
    validate_params(GroupId("D", (52, 11)))


def test_invalid_parameters_are_named():
    assert any("gcd" in e for e in param_errors(GroupId("A", (4, 2))))
    assert any("mod 30" in e for e in param_errors(GroupId("I", (9,))))
    assert any("1 < a < r" in e for e in param_errors(GroupId("A", (5, 1))))
    with pytest.raises(GroupParamError):
        parse_group("A:4,2")
    with pytest.raises(GroupParamError):
        parse_group("I:9")
    with pytest.raises(GroupParamError):
        parse_group("Q:3")
    with pytest.raises(GroupParamError):
        parse_group("A:five,3")


def test_t_o_i_residues():
    for m in (1, 3, 5, 7, 11):
        assert not param_errors(GroupId("T", (m,))) or m in (7, 11)
    validate_params(GroupId("O", (11,)))
    validate_params(GroupId("I", (29,)))
    assert param_errors(GroupId("O", (3,)))


def test_b_parameter():
    assert b_parameter(GroupId("I", (7,))) == 2
    assert b_parameter(GroupId("I", (37,))) == 3
    assert b_parameter(GroupId("T", (13,))) == 4  # 13 = 6*(4-2)+1
    assert group_for_b("I", 7, 3) == GroupId("I", (37,))


# ------------------------------------------------------ continued fractions --

def test_jh_expansions():
    assert jh_expand(5, 3) == [2, 3]
    assert jh_expand(40, 11) == [4, 3, 4]
    assert jh_expand(52, 11) == [5, 4, 3]
    assert jh_expand(56, 39) == [2, 2, 5, 2, 3]


def test_jh_round_trip():
    for r in range(3, 130):
        for a in range(2, r):
            if math.gcd(r, a) == 1:
                alphas = jh_expand(r, a)
                assert all(alpha >= 2 for alpha in alphas)
                assert jh_eval(alphas) == Fraction(r, a)


def test_jh_rejects_bad_input():
    with pytest.raises(GroupParamError):
        jh_expand(4, 2)
    with pytest.raises(GroupParamError):
        jh_expand(3, 5)


# ------------------------------------------------------------- dual graphs --

def test_d_7_4_graph_is_a_fork():
    g = dual_graph(GroupId("D", (7, 4)))
    assert set(g.vertices) == {"T1", "T2", "C1", "C2"}
    assert g.labels == {"T1": -2, "T2": -2, "C1": -2, "C2": -4}
    assert g.degree("C1") == 3


def test_t_1_graph_is_all_minus_two():
    g = dual_graph(GroupId("T", (1,)))
    assert len(g.vertices) == 6
    assert all(label == -2 for label in g.labels.values())
    assert g.degree("C3") == 3


def test_i_37_has_center_minus_three():
    g = dual_graph(GroupId("I", (37,)))
    assert g.labels["C3"] == -3
    assert g.labels[BRANCH] == -2
    assert BRANCH in g.neighbors("C3")


def test_catalog_graphs_are_valid_and_rational():
    for gid in catalog(max_r=16, max_n=16, b_max=4):
        g = dual_graph(gid)
        assert validate_graph(g).ok, gid
        assert rationality_identity_check(g), gid


# -------------------------------------------------------- expected quivers --

def test_expected_quiver_a_5_3():
    q = expected_quiver(GroupId("A", (5, 3)))
    assert q.arrows == {
        ("E1", "E2"): 1,
        ("E2", "E1"): 1,
        ("E1", STAR): 1,
        (STAR, "E1"): 1,
        ("E2", STAR): 2,
        (STAR, "E2"): 1,
    }


def test_expected_quiver_i_7():
    q = expected_quiver(GroupId("I", (7,)))
    doubled = [("C1", "C2"), ("C2", "C3"), ("C3", "C4"), ("C4", "C5"), ("C3", BRANCH), (BRANCH, STAR)]
    expected = {}
    for a, b in doubled:
        expected[(a, b)] = 1
        expected[(b, a)] = 1
    expected[("C5", STAR)] = 1
    assert q.arrows == expected


def test_expected_quiver_d_56_39():
    q = expected_quiver(GroupId("D", (56, 39)))
    assert q.arrow_count("C3", STAR) == 2  # the -5 vertex
    assert q.arrow_count("C5", STAR) == 2  # doubled end edge plus one extra
    assert q.arrow_count(STAR, "C5") == 1
    assert q.arrow_count("C2", STAR) == 1
    assert q.arrow_count(STAR, "C2") == 1
    assert q.arrow_count("T1", STAR) == 0


def test_expected_matches_geometric_on_catalog():
    for gid in catalog(max_r=20, max_n=20, b_max=5):
        g = dual_graph(gid)
        assert build_quiver(g).same_arrows(expected_quiver(gid)), gid


def test_deleting_star_recovers_the_dual_graph():
    for gid in catalog(max_r=12, max_n=12, b_max=4):
        g = dual_graph(gid)
        q = build_quiver(g)
        adjacency = {
            frozenset((a, b))
            for (a, b), n in q.arrows.items()
            if n and STAR not in (a, b)
        }
        assert adjacency == {frozenset(e) for e in g.edges}, gid
