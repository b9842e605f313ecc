"""Knitting recursion: AR-quiver construction, counting grids, cross-checks."""

import pytest

from knit_fixtures import (
    GRID_I1_R,
    I1_R_TOTALS,
    I7_GRIDS,
    I7_TOTALS,
    SYMBOLIC_M_WINDOWS,
    iter_grid,
    m_run_totals,
    parse_symbol,
)
from reconalg.groups import GroupId, GroupParamError, group_for_b
from reconalg.knitting import (
    KnitInputError,
    NonTerminationError,
    TranslationQuiver,
    TranslationQuiverError,
    build_I_ar_quiver,
    cross_check,
    grid_trace,
    knit_counts,
    supported_cross_check,
)


# ------------------------------------------------------------ construction --

def test_one_segment_quiver():
    tq, specials = build_I_ar_quiver(1)
    assert len(tq.vertices) == 9
    assert tq.period == 2
    assert specials is None  # base case carries no documented special set


def test_seven_segment_quiver():
    tq, specials = build_I_ar_quiver(7)
    assert len(tq.vertices) == 63
    assert tq.period == 14
    assert specials == {
        "R": "h0", "X": "g1", "Y1": "h6", "Y2": "a13",
        "N": "cc6", "Z2": "g11", "Z1": "h12",
    }


def test_translation_has_order_m():
    tq, _ = build_I_ar_quiver(7)
    for v in tq.vertices:
        w = v
        for _ in range(7):
            w = tq.tau[w]
        assert w == v
    orbit = {v: 0 for v in tq.vertices}
    assert len(orbit) == 63


def test_named_specials_are_distinct():
    tq, specials = build_I_ar_quiver(31)
    assert len(specials) == 9
    assert len(set(specials.values())) == 9
    assert all(v in tq.vertices for v in specials.values())


def test_invalid_parameter_rejected():
    with pytest.raises(GroupParamError):
        build_I_ar_quiver(9)


def test_quiver_json_roundtrip():
    tq, _ = build_I_ar_quiver(7)
    again = TranslationQuiver.from_json(tq.to_json())
    assert again.vertices == tq.vertices
    assert sorted(again.arrows) == sorted(tq.arrows)
    assert again.tau == tq.tau


def test_validation_rejects_broken_structures():
    good = {
        "vertices": ["u0", "v1"],
        "arrows": [["u0", "v1"], ["v1", "u0"]],
        "tau": {"u0": "u0", "v1": "v1"},
        "display": {"u0": [0, 0], "v1": [0, 1]},
    }
    TranslationQuiver.from_jsonable(good)
    bad_tau = dict(good, tau={"u0": "u0", "v1": "u0"})
    with pytest.raises(TranslationQuiverError):
        TranslationQuiver.from_jsonable(bad_tau)
    bad_col = dict(good, display={"u0": [0, 0], "v1": [1, 0]})
    with pytest.raises(TranslationQuiverError):
        TranslationQuiver.from_jsonable(bad_col)
    bad_mesh = dict(good, arrows=[["u0", "v1"], ["u0", "v1"], ["v1", "u0"]])
    with pytest.raises(TranslationQuiverError):
        TranslationQuiver.from_jsonable(bad_mesh)


# ----------------------------------------------------------------- counts --

def _totals(tq, specials, start):
    result = knit_counts(tq, specials.values(), specials[start])
    names = {vertex: name for name, vertex in specials.items()}
    return {names[v]: total for v, (total, _) in result.items() if v in names and total}


def test_totals_out_of_every_special_of_m7():
    tq, specials = build_I_ar_quiver(7)
    for start, expected in I7_TOTALS.items():
        assert _totals(tq, specials, start) == expected, start


def test_totals_out_of_m31():
    tq, specials = build_I_ar_quiver(31)
    assert _totals(tq, specials, "M") == {"A4": 1, "B2": 1, "C": 1}
    assert _totals(tq, specials, "R") == I1_R_TOTALS
    assert _totals(tq, specials, "A1") == {"A2": 1, "R": 1}


def test_per_step_history_sums_to_totals():
    tq, specials = build_I_ar_quiver(7)
    result = knit_counts(tq, specials.values(), specials["N"])
    for total, history in result.values():
        assert history[0] in (0, 1)
        assert total == sum(history[1:])
        assert all(x >= 0 for x in history)


def test_start_must_be_special():
    tq, specials = build_I_ar_quiver(7)
    with pytest.raises(KnitInputError):
        knit_counts(tq, specials.values(), "h2")
    with pytest.raises(KnitInputError):
        knit_counts(tq, ["nope"], "nope")


# ------------------------------------------------------------------ grids --

def _value_at(trace, step, row):
    if step >= len(trace.cells):
        return 0  # the run terminated; later layers are identically zero
    for cell_row, _, value in trace.cells[step]:
        if cell_row == row:
            return value
    raise AssertionError(f"no vertex at display row {row}, step {step}")


def _check_grid(trace, grid):
    for row, step, token in iter_grid(grid):
        expected = 0 if token == "." else int(token.strip("[]()"))
        assert _value_at(trace, step, row) == expected, (row, step, token)


@pytest.mark.parametrize("start", sorted(I7_GRIDS))
def test_printed_grids_of_m7(start):
    tq, specials = build_I_ar_quiver(7)
    trace = grid_trace(tq, specials.values(), specials[start])
    _check_grid(trace, I7_GRIDS[start])


def test_printed_grid_of_the_ring_run_on_m31():
    tq, specials = build_I_ar_quiver(31)
    trace = grid_trace(tq, specials.values(), specials["R"])
    _check_grid(trace, GRID_I1_R)


@pytest.mark.parametrize("b", [3, 4, 5])
def test_symbolic_grids_of_the_m_run(b):
    gid = group_for_b("I", 1, b)
    tq, specials = build_I_ar_quiver(gid.params[0])
    trace = grid_trace(tq, specials.values(), specials["M"])
    period = tq.period
    for window in SYMBOLIC_M_WINDOWS:
        for row, (first, stride, tokens) in window["rows"].items():
            for i, token in enumerate(tokens.split()):
                step = period + window["offset"] + first + stride * i
                expected = parse_symbol(token, b)
                assert _value_at(trace, step, row) == expected, (b, row, step, token)
    assert _totals(tq, specials, "M") == {k: v for k, v in m_run_totals(b).items() if v}


def test_trace_renders_circled_specials():
    tq, specials = build_I_ar_quiver(7)
    text = grid_trace(tq, specials.values(), specials["R"]).render()
    assert "(1)" in text  # the start itself and the absorbed value at X
    assert len(text.splitlines()) == 8


def test_trace_step_zero_is_a_single_one():
    tq, specials = build_I_ar_quiver(7)
    trace = grid_trace(tq, specials.values(), specials["Y1"])
    values = [value for _, _, value in trace.cells[0]]
    assert sorted(values) == [0, 1] or values == [1]


# ------------------------------------------------------------ cross-check --

def test_cross_check_supported_cases():
    assert cross_check(GroupId("I", (7,)))
    assert cross_check(GroupId("I", (31,)))
    assert cross_check(GroupId("I", (61,)))


def test_cross_check_unsupported_residue():
    assert not supported_cross_check(GroupId("I", (11,)))
    with pytest.raises(GroupParamError):
        cross_check(GroupId("I", (11,)))


# -------------------------------------------------------- non-termination --

def wild_star_quiver(copies=2):
    """Star-shaped diagram with doubled arrows; the counting wave grows
    without bound, so only the step cap stops it."""
    period = 2 * copies
    vertices = []
    display = {}
    arrows = []
    tau = {}
    tips = [f"t{i}" for i in range(4)]
    for col in range(0, period, 2):
        for row, tip in enumerate(tips):
            vertices.append(f"{tip}c{col}")
            display[f"{tip}c{col}"] = (row, col)
            tau[f"{tip}c{col}"] = f"{tip}c{(col - 2) % period}"
    for col in range(1, period, 2):
        vertices.append(f"mc{col}")
        display[f"mc{col}"] = (4, col)
        tau[f"mc{col}"] = f"mc{(col - 2) % period}"
    for col in range(0, period, 2):
        for tip in tips:
            for _ in range(2):
                arrows.append((f"{tip}c{col}", f"mc{(col + 1) % period}"))
                arrows.append((f"mc{(col + 1) % period}", f"{tip}c{(col + 2) % period}"))
    return TranslationQuiver(vertices, arrows, tau, display)


def test_nontermination_guard_fires():
    tq = wild_star_quiver()
    with pytest.raises(NonTerminationError) as err:
        knit_counts(tq, ["t0c0"], "t0c0", max_steps=50)
    assert len(err.value.layers) == 51  # partial trace: steps 0..50
    assert any(err.value.layers[-1].values())


def test_wild_quiver_is_still_a_valid_translation_quiver():
    tq = wild_star_quiver()
    assert tq.period == 4
    assert len(tq.vertices) == 10
