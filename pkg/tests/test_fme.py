import itertools
import json
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcorr.errors import EmptyInterval, Infeasible, Unbounded, UnknownName, VariableNotFound
from qcorr.fme import (LinIneq, LinSystem, build_named_system, eliminate_all, equivalent, expand_abs,
                       fm_eliminate, implies, implies_all, is_feasible, lift_witness, maximize,
                       raw_named_ineqs, remove_redundant)
from qcorr.fme import simplex
from qcorr.fme.named import AUX


def ineq(coeffs, rhs):
    return LinIneq.make(coeffs, rhs)


def box(names):
    return [ineq({v: 1}, 1) for v in names] + [ineq({v: -1}, 0) for v in names]


# ---- canonical form -------------------------------------------------------

def test_canonical_scaling_and_idempotence():
    q = ineq({"x": F(2, 3), "y": F(-4, 3)}, F(2))
    assert q.coeffs == (("x", F(1)), ("y", F(-2)))
    assert q.rhs == 3
    assert q.canonical() == q
    assert ineq({"x": -2}, 4).coeffs == (("x", F(-1)),)  # only positive scaling
    assert ineq({"x": 0, "y": 1}, 1).coeffs == (("y", F(1)),)


@settings(max_examples=200, deadline=None)
@given(st.dictionaries(st.sampled_from("abcd"), st.fractions(-5, 5, max_denominator=7), min_size=1),
       st.fractions(-5, 5, max_denominator=7))
def test_canonical_idempotent_property(coeffs, rhs):
    q = ineq(coeffs, rhs)
    assert q.canonical() == q
    point = {k: F(1, 3) for k in "abcd"}
    orig = sum(v * point[k] for k, v in coeffs.items()) <= rhs
    assert q.holds(point) == orig


def test_system_json_roundtrip_and_validation():
    S = LinSystem(("x", "y"), (ineq({"x": 1, "y": -1}, F(1, 2)), ineq({"x": -1}, 0)))
    data = json.loads(json.dumps(S.to_json()))
    assert data["ineqs"][0]["rhs"] in ("0", "1/2", "1")
    assert LinSystem.from_json(data) == S
    with pytest.raises(ValueError):
        LinSystem(("x",), (ineq({"z": 1}, 0),))


def test_expand_abs_counts():
    assert len(expand_abs([({"a": 1}, 0)], None, 1)) == 2
    assert len(expand_abs([({"a": 1}, 0), ({"b": 1}, 0)], None, 1)) == 4
    assert len(expand_abs([({"a": 1}, 0), ({"b": 1}, 0), ({"c": 1}, 0)], None, 2)) == 8


# ---- named systems, against an independent expansion oracle -------------------

def _oracle_canon(vec):
    """Integer-primitive form of a vector (coeffs..., rhs) by positive scaling."""
    den = math.lcm(*(F(v).denominator for v in vec))
    ints = [int(F(v) * den) for v in vec]
    g = math.gcd(*ints) or 1
    return tuple(x // g for x in ints)


def _oracle_abs_rows(terms, rhs, names):
    """Rows (coeffs..., rhs) for sum_k |t_k| <= rhs, t_k = (dict, const)."""
    rows = set()
    for signs in itertools.product((1, -1), repeat=len(terms)):
        vec = [F(0)] * len(names)
        const = F(0)
        for s, (coeffs, c) in zip(signs, terms):
            for k, v in coeffs.items():
                vec[names.index(k)] += s * v
            const += s * c
        if any(vec):
            rows.add(_oracle_canon(vec + [rhs - const]))
        elif rhs - const < 0:
            rows.add(tuple([0] * len(names) + [-1]))
    return rows


def _rows_of(S):
    return {_oracle_canon([q.coeff(v) for v in S.variables] + [q.rhs]) for q in S.ineqs}


def _oracle_box(names):
    rows = set()
    for k in range(len(names)):
        e = [0] * len(names)
        e[k] = 1
        rows.add(tuple(e + [1]))
        e[k] = -1
        rows.add(tuple(e + [0]))
    return rows


NAMES9 = [f"c{x}{y}" for x in (1, 2, 3) for y in (1, 2, 3)]


def _tlm_oracle():
    rows = _oracle_box(NAMES9)
    for x, xp, y, yp in itertools.product((1, 2, 3), repeat=4):
        t1 = ({f"c{x}{y}": F(1)}, 0)
        t1[0][f"c{xp}{y}"] = t1[0].get(f"c{xp}{y}", 0) - 1
        t2 = ({}, -1)
        for k in (f"c{x}{yp}", f"c{xp}{yp}"):
            t2[0][k] = t2[0].get(k, 0) + 1
        t1 = ({k: v for k, v in t1[0].items() if v}, 0)
        rows |= _oracle_abs_rows([t1, t2], 1, NAMES9)
    return rows


def test_tlm_full_matches_oracle():
    S = build_named_system("tlm_full")
    assert S.variables == tuple(NAMES9)
    assert _rows_of(S) == _tlm_oracle()
    assert len(S) == 90


def test_cor33_angles_matches_oracle():
    S = build_named_system("cor33_angles")
    names = NAMES9 + list(AUX)
    assert S.variables == tuple(names)
    rows = _oracle_box(names)

    def tri(a, b, c):
        out = set()
        for sgn in ((1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
            vec = [0] * len(names)
            for s, v in zip(sgn, (a, b, c)):
                vec[names.index(v)] = s
            out.add(_oracle_canon(vec + [0]))
        vec = [0] * len(names)
        for v in (a, b, c):
            vec[names.index(v)] = 1
        out.add(_oracle_canon(vec + [2]))
        return out

    rows |= tri("alpha", "beta", "gamma")
    for y in (1, 2, 3):
        rows |= tri("alpha", f"c1{y}", f"c2{y}")
        rows |= tri("beta", f"c1{y}", f"c3{y}")
        rows |= tri("gamma", f"c2{y}", f"c3{y}")
    assert _rows_of(S) == rows
    assert len(S) == 64


def test_cor2m_two_settings():
    S = build_named_system("cor2m", 2)
    assert S.variables == ("c11", "c12", "c21", "c22")
    assert len(S) == 16
    # Tsirelson point satisfies, PR point violates
    ts = {"c11": F(1, 4), "c12": F(1, 4), "c21": F(1, 4), "c22": F(3, 4)}
    pr = {"c11": F(0), "c12": F(0), "c21": F(0), "c22": F(1)}
    assert S.satisfied_by(ts)
    assert not S.satisfied_by(pr)


def test_lemma2_raw_and_canonical_sizes():
    variables, raw = raw_named_ineqs("lemma2")
    assert len(variables) == 9
    assert len(build_named_system("lemma2")) <= len(raw)


def test_unknown_name():
    with pytest.raises(UnknownName):
        build_named_system("nope")


# ---- elimination -------------------------------------------------------------

def test_fm_simple():
    S = LinSystem(("x", "y"), (ineq({"x": 1, "y": -1}, 0), ineq({"y": 1}, 1)))
    T = fm_eliminate(S, "y")
    assert T.variables == ("x",)
    assert T.ineqs == (ineq({"x": 1}, 1),)
    with pytest.raises(VariableNotFound):
        fm_eliminate(S, "z")


def test_fm_alpha_step():
    # |b - g| <= a <= 1 - |b + g - 1|  eliminated over a
    names = ("a", "b", "g")
    rows = expand_abs([({"b": 1, "g": -1}, 0)], ({"a": -1}, 0), 0)
    rows += expand_abs([({"b": 1, "g": 1}, -1)], ({"a": 1}, 0), 1)
    T = fm_eliminate(LinSystem(names, tuple(rows)), "a")
    expected = LinSystem(("b", "g"), tuple(expand_abs([({"b": 1, "g": -1}, 0), ({"b": 1, "g": 1}, -1)],
                                                      None, 1)))
    assert equivalent(T, expected)


def test_implies_examples():
    S = LinSystem(("c11", "c21"), tuple(box(["c11", "c21"])))
    for q in expand_abs([({"c11": 1, "c21": -1}, 0)], None, 1):
        assert implies(S, q)
    assert not implies(LinSystem(("x",), (ineq({"x": 1}, 1), ineq({"x": -1}, 0))), ineq({"x": 1}, F(1, 2)))
    with pytest.raises(Unbounded):
        implies(LinSystem(("x",), (ineq({"x": 1}, 1),)), ineq({"x": -1}, 0))
    with pytest.raises(Infeasible):
        implies(LinSystem(("x",), (ineq({"x": 1}, -1), ineq({"x": -1}, 0))), ineq({"x": 1}, 5))


def test_boxes_imply_gamma_cancelled_inequalities():
    names = NAMES9
    S = LinSystem(tuple(names), tuple(box(names)))
    for y, y1 in itertools.product((1, 2, 3), repeat=2):
        sums = expand_abs([({f"c1{y1}": 1, f"c2{y1}": 1}, -1), ({f"c1{y}": 1, f"c2{y}": 1}, -1)], None, 2)
        diffs = expand_abs([({f"c1{y1}": 1, f"c2{y1}": -1}, 0), ({f"c1{y}": 1, f"c2{y}": -1}, 0)], None, 2)
        assert all(implies(S, q) for q in sums + diffs)


def test_remove_redundant_examples():
    names = ("c11", "c21")
    S = LinSystem(names, tuple(box(names)) + tuple(expand_abs([({"c11": 1, "c21": -1}, 0)], None, 1)))
    assert remove_redundant(S) == LinSystem(names, tuple(box(names)))
    tri = LinSystem(("a", "b", "c"), tuple(expand_abs([({"b": 1, "c": -1}, 0)], ({"a": -1}, 0), 0))
                    + (ineq({"a": 1, "b": 1, "c": 1}, 2),))
    core = remove_redundant(tri)
    assert equivalent(core, tri)
    assert remove_redundant(core) == core
    with pytest.raises(Infeasible):
        remove_redundant(LinSystem(("x",), (ineq({"x": 1}, -1), ineq({"x": -1}, 0))))


def test_lift_examples():
    S = LinSystem(("x", "y"), (ineq({"x": 1, "y": -1}, 0), ineq({"y": 1}, 1)))
    assert lift_witness(S, ["y"], {"x": F(0)}) == {"y": F(1, 2)}
    with pytest.raises(EmptyInterval):
        lift_witness(S, ["y"], {"x": F(2)})
    C = build_named_system("cor33_angles")
    half = {v: F(1, 2) for v in NAMES9}
    assert lift_witness(C, list(AUX), half, reduce=True) == {a: F(1, 2) for a in AUX}


def test_lift_random_lemma2_points():
    S = build_named_system("cor33_angles")
    target = build_named_system("tlm_full")  # same solution set as lemma2 (checked in acceptance)
    chain = eliminate_all(S, AUX)
    rng = np.random.default_rng(12)
    lifted = 0
    while lifted < 500:
        point = {v: F(int(rng.integers(0, 13)), 12) for v in NAMES9}
        if not target.satisfied_by(point):
            continue
        values = lift_witness(S, list(AUX), point, chain=chain)
        full = dict(point, **values)
        assert S.satisfied_by(full)
        lifted += 1


small_systems = st.lists(
    st.tuples(st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.integers(-3, 3)),
    min_size=1, max_size=12)


@settings(max_examples=200, deadline=None)
@given(nvars=st.integers(1, 4), rows=small_systems,
       pt=st.lists(st.fractions(-3, 3, max_denominator=4), min_size=4, max_size=4))
def test_fm_projection_property(nvars, rows, pt):
    names = tuple(f"v{i}" for i in range(nvars + 1))
    S = LinSystem(names, tuple(ineq(dict(zip(names, a)), b) for a, b in rows))
    v = names[-1]
    T = fm_eliminate(S, v)
    point = dict(zip(names[:-1], pt))
    try:
        lift_witness(S, [v], point)
        lifted = True
    except EmptyInterval:
        lifted = False
    assert T.satisfied_by(point) == lifted
    # independent oracle: exact simplex feasibility with the free coordinates pinned
    pins = [ineq({k: 1}, x) for k, x in point.items()] + [ineq({k: -1}, -x) for k, x in point.items()]
    assert is_feasible(LinSystem(names, S.ineqs + tuple(pins))) == lifted


def test_elimination_order_independence():
    S = build_named_system("cor33_angles")
    reference = eliminate_all(S, AUX)[-1]
    for order in itertools.permutations(AUX):
        if order == AUX:
            continue
        out = eliminate_all(S, order)[-1]
        assert out == reference or equivalent(out, reference)


# ---- simplex ----------------------------------------------------------------

def test_simplex_against_scipy():
    linprog = pytest.importorskip("scipy.optimize").linprog
    rng = np.random.default_rng(99)
    for _ in range(150):
        m, n = int(rng.integers(1, 7)), int(rng.integers(1, 5))
        A = rng.integers(-3, 4, (m, n))
        b = rng.integers(-2, 5, m)
        c = rng.integers(-3, 4, n)
        status, value = simplex.maximize([[F(int(x)) for x in r] for r in A], [F(int(x)) for x in b],
                                         [F(int(x)) for x in c])
        ref = linprog(-c, A_ub=A, b_ub=b, bounds=[(None, None)] * n, method="highs")
        if ref.status == 2:
            assert status == simplex.INFEASIBLE
        elif ref.status == 3:
            assert status == simplex.UNBOUNDED
        else:
            assert status == simplex.OPTIMAL
            assert float(value) == pytest.approx(-ref.fun, abs=1e-7)


def test_maximize_named():
    S = LinSystem(("x", "y"), (ineq({"x": 1, "y": 1}, 1), ineq({"x": -1}, 0), ineq({"y": -1}, 0)))
    status, value = maximize(S, {"x": 2, "y": 1})
    assert status == simplex.OPTIMAL and value == 2
    assert implies_all(S, LinSystem(("x", "y"), (ineq({"x": 1}, 1),)))
