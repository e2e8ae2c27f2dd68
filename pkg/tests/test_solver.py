"""Branch-and-bound solver checked against exhaustive oracles and frozen
optima for the standard geometries."""

import random

import pytest

from tuza.matroid import BinaryMatroid, parse_matroid, triangles, unit_weights
from tuza.matroid import WeightedMatroid
from tuza.solver import (
    ORACLE_TRIANGLE_LIMIT,
    nu,
    nu_oracle,
    tau,
    tau_oracle,
    verify_hitting,
    verify_packing,
)


def pg(n):
    return BinaryMatroid(n, tuple(range(1, 1 << n)))


def small_instances(count, seed):
    """Weighted dim-4 instances inside the oracle guards."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.randint(0, 11)
        m = BinaryMatroid(4, tuple(sorted(rng.sample(range(1, 16), k))))
        if len(triangles(m)) > ORACLE_TRIANGLE_LIMIT:
            continue
        w = {p: rng.randint(0, 2) for p in m.points}
        if sum(w.values()) > 24:
            continue
        out.append(WeightedMatroid(m, w))
    return out


def test_empty_and_triangle_free():
    for m in (BinaryMatroid(4, ()), BinaryMatroid(4, (1, 2, 4, 8))):
        rn = nu(unit_weights(m))
        rt = tau(unit_weights(m))
        assert (rn.optimum, rt.optimum) == (0, 0)
        assert rn.status == rt.status == "optimal"
        assert rt.solution.points == ()


def test_fano_frozen():
    mw = unit_weights(BinaryMatroid(3, tuple(range(1, 8))))
    rn, rt = nu(mw), tau(mw)
    assert rn.optimum == 1
    assert rt.optimum == 3
    assert verify_packing(mw, rn.solution)
    assert verify_hitting(mw.matroid, rt.solution.points)


def test_rank4_geometry_frozen():
    mw = unit_weights(pg(4))
    rn, rt = nu(mw), tau(mw)
    assert (rn.optimum, rt.optimum) == (5, 7)
    assert verify_packing(mw, rn.solution)
    assert verify_hitting(mw.matroid, rt.solution.points)


def test_doubled_weights_double_both_numbers():
    m = pg(4)
    unit = unit_weights(m)
    doubled = WeightedMatroid(m, {p: 2 for p in m.points})
    assert nu(doubled).optimum == 2 * nu(unit).optimum
    assert tau(doubled).optimum == 2 * tau(unit).optimum


def test_zero_weight_points_block_packing_and_hitting():
    # zeroing one point of the only triangle kills it
    m = BinaryMatroid(2, (1, 2, 3))
    mw = WeightedMatroid(m, {1: 0, 2: 1, 3: 1})
    assert nu(mw).optimum == 0
    assert tau(mw).optimum == 0  # the zero-weight point hits for free


def test_solver_matches_oracles_on_300_instances():
    checked = 0
    for mw in small_instances(300, 12021):
        rn, rt = nu(mw), tau(mw)
        assert rn.status == rt.status == "optimal"
        assert rn.optimum == nu_oracle(mw)
        assert rt.optimum == tau_oracle(mw)
        assert verify_packing(mw, rn.solution)
        assert verify_hitting(mw.matroid, rt.solution.points)
        assert sum(mw.weights[p] for p in rt.solution.points) == rt.optimum
        assert rn.optimum <= rt.optimum <= 3 * rn.optimum
        checked += 1
    assert checked == 300


def test_triangle_cap_reports_unsolved():
    r = nu(unit_weights(pg(4)), triangle_cap=10)
    assert r.status == "unsolved"
    assert r.optimum is None
    assert r.solution is None


def test_node_limit_reports_unsolved():
    r = tau(unit_weights(pg(4)), node_limit=1)
    assert r.status == "unsolved"


def test_report_json_shape():
    r = tau(unit_weights(BinaryMatroid(2, (1, 2, 3))))
    j = r.to_json()
    assert set(j) == {"optimum", "solution", "nodes", "status"}
    assert j["optimum"] == 1


def test_oracle_guards():
    mw = unit_weights(pg(4))
    with pytest.raises(ValueError):
        nu_oracle(mw)
    with pytest.raises(ValueError):
        tau_oracle(mw)


def test_weighted_hitting_prefers_cheap_points():
    text = "n 2\n1\n2\n3\nw 1 5\nw 2 1\nw 3 5\n"
    mw = parse_matroid(text)
    r = tau(mw)
    assert r.optimum == 1
    assert r.solution.points == (2,)
