"""The 2-approximation certifier: frozen outputs on the named graphs, the
sandwich against the exact solver, and trace replay."""

import random
from itertools import combinations

import pytest

from tuza.certifier import CertificationError, certify, find_reduction
from tuza.graphs import Graph, cocycle_matroid, triads
from tuza.hypergraph import TriangleHypergraph, validate_crown
from tuza.solver import nu, tau


def k4() -> Graph:
    pairs = combinations(range(4), 2)
    return Graph(4, tuple((i, u, v) for i, (u, v) in enumerate(pairs)))


def prism() -> Graph:
    return Graph(6, ((0, 0, 1), (1, 1, 2), (2, 0, 2), (3, 3, 4), (4, 4, 5),
                     (5, 3, 5), (6, 0, 3), (7, 1, 4), (8, 2, 5)))


def cube() -> Graph:
    edges = []
    for u in range(8):
        for b in (1, 2, 4):
            if u < u ^ b:
                edges.append((len(edges), u, u ^ b))
    return Graph(8, tuple(edges))


def random_multigraph(rng: random.Random):
    nv = rng.randint(2, 9)
    pairs = [(rng.randrange(v), v) for v in range(1, nv)]
    for _ in range(rng.randint(0, 10)):
        u, v = rng.randrange(nv), rng.randrange(nv)
        pairs.append((u, v))
    g = Graph(nv, tuple((i, u, v) for i, (u, v) in enumerate(pairs)))
    return g, {e: rng.randint(0, 3) for e in g.edge_ids()}


def test_tree_yields_the_empty_certificate():
    cert = certify(Graph(3, ((0, 0, 1), (1, 1, 2))))
    assert cert.hitting.points == ()
    assert cert.packing.triangles == ()
    assert cert.guarantee == (0, 0)


def test_three_bond():
    g = Graph(2, ((0, 0, 1), (1, 0, 1), (2, 0, 1)))
    cert = certify(g)
    assert cert.hitting.points == (0,)
    assert cert.guarantee == (1, 2)
    assert cert.packing.triangles == (((0, 1, 2), 1),)
    # under weights (2, 1, 1) the hitting set moves to a cheapest edge
    cert = certify(g, {0: 2, 1: 1, 2: 1})
    assert cert.hitting.points == (1,)
    assert cert.guarantee == (1, 2)


def test_zero_weights_cost_nothing_to_hit():
    # the triad is still there, so R stays nonempty, but at weight zero
    g = Graph(2, ((0, 0, 1), (1, 0, 1), (2, 0, 1)))
    cert = certify(g, {0: 0, 1: 0, 2: 0})
    assert cert.guarantee == (0, 0)
    assert cert.hitting.weight == 0
    assert cert.packing.triangles == ()
    assert set(cert.hitting.points) & {0, 1, 2}


def test_complete_graph_guarantee():
    cert = certify(k4())
    assert cert.guarantee == (2, 2)
    assert cert.hitting.weight == 2
    assert cert.packing.objective == 1
    assert "R4-crown-odd" in {step.rule for step in cert.trace}


def test_prism_guarantee():
    cert = certify(prism())
    assert cert.guarantee == (3, 4)
    assert "R4-crown-odd" in {step.rule for step in cert.trace}


def test_cube_guarantee():
    cert = certify(cube())
    assert cert.guarantee == (4, 8)
    assert "R4-crown-even" in {step.rule for step in cert.trace}


def test_cube_crown_is_even():
    g = cube()
    h = TriangleHypergraph(tuple(b.eids for b in triads(g)))
    crown = find_reduction(g)
    assert validate_crown(h, crown)
    assert len(crown.edges) % 2 == 0


def test_weight_validation():
    g = Graph(2, ((0, 0, 1), (1, 0, 1), (2, 0, 1)))
    with pytest.raises(ValueError):
        certify(g, {0: 1, 1: 1, 2: -1})
    with pytest.raises(ValueError):
        certify(g, {0: 1, 1: 1})
    with pytest.raises(ValueError):
        certify(g, {0: 1.5, 1: 1, 2: 1})


def test_json_shape():
    rec = certify(k4()).to_json()
    assert set(rec) == {"hitting", "packing", "guarantee", "trace"}
    assert set(rec["guarantee"]) == {"wR", "twoNu"}
    assert rec["guarantee"]["wR"] <= rec["guarantee"]["twoNu"]
    assert all(len(t) == 3 for t in rec["packing"])
    assert all(set(step) == {"rule", "elements", "deltas"} for step in rec["trace"])


def test_certificates_sandwich_the_exact_optimum():
    rng = random.Random(0xC0DA)
    solved = 0
    for _ in range(400):
        g, w = random_multigraph(rng)
        cert = certify(g, w)
        wr, two_nu = cert.guarantee
        assert wr == cert.hitting.weight
        assert two_nu == 2 * cert.packing.objective
        assert wr <= two_nu
        enc = cocycle_matroid(g)
        mw = enc.weighted_matroid(w)
        rn = nu(mw)
        rt = tau(mw)
        assert rn.status == "optimal" and rt.status == "optimal"
        assert cert.packing.objective <= rn.optimum
        assert rt.optimum <= cert.hitting.weight <= 2 * rn.optimum
        solved += 1
    assert solved == 400


def test_replay_reproduces_the_run():
    rng = random.Random(0xF1DE)
    for _ in range(60):
        g, w = random_multigraph(rng)
        first = certify(g, w)
        again = certify(g, w, script=first.trace)
        assert again == first


def test_replay_rejects_a_foreign_script():
    bond = Graph(2, ((0, 0, 1), (1, 0, 1), (2, 0, 1)))
    foreign = certify(bond).trace
    with pytest.raises(CertificationError):
        certify(k4(), script=foreign)
    good = certify(k4()).trace
    with pytest.raises(CertificationError):
        certify(k4(), script=good[:-1])
