"""Verification campaigns: exhaustive and sampled sweeps that recompute
triangle packing and hitting numbers, check them against the 2 and 66/23
ratio bounds, and emit deterministic JSON reports.

A report separates a canonical section (byte-identical for a fixed seed
and tool version; no timestamps, no wall-clock data) from a runtime
section (timings), so reports diff cleanly in CI.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from . import __version__
from .certifier import certify
from .graphs import Graph, cocycle_matroid, connected_components
from .matroid import (
    BinaryMatroid,
    UnsupportedDimension,
    canonical_form,
    contains_fano,
    critical_number,
    unit_weights,
)
from .solver import nu, tau

# Exact rational ceiling for fano-free instances; never compared in floats.
HAXELL_BOUND = Fraction(66, 23)

# Default per-solve node budget for campaign instances; hitting it marks
# the instance unsolved rather than guessing.
CAMPAIGN_NODE_LIMIT = 5_000_000

RANK4_SUBSETS = 1 << 15


@dataclass(frozen=True)
class CampaignReport:
    """Outcome of one campaign.

    results maps instance keys to per-instance records; violations is empty
    exactly when every solved instance satisfied the campaign predicates.
    runtime holds wall-clock data and is excluded from canonical_bytes.
    """

    campaign: str
    instances: int
    results: dict[str, dict]
    violations: tuple[dict, ...]
    unsolved: int
    version: str
    runtime: dict

    def canonical(self) -> dict:
        return {
            "campaign": self.campaign,
            "instances": self.instances,
            "results": self.results,
            "violations": list(self.violations),
            "unsolved": self.unsolved,
            "version": self.version,
        }

    def canonical_bytes(self) -> bytes:
        return json.dumps(self.canonical(), sort_keys=True, separators=(",", ":")).encode()

    def to_json(self) -> dict:
        return {"canonical": self.canonical(), "runtime": self.runtime}

    def summary(self) -> str:
        return (
            f"{self.campaign}: {self.instances} instances, "
            f"{len(self.results)} records, {len(self.violations)} violations, "
            f"{self.unsolved} unsolved"
        )


def predicate_violations(nu_val: int, tau_val: int, fano: bool) -> list[str]:
    """Which of the three ratio predicates fail on exact values.

    Weak duality nu <= tau <= 3 nu holds unconditionally; the 2 nu and
    66/23 nu ceilings apply only to instances with no Fano restriction.
    """
    out = []
    if not nu_val <= tau_val <= 3 * nu_val:
        out.append("weak-duality")
    if not fano:
        if tau_val > 2 * nu_val:
            out.append("tuza")
        if nu_val > 0 and Fraction(tau_val, nu_val) > HAXELL_BOUND:
            out.append("haxell")
    return out


def ratio_check(m: BinaryMatroid, *, node_limit: int = CAMPAIGN_NODE_LIMIT) -> dict:
    """Solve one matroid exactly and test it against the ratio bounds.

    Returns a record with nu, tau, the exact ratio as a reduced pair,
    the Fano-restriction flag, the critical number, and the violated
    predicates.  A solver budget miss yields status "unsolved" and no
    predicate claims.
    """
    mw = unit_weights(m)
    rn = nu(mw, node_limit=node_limit)
    rt = tau(mw, node_limit=node_limit)
    fano_flag = contains_fano(m) is not None
    try:
        chi = critical_number(m)
    except UnsupportedDimension:
        chi = None
    rec = {
        "size": m.size,
        "nu": rn.optimum,
        "tau": rt.optimum,
        "fano": fano_flag,
        "chi": chi,
        "ratio": None,
        "status": "ok",
        "violations": [],
    }
    if rn.status != "optimal" or rt.status != "optimal":
        rec["status"] = "unsolved"
        return rec
    if rn.optimum > 0:
        f = Fraction(rt.optimum, rn.optimum)
        rec["ratio"] = [f.numerator, f.denominator]
    rec["violations"] = predicate_violations(rn.optimum, rt.optimum, fano_flag)
    return rec


def _mask_matroid(mask: int) -> BinaryMatroid:
    return BinaryMatroid(4, tuple(p for p in range(1, 16) if (mask >> (p - 1)) & 1))


def _rank4_shard(shard_bit: int) -> dict[str, list]:
    """Classify one half of the subset space (split on point-1 membership).

    Returns canonical form -> [labeled count, smallest member mask].
    """
    out: dict[str, list] = {}
    for mask in range(RANK4_SUBSETS):
        if mask & 1 != shard_bit:
            continue
        key = canonical_form(_mask_matroid(mask))
        ent = out.get(key)
        if ent is None:
            out[key] = [1, mask]
        else:
            ent[0] += 1
    return out


def enumerate_rank4_campaign(
    *, jobs: int = 1, node_limit: int = CAMPAIGN_NODE_LIMIT
) -> CampaignReport:
    """Exhaust all 2^15 subsets of the rank-4 geometry up to isomorphism.

    Each isomorphism class is solved once on its smallest representative;
    per-class records carry the labeled class size.  The subset space is
    split into two shards by membership of point 1 so the classification
    can run in parallel; shard merge order is fixed, so the report does
    not depend on the job count.
    """
    t0 = time.perf_counter()
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=2) as ex:
            parts = list(ex.map(_rank4_shard, (0, 1)))
    else:
        parts = [_rank4_shard(0), _rank4_shard(1)]
    merged: dict[str, list] = {}
    for part in parts:
        for key, (count, rep) in part.items():
            ent = merged.get(key)
            if ent is None:
                merged[key] = [count, rep]
            else:
                ent[0] += count
                ent[1] = min(ent[1], rep)
    total = sum(count for count, _ in merged.values())
    if total != RANK4_SUBSETS:
        raise AssertionError(f"classification lost subsets: {total}")
    results: dict[str, dict] = {}
    violations: list[dict] = []
    unsolved = 0
    for key in sorted(merged):
        count, rep = merged[key]
        rec = ratio_check(_mask_matroid(rep), node_limit=node_limit)
        rec["count"] = count
        results[key] = rec
        if rec["status"] == "unsolved":
            unsolved += 1
        for kind in rec["violations"]:
            violations.append({"instance": key, "kind": kind})
    return CampaignReport(
        campaign="rank4-exhaustive",
        instances=RANK4_SUBSETS,
        results=results,
        violations=tuple(violations),
        unsolved=unsolved,
        version=__version__,
        runtime={"seconds": round(time.perf_counter() - t0, 3), "jobs": jobs},
    )


def sample_rank5_campaign(
    count: int, seed: int, *, node_limit: int = CAMPAIGN_NODE_LIMIT
) -> CampaignReport:
    """Seeded uniform samples from the rank-5 geometry with at most 14 points.

    Sizes are uniform on 0..14 and point sets uniform for the size; the
    record stream is a pure function of (count, seed).
    """
    t0 = time.perf_counter()
    rng = random.Random(seed)
    results: dict[str, dict] = {}
    violations: list[dict] = []
    unsolved = 0
    for i in range(count):
        size = rng.randint(0, 14)
        pts = tuple(sorted(rng.sample(range(1, 32), size)))
        key = f"sample-{i:04d}"
        rec = ratio_check(BinaryMatroid(5, pts), node_limit=node_limit)
        rec["points"] = list(pts)
        results[key] = rec
        if rec["status"] == "unsolved":
            unsolved += 1
        for kind in rec["violations"]:
            violations.append({"instance": key, "kind": kind})
    return CampaignReport(
        campaign="rank5-sample",
        instances=count,
        results=results,
        violations=tuple(violations),
        unsolved=unsolved,
        version=__version__,
        runtime={"seconds": round(time.perf_counter() - t0, 3), "seed": seed},
    )


def connected_graphs(max_vertices: int) -> list[Graph]:
    """All unlabeled connected simple graphs with 1..max_vertices vertices.

    Enumerated as vertex-permutation orbits of edge-subset masks, smallest
    representative first; deterministic order, exhaustive for each size.
    """
    if not 1 <= max_vertices <= 8:
        raise ValueError(f"exhaustive enumeration supports 1..8 vertices, got {max_vertices!r}")
    out = []
    for k in range(1, max_vertices + 1):
        slots = list(combinations(range(k), 2))
        nslots = len(slots)
        slot_idx = {s: i for i, s in enumerate(slots)}
        perms = [
            tuple(slot_idx[tuple(sorted((vp[u], vp[v])))] for u, v in slots)
            for vp in permutations(range(k))
        ]
        visited = bytearray(1 << nslots)
        for mask in range(1 << nslots):
            if visited[mask]:
                continue
            for sp in perms:
                m2 = 0
                for i in range(nslots):
                    if (mask >> i) & 1:
                        m2 |= 1 << sp[i]
                visited[m2] = 1
            chosen = [j for j in range(nslots) if (mask >> j) & 1]
            g = Graph(k, tuple((i, *slots[j]) for i, j in enumerate(chosen)))
            if len(connected_components(g)) == 1:
                out.append(g)
    return out


def random_weighted_graphs(
    count: int,
    seed: int,
    *,
    max_vertices: int = 12,
    max_extra: int = 12,
    max_weight: int = 3,
) -> list[tuple[Graph, dict[int, int]]]:
    """Seeded connected multigraphs: a random spanning tree plus extra
    edges (loops and parallels allowed) with weights in 0..max_weight."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        nv = rng.randint(2, max_vertices)
        pairs = [(rng.randrange(v), v) for v in range(1, nv)]
        for _ in range(rng.randint(0, max_extra)):
            u, v = rng.randrange(nv), rng.randrange(nv)
            pairs.append((min(u, v), max(u, v)))
        g = Graph(nv, tuple((i, u, v) for i, (u, v) in enumerate(pairs)))
        out.append((g, {i: rng.randint(0, max_weight) for i in range(len(pairs))}))
    return out


def _cographic_record(g: Graph, weights: dict[int, int], node_limit: int) -> dict:
    """Certify one graph and cross-check against the exact solver.

    The certificate is produced and verified unconditionally; exact values
    and predicate checks apply when the solver finishes in budget.
    """
    cert = certify(g, weights)
    rec = {
        "vertices": g.nv,
        "edges": g.nedges,
        "wR": cert.guarantee[0],
        "twoNu": cert.guarantee[1],
        "nu": None,
        "tau": None,
        "fano": False,
        "ratio": None,
        "status": "ok",
        "violations": [],
    }
    enc = cocycle_matroid(g)
    mw = enc.weighted_matroid(weights)
    rn = nu(mw, node_limit=node_limit)
    rt = tau(mw, node_limit=node_limit)
    rec["fano"] = contains_fano(enc.matroid) is not None
    rec["nu"], rec["tau"] = rn.optimum, rt.optimum
    if rn.status != "optimal" or rt.status != "optimal":
        rec["status"] = "unsolved"
        return rec
    if cert.packing.objective > rn.optimum or cert.hitting.weight < rt.optimum:
        rec["violations"].append("certificate-sandwich")
    if rn.optimum > 0:
        f = Fraction(rt.optimum, rn.optimum)
        rec["ratio"] = [f.numerator, f.denominator]
    rec["violations"].extend(predicate_violations(rn.optimum, rt.optimum, rec["fano"]))
    return rec


def cographic_campaign(
    *,
    max_vertices: int | None = 6,
    random_count: int = 0,
    seed: int = 0,
    graphs: list[tuple[Graph, dict[int, int]]] | None = None,
    node_limit: int = CAMPAIGN_NODE_LIMIT,
) -> CampaignReport:
    """Certify cographic instances and compare with exact optima.

    Sources combine: all connected simple graphs with up to max_vertices
    vertices at unit weights (None skips), random_count seeded weighted
    multigraphs, and any explicitly supplied (graph, weights) pairs.
    """
    t0 = time.perf_counter()
    work: list[tuple[str, Graph, dict[int, int]]] = []
    if max_vertices is not None:
        for i, g in enumerate(connected_graphs(max_vertices)):
            work.append((f"conn-{g.nv}v-{i:04d}", g, {e: 1 for e in g.edge_ids()}))
    for i, (g, w) in enumerate(random_weighted_graphs(random_count, seed)):
        work.append((f"rand-{i:04d}", g, w))
    for i, (g, w) in enumerate(graphs or []):
        work.append((f"given-{i:04d}", g, w))
    results: dict[str, dict] = {}
    violations: list[dict] = []
    unsolved = 0
    for key, g, w in work:
        rec = _cographic_record(g, w, node_limit)
        results[key] = rec
        if rec["status"] == "unsolved":
            unsolved += 1
        for kind in rec["violations"]:
            violations.append({"instance": key, "kind": kind})
    return CampaignReport(
        campaign="cographic",
        instances=len(work),
        results=results,
        violations=tuple(violations),
        unsolved=unsolved,
        version=__version__,
        runtime={"seconds": round(time.perf_counter() - t0, 3), "seed": seed},
    )
