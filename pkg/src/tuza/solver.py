"""Exact solvers for triangle packing and triangle hitting.

Both run depth-first branch and bound over triangle-index bitsets, with
deterministic branching and tie-breaking so repeated runs return identical
reports.  Packing branches on the triangles through a maximum-residual-degree
point; hitting branches three ways on the points of the first unhit triangle.
Small exhaustive oracles are provided for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matroid import BinaryMatroid, WeightedMatroid, is_triangle, triangles

DEFAULT_TRIANGLE_CAP = 512

# Counting bound over functional sides costs a matmul per node; past this
# ambient dimension the matrix is large and the cap guard governs anyway.
_COUNTING_BOUND_MAX_DIM = 6


@dataclass(frozen=True)
class PackingSolution:
    """Triangle multiset with multiplicities, ascending by triangle."""

    triangles: tuple[tuple[tuple[int, int, int], int], ...]

    @property
    def objective(self) -> int:
        return sum(mult for _, mult in self.triangles)

    def to_json(self):
        return {
            "triangles": [[list(tri), mult] for tri, mult in self.triangles],
            "total": self.objective,
        }


@dataclass(frozen=True)
class HittingSolution:
    """Point set with its total weight."""

    points: tuple[int, ...]
    weight: int

    @property
    def objective(self) -> int:
        return self.weight

    def to_json(self):
        return {"points": list(self.points), "weight": self.weight}


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one exact solve.

    status is "optimal" or "unsolved" (cap or node budget hit; optimum is
    then None, never a guess).  trail records (nodes, incumbent) improvements.
    """

    optimum: int | None
    solution: PackingSolution | HittingSolution | None
    nodes: int
    status: str
    trail: tuple[tuple[int, int], ...] = ()

    def to_json(self):
        return {
            "optimum": self.optimum,
            "solution": None if self.solution is None else self.solution.to_json(),
            "nodes": self.nodes,
            "status": self.status,
        }


class _Budget(Exception):
    pass


def _instance(mw: WeightedMatroid):
    """Triangle list, involved points, and point -> triangle-index bitmask."""
    tris = triangles(mw.matroid)
    through: dict[int, int] = {}
    for i, tri in enumerate(tris):
        for p in tri:
            through[p] = through.get(p, 0) | (1 << i)
    pts = sorted(through)
    return tris, pts, through


def _greedy_pack(tris, alive: int, caps: dict[int, int]):
    """First-fit packing in triangle order; mutates caps."""
    sol: dict[int, int] = {}
    total = 0
    for i, (a, b, c) in enumerate(tris):
        if not (alive >> i) & 1:
            continue
        m = min(caps[a], caps[b], caps[c])
        if m > 0:
            sol[i] = m
            total += m
            caps[a] -= m
            caps[b] -= m
            caps[c] -= m
    return sol, total


def _improve_pack(tris, alive: int, weights, sol, total):
    """Remove-one-refill local search; deterministic, bounded passes."""
    for _ in range(24):
        improved = False
        for i in sorted(sol):
            trial = dict(sol)
            del trial[i]
            caps = dict(weights)
            for j, m in trial.items():
                for p in tris[j]:
                    caps[p] -= m
            refill, extra = _greedy_pack(tris, alive, caps)
            for j, m in refill.items():
                trial[j] = trial.get(j, 0) + m
            trial_total = sum(trial.values())
            if trial_total > total:
                sol, total = trial, trial_total
                improved = True
                break
        if not improved:
            break
    return sol, total


def nu(
    mw: WeightedMatroid,
    *,
    triangle_cap: int = DEFAULT_TRIANGLE_CAP,
    node_limit: int | None = None,
) -> SolveReport:
    """Exact maximum triangle packing under point capacities."""
    tris, pts, through = _instance(mw)
    if len(tris) > triangle_cap:
        return SolveReport(None, None, 0, "unsolved")
    weights = {p: mw.weights[p] for p in pts}
    alive0 = 0
    for i, tri in enumerate(tris):
        if all(weights[p] > 0 for p in tri):
            alive0 |= 1 << i
    if alive0 == 0:
        return SolveReport(0, PackingSolution(()), 0, "optimal")

    best_sol, best_val = _greedy_pack(tris, alive0, dict(weights))
    best_sol, best_val = _improve_pack(tris, alive0, weights, best_sol, best_val)
    trail = [(0, best_val)]

    dim = mw.matroid.dim
    use_counting = dim <= _COUNTING_BOUND_MAX_DIM
    if use_counting:
        nfun = (1 << dim) - 1
        pmat = np.zeros((nfun, len(pts)), dtype=np.int64)
        for fi in range(1, nfun + 1):
            for j, p in enumerate(pts):
                pmat[fi - 1, j] = (fi & p).bit_count() & 1
        cvec = np.zeros(len(pts), dtype=np.int64)

    caps = dict(weights)
    cur: dict[int, int] = {}
    nodes = 0

    def counting_bound(alive: int) -> int:
        # Any triangle has 0 or 2 points off each functional's kernel, so
        # per functional: x2 copies spend 2 off-side units, the rest 3
        # on-side units.  Minimize over functionals.
        for j, p in enumerate(pts):
            cvec[j] = caps[p] if alive & through[p] else 0
        off = pmat @ cvec
        on = int(cvec.sum()) - off
        x2 = np.minimum(off >> 1, on)
        return int((x2 + (on - x2) // 3).min())

    def search(alive: int, used: int):
        nonlocal nodes, best_sol, best_val
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise _Budget
        if alive == 0:
            if used > best_val:
                best_val = used
                best_sol = dict(cur)
                trail.append((nodes, used))
            return
        livecap = 0
        for p in pts:
            if alive & through[p]:
                livecap += caps[p]
        if used + livecap // 3 <= best_val:
            return
        if use_counting and used + counting_bound(alive) <= best_val:
            return
        pivot, pivot_deg = -1, 0
        for p in pts:
            d = (alive & through[p]).bit_count()
            if d > pivot_deg:
                pivot, pivot_deg = p, d
        forbid = 0
        rest = alive & through[pivot]
        while rest:
            low = rest & -rest
            rest ^= low
            i = low.bit_length() - 1
            child = alive & ~forbid
            dead = 0
            for p in tris[i]:
                caps[p] -= 1
                if caps[p] == 0:
                    dead |= through[p]
            cur[i] = cur.get(i, 0) + 1
            search(child & ~dead, used + 1)
            if cur[i] == 1:
                del cur[i]
            else:
                cur[i] -= 1
            for p in tris[i]:
                caps[p] += 1
            forbid |= low
        search(alive & ~through[pivot], used)

    status = "optimal"
    try:
        search(alive0, 0)
    except _Budget:
        return SolveReport(None, None, nodes, "unsolved", tuple(trail))
    packed = tuple((tris[i], best_sol[i]) for i in sorted(best_sol))
    return SolveReport(best_val, PackingSolution(packed), nodes, status, tuple(trail))


def _greedy_hit(tris, pts, through, weights, alive: int):
    """Cover triangles by best degree-per-weight point, then drop redundant
    points (heaviest first).  Returns a feasible point list and its weight."""
    chosen: list[int] = []
    while alive:
        pick, pick_deg, pick_w = -1, 0, 1
        for p in pts:
            d = (alive & through[p]).bit_count()
            if d * pick_w > pick_deg * weights[p]:
                pick, pick_deg, pick_w = p, d, weights[p]
        chosen.append(pick)
        alive &= ~through[pick]
    full = 0
    for p in chosen:
        full |= through[p]
    for p in sorted(chosen, key=lambda q: (-weights[q], -q)):
        rest = 0
        for q in chosen:
            if q != p:
                rest |= through[q]
        if rest == full:
            chosen.remove(p)
    return chosen, sum(weights[p] for p in chosen)


def tau(
    mw: WeightedMatroid,
    *,
    triangle_cap: int = DEFAULT_TRIANGLE_CAP,
    node_limit: int | None = None,
) -> SolveReport:
    """Exact minimum-weight triangle hitting set.

    Multiplicity above 1 never helps a covering constraint with unit
    right-hand side, so the solution is a plain point set.
    """
    tris, pts, through = _instance(mw)
    if len(tris) > triangle_cap:
        return SolveReport(None, None, 0, "unsolved")
    weights = {p: mw.weights[p] for p in pts}

    base: list[int] = []  # zero-weight points hit for free
    alive0 = (1 << len(tris)) - 1
    for p in pts:
        if weights[p] == 0:
            base.append(p)
            alive0 &= ~through[p]
    if alive0 == 0:
        sol = HittingSolution(tuple(sorted(base)), 0)
        return SolveReport(0, sol, 0, "optimal")

    pidx = {p: j for j, p in enumerate(pts)}
    tri_pmask = [0] * len(tris)
    for i, tri in enumerate(tris):
        for p in tri:
            tri_pmask[i] |= 1 << pidx[p]

    greedy_pts, greedy_w = _greedy_hit(tris, pts, through, weights, alive0)
    best_pts = tuple(sorted(greedy_pts))
    best_w = greedy_w
    trail = [(0, best_w)]
    chosen: list[int] = []
    nodes = 0

    def lower_bound(alive: int, forb: int) -> int:
        # Disjoint unhit triangles each cost at least their cheapest
        # allowed point; an all-forbidden triangle is unfixable.
        bound = 0
        used_pmask = 0
        count = 0
        rest = alive
        while rest:
            low = rest & -rest
            rest ^= low
            i = low.bit_length() - 1
            pm = tri_pmask[i]
            if pm & ~forb == 0:
                return 1 << 60
            count += 1
            if pm & used_pmask:
                continue
            used_pmask |= pm
            bound += min(weights[p] for p in tris[i] if not (forb >> pidx[p]) & 1)
        maxdeg, minw = 0, 1 << 60
        for p in pts:
            if (forb >> pidx[p]) & 1:
                continue
            d = (alive & through[p]).bit_count()
            if d > maxdeg:
                maxdeg = d
            if d and weights[p] < minw:
                minw = weights[p]
        if maxdeg:
            alt = -(-count // maxdeg) * minw
            if alt > bound:
                bound = alt
        return bound

    def search(alive: int, forb: int, cur_w: int):
        nonlocal nodes, best_pts, best_w
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise _Budget
        if alive == 0:
            if cur_w < best_w:
                best_w = cur_w
                best_pts = tuple(sorted(chosen))
                trail.append((nodes, cur_w))
            return
        if cur_w + lower_bound(alive, forb) >= best_w:
            return
        i = (alive & -alive).bit_length() - 1
        sib_forb = forb
        for p in tris[i]:
            bit = 1 << pidx[p]
            if not sib_forb & bit:
                chosen.append(p)
                search(alive & ~through[p], sib_forb, cur_w + weights[p])
                chosen.pop()
            sib_forb |= bit

    try:
        search(alive0, 0, 0)
    except _Budget:
        return SolveReport(None, None, nodes, "unsolved", tuple(trail))
    pts_out = tuple(sorted(set(base) | set(best_pts)))
    sol = HittingSolution(pts_out, best_w)
    return SolveReport(best_w, sol, nodes, "optimal", tuple(trail))


ORACLE_TRIANGLE_LIMIT = 12
ORACLE_POINT_LIMIT = 16
ORACLE_WEIGHT_LIMIT = 30


def nu_oracle(mw: WeightedMatroid) -> int:
    """Exhaustive packing optimum: walks every capacity-respecting
    multiplicity vector.  Guards keep the walk small."""
    tris, pts, _ = _instance(mw)
    if len(tris) > ORACLE_TRIANGLE_LIMIT:
        raise ValueError(f"packing oracle limited to {ORACLE_TRIANGLE_LIMIT} triangles")
    caps = {p: mw.weights[p] for p in pts}
    if sum(caps.values()) > ORACLE_WEIGHT_LIMIT:
        raise ValueError(f"packing oracle limited to total weight {ORACLE_WEIGHT_LIMIT}")

    def walk(i: int) -> int:
        if i == len(tris):
            return 0
        best = walk(i + 1)
        a, b, c = tris[i]
        m = 0
        while caps[a] > 0 and caps[b] > 0 and caps[c] > 0:
            caps[a] -= 1
            caps[b] -= 1
            caps[c] -= 1
            m += 1
            got = m + walk(i + 1)
            if got > best:
                best = got
        caps[a] += m
        caps[b] += m
        caps[c] += m
        return best

    return walk(0)


def tau_oracle(mw: WeightedMatroid) -> int:
    """Exhaustive hitting optimum: scans every subset of the involved points."""
    tris, pts, _ = _instance(mw)
    if len(tris) > ORACLE_TRIANGLE_LIMIT:
        raise ValueError(f"hitting oracle limited to {ORACLE_TRIANGLE_LIMIT} triangles")
    if len(pts) > ORACLE_POINT_LIMIT:
        raise ValueError(f"hitting oracle limited to {ORACLE_POINT_LIMIT} involved points")
    if not tris:
        return 0
    pidx = {p: j for j, p in enumerate(pts)}
    hit = [0] * len(pts)
    for i, tri in enumerate(tris):
        for p in tri:
            hit[pidx[p]] |= 1 << i
    full = (1 << len(tris)) - 1
    wvec = [mw.weights[p] for p in pts]
    best = sum(wvec)
    for subset in range(1 << len(pts)):
        covered = 0
        weight = 0
        j = 0
        s = subset
        while s:
            if s & 1:
                covered |= hit[j]
                weight += wvec[j]
            s >>= 1
            j += 1
        if covered == full and weight < best:
            best = weight
    return best


def verify_hitting(m: BinaryMatroid, r) -> bool:
    """True iff r is a set of points of m meeting every triangle."""
    if isinstance(r, HittingSolution):
        r = r.points
    rset = set(r)
    if not rset <= m.point_set():
        return False
    return all(a in rset or b in rset or c in rset for a, b, c in triangles(m))


def verify_packing(mw: WeightedMatroid, pi) -> bool:
    """True iff pi is a capacity-respecting multiset of triangles of mw."""
    if isinstance(pi, PackingSolution):
        pi = pi.triangles
    items = pi.items() if isinstance(pi, dict) else pi
    eset = mw.matroid.point_set()
    load: dict[int, int] = {}
    for tri, mult in items:
        if mult < 0:
            return False
        tri = tuple(tri)
        if len(tri) != 3 or any(p not in eset for p in tri):
            return False
        if not is_triangle(tri, mw.matroid.dim):
            return False
        for p in tri:
            load[p] = load.get(p, 0) + mult
    return all(load[p] <= mw.weights[p] for p in load)
