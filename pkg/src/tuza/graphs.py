"""Multigraphs and cographic duality.

Graphs carry stable integer edge ids through contraction, cosimplification,
and block decomposition, so certificates computed on reduced graphs can be
expressed in the caller's original ids.  The cocycle matroid maps each edge
to its coordinate vector over a fundamental-cycle basis; triangles of that
matroid correspond to triads (3-element bonds) of the graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .matroid import BinaryMatroid, UnsupportedDimension, WeightedMatroid
from .projective import MAX_DIM


@dataclass(frozen=True)
class Graph:
    """Multigraph on vertices 0..nv-1; edges are (eid, u, v) with u <= v.
    Parallel edges and loops allowed; edge ids unique."""

    nv: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if not isinstance(self.nv, int) or self.nv < 0:
            raise ValueError(f"bad vertex count {self.nv!r}")
        norm = []
        seen = set()
        for eid, u, v in self.edges:
            if not (0 <= u < self.nv and 0 <= v < self.nv):
                raise ValueError(f"edge {eid} endpoint out of range")
            if eid in seen:
                raise ValueError(f"duplicate edge id {eid}")
            seen.add(eid)
            norm.append((eid, min(u, v), max(u, v)))
        norm.sort()
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def nedges(self) -> int:
        return len(self.edges)

    def edge_map(self) -> dict[int, tuple[int, int]]:
        return {eid: (u, v) for eid, u, v in self.edges}

    def edge_ids(self) -> list[int]:
        return [eid for eid, _, _ in self.edges]


@dataclass(frozen=True)
class Bond:
    """A minimal edge cut and the two connected vertex sides it separates."""

    eids: tuple[int, ...]
    sides: tuple[frozenset, frozenset]

    def __post_init__(self):
        object.__setattr__(self, "eids", tuple(sorted(self.eids)))
        a, b = self.sides
        if min(a) > min(b):
            object.__setattr__(self, "sides", (b, a))


def _adjacency(g: Graph) -> list[list[tuple[int, int]]]:
    """vertex -> [(eid, neighbor)] in eid order; loops excluded."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.nv)]
    for eid, u, v in g.edges:
        if u != v:
            adj[u].append((eid, v))
            adj[v].append((eid, u))
    for lst in adj:
        lst.sort()
    return adj


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex components (isolated vertices included), each sorted,
    ordered by smallest vertex."""
    adj = _adjacency(g)
    seen = [False] * g.nv
    comps = []
    for s in range(g.nv):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], [s]
        while stack:
            v = stack.pop()
            for _, w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _is_connected_on(g: Graph, verts: frozenset) -> bool:
    """Is the induced subgraph on verts connected (ignoring outside edges)?"""
    if not verts:
        return False
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for _, u, v in g.edges:
        if u != v and u in adj and v in adj:
            adj[u].append(v)
            adj[v].append(u)
    start = min(verts)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


def find_bridges(g: Graph) -> list[int]:
    """All bridge edge ids, ascending (iterative lowlink DFS; parallel edges
    and loops are never bridges)."""
    adj = _adjacency(g)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    bridges = []
    timer = 0
    for root in range(g.nv):
        if root in disc:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]
        while stack:
            v, peid, idx = stack[-1]
            moved = False
            while idx < len(adj[v]):
                eid, w = adj[v][idx]
                idx += 1
                if eid == peid:
                    continue
                if w not in disc:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack[-1] = (v, peid, idx)
                    stack.append((w, eid, 0))
                    moved = True
                    break
                low[v] = min(low[v], disc[w])
            if moved:
                continue
            stack.pop()
            if stack:
                pv, ppe, pidx = stack[-1]
                low[pv] = min(low[pv], low[v])
                if low[v] > disc[pv]:
                    bridges.append(peid)
    return sorted(bridges)


@lru_cache(maxsize=4096)
def blocks(g: Graph) -> tuple[Graph, ...]:
    """Biconnected components as edge-induced subgraphs (same vertex space),
    ordered by smallest edge id.  A loop forms its own block."""
    adj = _adjacency(g)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    used = set()
    estack: list[int] = []
    out: list[list[int]] = [[eid] for eid, u, v in g.edges if u == v]
    timer = 0
    for root in range(g.nv):
        if root in disc:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]
        while stack:
            v, peid, idx = stack[-1]
            moved = False
            while idx < len(adj[v]):
                eid, w = adj[v][idx]
                idx += 1
                if eid == peid or eid in used:
                    continue
                used.add(eid)
                if w not in disc:
                    estack.append(eid)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack[-1] = (v, peid, idx)
                    stack.append((w, eid, 0))
                    moved = True
                    break
                estack.append(eid)
                low[v] = min(low[v], disc[w])
            if moved:
                continue
            stack.pop()
            if stack:
                pv, _, _ = stack[-1]
                low[pv] = min(low[pv], low[v])
                if low[v] >= disc[pv]:
                    blk = []
                    while True:
                        e = estack.pop()
                        blk.append(e)
                        if e == peid:
                            break
                    out.append(blk)
    emap = g.edge_map()
    built = []
    for blk in sorted(out, key=min):
        built.append(Graph(g.nv, tuple((e, *emap[e]) for e in sorted(blk))))
    return tuple(built)


def contract_edge(g: Graph, eid: int) -> Graph:
    """Merge the endpoints of eid and drop the edge; contracting a loop just
    deletes it.  Other edge ids are preserved."""
    emap = g.edge_map()
    u, v = emap[eid]
    rest = tuple(e for e in g.edges if e[0] != eid)
    if u == v:
        return Graph(g.nv, rest)
    keep, drop = min(u, v), max(u, v)

    def remap(x: int) -> int:
        if x == drop:
            x = keep
        return x - 1 if x > drop else x

    return Graph(g.nv - 1, tuple((i, remap(a), remap(b)) for i, a, b in rest))


def _find_two_cut(g: Graph) -> tuple[int, int] | None:
    """Lexicographically least 2-edge cut {e, f}, e < f, in a bridgeless
    graph: f is a bridge of g minus e."""
    for eid, u, v in g.edges:
        if u == v:
            continue
        rest = Graph(g.nv, tuple(e for e in g.edges if e[0] != eid))
        fb = find_bridges(rest)
        if fb:
            return (eid, fb[0]) if eid < fb[0] else (fb[0], eid)
    return None


@lru_cache(maxsize=4096)
def _cosimplify_plan(g: Graph) -> tuple[Graph, tuple[tuple, ...]]:
    """Weight-independent reduction plan: the sequence of ("bridge", eid) and
    ("merge", kept, dropped) events that eliminates every cut of size < 3,
    plus the resulting graph.  Cached because the certifier revisits the
    same topology after weight-only steps."""
    events: list[tuple] = []
    while True:
        fb = find_bridges(g)
        if fb:
            eid = fb[0]
            events.append(("bridge", eid))
            g = contract_edge(g, eid)
            continue
        pair = _find_two_cut(g)
        if pair is None:
            return g, tuple(events)
        keep, drop = pair
        events.append(("merge", keep, drop))
        g = contract_edge(g, drop)


def cosimplify(g: Graph, weights: dict[int, int]):
    """Contract bridges and merge 2-edge cuts until every cut has size >= 3.

    Merging a 2-cut keeps the smaller edge id, which absorbs the other's
    weight, and contracts the dropped edge.  Bridges correspond to elements
    in no triad, so their weight is discarded.  Loops persist (they meet no
    cut).  Returns (graph, weights, trace) where trace lists
    ("bridge", eid, lost_weight) and ("merge", kept, dropped, dropped_weight)
    events in order; the recorded weights let a certificate be lifted back
    through the reduction.
    """
    final, plan = _cosimplify_plan(g)
    w = dict(weights)
    trace: list[tuple] = []
    for ev in plan:
        if ev[0] == "bridge":
            trace.append(("bridge", ev[1], w.pop(ev[1], 0)))
        else:
            _, keep, drop = ev
            wd = w.pop(drop, 0)
            trace.append(("merge", keep, drop, wd))
            w[keep] = w.get(keep, 0) + wd
    return final, w, trace


def _triads_bipartition(g: Graph) -> list[Bond]:
    out = []
    for comp in connected_components(g):
        if len(comp) < 2:
            continue
        anchor, others = comp[0], comp[1:]
        comp_edges = [(eid, u, v) for eid, u, v in g.edges if u in set(comp) and u != v]
        for bits in range(1, 1 << len(others)):
            side_b = frozenset(others[i] for i in range(len(others)) if (bits >> i) & 1)
            cut = [eid for eid, u, v in comp_edges if (u in side_b) != (v in side_b)]
            if len(cut) != 3:
                continue
            side_a = frozenset(comp) - side_b
            if _is_connected_on(g, side_a) and _is_connected_on(g, side_b):
                out.append(Bond(tuple(cut), (side_a, side_b)))
    return sorted(out, key=lambda b: b.eids)


def _triads_triples(g: Graph) -> list[Bond]:
    out = []
    emap = g.edge_map()
    real = [eid for eid, u, v in g.edges if u != v]
    for trip in combinations(real, 3):
        rest = Graph(g.nv, tuple(e for e in g.edges if e[0] not in trip))
        comp_of: dict[int, int] = {}
        comps = connected_components(rest)
        for ci, comp in enumerate(comps):
            for v in comp:
                comp_of[v] = ci
        pairs = {tuple(sorted((comp_of[emap[e][0]], comp_of[emap[e][1]]))) for e in trip}
        if len(pairs) == 1:
            ca, cb = pairs.pop()
            if ca != cb:
                out.append(
                    Bond(trip, (frozenset(comps[ca]), frozenset(comps[cb])))
                )
    return sorted(out, key=lambda b: b.eids)


@lru_cache(maxsize=4096)
def triads(g: Graph) -> tuple[Bond, ...]:
    """All 3-element bonds, ascending by edge-id triple."""
    if g.nv <= 20:
        return tuple(_triads_bipartition(g))
    return tuple(_triads_triples(g))


def components_after_removal(g: Graph, bond: Bond) -> tuple[Graph, Graph]:
    """The two edge-induced parts left by removing a bond from a connected
    graph, ordered by (edge count, smallest edge id, smallest vertex)."""
    cut = set(bond.eids)
    emap = g.edge_map()
    rest = Graph(g.nv, tuple(e for e in g.edges if e[0] not in cut))
    comps = connected_components(rest)
    comp_of = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    touched = {comp_of[emap[e][0]] for e in bond.eids} | {
        comp_of[emap[e][1]] for e in bond.eids
    }
    if len(touched) != 2:
        raise ValueError("edge set is not a bond of the graph")
    ca, cb = sorted(touched)
    for e in bond.eids:
        u, v = emap[e]
        if {comp_of[u], comp_of[v]} != {ca, cb}:
            raise ValueError("edge set is not a bond of the graph")
    parts = []
    for ci in (ca, cb):
        verts = set(comps[ci])
        part = Graph(
            g.nv, tuple(e for e in rest.edges if e[1] in verts and e[2] in verts)
        )
        key = (
            part.nedges,
            min(part.edge_ids(), default=1 << 30),
            min(comps[ci]),
        )
        parts.append((key, part))
    parts.sort(key=lambda t: t[0])
    return parts[0][1], parts[1][1]


def shortest_cycle(g: Graph):
    """Shortest cycle as (vertices, eids) with eids[i] joining vertices[i]
    and vertices[(i+1) % p]; loops count as length 1, parallel pairs as 2.
    Ties broken by the smallest closing edge id.  None if acyclic."""
    best = None
    adj = _adjacency(g)
    for eid, u, v in g.edges:
        if u == v:
            if best is None or best[0] > 1:
                best = (1, [u], [eid])
            continue
        dist = {u: 0}
        parent: dict[int, tuple[int, int]] = {}
        queue = [u]
        while queue and v not in dist:
            nxt = []
            for x in queue:
                for feid, y in adj[x]:
                    if feid != eid and y not in dist:
                        dist[y] = dist[x] + 1
                        parent[y] = (x, feid)
                        nxt.append(y)
            queue = nxt
        if v not in dist:
            continue
        length = dist[v] + 1
        if best is None or length < best[0]:
            verts = [v]
            eids = []
            x = v
            while x != u:
                px, pe = parent[x]
                eids.append(pe)
                verts.append(px)
                x = px
            verts.reverse()
            eids.reverse()
            best = (length, verts, eids + [eid])
    if best is None:
        return None
    return best[1], best[2]


@dataclass(frozen=True)
class CographicEncoding:
    """Edge -> point map into the cocycle matroid; bridges map to 0 and
    2-cut partners to equal points, so a simple matroid needs cosimplify
    first.  Triads correspond exactly to matroid triangles."""

    graph: Graph
    point_of: dict[int, int]
    ambient_dim: int

    @property
    def matroid(self) -> BinaryMatroid:
        pts = sorted({p for p in self.point_of.values() if p})
        return BinaryMatroid(self.ambient_dim, tuple(pts))

    def weighted_matroid(self, edge_weights: dict[int, int]) -> WeightedMatroid:
        """Weight of a point = total weight of the edges mapping to it."""
        acc: dict[int, int] = {}
        for eid, p in self.point_of.items():
            if p:
                acc[p] = acc.get(p, 0) + edge_weights[eid]
        m = self.matroid
        return WeightedMatroid(m, {p: acc[p] for p in m.points})


def cocycle_matroid(g: Graph) -> CographicEncoding:
    """Represent each edge over a fundamental-cycle basis: non-tree edges
    get unit coordinates in edge-id order; a tree edge's vector marks the
    fundamental cycles passing through it."""
    adj = _adjacency(g)
    parent: dict[int, tuple[int, int]] = {}
    depth: dict[int, int] = {}
    tree = set()
    for root in range(g.nv):
        if root in depth:
            continue
        depth[root] = 0
        queue = [root]
        while queue:
            nxt = []
            for x in queue:
                for eid, y in adj[x]:
                    if y not in depth:
                        depth[y] = depth[x] + 1
                        parent[y] = (x, eid)
                        tree.add(eid)
                        nxt.append(y)
            queue = nxt
    nontree = [eid for eid in g.edge_ids() if eid not in tree]
    dim = len(nontree)
    if dim > MAX_DIM:
        raise UnsupportedDimension(
            f"cycle space dimension {dim} exceeds the {MAX_DIM}-bit point limit"
        )
    bit = {eid: i for i, eid in enumerate(nontree)}
    point_of = {eid: 0 for eid in g.edge_ids()}
    emap = g.edge_map()
    for eid in nontree:
        point_of[eid] = 1 << bit[eid]
        u, v = emap[eid]
        while u != v:
            if depth[u] < depth[v]:
                u, v = v, u
            pu, pe = parent[u]
            point_of[pe] ^= 1 << bit[eid]
            u = pu
    return CographicEncoding(g, point_of, dim)


def cycle_matroid(g: Graph) -> tuple[BinaryMatroid, dict[int, int]]:
    """Incidence representation after dropping one vertex per component.
    Loops are rejected (they would map to zero)."""
    for eid, u, v in g.edges:
        if u == v:
            raise ValueError(f"loop edge {eid} has no nonzero cycle-matroid point")
    comps = connected_components(g)
    dim = g.nv - len(comps)
    if dim > MAX_DIM:
        raise UnsupportedDimension(
            f"cycle matroid rank {dim} exceeds the {MAX_DIM}-bit point limit"
        )
    mask = {}
    nextbit = 0
    for comp in comps:
        mask[comp[0]] = 0
        for v in comp[1:]:
            mask[v] = 1 << nextbit
            nextbit += 1
    point_of = {eid: mask[u] ^ mask[v] for eid, u, v in g.edges}
    pts = sorted(set(point_of.values()))
    return BinaryMatroid(dim, tuple(pts)), point_of


def parse_graph(text: str) -> tuple[Graph, dict[int, int]]:
    """Read the graph text format: `v <count>` then `e <id> <u> <v>
    [weight]` lines; weight defaults to 1.  '#' comments and blank lines
    are skipped."""
    nv = None
    edges = []
    weights = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if nv is None:
            if parts[0] != "v" or len(parts) != 2:
                raise ValueError(f"expected header 'v <count>', got {line!r}")
            nv = int(parts[1])
            continue
        if parts[0] != "e" or len(parts) not in (4, 5):
            raise ValueError(f"expected 'e <id> <u> <v> [weight]', got {line!r}")
        eid, u, v = int(parts[1]), int(parts[2]), int(parts[3])
        edges.append((eid, u, v))
        weights[eid] = int(parts[4]) if len(parts) == 5 else 1
    if nv is None:
        raise ValueError("missing 'v <count>' header")
    return Graph(nv, tuple(edges)), weights


def write_graph(g: Graph, weights: dict[int, int] | None = None) -> str:
    lines = [f"v {g.nv}"]
    for eid, u, v in g.edges:
        w = 1 if weights is None else weights[eid]
        lines.append(f"e {eid} {u} {v}" + (f" {w}" if w != 1 else ""))
    return "\n".join(lines) + "\n"
