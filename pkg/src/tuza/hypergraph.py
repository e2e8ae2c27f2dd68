"""3-uniform hypergraphs, linear cycles, and crowns.

The triangle hypergraph of a matroid has the ground set as vertices and the
triangles as hyperedges; it is always linear (two triangles share at most
one point).  The container below also accepts arbitrary 3-uniform input,
since degenerate two-edge crowns are meaningful to callers even though they
cannot occur inside a matroid's triangle hypergraph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matroid import BinaryMatroid, triangles


@dataclass(frozen=True)
class TriangleHypergraph:
    """Immutable 3-uniform hypergraph; edges are sorted distinct 3-tuples."""

    edges: tuple[tuple, ...]

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            if len(e) != 3 or len(set(e)) != 3:
                raise ValueError(f"hyperedge {e!r} must have three distinct vertices")
            if tuple(sorted(e)) != tuple(e):
                raise ValueError(f"hyperedge {e!r} must be sorted")
            if e in seen:
                raise ValueError(f"duplicate hyperedge {e!r}")
            seen.add(e)

    def vertices(self) -> list:
        return sorted({v for e in self.edges for v in e})

    def edge_set(self) -> frozenset:
        return frozenset(self.edges)


def build_hypergraph(m: BinaryMatroid) -> TriangleHypergraph:
    return TriangleHypergraph(tuple(triangles(m)))


def degrees(h: TriangleHypergraph) -> dict:
    """Vertex -> number of hyperedges containing it (0 never appears)."""
    out: dict = {}
    for e in h.edges:
        for v in e:
            out[v] = out.get(v, 0) + 1
    return out


def is_linear(h: TriangleHypergraph) -> bool:
    """True iff every two hyperedges share at most one vertex."""
    sets = [set(e) for e in h.edges]
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if len(sets[i] & sets[j]) > 1:
                return False
    return True


@dataclass(frozen=True)
class LinearCycle:
    """Cyclic edge sequence: consecutive edges share exactly one vertex,
    non-consecutive edges are disjoint; at least three edges."""

    edges: tuple[tuple, ...]

    def __post_init__(self):
        if not is_linear_cycle(self.edges):
            raise ValueError("edge sequence is not a linear cycle")

    @property
    def length(self) -> int:
        return len(self.edges)


def is_linear_cycle(edges) -> bool:
    k = len(edges)
    if k < 3 or len(set(edges)) != k:
        return False
    sets = [set(e) for e in edges]
    for i in range(k):
        for j in range(i + 1, k):
            shared = len(sets[i] & sets[j])
            adjacent = j - i == 1 or (i == 0 and j == k - 1)
            if shared != (1 if adjacent else 0):
                return False
    return True


def _grow_maximal_path(h: TriangleHypergraph, start: int) -> list[int]:
    """Maximal linear path from edge `start`: extend the right end with the
    lowest-index eligible edge until stuck, then the left end likewise.
    Left growth only constrains right candidates further, so one sweep per
    side reaches a maximal path."""
    sets = [set(e) for e in h.edges]
    path = [start]

    def eligible(cand: int, end_idx: int) -> bool:
        if cand in path:
            return False
        if len(sets[cand] & sets[end_idx]) != 1:
            return False
        return all(not (sets[cand] & sets[i]) for i in path if i != end_idx)

    extended = True
    while extended:
        extended = False
        for cand in range(len(sets)):
            if eligible(cand, path[-1]):
                path.append(cand)
                extended = True
                break
    extended = True
    while extended:
        extended = False
        for cand in range(len(sets)):
            if eligible(cand, path[0]):
                path.insert(0, cand)
                extended = True
                break
    return path


def _close_path(h: TriangleHypergraph, path: list[int]) -> LinearCycle | None:
    """Close a maximal path into a cycle from either end.

    From an end edge e with neighbor d, each vertex v of e outside d admits
    edges f with f ∩ e = {v}; the first such f meeting the path again at
    position j yields the cycle (f, e, ..., path[j]).
    """
    sets = [set(e) for e in h.edges]
    if len(path) < 2:
        return None
    for ordered in (path, list(reversed(path))):
        end, nb = ordered[0], ordered[1]
        for v in sorted(sets[end] - sets[nb]):
            for f in range(len(sets)):
                if f in ordered or v not in sets[f] or len(sets[f] & sets[end]) != 1:
                    continue
                for j in range(1, len(ordered)):
                    if sets[f] & sets[ordered[j]]:
                        break
                else:
                    continue
                if len(sets[f] & sets[ordered[j]]) == 1:
                    cyc = [h.edges[f]] + [h.edges[i] for i in ordered[: j + 1]]
                    if is_linear_cycle(cyc):
                        return LinearCycle(tuple(cyc))
    return None


def find_linear_cycle(h: TriangleHypergraph) -> LinearCycle | None:
    """Find a linear cycle; guaranteed to succeed when h is linear with
    minimum degree at least 2 (grow a maximal path, then every end vertex's
    second edge must re-enter the path, closing a cycle)."""
    for start in range(len(h.edges)):
        cyc = _close_path(h, _grow_maximal_path(h, start))
        if cyc is not None:
            return cyc
    return None


@dataclass(frozen=True)
class Crown:
    """Spine s_0..s_{k-1} and jewels j_0..j_{k-1} with hyperedges
    {s_i, j_i, s_{i+1}} cyclically; every spine vertex must have hypergraph
    degree exactly 2.  Size k >= 2; all 2k vertices distinct."""

    spine: tuple
    jewels: tuple

    def __post_init__(self):
        k = len(self.spine)
        if k < 2 or len(self.jewels) != k:
            raise ValueError("crown needs k >= 2 spine vertices and as many jewels")
        flat = list(self.spine) + list(self.jewels)
        if len(set(flat)) != 2 * k:
            raise ValueError("crown vertices must be pairwise distinct")

    @property
    def size(self) -> int:
        return len(self.spine)

    @property
    def edges(self) -> tuple[tuple, ...]:
        k = self.size
        return tuple(
            tuple(sorted((self.spine[i], self.jewels[i], self.spine[(i + 1) % k])))
            for i in range(k)
        )


def validate_crown(h: TriangleHypergraph, crown: Crown) -> bool:
    """Structural check against h: edges present, spine degrees exactly 2."""
    eset = h.edge_set()
    if any(e not in eset for e in crown.edges):
        return False
    deg = degrees(h)
    return all(deg.get(s, 0) == 2 for s in crown.spine)


def crown_from_cycle(h: TriangleHypergraph, cyc: LinearCycle) -> Crown | None:
    """Read a crown off a linear cycle: spine = consecutive shared vertices,
    jewels = third vertices; requires spine degrees exactly 2 in h."""
    k = cyc.length
    sets = [set(e) for e in cyc.edges]
    spine = []
    for i in range(k):
        shared = sets[i - 1] & sets[i]
        if len(shared) != 1:
            return None
        spine.append(next(iter(shared)))
    jewels = []
    for i in range(k):
        rest = sets[i] - {spine[i], spine[(i + 1) % k]}
        if len(rest) != 1:
            return None
        jewels.append(next(iter(rest)))
    deg = degrees(h)
    if any(deg.get(s, 0) != 2 for s in spine):
        return None
    return Crown(tuple(spine), tuple(jewels))


def _components(h: TriangleHypergraph) -> list[list[int]]:
    """Edge-index components under shared-vertex adjacency, each sorted,
    ordered by smallest member."""
    n = len(h.edges)
    sets = [set(e) for e in h.edges]
    by_vertex: dict = {}
    for i, e in enumerate(h.edges):
        for v in e:
            by_vertex.setdefault(v, []).append(i)
    seen = [False] * n
    comps = []
    for i in range(n):
        if seen[i]:
            continue
        stack, comp = [i], []
        seen[i] = True
        while stack:
            cur = stack.pop()
            comp.append(cur)
            for v in sets[cur]:
                for j in by_vertex[v]:
                    if not seen[j]:
                        seen[j] = True
                        stack.append(j)
        comps.append(sorted(comp))
    return comps


def find_crown(h: TriangleHypergraph) -> Crown | None:
    """Find a crown from the two structured sources callers rely on:
    two-edge crowns (edges sharing two degree-2 vertices), and linear-cycle
    crowns inside components of maximum degree 2.  Complete for those
    sources; may miss crowns hidden in denser hypergraphs.
    """
    deg = degrees(h)
    sets = [set(e) for e in h.edges]
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            shared = sorted(sets[i] & sets[j])
            if len(shared) == 2 and all(deg[s] == 2 for s in shared):
                ji = next(iter(sets[i] - set(shared)))
                jj = next(iter(sets[j] - set(shared)))
                return Crown((shared[0], shared[1]), (ji, jj))
    for comp in _components(h):
        if any(deg[v] > 2 for i in comp for v in sets[i]):
            continue
        sub = TriangleHypergraph(tuple(h.edges[i] for i in comp))
        cyc = find_linear_cycle(sub)
        if cyc is None:
            continue
        crown = crown_from_cycle(h, cyc)
        if crown is not None:
            return crown
    return None
