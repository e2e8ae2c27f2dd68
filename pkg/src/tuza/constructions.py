"""Explicit extremal configurations: projective geometries, spreads,
Bose-Burton geometries, and the rainbow coloring for critical number 2.

Everything here is deterministic and self-validating: each builder checks
the defining invariants of its output before returning, so a successful
call doubles as a certificate that the object exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .matroid import BinaryMatroid, is_triangle, triangles, unit_weights
from .projective import (
    Flat,
    check_dim,
    echelon_subspaces,
    field_table,
    parity,
    rank,
    span_flat,
    vanishing_functionals,
)
from .solver import HittingSolution, PackingSolution, verify_hitting, verify_packing

# Full point enumeration is O(2^n); past this the objects stop being
# useful for experiments and the validators dominate the run time.
MAX_BUILD_DIM = 12


def _check_build_dim(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_BUILD_DIM:
        raise ValueError(f"construction dimension must be in 1..{MAX_BUILD_DIM}, got {n!r}")


def build_pg(n: int) -> BinaryMatroid:
    """The full rank-n projective geometry: every nonzero point."""
    _check_build_dim(n)
    return BinaryMatroid(n, tuple(range(1, 1 << n)))


@dataclass(frozen=True)
class Spread:
    """A partition of the nonzero points of GF(2)^dim into rank-d flats.

    Existence requires d | dim; the builder refuses otherwise.
    """

    dim: int
    member_rank: int
    members: tuple[Flat, ...]

    def __post_init__(self):
        check_dim(self.dim)
        d = self.member_rank
        seen: set[int] = set()
        for f in self.members:
            if f.rank != d:
                raise ValueError(f"spread member has rank {f.rank}, expected {d}")
            pts = f.points()
            if seen & set(pts):
                raise ValueError("spread members overlap")
            seen.update(pts)
        if len(seen) != (1 << self.dim) - 1:
            raise ValueError("spread members do not cover every point")
        if len(self.members) != ((1 << self.dim) - 1) // ((1 << d) - 1):
            raise ValueError("spread has the wrong number of members")


def build_spread(n: int, d: int) -> Spread:
    """Partition the points of rank n into rank-d flats via field cosets.

    Identify GF(2)^n with GF(2^n); the subfield GF(2^d) exists exactly when
    d | n, and the multiplicative cosets of GF(2^d)* (each together with 0)
    are GF(2^d)-subspaces, hence GF(2)-flats of rank d.  They partition the
    nonzero elements because cosets of a subgroup do.
    """
    _check_build_dim(n)
    if d < 1 or n % d != 0:
        raise ValueError(f"a rank-{d} spread of GF(2)^{n} requires {d} | {n}")
    ft = field_table(n)
    s = ((1 << n) - 1) // ((1 << d) - 1)
    buckets: list[list[int]] = [[] for _ in range(s)]
    x = 1
    for e in range((1 << n) - 1):
        buckets[e % s].append(x)
        x = ft.mul(x, ft.generator)
    members = []
    for pts in buckets:
        f = span_flat(pts, n)
        if f.rank != d or len(pts) != (1 << d) - 1:
            raise AssertionError("field coset failed to close into a rank-d flat")
        members.append(f)
    return Spread(n, d, tuple(members))


@dataclass(frozen=True)
class PartialSpread:
    """Disjoint triangles covering the points of GF(2)^dim, except for an
    explicit leftover: empty when dim is even, a 4-circuit when odd."""

    dim: int
    triangles: tuple[tuple[int, int, int], ...]
    leftover: tuple[int, ...] = ()

    def __post_init__(self):
        check_dim(self.dim)
        seen: set[int] = set()
        for tri in self.triangles:
            if not is_triangle(tri, self.dim):
                raise ValueError(f"{tri} is not a triangle")
            if seen & set(tri):
                raise ValueError("partial spread triangles overlap")
            seen.update(tri)
        if seen & set(self.leftover) or len(set(self.leftover)) != len(self.leftover):
            raise ValueError("leftover points collide")
        if seen | set(self.leftover) != set(range(1, 1 << self.dim)):
            raise ValueError("partial spread does not cover every point")
        if self.leftover:
            a, b, c, d = sorted(self.leftover)
            if a ^ b ^ c ^ d != 0:
                raise ValueError("leftover is not a circuit")
            for trip in ((a, b, c), (a, b, d), (a, c, d), (b, c, d)):
                if rank(trip, self.dim) != 3:
                    raise ValueError("leftover circuit has a dependent triple")


def build_partial_spread(n: int) -> PartialSpread:
    """Cover the points of rank n by disjoint triangles, plus a 4-circuit
    leftover when n is odd.

    Even n: the rank-2 spread members are exactly triangles.  Odd n: strip
    the complement of a codimension-2 subspace as 2^(n-2) coset triangles
    and recurse on the subspace, bottoming out at n=3 where one line of the
    seven points leaves the 4-circuit {4,5,6,7}.
    """
    _check_build_dim(n)
    if n < 2:
        raise ValueError("rank 1 has a single point and no triangles")
    if n % 2 == 0:
        spread = build_spread(n, 2)
        tris = tuple(tuple(f.points()) for f in spread.members)
        return PartialSpread(n, tris)
    tris = []
    m = n
    while m > 3:
        block = bose_burton_triangle_partition(build_bose_burton(m, 2))
        tris.extend(block)
        m -= 2
    tris.append((1, 2, 3))
    return PartialSpread(n, tuple(tris), (4, 5, 6, 7))


@dataclass(frozen=True)
class BoseBurton:
    """The rank-n geometry whose points avoid a fixed rank-(n-k) subspace Q.

    This is the largest simple rank-n matroid with no rank-k projective
    subgeometry; k = n gives back the full geometry (Q is trivial).
    """

    n: int
    k: int
    q: Flat
    points: tuple[int, ...] = field(compare=False)

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise ValueError(f"need 0 <= k <= n, got k={self.k}, n={self.n}")
        if self.q.rank != self.n - self.k:
            raise ValueError("excluded subspace has the wrong rank")
        if len(self.points) != (1 << self.n) - (1 << (self.n - self.k)):
            raise ValueError("point count does not match 2^n - 2^(n-k)")
        qpts = set(self.q.points())
        if qpts & set(self.points):
            raise ValueError("points must avoid the excluded subspace")

    @property
    def matroid(self) -> BinaryMatroid:
        return BinaryMatroid(self.n, self.points)


def build_bose_burton(n: int, k: int) -> BoseBurton:
    """The canonical copy: Q spanned by the first n-k standard basis vectors."""
    _check_build_dim(n)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k!r}")
    q = span_flat([1 << i for i in range(n - k)], n)
    excluded = set(q.points())
    pts = tuple(p for p in range(1, 1 << n) if p not in excluded)
    return BoseBurton(n, k, q, pts)


def bb_hitting_set(b: BoseBurton) -> HittingSolution:
    """A verified triangle-hitting set of size 2^(n-1) - 2^(n-k).

    Take a hyperplane H containing the excluded subspace Q (canonically the
    kernel of the functional 2^(n-k)) and return the points of H outside Q.
    Any triangle has an even number of points off H, so it meets H, and a
    triangle of the geometry avoids Q, so it meets H minus Q.
    """
    if b.k < 2:
        return HittingSolution((), 0)
    f = 1 << (b.n - b.k)
    pts = tuple(p for p in b.points if parity(f & p) == 0)
    if len(pts) != (1 << (b.n - 1)) - (1 << (b.n - b.k)):
        raise AssertionError("hitting set has the wrong size")
    if not verify_hitting(b.matroid, pts):
        raise AssertionError("constructed hitting set misses a triangle")
    return HittingSolution(pts, len(pts))


def bose_burton_triangle_partition(b: BoseBurton) -> tuple[tuple[int, int, int], ...]:
    """Partition the k=2 geometry's points into 2^(n-2) disjoint triangles.

    The points form three cosets of the excluded subspace: a + Q, b + Q and
    a + b + Q with a = 2^(n-2), b = 2^(n-1).  With L a field element of
    GF(2^(n-2)) other than 0 and 1, the triples

        {a + q,  b + L*q,  a + b + (1+L)*q},   q in GF(2^(n-2)),

    sum to zero and sweep each coset bijectively, giving the partition.
    n = 3 is refused: GF(2) has no such L, and exhaustive search shows the
    six points there admit only one disjoint triangle, not 2^(n-2) = 2.
    """
    if b.k != 2:
        raise ValueError("triangle partition is defined for k = 2 only")
    n = b.n
    if n == 3:
        raise ValueError(
            "no triangle partition exists for n = 3: the six points off a "
            "line contain at most 1 disjoint triangle (2^(n-2) would be 2)"
        )
    if n == 2:
        return ((1, 2, 3),)
    ft = field_table(n - 2)
    lam = ft.generator
    a = 1 << (n - 2)
    c = 1 << (n - 1)
    tris = []
    for q in range(1 << (n - 2)):
        lq = ft.mul(lam, q)
        tri = tuple(sorted((a ^ q, c ^ lq, a ^ c ^ q ^ lq)))
        tris.append(tri)
    covered: set[int] = set()
    for tri in tris:
        if not is_triangle(tri, n) or covered & set(tri):
            raise AssertionError("coset triples failed to form a partition")
        covered.update(tri)
    if covered != set(b.points):
        raise AssertionError("coset triples do not cover the geometry")
    return tuple(sorted(tris))


def bb_packing_lower_bound(n: int, k: int) -> tuple[int, PackingSolution]:
    """An explicit packing of BB(n,k): peel 2^(n-2) partition triangles and
    recurse on BB(n-2,k-2) inside the stripped subspace.

    The nominal value is (1 - 4^(-floor(k/2)))/3 * 2^n.  When the recursion
    reaches the unsupported (3,2) base it packs the single triangle that
    actually exists there, so the returned bound can fall short of the
    nominal value by 1; compare against nominal_bb_bound to detect this.
    """
    _check_build_dim(n)
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k!r}, n={n!r}")
    tris: list[tuple[int, int, int]] = []
    m, j = n, k
    while j >= 2:
        if m == 2:
            tris.append((1, 2, 3))
            break
        if m == 3:
            # No full partition at this size; one triangle is optimal.
            bb = build_bose_burton(3, 2)
            tris.append(triangles(bb.matroid)[0])
            break
        tris.extend(bose_burton_triangle_partition(build_bose_burton(m, 2)))
        m, j = m - 2, j - 2
    packing = PackingSolution(tuple((tri, 1) for tri in sorted(tris)))
    target = build_bose_burton(n, k)
    if not verify_packing(unit_weights(target.matroid), packing):
        raise AssertionError("recursive packing is infeasible")
    return packing.objective, packing


def nominal_bb_bound(n: int, k: int) -> int:
    """The closed-form target (1 - 4^(-floor(k/2)))/3 * 2^n; integral in range."""
    q = k // 2
    num = (4**q - 1) * (1 << n)
    den = 3 * 4**q
    return num // den


def rainbow_coloring(m: BinaryMatroid) -> dict[int, int]:
    """3-color the points so every triangle gets all three colors.

    Needs critical number at most 2: some codimension-2 subspace Q avoids
    the points, and exactly three hyperplanes contain Q.  Each point lies
    in precisely one of the three (their functionals f1, f2, f1^f2 cannot
    all be nonzero on p and pairwise-sum to the third), and the three
    points of a triangle see distinct ones because their functional values
    are nonzero and sum to zero.  The rainbow property is still checked
    exhaustively.
    """
    if m.dim < 2:
        return {p: 1 for p in m.points}
    pts = set(m.points)
    chosen = None
    for basis in echelon_subspaces(m.dim, m.dim - 2):
        flat = span_flat(basis, m.dim)
        if not pts & set(flat.points()):
            chosen = flat
            break
    if chosen is None:
        raise ValueError("no codimension-2 subspace avoids the points (critical number > 2)")
    f1, f2, f3 = vanishing_functionals(chosen)
    colors = {}
    for p in m.points:
        hits = [i for i, f in enumerate((f1, f2, f3), start=1) if parity(f & p) == 0]
        if len(hits) != 1:
            raise AssertionError("point lies in several of the three hyperplanes")
        colors[p] = hits[0]
    for a, b, c in triangles(m):
        if {colors[a], colors[b], colors[c]} != {1, 2, 3}:
            raise AssertionError(f"triangle {(a, b, c)} is not rainbow")
    return colors
