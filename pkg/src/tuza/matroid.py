"""Simple binary matroids as point sets in PG(n-1,2).

A matroid here is a set of distinct nonzero bitmask points with an ambient
dimension; triangles are the 3-element zero-XOR subsets.  This module also
computes Fano-plane restrictions, isomorphism canonical forms under
GL(n,2), the critical number, and the text serialization used by the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .projective import (
    DimensionMismatch,
    LinearMap,
    check_dim,
    check_point,
    echelon_subspaces,
    parity,
    rank,
)


class UnsupportedDimension(ValueError):
    """The operation has a smaller ambient-dimension ceiling than the input."""


@dataclass(frozen=True)
class BinaryMatroid:
    """Ground set of distinct nonzero points with its ambient dimension."""

    dim: int
    points: tuple[int, ...]

    def __post_init__(self):
        check_dim(self.dim)
        pts = tuple(sorted(set(self.points)))
        for p in pts:
            check_point(p, self.dim)
        object.__setattr__(self, "points", pts)

    @property
    def size(self) -> int:
        return len(self.points)

    def point_set(self) -> frozenset[int]:
        return frozenset(self.points)

    def delete(self, p: int) -> "BinaryMatroid":
        return BinaryMatroid(self.dim, tuple(q for q in self.points if q != p))


@dataclass(frozen=True)
class WeightedMatroid:
    """A matroid with nonnegative integer element weights (keys cover points)."""

    matroid: BinaryMatroid
    weights: dict[int, int] = field(compare=False)

    def __post_init__(self):
        if set(self.weights) != set(self.matroid.points):
            raise ValueError("weight keys must be exactly the matroid points")
        for p, w in self.weights.items():
            if not isinstance(w, int) or not 0 <= w <= 2**31:
                raise ValueError(f"weight of {p:#x} must be an int in 0..2^31, got {w!r}")


def unit_weights(m: BinaryMatroid) -> WeightedMatroid:
    return WeightedMatroid(m, {p: 1 for p in m.points})


def fano() -> BinaryMatroid:
    """The Fano plane: all seven points of PG(2,2)."""
    return BinaryMatroid(3, tuple(range(1, 8)))


def triangles(m: BinaryMatroid) -> list[tuple[int, int, int]]:
    """All triangles (a < b < c, a^b^c = 0), in ascending lexicographic order."""
    pts = m.points
    ptset = set(pts)
    out = []
    for i, a in enumerate(pts):
        for b in pts[i + 1 :]:
            c = a ^ b
            if c > b and c in ptset:
                out.append((a, b, c))
    return out


def is_triangle(t, dim: int) -> bool:
    a, b, c = t
    for p in t:
        check_point(p, dim)
    return a != b and b != c and a != c and a ^ b ^ c == 0


@dataclass(frozen=True)
class Embedding:
    """An injective linear map carrying one matroid's points into another's."""

    phi: LinearMap
    source: BinaryMatroid
    target: BinaryMatroid

    def __post_init__(self):
        if self.phi.source_dim != self.source.dim or self.phi.target_dim != self.target.dim:
            raise DimensionMismatch("embedding map dimensions disagree with its matroids")
        if not self.phi.is_injective():
            raise ValueError("embedding map is not injective")
        tgt = self.target.point_set()
        for p in self.source.points:
            if self.phi.apply(p) not in tgt:
                raise ValueError(f"image of {p:#x} leaves the target ground set")


def contains_fano(m: BinaryMatroid) -> Embedding | None:
    """Find a Fano-plane restriction: a rank-3 triple whose seven XOR
    combinations all lie in the ground set.  Returns the witness embedding,
    or None."""
    if m.dim < 3:
        return None
    eset = m.point_set()
    pts = m.points
    for i, a in enumerate(pts):
        for b in pts[i + 1 :]:
            ab = a ^ b
            if ab not in eset:
                continue
            for c in pts:
                if c <= b or c == ab:
                    continue
                if a ^ c in eset and b ^ c in eset and ab ^ c in eset:
                    phi = LinearMap((a, b, c), 3, m.dim)
                    return Embedding(phi, fano(), m)
    return None


@lru_cache(maxsize=None)
def _gl_matrices(n: int) -> tuple[tuple[int, ...], ...]:
    """All invertible n x n GF(2) matrices as row-image tuples, n <= 4."""
    out: list[tuple[int, ...]] = []

    def extend(rows: tuple[int, ...], span: frozenset[int]):
        if len(rows) == n:
            out.append(rows)
            return
        for v in range(1, 1 << n):
            if v not in span:
                extend(rows + (v,), span | {s ^ v for s in span})

    extend((), frozenset({0}))
    return tuple(out)


@lru_cache(maxsize=None)
def gl_point_permutations(n: int) -> np.ndarray:
    """(|GL(n,2)|, 2^n) table: row g, column p holds the image of point p."""
    mats = np.array(_gl_matrices(n), dtype=np.uint16)
    size = 1 << n
    img = np.zeros((mats.shape[0], size), dtype=np.uint16)
    for i in range(n):
        img[:, 1 << i] = mats[:, i]
    for p in range(1, size):
        low = p & -p
        if p != low:
            img[:, p] = img[:, p ^ low] ^ img[:, low]
    return img


def _char_string(mask: int, npoints: int) -> str:
    return format(mask, f"0{npoints}b")


def canonical_form(m: BinaryMatroid) -> str:
    """Lexicographically minimal characteristic vector of the ground set over
    the GL(n,2) orbit, as a (2^n - 1)-character 0/1 string; position i is the
    membership of point i+1.  Equal strings iff isomorphic.  n <= 5.
    """
    n = m.dim
    npoints = (1 << n) - 1
    if n > 5:
        raise UnsupportedDimension("canonical_form supports ambient dimension <= 5")
    if n <= 4:
        perms = gl_point_permutations(n)
        masks = np.zeros(perms.shape[0], dtype=np.uint32)
        for p in m.points:
            masks |= np.uint32(1) << (npoints - perms[:, p].astype(np.uint32))
        return _char_string(int(masks.min()), npoints)
    return _char_string(_min_image_dim5(m), npoints)


def _coords_table(hpts: list[int]) -> list[int]:
    """4-bit coordinates over a greedy basis for a rank-4 point list."""
    span = {0: 0}
    nb = 0
    for p in hpts:
        if p not in span:
            idx = nb
            nb += 1
            for s, c in list(span.items()):
                span[s ^ p] = c | (1 << idx)
    table = [0] * 32
    for p, c in span.items():
        table[p] = c
    return table


def _min_image_dim5(m: BinaryMatroid) -> int:
    """Minimum characteristic mask over GL(5,2).

    The complement of the image is the image of the complement, so dense
    sets are handled by maximizing over the complement instead.
    """
    full = (1 << 31) - 1
    if m.size > 15:
        comp = tuple(p for p in range(1, 32) if p not in m.point_set())
        return full ^ _extreme_image_dim5(comp, maximize=True)
    return _extreme_image_dim5(m.points, maximize=False)


def _extreme_image_dim5(points: tuple[int, ...], *, maximize: bool) -> int:
    """Extremal characteristic mask over GL(5,2) images of the point set.

    A relabeling is the same thing as a choice of (preimage hyperplane h of
    the labels 1..15, an isomorphism of h, a preimage of label 16), so the
    15 hyperplane bits are extremized first with the rank-4 permutation
    table, then the 16 coset bits over exactly the maps attaining stage one.
    """
    pset = set(points)
    perms = gl_point_permutations(4).astype(np.uint32)
    one = np.uint32(1)
    best_prefix = -1 if maximize else 1 << 16
    attain: list[tuple[int, list[int], np.ndarray]] = []
    for fn in range(1, 32):
        hpts = [p for p in range(1, 32) if parity(fn & p) == 0]
        rho = _coords_table(hpts)
        masks = np.zeros(perms.shape[0], dtype=np.uint32)
        for p in hpts:
            if p in pset:
                masks |= one << (np.uint32(15) - perms[:, rho[p]])
        pm = int(masks.max() if maximize else masks.min())
        if (pm > best_prefix) if maximize else (pm < best_prefix):
            best_prefix = pm
            attain = []
        if pm == best_prefix:
            attain.append((fn, rho, masks))
    best_tail = -1 if maximize else 1 << 17
    for fn, rho, masks in attain:
        sub = perms[masks == best_prefix]
        off = [w for w in points if parity(fn & w) == 1]
        for u in (p for p in range(1, 32) if parity(fn & p) == 1):
            tails = np.zeros(sub.shape[0], dtype=np.uint32)
            for w in off:
                # w == u lands on column 0, whose image is 0: label 16 itself
                tails |= one << (np.uint32(15) - sub[:, rho[w ^ u]])
            tm = int(tails.max() if maximize else tails.min())
            if (tm > best_tail) if maximize else (tm < best_tail):
                best_tail = tm
    return (best_prefix << 16) | best_tail


def apply_matroid_map(phi: LinearMap, m: BinaryMatroid) -> BinaryMatroid:
    """Image matroid under an injective linear map."""
    return BinaryMatroid(phi.target_dim, tuple(phi.apply(p) for p in m.points))


def random_linear_map(dim: int, rng) -> LinearMap:
    """A uniformly random element of GL(dim,2)."""
    rows: list[int] = []
    span = {0}
    while len(rows) < dim:
        v = rng.randrange(1, 1 << dim)
        if v not in span:
            rows.append(v)
            span |= {s ^ v for s in span}
    return LinearMap(tuple(rows), dim, dim)


def critical_number(m: BinaryMatroid) -> int:
    """Smallest k >= 0 such that some rank-(n-k) flat avoids the ground set.

    Scans codimensions in increasing order, enumerating each level's flats
    through echelon bases of their vanishing-functional spaces; a level is
    skipped outright when the complement is too small to hold such a flat.
    Ambient dimension <= 12.
    """
    n = m.dim
    if n > 12:
        raise UnsupportedDimension("critical_number supports ambient dimension <= 12")
    eset = m.points
    complement = (1 << n) - 1 - len(eset)
    for k in range(n + 1):
        if (1 << (n - k)) - 1 > complement:
            continue
        for basis in echelon_subspaces(n, k):
            occupied = False
            for e in eset:
                if all(parity(f & e) == 0 for f in basis):
                    occupied = True
                    break
            if not occupied:
                return k
    raise AssertionError("unreachable: the rank-0 flat avoids every ground set")


def embed_weighted(mw: WeightedMatroid) -> WeightedMatroid:
    """Extend to the full point set of PG(n-1,2), giving new points weight 0."""
    m = mw.matroid
    full = BinaryMatroid(m.dim, tuple(range(1, 1 << m.dim)))
    w = {p: mw.weights.get(p, 0) for p in full.points}
    return WeightedMatroid(full, w)


def parse_matroid(text: str) -> WeightedMatroid:
    """Read the matroid text format.

    Line 1: `n <dim>`.  Then one point per line as a hex bitmask, and
    optional `w <point-hex> <weight>` lines (weight defaults to 1).  Blank
    lines and lines starting with '#' are skipped.
    """
    dim = None
    pts: list[int] = []
    weights: dict[int, int] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if dim is None:
            if parts[0] != "n" or len(parts) != 2:
                raise ValueError(f"expected header 'n <dim>', got {line!r}")
            dim = int(parts[1])
            continue
        if parts[0] == "w":
            if len(parts) != 3:
                raise ValueError(f"expected 'w <point> <weight>', got {line!r}")
            weights[int(parts[1], 16)] = int(parts[2])
        elif len(parts) == 1:
            pts.append(int(parts[0], 16))
        else:
            raise ValueError(f"unrecognized matroid line {line!r}")
    if dim is None:
        raise ValueError("missing 'n <dim>' header")
    m = BinaryMatroid(dim, tuple(pts))
    unknown = set(weights) - m.point_set()
    if unknown:
        raise ValueError(f"weights given for non-points: {sorted(unknown)}")
    full = {p: weights.get(p, 1) for p in m.points}
    return WeightedMatroid(m, full)


def write_matroid(mw: WeightedMatroid | BinaryMatroid) -> str:
    """Serialize to the matroid text format (points ascending, bare hex)."""
    if isinstance(mw, BinaryMatroid):
        mw = unit_weights(mw)
    m = mw.matroid
    lines = [f"n {m.dim}"]
    lines.extend(format(p, "x") for p in m.points)
    lines.extend(
        f"w {p:x} {mw.weights[p]}" for p in m.points if mw.weights[p] != 1
    )
    return "\n".join(lines) + "\n"
