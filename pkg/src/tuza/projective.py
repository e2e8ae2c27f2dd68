"""GF(2) linear algebra over the points of PG(n-1,2).

A point is a nonzero int bitmask: bit i is coordinate i of a vector in
GF(2)^n.  The ambient dimension n (1 <= n <= 16) is never carried by the
point itself; containers (flats, linear maps, field tables, matroids) record
it and every operation validates points against it, raising
DimensionMismatch on disagreement.  Three points form a triangle exactly
when they are distinct and XOR to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

MAX_DIM = 16


class DimensionMismatch(ValueError):
    """A point does not fit its ambient dimension, or containers disagree."""


def check_dim(dim: int) -> None:
    # Dimension 0 is legal for degenerate containers (e.g. the cocycle
    # matroid of a forest); it admits no points at all.
    if not isinstance(dim, int) or not 0 <= dim <= MAX_DIM:
        raise DimensionMismatch(f"ambient dimension must be in 0..{MAX_DIM}, got {dim!r}")


def check_point(p: int, dim: int) -> None:
    if not isinstance(p, int) or not 0 < p < (1 << dim):
        raise DimensionMismatch(f"point {p!r} is not a nonzero {dim}-bit mask")


def parity(x: int) -> int:
    return x.bit_count() & 1


def _insert(pivots: dict[int, int], v: int) -> int:
    """Reduce v against an echelon basis keyed by leading bit; insert if new.

    Returns the residue (0 when v was already in the span).
    """
    while v:
        h = v.bit_length() - 1
        if h in pivots:
            v ^= pivots[h]
        else:
            pivots[h] = v
            return v
    return 0


def rank(points, dim: int) -> int:
    """GF(2) rank of a collection of points in ambient dimension dim."""
    check_dim(dim)
    pivots: dict[int, int] = {}
    for p in points:
        check_point(p, dim)
        _insert(pivots, p)
    return len(pivots)


def _reduced_basis(pivots: dict[int, int]) -> tuple[int, ...]:
    """Fully reduce an echelon basis so each pivot bit appears in one row only."""
    rows = dict(pivots)
    for h in sorted(rows, reverse=True):
        for g in rows:
            if g != h and (rows[g] >> h) & 1:
                rows[g] ^= rows[h]
    return tuple(sorted(rows.values()))


@dataclass(frozen=True)
class Flat:
    """A linear subspace, stored as its canonical reduced basis.

    basis rows have distinct leading bits and are fully reduced, so two flats
    are equal as subspaces iff they are equal as dataclasses.
    """

    basis: tuple[int, ...]
    dim: int

    def __post_init__(self):
        check_dim(self.dim)
        pivots: dict[int, int] = {}
        for b in self.basis:
            check_point(b, self.dim)
            if _insert(pivots, b) == 0:
                raise ValueError("flat basis is linearly dependent")
        if self.basis != _reduced_basis(pivots):
            raise ValueError("flat basis is not in canonical reduced form")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, p: int) -> bool:
        check_point(p, self.dim)
        v = p
        for b in sorted(self.basis, reverse=True):
            if v.bit_length() == b.bit_length():
                v ^= b
        return v == 0

    def points(self) -> list[int]:
        """All nonzero points of the flat, ascending; 2^rank - 1 of them."""
        pts = {0}
        for b in self.basis:
            pts |= {x ^ b for x in pts}
        pts.discard(0)
        return sorted(pts)


def span_flat(points, dim: int) -> Flat:
    """The flat spanned by the given points (possibly empty)."""
    check_dim(dim)
    pivots: dict[int, int] = {}
    for p in points:
        check_point(p, dim)
        _insert(pivots, p)
    return Flat(_reduced_basis(pivots), dim)


def kernel_flat(functional: int, dim: int) -> Flat:
    """The hyperplane {p : <functional, p> = 0} as a Flat of rank dim-1."""
    check_point(functional, dim)
    h = functional.bit_length() - 1
    basis = []
    for i in range(dim):
        if i == h:
            continue
        v = 1 << i
        if (functional >> i) & 1:
            v |= 1 << h
        basis.append(v)
    return span_flat(basis, dim)


def vanishing_functionals(q: Flat) -> list[int]:
    """Nonzero functionals vanishing on the flat, ascending.

    There are 2^(dim - rank) - 1 of them; each corresponds to a hyperplane
    containing the flat.
    """
    out = []
    for f in range(1, 1 << q.dim):
        if all(parity(f & b) == 0 for b in q.basis):
            out.append(f)
    return out


def hyperplanes_containing(q: Flat) -> list[Flat]:
    """All rank-(dim-1) flats containing q; empty when q already has full rank."""
    return [kernel_flat(f, q.dim) for f in vanishing_functionals(q)]


@dataclass(frozen=True)
class LinearMap:
    """A GF(2)-linear map given by the images of the standard basis vectors."""

    images: tuple[int, ...]
    source_dim: int
    target_dim: int

    def __post_init__(self):
        check_dim(self.source_dim)
        check_dim(self.target_dim)
        if len(self.images) != self.source_dim:
            raise DimensionMismatch("need one image per source basis vector")
        for v in self.images:
            if not isinstance(v, int) or not 0 <= v < (1 << self.target_dim):
                raise DimensionMismatch(f"image {v!r} is not a {self.target_dim}-bit mask")

    def is_injective(self) -> bool:
        return rank([v for v in self.images if v], self.target_dim) == self.source_dim

    def apply(self, p: int) -> int:
        check_point(p, self.source_dim)
        out = 0
        for i in range(self.source_dim):
            if (p >> i) & 1:
                out ^= self.images[i]
        if out == 0:
            raise ValueError(f"map sends point {p:#x} to zero: not injective on this input")
        return out


def apply_map(phi: LinearMap, p: int) -> int:
    """Image of a point under a linear map; rejects zero output (non-injective)."""
    return phi.apply(p)


def identity_map(dim: int) -> LinearMap:
    check_dim(dim)
    return LinearMap(tuple(1 << i for i in range(dim)), dim, dim)


# Primitive polynomials over GF(2), one per degree, from the standard table
# used by CRC and Reed-Solomon implementations.  Bit i is the coefficient of
# x^i, leading term included.
PRIMITIVE_POLYS = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}


@dataclass(frozen=True)
class FieldTable:
    """Log/antilog tables for GF(2^degree) with a fixed primitive polynomial.

    antilog[i] is the i-th power of the generator x; log inverts it on the
    nonzero field elements.
    """

    degree: int
    poly: int
    antilog: tuple[int, ...]
    log: tuple[int, ...]

    @property
    def order(self) -> int:
        return (1 << self.degree) - 1

    @property
    def generator(self) -> int:
        return self.antilog[1 % self.order]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.antilog[(self.log[a] + self.log[b]) % self.order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.antilog[(-self.log[a]) % self.order]


@lru_cache(maxsize=None)
def field_table(degree: int) -> FieldTable:
    """Build the GF(2^degree) tables, 1 <= degree <= 16.

    The builder checks that repeated multiplication by x enumerates every
    nonzero element exactly once, which certifies the polynomial primitive.
    """
    if degree not in PRIMITIVE_POLYS:
        raise DimensionMismatch(f"field degree must be in 1..{MAX_DIM}, got {degree!r}")
    poly = PRIMITIVE_POLYS[degree]
    size = 1 << degree
    antilog = []
    log = [0] * size
    x = 1
    for i in range(size - 1):
        if x == 0 or (i > 0 and x == 1):
            raise AssertionError(f"polynomial {poly:#x} is not primitive for degree {degree}")
        antilog.append(x)
        log[x] = i
        x <<= 1
        if x & size:
            x ^= poly
    if x != 1 or len(set(antilog)) != size - 1:
        raise AssertionError(f"polynomial {poly:#x} is not primitive for degree {degree}")
    return FieldTable(degree, poly, tuple(antilog), tuple(log))


def gaussian_binomial(n: int, k: int) -> int:
    """Number of k-dimensional subspaces of GF(2)^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (k - i)) - 1
    return num // den


def echelon_subspaces(n: int, k: int):
    """Yield a canonical basis for every k-dim subspace of GF(2)^n.

    Bases are k-tuples of masks in reduced row echelon form over the bit
    positions; the count matches gaussian_binomial(n, k).
    """
    if k == 0:
        yield ()
        return
    for pivots in combinations(range(n - 1, -1, -1), k):
        free_slots = [[j for j in range(p) if j not in pivots] for p in pivots]
        for choice in product(*[range(1 << len(s)) for s in free_slots]):
            rows = []
            for i, p in enumerate(pivots):
                row = 1 << p
                for bit, j in enumerate(free_slots[i]):
                    if (choice[i] >> bit) & 1:
                        row |= 1 << j
                rows.append(row)
            yield tuple(rows)
