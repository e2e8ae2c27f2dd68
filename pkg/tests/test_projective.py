"""Linear algebra layer checked against independent matrix oracles."""

import random

import numpy as np
import pytest

from tuza.projective import (
    DimensionMismatch,
    Flat,
    LinearMap,
    echelon_subspaces,
    field_table,
    gaussian_binomial,
    hyperplanes_containing,
    kernel_flat,
    parity,
    rank,
    span_flat,
    vanishing_functionals,
)


def rank_oracle(points, dim):
    """GF(2) rank via numpy row reduction; no shared code with the library."""
    if not points:
        return 0
    m = np.array([[(p >> j) & 1 for j in range(dim)] for p in points], dtype=np.uint8)
    r = 0
    for col in range(dim):
        rows = [i for i in range(r, m.shape[0]) if m[i, col]]
        if not rows:
            continue
        m[[r, rows[0]]] = m[[rows[0], r]]
        for i in range(m.shape[0]):
            if i != r and m[i, col]:
                m[i] ^= m[r]
        r += 1
    return r


def clmul_mod(a, b, poly, degree):
    """Schoolbook carry-less multiply reduced by the field polynomial."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
    for shift in range(acc.bit_length() - 1, degree - 1, -1):
        if (acc >> shift) & 1:
            acc ^= poly << (shift - degree)
    return acc


def test_parity():
    assert parity(0) == 0
    assert parity(0b1011) == 1
    assert parity(0b1111) == 0


def test_rank_against_matrix_oracle():
    rng = random.Random(11)
    for _ in range(300):
        dim = rng.randint(1, 12)
        pts = [rng.randrange(1, 1 << dim) for _ in range(rng.randint(0, 8))]
        assert rank(pts, dim) == rank_oracle(pts, dim)


def test_rank_rejects_out_of_range():
    with pytest.raises(DimensionMismatch):
        rank([4], 2)
    with pytest.raises(DimensionMismatch):
        rank([0], 2)


def test_span_flat_closure():
    f = span_flat([0b001, 0b010], 3)
    assert f.rank == 2
    assert sorted(f.points()) == [1, 2, 3]
    # spanning the spanned points changes nothing
    assert span_flat(f.points(), 3).points() == f.points()


def test_flat_contains_matches_points():
    rng = random.Random(5)
    for _ in range(50):
        dim = rng.randint(1, 8)
        gens = [rng.randrange(1, 1 << dim) for _ in range(rng.randint(1, 4))]
        f = span_flat(gens, dim)
        members = set(f.points())
        assert len(members) == (1 << f.rank) - 1
        for p in range(1, 1 << dim):
            assert f.contains(p) == (p in members)


def test_kernel_flat_is_functional_kernel():
    for dim in (2, 3, 5):
        for functional in range(1, 1 << dim):
            f = kernel_flat(functional, dim)
            assert f.rank == dim - 1
            for p in f.points():
                assert parity(functional & p) == 0


def test_vanishing_functionals_cut_out_the_flat():
    f = span_flat([0b0011, 0b0100], 4)
    fns = vanishing_functionals(f)
    assert len(fns) == (1 << (4 - f.rank)) - 1
    assert fns == sorted(fns)
    for p in f.points():
        assert all(parity(fn & p) == 0 for fn in fns)
    # no point outside the flat vanishes on all of them
    for p in range(1, 16):
        if not f.contains(p):
            assert any(parity(fn & p) == 1 for fn in fns)


def test_hyperplanes_containing_count():
    f = span_flat([1, 2], 4)
    hs = hyperplanes_containing(f)
    assert len(hs) == 3
    for h in hs:
        assert h.rank == 3
        assert all(h.contains(p) for p in f.points())


def test_linear_map_application():
    phi = LinearMap((0b01, 0b11), 2, 2)
    assert phi.is_injective()
    assert phi.apply(0b10) == 0b11
    assert phi.apply(0b11) == 0b10
    assert not LinearMap((0b01, 0b01), 2, 2).is_injective()


def test_field_table_against_clmul_oracle():
    for degree in range(1, 9):
        ft = field_table(degree)
        size = 1 << degree
        pairs = (
            [(a, b) for a in range(size) for b in range(size)]
            if degree <= 5
            else [(random.Random(degree).randrange(size), random.Random(degree + 99).randrange(size)) for _ in range(200)]
        )
        for a, b in pairs:
            assert ft.mul(a, b) == clmul_mod(a, b, ft.poly, degree)


def test_field_inverse():
    ft = field_table(6)
    for a in range(1, 64):
        assert ft.mul(a, ft.inv(a)) == 1


def test_generator_order_is_full():
    for degree in (2, 3, 8, 12):
        ft = field_table(degree)
        seen = set()
        x = 1
        for _ in range(ft.order):
            seen.add(x)
            x = ft.mul(x, ft.generator)
        assert len(seen) == ft.order
        assert x == 1


def test_gaussian_binomial_counts_echelon_enumeration():
    for n in range(0, 7):
        for k in range(0, n + 1):
            subs = list(echelon_subspaces(n, k))
            assert len(subs) == gaussian_binomial(n, k)
            assert len({tuple(sorted(b)) for b in subs}) == len(subs)
            for basis in subs:
                assert rank_oracle(list(basis), max(n, 1)) == k


def test_echelon_subspaces_span_distinct_flats():
    flats = {tuple(span_flat(b, 5).points()) for b in echelon_subspaces(5, 2)}
    assert len(flats) == gaussian_binomial(5, 2)
