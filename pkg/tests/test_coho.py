from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from mnk.coho import (
    build_flag,
    build_partial,
    betti,
    complex_dim,
    embedding,
    euler_characteristic,
    flag_ring,
    hilbert_oracle,
    partial_ring,
    pullback,
    q_polynomial,
    relation_rows,
    top_row,
    weyl_index,
)
from mnk.ideal import contains
from mnk.polykernel import UsageError, elementary_symmetric, parse_poly, power_sum

PAIRS = [(n, k) for n in range(2, 7) for k in range(1, n)]
SMALL = [(n, k) for (n, k) in PAIRS if n <= 5]


def test_ring_shapes():
    r = partial_ring(5, 3)
    assert r.names == ("c1", "c2", "c3", "p1", "e")
    assert r.weights == (2, 4, 6, 4, 4)
    assert partial_ring(3, 2).names == ("c1", "c2", "e")
    for bad in [(1, 1), (3, 3), (3, 0), (2, 5)]:
        with pytest.raises(UsageError):
            partial_ring(*bad)


def test_relations_2_1():
    rows = relation_rows(2, 1)
    r = rows[0].ring
    assert rows == [parse_poly(r, "c1^2 + e^2"), parse_poly(r, "c1*e")]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("a", [1, 2, 3, 4, 5])
def test_q_is_elementary_in_squares(a, k):
    n = k + 1
    q = q_polynomial(a, k, partial_ring(n, k))
    ts = flag_ring(n).gens()[:k]
    want = elementary_symmetric(a, [t * t for t in ts]) if a <= k else flag_ring(n).zero()
    assert pullback(q, n, k) == want


@pytest.mark.parametrize("n,k", SMALL)
def test_rows_pull_back_to_symmetric_functions(n, k):
    # R_j maps to e_j(t_1^2, ..., t_n^2), c_k e maps to t_1 ... t_n
    sq = [t * t for t in flag_ring(n).gens()]
    rows = relation_rows(n, k)
    for j, row in enumerate(rows[:-1], start=1):
        assert pullback(row, n, k) == elementary_symmetric(j, sq)
    prod = flag_ring(n).one()
    for t in flag_ring(n).gens():
        prod = prod * t
    assert pullback(rows[-1], n, k) == prod


@pytest.mark.parametrize("n,k", PAIRS)
def test_top_row_redundant(n, k):
    assert contains(build_partial(n, k).gb, top_row(n, k))


@pytest.mark.parametrize("n", range(2, 7))
def test_flag_ring(n):
    flag = build_flag(n)
    dims = flag.dimensions()
    assert dims.total() == 2 ** (n - 1) * factorial(n)
    assert dims.top_degree() == 2 * n * (n - 1)
    ts = flag.ring.gens()
    for i in range(1, n + 1):
        assert contains(flag.gb, power_sum(2 * i, ts))


@pytest.mark.parametrize("n,k", PAIRS)
def test_betti_against_oracle(n, k):
    d = betti(n, k)
    N = complex_dim(n, k)
    assert d == hilbert_oracle(n, k)
    assert d == d[::-1]
    assert d[0] == 1 and len(d) == N + 1
    assert sum(d) == weyl_index(n, k) == 2 ** k * comb(n, k)


def test_betti_spot_values():
    assert betti(2, 1) == [1, 2, 1]
    assert betti(3, 1) == [1, 1, 2, 1, 1]
    assert euler_characteristic(5, 3) == 80


def test_hilbert_oracle_inexact_division_fails():
    from mnk.coho import _divide_exact

    with pytest.raises(ArithmeticError):
        _divide_exact([1, 0, 1], [1, 1])


@given(st.sampled_from(SMALL), st.data())
@settings(max_examples=30, deadline=None)
def test_pullback_is_ring_map(nk, data):
    n, k = nk
    ring = partial_ring(n, k)
    names = ring.names
    a, b = (data.draw(st.sampled_from(names)) for _ in range(2))
    x, y = ring.var(a), ring.var(b)
    assert pullback(x * y + x, n, k) == pullback(x, n, k) * pullback(y, n, k) + pullback(x, n, k)


@pytest.mark.parametrize("n,k", SMALL)
def test_pullback_preserves_degree(n, k):
    emb = embedding(n, k)
    for name, w in zip(emb.source.names, emb.source.weights):
        img = emb.images[name]
        assert img.is_homogeneous() and img.degree() == w


def test_cache_dir_used(tmp_path):
    p1 = build_partial(4, 2, cache_dir=tmp_path)
    assert list(tmp_path.glob("gb-partial-n4-k2-*.json"))
    from mnk.coho import _build_partial

    _build_partial.cache_clear()
    p2 = build_partial(4, 2, cache_dir=tmp_path)
    assert p2.cache_hit and p2.gb.basis == p1.gb.basis
