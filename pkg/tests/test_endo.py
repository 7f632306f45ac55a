from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from mnk.coho import build_flag, build_partial, complex_dim, euler_characteristic
from mnk.endo import (
    GeneratorEndo,
    adams_endo,
    classified_endo,
    compose,
    count_lifts,
    endo_matrix,
    enumerate_classified_lifts,
    gram_report,
    is_ring_endomorphism,
    lefschetz,
    lefschetz_by_trace,
    lefschetz_forms,
    lift_is_endomorphism,
    lift_restricts_to,
    zero_endo,
)
from mnk.polykernel import UsageError

PAIRS = [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (5, 2), (5, 3), (6, 4)]
rationals = st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(lambda x: x != 0)


@given(st.sampled_from(PAIRS), rationals, st.sampled_from([1, -1]))
@settings(max_examples=40, deadline=None)
def test_classified_maps_are_endomorphisms(nk, m, sign):
    assert is_ring_endomorphism(classified_endo(*nk, m, sign))


@given(st.sampled_from(PAIRS[:6]), rationals, rationals, st.sampled_from([1, -1]), st.sampled_from([1, -1]))
@settings(max_examples=25, deadline=None)
def test_composition_multiplies_types(nk, m1, m2, s1, s2):
    n, k = nk
    got = compose(classified_endo(n, k, m1, s1), classified_endo(n, k, m2, s2))
    assert got == classified_endo(n, k, m1 * m2, s1 * s2)


@pytest.mark.parametrize("n,k", PAIRS[:6])
def test_adams_is_classified_plus(n, k):
    for m in (1, 2, 3, -1):
        assert adams_endo(n, k, m) == classified_endo(n, k, m, 1)


def test_zero_endo_and_bad_images():
    assert is_ring_endomorphism(zero_endo(3, 1))
    pres = build_partial(2, 1)
    c1, e = pres.ring.gens()
    with pytest.raises(UsageError):
        GeneratorEndo(pres, {"c1": c1 * c1, "e": e})
    with pytest.raises(UsageError):
        GeneratorEndo(pres, {"c1": c1})
    with pytest.raises(UsageError):
        classified_endo(3, 1, 0)
    with pytest.raises(UsageError):
        classified_endo(3, 1, 2, sign=3)


def test_non_endomorphism_detected():
    pres = build_partial(2, 1)
    c1, e = pres.ring.gens()
    # c1 e -> c1^2 = -e^2, not zero
    assert not is_ring_endomorphism(GeneratorEndo(pres, {"c1": c1, "e": c1}))
    assert not lift_is_endomorphism([[1, 1], [0, 1]], 2)


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 2)])
@pytest.mark.parametrize("m", [1, 2, Fraction(-1, 2)])
def test_lifts(n, k, m):
    flag = build_flag(n)
    targets = {s: classified_endo(n, k, m, s) for s in (1, -1)}
    lifts = enumerate_classified_lifts(n, k, m)
    assert len(lifts) == factorial(k) * factorial(n - k) * 2 ** (n - k)
    for L in lifts:
        assert lift_is_endomorphism(L.H, n, flag)
        g = gram_report(L.H)
        assert g.is_scalar and g.D == Fraction(m) ** 2
        assert lift_restricts_to(L.H, targets[L.sign], flag)
        assert not lift_restricts_to(L.H, targets[-L.sign], flag)
    c = count_lifts(n, k, m)
    assert c.total == c.expected and c.per_sign[1] == c.per_sign[-1] == c.total // 2


def test_gram_report_non_scalar():
    g = gram_report([[1, 1], [0, 1]])
    assert not g.is_scalar and g.D is None and g.off_diagonal_max == 1


@pytest.mark.parametrize("n,k", PAIRS)
def test_lefschetz_one_is_euler(n, k):
    assert lefschetz(n, k, 1) == euler_characteristic(n, k)


@pytest.mark.parametrize("n,k", PAIRS)
@pytest.mark.parametrize("m", [1, 2, 3, Fraction(1, 2), -1, -2])
def test_lefschetz_forms_agree(n, k, m):
    rep = lefschetz_forms(n, k, m)
    assert rep.split == rep.direct
    if m > 0:
        assert rep.direct > 0


def test_lefschetz_odd_dimension_minus_one():
    assert complex_dim(3, 2) == 5
    assert lefschetz(3, 2, -1) == 0
    assert lefschetz(2, 1, 2) == 9


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 2)])
@pytest.mark.parametrize("m", [2, -1, Fraction(1, 2)])
def test_trace_route_matches_formula(n, k, m):
    # independent route: traces of the induced maps on standard monomial bases
    assert lefschetz_by_trace(classified_endo(n, k, m, 1)) == lefschetz(n, k, m)


def test_endo_matrix_identity():
    ident = classified_endo(4, 2, 1)
    for d in (0, 2, 4, 8):
        mat = endo_matrix(ident, d)
        assert all(mat[i][j] == (1 if i == j else 0) for i in range(len(mat)) for j in range(len(mat)))


def test_lefschetz_bad_betti_length():
    with pytest.raises(UsageError):
        lefschetz_forms(3, 1, 2, d=[1, 1])
