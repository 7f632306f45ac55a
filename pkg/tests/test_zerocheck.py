from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mnk.coho import build_partial
from mnk.endo import classified_endo, enumerate_classified_lifts, lift_is_endomorphism
from mnk.ideal import Ideal, radical_contains
from mnk.polykernel import Polynomial, Ring, UsageError, parse_poly
from mnk.zerocheck import (
    ConstraintSystem,
    SymbolicPin,
    _in_linear_span,
    build_generator_system,
    build_lift_system,
    forced_zero,
    generic_assignment,
    gram_equations,
    lift_assignment,
    lift_determinant_certificate,
    proposition_system,
    solution_set_equals,
    sos_components,
    vanishing_ideal_of_points,
    verify_proposition,
)

U = Ring(("u", "v", "w"))


def system(*eqs, ring=U):
    polys = [parse_poly(ring, e) for e in eqs]
    return ConstraintSystem("generator", 0, 0, ring, polys, ["given"] * len(polys), {})


# ---- the decision procedure on hand-checkable systems ----

def test_small_forced():
    uv = Ring(("u", "v"))
    assert forced_zero(system("u^2", "v^2 + u*v", ring=uv)).forced_zero


def test_small_not_forced():
    uv = Ring(("u", "v"))
    rep = forced_zero(system("u*v", ring=uv))
    assert not rep.forced_zero and rep.outcome == "not_forced"
    assert system("u*v", ring=uv).is_solution({"u": 1, "v": 0})


def test_empty_system_not_forced():
    rep = forced_zero(system(ring=Ring(("u",))))
    assert not rep.forced_zero and rep.outcome == "not_forced"


def test_real_only():
    # u^2 + v^2 = 0 has complex solutions u = i v, but only 0 over R
    uv = Ring(("u", "v"))
    rep = forced_zero(system("u^2 + v^2", ring=uv))
    assert rep.forced_zero and rep.real_verdict and rep.complex_verdict is False
    assert rep.per_unknown["u"] == {"complex": False, "real": True}


def test_timeout_gives_undecided():
    rep = forced_zero(system("u^3*v - w^2 + u", "v^3*w - u^2 + v", "w^3*u - v^2 + w"), timeout=0)
    assert rep.outcome == "undecided" and not rep.forced_zero


def test_bad_strategy():
    with pytest.raises(UsageError):
        forced_zero(system("u"), strategy="guess")


def test_report_json_excludes_timing_by_default():
    rep = forced_zero(system("u", "v", "w"))
    assert "elapsed_sec" not in rep.to_json()
    assert "elapsed_sec" in rep.to_json(timing=True)


small_poly = st.builds(
    lambda terms: Polynomial(U, terms),
    st.dictionaries(st.tuples(*[st.integers(0, 2)] * 3), st.integers(-2, 2).map(Fraction), min_size=1, max_size=3),
)


@given(st.lists(small_poly, min_size=1, max_size=3), st.lists(small_poly, min_size=1, max_size=2))
@settings(max_examples=20)
def test_monotone(eqs, extra):
    base = ConstraintSystem("generator", 0, 0, U, list(eqs), ["x"] * len(eqs), {})
    first = forced_zero(base, timeout=20)
    if first.forced_zero:
        assert forced_zero(base.add_equations(extra, "extra"), timeout=20).forced_zero


@pytest.mark.parametrize("text,count", [
    ("u^2 + v^2", 2),
    ("u^2 + 2*u*v + 3*v^2", 2),
    ("u^4 + 3*v^2*w^2", 2),
    ("u^2 - v^2", 0),
    ("u*v", 0),
    ("u^3", 0),
])
def test_sos_components(text, count):
    f = parse_poly(U, text)
    comps = sos_components(f)
    assert len(comps) == count
    if comps:
        # a common zero of the components is a zero of f
        for c in comps:
            assert radical_contains(Ideal.of(comps), c)


# ---- generator-level systems ----

@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 2)])
@pytest.mark.parametrize("m0", [1, 2])
def test_classified_coefficients_solve_the_system(n, k, m0):
    pres = build_partial(n, k)
    c1 = pres.ring.var("c1")
    cs = build_generator_system(n, k, {"c1": c1.scale(m0)}, pres=pres)
    zero = {v: 0 for v in cs.unknown_names}
    if m0 == 0:
        assert cs.is_solution(zero)
    for sign in (1, -1):
        h = classified_endo(n, k, m0, sign)
        assert cs.is_solution(generic_assignment(cs, h.images))


def test_zero_assignment_solves_pinned_systems():
    for prop, n, k in [("P1_4", 4, 2), ("P6_2", 4, 2), ("EX7_1", 5, 3), ("P6_5", 4, 2)]:
        cs = proposition_system(prop, n, k)
        assert cs.is_solution({v: 0 for v in cs.unknown_names})


def test_pin_errors():
    pres = build_partial(3, 1)
    r = pres.ring
    with pytest.raises(UsageError):
        build_generator_system(3, 1, {"c1": r.var("e")}, pres=pres)
    with pytest.raises(UsageError):
        build_generator_system(3, 1, {"q": r.zero()}, pres=pres)
    with pytest.raises(UsageError):
        build_generator_system(7, 1, {})
    with pytest.raises(UsageError):
        build_generator_system(3, 1, {"c1": SymbolicPin("m", r.var("c1")), "e": SymbolicPin("m", r.var("e"))},
                               pres=pres)


def test_symbolic_pin_2_1():
    # c1 -> m c1: over the locus m != 0 the Euler class goes to +-m e and nothing else
    pres = build_partial(2, 1)
    c1 = pres.ring.var("c1")
    cs = build_generator_system(2, 1, {"c1": SymbolicPin("m", c1)}, pres=pres)
    assert set(cs.unknown_names) == {"m", "e[c1]", "e[e]"}
    # saturate by m with an extra variable z, m z = 1
    W = Ring(cs.unknown_names + ("z",))
    lift = lambda p: Polynomial(W, {e + (0,): c for e, c in p.terms.items()})  # noqa: E731
    eqs = [lift(e) for e in cs.equations] + [parse_poly(W, "m*z - 1")]
    spec = Ideal.of(eqs)
    m, a, b = W.var("m"), W.var("e[c1]"), W.var("e[e]")
    assert radical_contains(spec, a)
    assert radical_contains(spec, b * b - m * m)
    assert not radical_contains(spec, b - m)


def test_uniqueness_3_1_small_m():
    pres = build_partial(3, 1)
    cs = build_generator_system(3, 1, {"c1": pres.ring.var("c1").scale(2)}, pres=pres)
    pts = [generic_assignment(cs, classified_endo(3, 1, 2, s).images) for s in (1, -1)]
    rep = solution_set_equals(cs, pts, timeout=120)
    assert rep.equal and all(rep.points_satisfy)
    # a third point is not a solution
    wrong = dict(pts[0])
    wrong[next(iter(wrong))] += 1
    assert not cs.is_solution(wrong)


def test_vanishing_ideal_of_points():
    pts = [{"u": 1, "v": 0, "w": 2}, {"u": -1, "v": 3, "w": 2}, {"u": 0, "v": 0, "w": 2}]
    gens = vanishing_ideal_of_points(U, pts)
    cs = ConstraintSystem("generator", 0, 0, U, gens, ["g"] * len(gens), {})
    assert all(cs.is_solution(p) for p in pts)
    assert not cs.is_solution({"u": 1, "v": 3, "w": 2})


# ---- lift-level systems ----

@pytest.mark.parametrize("n", [3, 4])
def test_gram_extraction_equivalent(n):
    cs = build_lift_system(n, 1, "c1_zero")
    deg4 = [e for e, p in zip(cs.equations, cs.provenance) if p.startswith("I1[")]
    gram = gram_equations(cs)
    # same linear span, checked in both directions
    assert _in_linear_span(deg4, gram)
    assert _in_linear_span(gram, deg4)


def test_gram_extraction_fails_at_n2():
    # t1 t2 is itself a relation for n = 2, so the off-diagonal Gram entry is free
    cs = build_lift_system(2, 1, "c1_zero")
    deg4 = [e for e, p in zip(cs.equations, cs.provenance) if p.startswith("I1[")]
    assert _in_linear_span(gram_equations(cs), deg4)
    assert not _in_linear_span(deg4, gram_equations(cs))


def test_nonzero_lift_killing_c1_at_n2():
    H = [[0, 0], [1, 1]]
    assert lift_is_endomorphism(H, 2)
    cs = build_lift_system(2, 1, "c1_zero")
    assert cs.is_solution(lift_assignment(H))
    rep = forced_zero(cs)
    assert not rep.forced_zero and rep.outcome == "not_forced"


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2)])
def test_classified_lifts_solve_unpinned_part(n, k):
    # every classified lift satisfies the membership equations, never the c1 pin
    cs = build_lift_system(n, k, "c1_zero")
    member = [i for i, p in enumerate(cs.provenance) if p.startswith("I")]
    for L in enumerate_classified_lifts(n, k, 2)[:4]:
        vals = cs.evaluate(lift_assignment(L.H))
        assert all(vals[i] == 0 for i in member)
        assert any(v for v in vals)


@pytest.mark.parametrize("prop,n,k", [("P1_5", 3, 1), ("P1_5", 3, 2), ("P6_4", 3, 1)])
def test_certificate_agrees_with_staged_route(prop, n, k):
    cs = proposition_system(prop, n, k)
    cert = forced_zero(cs, complex_budget=5)
    staged = forced_zero(cs, complex_budget=5, strategy="staged")
    assert cert.stage.startswith("real:determinant")
    assert not staged.stage.startswith("real:determinant")
    assert cert.forced_zero and staged.forced_zero


def test_certificate_declines_when_not_forced():
    assert lift_determinant_certificate(build_lift_system(2, 1, "c1_zero")) is None
    assert lift_determinant_certificate(system("u")) is None


def test_lift_errors():
    with pytest.raises(UsageError):
        build_lift_system(4, 1, "euler_zero")
    with pytest.raises(UsageError):
        build_lift_system(6, 4, "c1_zero")
    with pytest.raises(UsageError):
        build_lift_system(3, 1, "c2_zero")


# ---- propositions ----

@pytest.mark.parametrize("prop,n,k", [
    ("P6_5", 3, 2), ("EX7_1", 4, 2), ("EX7_2", 5, 3), ("P6_4", 2, 1), ("P6_2", 3, 2), ("XX", 3, 1), ("P1_4", 3, 3),
])
def test_inadmissible(prop, n, k):
    with pytest.raises(UsageError):
        proposition_system(prop, n, k)


def test_p6_2_3_1_matches_hand_solution():
    # pins p1 -> 0 and h(e)^2 = h(p2) = 0 at (3,1); the rows force the rest to vanish
    rep = verify_proposition("P6_2", 3, 1)
    assert rep.forced_zero and rep.real_verdict


def test_ex7_1_forces_m():
    rep = verify_proposition("EX7_1", 5, 3, complex_budget=30)
    assert rep.forced_zero
    assert rep.per_unknown["m"]["real"] and rep.per_unknown["m"]["complex"]
    assert any("m forced to 0" in s for s in rep.notes)
