import pytest
from hypothesis import assume, given, settings, strategies as st

from pcurves.constructs import (
    NodalRecord,
    Z4FamilyParams,
    as_construct,
    as_curve_of_genus,
    as_jumps_for,
    fiber_direct_prank,
    fiber_product,
    nodal_prank,
    z4_degeneration,
    z4_family,
    z4_prank_survey,
    z4_tuples,
)
from pcurves.curves import INF, CurveError, as_genus, as_prank, as_reduce
from pcurves.ffpoly import FieldSpec, Poly, parse_poly
from pcurves.hyperaut import classify_involutions, has_order_ell, reduced_aut
from pcurves.prank import prank, zeta_prank

F3, F5, F7 = FieldSpec(3), FieldSpec(5), FieldSpec(7)


def P(text, spec=F3):
    return parse_poly(text, spec)


# -- fibre products -------------------------------------------------------


def test_fiber_product_sharing_two_branch_points():
    # B1 = {0, 1, 2, inf}, B2 = {0, +-i, inf}
    f1 = P("x^3-x")
    f2 = P("x^3+x")
    K = fiber_product(f1, f2)
    assert K.shared == 2
    assert K.branch_sizes == (4, 4, 4)
    assert K.genera == (1, 1, 1)
    assert fiber_direct_prank(K) == K.predicted_prank


def test_fiber_product_degenerate():
    f = P("x^3+x^2+2")
    with pytest.raises(CurveError):
        fiber_product(f, f)


def test_fiber_product_disjoint_quartics():
    f1 = P("x^4+x+2", F5)
    f2 = P("x^4+2", F5)
    assert f1.gcd(f2).degree == 0
    K = fiber_product(f1, f2)
    assert K.branch_sizes == (4, 4, 8)
    assert K.genera == (1, 1, 3)
    assert K.total_genus == 5


def test_third_quotient_is_symmetric_difference():
    f1 = P("x^3+x^2+2")
    f2 = P("x^4+x^2+2")
    K = fiber_product(f1, f2)
    b1, b2, b3 = K.branch_sizes
    assert b3 == b1 + b2 - 2 * K.shared
    assert (K.c3 is None) == (b3 <= 2)


def test_modes():
    x = Poly.x(F5)
    lin = [x - k for k in range(5)]
    # even: {0,1,2,inf} against {0,1,2,3}
    K = fiber_product(lin[0] * lin[1] * lin[2], lin[0] * lin[1] * lin[2] * lin[3], mode="even")
    assert K.c3 is None and K.total_genus == 2
    assert fiber_direct_prank(K) == K.predicted_prank
    # odd: {0,1,2,inf} inside {0,1,2,3,4,inf}
    K = fiber_product(lin[0] * lin[1] * lin[2] * lin[3] * lin[4], lin[0] * lin[1] * lin[2], mode="odd")
    assert K.branch_sizes == (6, 4, 2)
    with pytest.raises(CurveError):
        fiber_product(lin[0] * lin[1] * lin[2], lin[0] * lin[3] * lin[4], mode="even")


def _small_pairs():
    """Pairs of squarefree monic cubics/quartics over F_3 with total genus <= 4."""
    import itertools
    fs = []
    for deg in (3, 4):
        for cs in itertools.product(range(3), repeat=deg):
            f = Poly.from_codes(F3, list(cs) + [1])
            if f.is_squarefree():
                fs.append(f)
    out = []
    for f1, f2 in itertools.product(fs, repeat=2):
        h = f1.gcd(f2)
        f3 = (f1 * f2) // (h * h)
        g3 = max(0, (f3.degree - 1) // 2)
        if f1 != f2 and 2 + g3 <= 4:
            out.append((f1, f2))
    return out


SMALL_PAIRS = _small_pairs()


@settings(max_examples=40)
@given(st.sampled_from(SMALL_PAIRS))
def test_fiber_prank_additivity(pair):
    K = fiber_product(*pair)
    assert K.total_genus <= 4
    assert fiber_direct_prank(K) == K.predicted_prank


# -- the Z/4 family -------------------------------------------------------


def test_z4_family_examples():
    C = z4_family(Z4FamilyParams(F7, (2,)))
    x = Poly.x(F7)
    assert C.f == x * (x * x - 1) * (x * x - 4)
    assert C.genus == 2
    assert "z4" in classify_involutions(C).tags()
    D = z4_family(Z4FamilyParams(F7, (2, 3)))
    assert D.genus == 3 and has_order_ell(D, 4)
    with pytest.raises(CurveError):
        Z4FamilyParams(F7, (1,))
    with pytest.raises(CurveError):
        Z4FamilyParams(F7, (2, 5))  # 5 = -2


@settings(max_examples=20)
@given(st.data())
def test_z4_members_are_odd_and_z4(data):
    spec = data.draw(st.sampled_from([F7, FieldSpec(11), FieldSpec(3, 3)]))
    g = data.draw(st.integers(2, 3))
    seed = data.draw(st.integers(0, 2**32 - 1))
    lams = next(z4_tuples(spec, g, 1, seed))
    C = z4_family(Z4FamilyParams(spec, lams))
    f = C.f
    assert f.compose(-Poly.x(spec)) == -f
    G = reduced_aut(C)
    assert has_order_ell(C, 4, G)
    assert "z4" in classify_involutions(C, G).tags()


def test_z4_surveys():
    s = z4_prank_survey(F7, 2, None)
    assert s.samples == 4  # lambda in {2, 3, 4, 5}
    s = z4_prank_survey(FieldSpec(3, 3), 3, 200, seed=5)
    assert s.samples == 200 and s.any_positive
    assert z4_prank_survey(F7, 2, 0).histogram == {}
    with pytest.raises(CurveError):
        list(z4_tuples(F5, 3))


def test_degeneration_components():
    params = Z4FamilyParams(FieldSpec(11), (2, 3, 4))
    rec = z4_degeneration(params)
    (g1, f1), (g2, f2) = rec.components
    assert (g1, g2) == (2, 2)
    Y1, Y2 = rec.curves
    assert f1 == prank(Y1).f and f2 == prank(Y2).f
    assert nodal_prank(rec) == f1 + f2
    assert rec.genus == params.genus


def test_nodal_prank_examples():
    assert nodal_prank(NodalRecord(((2, 1), (1, 1)))) == 2
    assert nodal_prank(NodalRecord(((2, 0), (1, 0)))) == 0


# -- Artin-Schreier constructions -----------------------------------------


def test_as_construct_examples():
    C = as_construct(3, [(INF, 1)])
    assert C.genus == 0
    for g in range(1, 5):
        D = as_construct(2, [(INF, 2 * g + 1)])
        assert (D.genus, as_prank(D)) == (g, 0)
    E = as_construct(3, [(0, 1), (INF, 1)])
    assert (as_genus(E), as_prank(E)) == (2, 2)
    with pytest.raises(CurveError):
        as_construct(3, [(INF, 3)])


@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(1, 9), min_size=1, max_size=3))
def test_as_construct_is_already_reduced(p, jumps):
    jumps = [j for j in jumps if j % p]
    assume(jumps)
    spec = FieldSpec(p, 2)
    places = [INF] + list(range(len(jumps) - 1))
    C = as_construct(p, list(zip(places, jumps)), spec)
    again = as_reduce(C.rational(), spec)
    assert again.to_record() == C.to_record()
    assert sorted(d.jump for d in C.branch_data) == sorted(jumps)


def test_as_genus_realisability():
    with pytest.raises(CurveError):
        as_jumps_for(5, 3)  # 4 does not divide 6
    for p, g, f in [(3, 3, 0), (3, 4, 2), (5, 4, 4), (2, 3, 2)]:
        C = as_curve_of_genus(FieldSpec(p, 2), g, f)
        assert C.genus == g and as_prank(C) == f


def test_as_prank_matches_oracle():
    C = as_curve_of_genus(FieldSpec(3), 2, 2)
    assert zeta_prank(C).f == prank(C).f == 2
