import json
import math

import pytest
from hypothesis import assume, given, strategies as st

from conftest import fields, polys
from pcurves.curves import (
    INF,
    CurveError,
    as_from_parts,
    as_genus,
    as_prank,
    as_reduce,
    count_points,
    curve_from_record,
    genus_from_jumps,
    make_hyperelliptic,
    odd_model,
    transform_model,
)
from pcurves.ffpoly import FieldSpec, Poly, parse_poly

F2, F3, F5, F9 = FieldSpec(2), FieldSpec(3), FieldSpec(5), FieldSpec(3, 2)


def H(text, spec):
    return make_hyperelliptic(spec, parse_poly(text, spec))


def brute_count(C, spec):
    """Projective points of y^2 = f by enumerating (x, y) pairs."""
    squares = {}
    for y in spec.elements():
        squares[y * y] = squares.get(y * y, 0) + 1
    N = sum(squares.get(C.f(x), 0) for x in spec.elements())
    if C.odd:
        return N + 1
    return N + (2 if C.f.leading.is_square() else 0)


# -- hyperelliptic models -------------------------------------------------


def test_make_hyperelliptic_examples():
    C = H("x^5+1", F3)
    assert C.genus == 2
    big, B = C.branch_locus
    assert len(B) == 6 and B[-1] is INF
    D = H("x^6+x+2", F3)
    _, B = D.branch_locus
    assert D.genus == 2 and INF not in B and len(B) == 6
    with pytest.raises(CurveError):
        H("x^3+x^2", F3)
    with pytest.raises(CurveError):
        H("x^2+1", F3)
    with pytest.raises(CurveError):
        make_hyperelliptic(F2, parse_poly("x^5+x+1", F2))


@given(st.data())
def test_branch_locus_has_2g_plus_2_points(data):
    spec = data.draw(fields(odd=True))
    f = data.draw(polys(spec, 7))
    assume(f.degree >= 3 and f.is_squarefree())
    C = make_hyperelliptic(spec, f)
    _, B = C.branch_locus
    assert len(B) == 2 * C.genus + 2
    assert C.genus == math.ceil((f.degree - 2) / 2)


def test_odd_model_preserves_point_counts_over_splitting_field():
    C = H("x^6+x+2", F3)
    M = odd_model(C)
    assert M.odd and M.genus == C.genus
    assert count_points(M) == brute_count(M, M.spec)
    from pcurves.curves import base_change
    assert count_points(base_change(C, M.spec)) == count_points(M)


def test_transform_model_identity():
    f = parse_poly("x^5+2*x+1", F5)
    one, zero = F5.one(), F5.zero()
    assert transform_model(f, one, zero, zero, one, 5) == f


# -- point counts ---------------------------------------------------------


def test_count_points_examples():
    assert count_points(H("x^3+x^2+2", F3)) == 3
    assert count_points(H("x^3+x+1", F3)) == 4
    C = as_reduce(parse_poly("x^3", F2), F2)
    assert count_points(C) == 3


@given(st.data())
def test_count_matches_brute_force(data):
    spec = data.draw(st.sampled_from([F3, F5, FieldSpec(7), F9]))
    f = data.draw(polys(spec, 6))
    assume(f.degree >= 3 and f.is_squarefree())
    C = make_hyperelliptic(spec, f)
    N = count_points(C)
    assert N == brute_count(C, spec)
    assert abs(N - (spec.q + 1)) <= 2 * C.genus * math.sqrt(spec.q)


@given(st.data())
def test_weil_bound_over_extensions(data):
    spec = data.draw(st.sampled_from([F3, F5]))
    f = data.draw(polys(spec, 5))
    assume(f.degree >= 3 and f.is_squarefree())
    C = make_hyperelliptic(spec, f)
    for m in (1, 2, 3):
        Q = spec.q ** m
        assert abs(count_points(C, m) - (Q + 1)) <= 2 * C.genus * math.sqrt(Q)


def test_artin_schreier_count_by_brute_force():
    # y^3 - y = x^2 + 1/x over F_9
    spec = F9
    C = as_from_parts(spec, {INF: [0, 1], 0: [1]})
    N = 1  # the pole at infinity is totally ramified
    for x in spec.elements():
        if x.is_zero():
            N += 1
            continue
        v = x * x + x.inverse()
        N += sum(1 for y in spec.elements() if y ** 3 - y == v)
    assert count_points(C) == N


# -- Artin-Schreier -------------------------------------------------------


def test_as_reduce_examples():
    C = as_reduce(parse_poly("x^2", F2), F2)
    assert [(d.place, d.jump) for d in C.branch_data] == [(INF, 1)]
    C = as_reduce(parse_poly("x^3", F3), F3)
    assert [(d.place, d.jump) for d in C.branch_data] == [(INF, 1)]
    C = as_reduce(parse_poly("x^3", F2), F2)
    assert [(d.place, d.jump) for d in C.branch_data] == [(INF, 3)]
    with pytest.raises(CurveError):
        as_reduce(parse_poly("x^3-x+1", F3), F3)


@given(st.data())
def test_reduced_jumps_are_prime_to_p(data):
    spec = data.draw(fields())
    f = data.draw(polys(spec, 9))
    assume(f.degree >= 1)
    try:
        C = as_reduce(f, spec)
    except CurveError:
        return
    for d in C.branch_data:
        assert d.jump % spec.p != 0
    assert 0 <= as_prank(C) <= as_genus(C)


def test_as_genus_examples():
    assert genus_from_jumps(2, [3]) == 1
    assert genus_from_jumps(3, [1]) == 0
    assert genus_from_jumps(2, [1, 1]) == 1
    with pytest.raises(CurveError):
        genus_from_jumps(3, [3])


def test_as_prank_examples():
    one = as_from_parts(F2, {INF: [1]})
    three = as_from_parts(FieldSpec(2, 2), {INF: [1], 0: [1], 1: [1]})
    two = as_from_parts(F3, {INF: [1], 0: [1]})
    assert as_prank(one) == 0
    assert as_prank(three) == 2
    assert as_prank(two) == 2


@given(st.lists(st.integers(1, 12), min_size=1, max_size=4), st.sampled_from([2, 3, 5]))
def test_prank_never_exceeds_genus(jumps, p):
    jumps = [j for j in jumps if j % p]
    assume(jumps)
    g = genus_from_jumps(p, jumps)
    assert 0 <= (len(jumps) - 1) * (p - 1) <= g


# -- records --------------------------------------------------------------


@pytest.mark.parametrize("text,spec", [("x^5+1", F3), ("[1,1]*x^6+x+[0,2]", F9), ("x^7+3*x+1", FieldSpec(7))])
def test_hyperelliptic_record_round_trip(text, spec):
    C = H(text, spec)
    rec = C.to_record()
    back = curve_from_record(json.loads(json.dumps(rec)))
    assert back == C
    assert json.dumps(back.to_record(), sort_keys=True) == json.dumps(rec, sort_keys=True)


def test_artin_schreier_record_round_trip():
    C = as_from_parts(F9, {INF: [0, 1], 0: [1], F9.gen(): [2, 0, 0, 1]})
    rec = C.to_record()
    back = curve_from_record(json.loads(json.dumps(rec)))
    assert back.to_record() == rec
    assert back.genus == C.genus
