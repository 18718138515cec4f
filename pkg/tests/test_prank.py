import pytest
from hypothesis import assume, given, strategies as st

from conftest import monic_polys, polys
from pcurves.curves import HyperellipticCurve, as_reduce, base_change, make_hyperelliptic
from pcurves.ffpoly import EnvelopeError, FieldSpec, Matrix, parse_poly
from pcurves.prank import (
    cartier_matrix,
    l_polynomial,
    l_polynomial_from_counts,
    prank,
    prank_from_l,
    stable_rank,
    zeta_prank,
)

F2, F3, F5, F7, F9 = FieldSpec(2), FieldSpec(3), FieldSpec(5), FieldSpec(7), FieldSpec(3, 2)


def H(text, spec):
    return make_hyperelliptic(spec, parse_poly(text, spec))


def test_cartier_matrix_examples():
    assert cartier_matrix(H("x^3+x^2+2", F3)).A.codes() == [[1]]
    assert cartier_matrix(H("x^3+x+1", F3)).A.codes() == [[0]]
    assert cartier_matrix(H("x^5+1", F3)).A.codes() == [[0, 0], [1, 0]]
    with pytest.raises(ValueError):
        cartier_matrix(HyperellipticCurve(F2, parse_poly("x^3+x+1", F2), 1))


def test_stable_rank_examples():
    assert stable_rank(Matrix(F3, [[1]])) == 1
    assert stable_rank(Matrix(F3, [[0]])) == 0
    assert stable_rank(Matrix(F3, [[0, 0], [1, 0]])) == 0


def test_twist_order_matters_over_extensions():
    # even model whose odd-degree form lives over F_27 with non-prime entries
    C = H("x^6+2*x^5+x^4+x^3+2", F3)
    assert cartier_matrix(C).curve.spec == FieldSpec(3, 3)
    assert prank(C).f == zeta_prank(C).f == 1


@given(st.data())
def test_cartier_agrees_with_oracle_over_extensions(data):
    spec = data.draw(st.sampled_from([F9, FieldSpec(3, 3), FieldSpec(5, 2)]))
    deg = data.draw(st.sampled_from([5, 6]))
    cs = data.draw(st.lists(st.integers(0, spec.q - 1), min_size=deg, max_size=deg))
    lead = data.draw(st.integers(1, spec.q - 1))
    from pcurves.ffpoly import Poly
    f = Poly.from_codes(spec, cs + [lead])
    assume(f.is_squarefree())
    C = make_hyperelliptic(spec, f)
    assert prank(C).f == zeta_prank(C).f


def test_l_polynomial_examples():
    # y^2 = x^3+x^2+2 has 3 points over F_3, trace +1
    assert l_polynomial(H("x^3+x^2+2", F3)) == [1, -1, 3]
    assert l_polynomial(H("x^3+x+1", F3)) == [1, 0, 3]
    assert l_polynomial_from_counts([3], 3, 1) == [1, -1, 3]


def test_zeta_prank_examples():
    assert zeta_prank(H("x^3+x^2+2", F3)).f == 1
    assert zeta_prank(H("x^3+x+1", F3)).f == 0
    assert zeta_prank(as_reduce(parse_poly("x^3", F2), F2)).f == 0


def test_prank_examples():
    r = prank(H("x^5+1", F3), verify=True)
    assert (r.f, r.method, r.verified) == (0, "cartier", True)
    r = prank(as_reduce(parse_poly("x^3", F2), F2), verify=True)
    assert (r.f, r.method, r.verified) == (0, "deuring-shafarevich", True)
    assert prank(H("x^3+x^2+2", F3)).f == 1


def test_verification_outside_the_envelope_reports_none():
    spec = FieldSpec(3, 9)
    C = make_hyperelliptic(spec, parse_poly("x^7+x+1", spec))
    r = prank(C, verify=True)
    assert r.verified is None
    with pytest.raises(EnvelopeError):
        zeta_prank(C)


def test_cartier_degree_cap():
    spec = FieldSpec(1048573)
    C = make_hyperelliptic(spec, parse_poly("x^9+x+1", spec))
    with pytest.raises(EnvelopeError):
        cartier_matrix(C)


@given(st.data())
def test_cartier_agrees_with_zeta_oracle(data):
    spec = data.draw(st.sampled_from([F3, F5, F7, F9, FieldSpec(11)]))
    deg = data.draw(st.sampled_from([3, 4, 5, 6]))
    f = data.draw(polys(spec, deg))
    assume(f.degree >= 3 and f.is_squarefree())
    C = make_hyperelliptic(spec, f)
    assert prank(C).f == zeta_prank(C).f


@given(st.data())
def test_artin_schreier_agrees_with_zeta_oracle(data):
    spec = data.draw(st.sampled_from([F2, FieldSpec(2, 2), F3]))
    f = data.draw(polys(spec, 5))
    assume(f.degree >= 1)
    try:
        C = as_reduce(f, spec)
    except ValueError:
        return
    assume(C.genus <= 4 and spec.q ** C.genus <= 1 << 16)
    assert prank(C, verify=True).verified in (True, None)


@given(st.data())
def test_frobenius_twist_leaves_stable_rank(data):
    spec = data.draw(st.sampled_from([F9, FieldSpec(5, 2), FieldSpec(3, 3)]))
    f = data.draw(monic_polys(spec, 5))
    assume(f.is_squarefree())
    A = cartier_matrix(make_hyperelliptic(spec, f)).A
    assert stable_rank(A.frobenius(1)) == stable_rank(A)


@given(st.data())
def test_base_change_invariance(data):
    spec = data.draw(st.sampled_from([F3, F5]))
    f = data.draw(monic_polys(spec, 5))
    assume(f.is_squarefree())
    C = make_hyperelliptic(spec, f)
    m = data.draw(st.integers(2, 3))
    assert prank(base_change(C, spec.extension(m))).f == prank(C).f


@given(st.data())
def test_quadratic_twist_invariance(data):
    spec = data.draw(st.sampled_from([F3, F5, F7, F9]))
    f = data.draw(polys(spec, 6))
    assume(f.degree >= 3 and f.is_squarefree())
    c = next(a for a in spec.elements() if not a.is_zero() and not a.is_square())
    assert prank(make_hyperelliptic(spec, f * c)).f == prank(make_hyperelliptic(spec, f)).f


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=7), st.sampled_from([2, 3, 5]))
def test_prank_from_l_is_degree_mod_p(coeffs, p):
    a = [1] + coeffs
    d = prank_from_l(a, p)
    assert all(c % p == 0 for c in a[d + 1:])
    assert d == 0 or a[d] % p
