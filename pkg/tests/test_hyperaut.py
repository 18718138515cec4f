import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import monic_polys
from pcurves.curves import INF, make_hyperelliptic, transform_model
from pcurves.explorer import random_curve
from pcurves.ffpoly import FieldSpec, Poly, parse_poly
from pcurves.hyperaut import (
    MoebiusMap,
    check_group_axioms,
    classify_involutions,
    full_aut_order,
    has_order_ell,
    has_reduced_order,
    lift_orders,
    reduced_aut,
    structure_tag,
)

F3, F5, F7, F11 = FieldSpec(3), FieldSpec(5), FieldSpec(7), FieldSpec(11)


def H(text, spec):
    return make_hyperelliptic(spec, parse_poly(text, spec))


def test_generic_septic_over_f5_is_trivial():
    C = H("x^7+x^2+3*x+1", F5)
    G = reduced_aut(C)
    assert G.order == 1 and structure_tag(G) == "trivial"
    assert full_aut_order(G) == 2
    assert classify_involutions(C, G).tags() == []
    assert not has_order_ell(C, 2, G)
    assert has_order_ell(C, 1, G)


def test_x5_plus_1_has_a_five_cycle():
    C = H("x^5+1", F3)
    G = reduced_aut(C)
    assert has_reduced_order(G, 5)
    assert has_order_ell(C, 5, G)
    five = [e for e in G.elements if e.order == 5]
    for e in five:
        # x -> zeta x fixes infinity and permutes the five affine roots
        assert e.map(INF) is INF
        assert e.map.b.is_zero()
    assert G.order == 5 and structure_tag(G) == "cyclic(5)" and full_aut_order(G) == 10


def _prod(spec, *texts):
    out = Poly.constant(spec, 1)
    for t in texts:
        out = out * parse_poly(t, spec)
    return out


def _minus_x(G):
    key = MoebiusMap.normalized(G.spec(-1), G.spec(0), G.spec(0), G.spec(1)).key()
    return next(e for e in G.elements if e.map.key() == key)


def test_minus_x_on_odd_family_member_is_z4():
    C = make_hyperelliptic(F7, _prod(F7, "x", "x^2-1", "x^2-4"))
    G = reduced_aut(C)
    m = _minus_x(G)
    tags = {id(e): t for e, t in classify_involutions(C, G).entries}
    assert tags[id(m)] == "z4"
    assert lift_orders(C, m) == (4, 4)
    assert has_order_ell(C, 4, G)


def test_minus_x_on_even_product_is_klein4():
    C = make_hyperelliptic(F11, _prod(F11, "x^2-1", "x^2-4", "x^2-3"))
    G = reduced_aut(C)
    m = _minus_x(G)
    tags = {id(e): t for e, t in classify_involutions(C, G).entries}
    assert tags[id(m)] == "klein4"
    assert lift_orders(C, m) == (2, 2)
    assert has_order_ell(C, 2, G)


def test_dihedral_example():
    C = H("x^5-5*x^3+4*x", F7)
    G = reduced_aut(C)
    check_group_axioms(G)
    assert G.order == 12 and structure_tag(G) == "dihedral(6)"
    tags = classify_involutions(C, G).tags()
    assert sorted(tags) == ["klein4"] * 4 + ["z4"] * 3


def test_full_aut_order_doubles():
    C = H("x^5+1", F3)
    assert full_aut_order(reduced_aut(C)) == 2 * reduced_aut(C).order


def test_wild_elements_are_tagged():
    # y^2 = x^p - x has the translations x -> x + 1 of order p
    C = H("x^5-x", F5)
    G = reduced_aut(C)
    tags = classify_involutions(C, G).tags()
    assert "wild" in tags
    assert has_reduced_order(G, 5)


def test_rejects_small_genus_and_char_two():
    with pytest.raises(ValueError):
        reduced_aut(H("x^3+x+1", F3))


@settings(max_examples=25)
@given(st.data())
def test_group_axioms_and_involution_parity(data):
    spec = data.draw(st.sampled_from([F3, F5, F7, FieldSpec(3, 2)]))
    f = data.draw(monic_polys(spec, data.draw(st.sampled_from([5, 6]))))
    assume(f.is_squarefree())
    C = make_hyperelliptic(spec, f)
    G = reduced_aut(C)
    check_group_axioms(G)
    n = 2 * C.genus + 2
    assert G.order <= n * (n - 1) * (n - 2)
    _, B = C.branch_locus
    for e in G.elements:
        imgs = [e.map(b) for b in G.points]
        assert sorted(map(str, imgs)) == sorted(map(str, G.points))
        if e.order == 2:
            inside = sum(1 for i, j in enumerate(e.perm) if i == j)
            assert inside in (0, 2)
            assert (inside == 2) == (lift_orders(C, e)[0] == 4)


@settings(max_examples=20)
@given(st.data())
def test_isomorphism_invariance(data):
    spec = data.draw(st.sampled_from([F5, F7]))
    f = data.draw(monic_polys(spec, 5))
    assume(f.is_squarefree())
    a, b, c, d = (spec(data.draw(st.integers(0, spec.p - 1))) for _ in range(4))
    assume(not (a * d - b * c).is_zero())
    g = transform_model(f, a, b, c, d, 6)
    assume(g.degree >= 5)
    C, D = make_hyperelliptic(spec, f), make_hyperelliptic(spec, g)
    G1, G2 = reduced_aut(C), reduced_aut(D)
    assert G1.order == G2.order
    assert structure_tag(G1) == structure_tag(G2)


def test_no_order_three_on_random_genus3_over_f27():
    rng = np.random.default_rng(11)
    spec = FieldSpec(3, 3)
    for _ in range(100):
        G = reduced_aut(random_curve(3, spec, rng))
        assert not has_reduced_order(G, 3)
