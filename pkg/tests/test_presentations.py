import pytest

from chowring.polyring import GF, QQ, PolynomialRing, parse_polynomial
from chowring.presentations import (
    GradedRingPresentation,
    NotInIdeal,
    additive_basis,
    completeness_check_g2,
    groebner_basis,
    ideal_membership,
    load_presentation_catalog,
    normal_form,
)

CAT = load_presentation_catalog()
G2 = CAT["CH_BG2"]
SO4 = CAT["CH_BSO4"]


def nf(pres, text):
    return pres.normal_form(parse_polynomial(text, pres.poly_ring))


def P(text, ring=G2.poly_ring):
    return parse_polynomial(text, ring)


def test_rewriting_examples():
    assert nf(G2, "c2^3") == P("4*c2*c4")
    assert nf(G2, "2*c2*c7").is_zero()
    assert nf(G2, "3*c7") == P("c7")
    assert nf(SO4, "y2^2") == P("4*d4", SO4.poly_ring)
    assert nf(SO4, "y2^3 + y2*d3") == P("4*y2*d4", SO4.poly_ring)


def test_spin7_leading_rule():
    S = CAT.get("CH_BSpin7_loc2", delta1=0, delta2=0)
    assert nf(S, "c2p^2") == P("4*c4 + 8/3*c4p - 8/3*c4", S.poly_ring)
    assert nf(S, "2*zeta3").is_zero()
    assert nf(S, "zeta3*c4p") == P("zeta3*c4", S.poly_ring)


def test_ring_elements():
    c2, c4, c7 = G2.gen("c2"), G2.gen("c4"), G2.gen("c7")
    assert c2 * c2 == c4 * 4
    assert (c2 * c7).is_zero()
    assert normal_form(c2 ** 3) == c2 * c4 * 4
    assert (c7 + c7).is_zero()


G2_BASIS = {
    0: ["1 [ZZ]"],
    1: [],
    2: ["c2 [ZZ]"],
    3: [],
    4: ["c4 [ZZ]"],
    5: [],
    6: ["c6 [ZZ]", "c2*c4 [ZZ]"],
    7: ["c7 [GF(2)]"],
    8: ["c4^2 [ZZ]", "c2*c6 [ZZ]"],
    11: ["c4*c7 [GF(2)]"],
    14: ["c4^2*c6 [ZZ]", "c2*c4^3 [ZZ]", "c2*c6^2 [ZZ]", "c7^2 [GF(2)]"],
}


@pytest.mark.parametrize("degree", sorted(G2_BASIS))
def test_g2_additive_basis(degree):
    assert [str(b) for b in additive_basis(G2, degree)] == G2_BASIS[degree]


def test_g2_basis_matches_irreducible_monomials():
    for d in range(21):
        assert len(G2.additive_basis(d)) == len(G2.irreducible_monomials(d))


def test_spin7_degree_3_and_5():
    S = CAT.get("CH_BSpin7_loc2", delta1=1, delta2=1)
    assert [str(b) for b in S.additive_basis(3)] == ["zeta3 [GF(2)]"]
    assert S.additive_basis(5) == []


def test_local_confluence():
    for name in ("CH_BG2", "CH_BSO4", "CH_BG2_mod2"):
        assert CAT[name].local_confluence_failures() == []
    for S in CAT.variants("CH_BSpin7_loc2"):
        assert S.local_confluence_failures() == []


def test_catalog_parameters():
    assert len(CAT.parameter_space("CH_BSpin7_loc2")) == 4
    with pytest.raises(ValueError):
        CAT.get("CH_BSpin7_loc2")
    with pytest.raises(KeyError):
        CAT.get("CH_BNOPE")


def test_bad_presentations():
    with pytest.raises(ValueError):
        GradedRingPresentation("bad", QQ, [("a", 1), ("b", 2)], ["a + b"])
    with pytest.raises(ValueError):
        GradedRingPresentation("bad", QQ, [("a", 1)], ["a^2 + a"])


# ---- membership over fields


def test_ideal_membership():
    R = PolynomialRing(QQ, ["C2", "C4", "C6", "C7"], [2, 4, 6, 7])
    g1, g2 = P("C2^2 - 4*C4", R), P("C2*C7", R)
    assert ideal_membership(g1, [g1, g2]).member
    assert not ideal_membership(P("C4", R), [g1]).member
    F = PolynomialRing(GF(2), R.names, R.degrees)
    h = P("C2*C7", F)
    assert ideal_membership(P("C2^2*C7", F), [h]).member
    res = ideal_membership(P("C2^3 - 4*C2*C4 + C2*C7*C4", R), [g1, g2])
    assert res.member and res.certificate()


def test_groebner_of_generators_is_reduced_free():
    R = PolynomialRing(QQ, ["x", "y"])
    G = groebner_basis([P("x^2 - y", R), P("x*y - 1", R)])
    assert ideal_membership(P("y^2 - x", R), G).member


def test_membership_requires_field():
    with pytest.raises(ValueError):
        ideal_membership(P("c2"), [P("c2")])


# ---- completeness certificates


def test_certificates():
    v = completeness_check_g2(P("c2^2 - 4*c4"), 20)
    assert v.verified and v.a == P("1")
    v = completeness_check_g2(P("c2^3 - 4*c2*c4"), 20)
    assert v.verified and v.a == P("c2")
    v = completeness_check_g2(P("2*c2*c7"), 20)
    assert v.verified
    assert v.a * P("c2^2 - 4*c4") + v.b * P("c2*c7") + v.c * P("2*c7") == P("2*c2*c7")
    assert v.as_dict()["verified"] is True


def test_nonmembers_refused():
    for text in ("c4", "c7", "c2*c4 - c6", "c4^2"):
        with pytest.raises(NotInIdeal):
            completeness_check_g2(P(text), 20)


def test_completeness_input_errors():
    with pytest.raises(ValueError):
        completeness_check_g2(P("c2 + c4"), 20)
    with pytest.raises(ValueError):
        completeness_check_g2(P("c2^2*c7 - 4*c4*c7"), 8)
