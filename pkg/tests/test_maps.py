from fractions import Fraction

import pytest

from chowring.maps import (
    MapNotVerified,
    RingMap,
    d3p_forced_check,
    derive_constants,
    identity_map,
    pullback_derivation_check,
    spin7_calculus,
    whitney_check,
)
from chowring.polyring import parse_polynomial
from chowring.verifier import default_catalogs

CAT = default_catalogs()
MAPS = CAT.maps


def src(m, text):
    return parse_polynomial(text, m.source.poly_ring)


def tgt(m, text):
    return parse_polynomial(text, m.target.poly_ring)


def test_restriction_to_so4():
    res = MAPS.get("res_G2_SO4")
    assert res.sealed
    assert res.image_of(src(res, "c2")) == tgt(res, "2*d2 + y2")
    assert res.image_of(src(res, "c7")) == tgt(res, "d4*d3")
    assert res.image_of(src(res, "c2^2 - 4*c4")).is_zero()
    assert res("c2") == res.target.element("2*d2 + y2")


def test_cycle_map_kills_c2():
    cyc = MAPS.get("cycle_G2")
    assert cyc.image_of(src(cyc, "c2")).is_zero()
    assert cyc.image_of(src(cyc, "c7")) == tgt(cyc, "w7^2")


def test_triangle_commutes():
    composite = MAPS.get("res_SO4_T").compose(MAPS.get("res_G2_SO4"))
    assert composite.disagreements(MAPS.get("res_G2_T_SO4coords")) == {}


def test_unverified_map_refuses_apply():
    base = MAPS.get("res_G2_SO4", seal=False)
    bad = RingMap("bad", base.source, base.target, {**base.images, "c2": tgt(base, "d2")})
    with pytest.raises(MapNotVerified):
        bad.apply("c2")
    with pytest.raises(MapNotVerified):
        bad.seal()
    assert not bad.verify().passed


def test_identity_map():
    for name in ("CH_BG2", "CH_BSO4"):
        assert identity_map(CAT.presentations[name]).verify().passed


def test_all_spin7_maps_seal_for_every_delta():
    for name in ("res_Spin7_T", "pullback_Spin7_SL3", "res_Spin7_G2", "cycle_Spin7"):
        assert len(MAPS.variants(name)) == 4


def test_wrong_degree_rejected():
    base = MAPS.get("res_G2_SO4", seal=False)
    with pytest.raises(ValueError):
        RingMap("bad", base.source, base.target, {**base.images, "c4": "d2"})


def test_narrative_checks():
    assert whitney_check(MAPS).passed
    assert d3p_forced_check(MAPS).passed
    assert pullback_derivation_check(MAPS).passed


# ---- push-forward calculus

CALC = spin7_calculus(MAPS, 3, 1, delta1=0, delta2=0)
S = CALC.source


def test_zeta3_products():
    z = CALC.zeta(3)
    assert str(z * "c4p") == "i_*(1*x2^3)"
    assert z * "c4p" == z * "c4"
    assert (z * "c7").is_zero()
    assert (z * "c2p").is_zero()  # 2 x2^3 reduces mod 2
    assert (z * "c6p").payload == (z * "c6").payload


def test_payload_reduction():
    P = CALC.payload_ring
    assert CALC.reduce(P.parse("x2^2 + 2*x2 + x2*x3 + 3*x2^3")) == P.parse("x2*x3 + x2^3")
    assert CALC.describe((3, 0)) == "zeta3*c4"
    assert CALC.describe((1, 1)) == "zeta6"


def test_split_zeta_squared_vanishes():
    base, payload = CALC.split(src(MAPS.get("res_Spin7_T", delta1=0, delta2=0), "zeta3^2"))
    assert base.is_zero() and payload.is_zero()


# ---- constants


def test_derived_constants():
    d = derive_constants(CAT.weights)
    expected = {k: Fraction(v) for k, v in CAT.constants["spin7"].items()}
    assert {k: Fraction(d[k]) for k in expected} == expected
    assert d.identities["A"] == "16*x^12 = 6*A*x^12"
    assert d.identities["B"].endswith(") = 0")
    assert d.identities["coeff13_exact"].endswith(": 0")
