import pytest

from chowring.chern import (
    CoordinateSystem,
    WeightSystem,
    character_of,
    exterior_power_character,
    lambda_pm_character,
    load_weight_catalog,
    standard_so_weights,
    tau,
    tau_pm,
    total_chern,
    total_chern_series,
)
from chowring.polyring import QQ, RingMismatchError

W = load_weight_catalog()
XYZ = W["V_Spin7"].coords.ring(QQ)


def xyz(text):
    return XYZ.parse(text)


def test_spin_representation():
    c = total_chern(W["Delta_Spin7"], QQ)
    assert len(c) == 8
    assert c[0].is_zero()
    assert c[1] == xyz("-4*x^2 - 4*y^2 - 4*z^2")


def test_vector_representation():
    c = total_chern(W["V_Spin7"], QQ)
    assert all(c[i].is_zero() for i in (0, 2, 4, 6))
    assert c[1] == xyz("-4*x^2 - 4*y^2 - 4*z^2")
    assert c[5] == xyz("-64*x^2*y^2*z^2")


def test_lambda2plus_series():
    s = total_chern_series(W["lambda2plus_SO4"])
    assert s == s.ring.parse("1 - (t1 + t2)^2*X^2")


def test_trivial_systems():
    coords = CoordinateSystem("pt", ("t",))
    assert total_chern(WeightSystem("empty", coords, ())) == []
    one = WeightSystem("triv", coords, ((0,),))
    assert total_chern_series(one) == total_chern_series(one).ring.one


def test_g2_weights_are_self_dual():
    for name in ("V_G2", "V_Spin7", "Delta_Spin7", "V_SO4"):
        assert W[name].is_closed_under_negation()
    assert not W["W_SL3"].is_closed_under_negation()


def test_sum_and_dual():
    V = W["W_SL3"]
    both = V + V.dual()
    assert both.dimension == 2 * V.dimension and both.is_closed_under_negation()
    with pytest.raises(RingMismatchError):
        V + W["V_G2"]


def test_tau():
    assert tau(1, 2) == tau(1, 2).ring.parse("a1 + a1^-1 + a2 + a2^-1")
    assert tau_pm(1, 2) == tau(1, 2).ring.parse("a1*a2 + a1^-1*a2^-1")
    assert tau(0, 3) == tau(0, 3).ring.one
    # tau_2 = e2(a1 + 1/a1, a2 + 1/a2) = tau_2^+ + tau_2^-
    assert tau_pm(1, 2) + tau_pm(-1, 2) == tau(2, 2)
    with pytest.raises(ValueError):
        tau(3, 2)


def test_lambda_formula():
    assert lambda_pm_character(1, 2) == tau_pm(1, 2) + 1
    assert lambda_pm_character(1, 3) == tau_pm(1, 3) + tau(1, 3)


@pytest.mark.parametrize("m", [2, 3])
def test_lambda_matches_exterior_power(m):
    total = lambda_pm_character(1, m) + lambda_pm_character(-1, m)
    assert total == exterior_power_character(standard_so_weights(m), m)


def test_exterior_power_edges():
    std = standard_so_weights(2)
    assert exterior_power_character(std, 1) == character_of(std)
    assert exterior_power_character(std, 4) == character_of(std).ring.one
    with pytest.raises(ValueError):
        exterior_power_character(std, 5)


def test_character_of_v_on_so4():
    assert character_of(W["V_SO4"]) == tau(0, 2) + tau(1, 2) + tau_pm(1, 2)
