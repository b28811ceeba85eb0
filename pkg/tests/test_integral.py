from fractions import Fraction

import pytest

from ncdiv.algebra import zero_op
from ncdiv.calculus import build_calculus, hom_basis, hom_from_values, hom_window
from ncdiv.errors import InstanceError
from ncdiv.gallery import build
from ncdiv.integral import (
    ClaimedIntegral,
    Divergence,
    check_divergence_law,
    check_integral_presentation,
    exactness_check,
    ibp_report,
    ibp_residual,
    integral,
    integral_window,
    proportionality,
)
from ncdiv.systems import MultiDerivation


def divergence(name):
    inst = build(name)
    calc = build_calculus(inst.pfd)
    return inst, Divergence(calc, inst.pfd)


def zero_derivation(name):
    inst = build(name)
    alg = inst.algebra
    inst.derivation = MultiDerivation([zero_op(alg)] * inst.n, inst.system.sigma)
    return inst, Divergence(build_calculus(inst.pfd), inst.pfd)


def test_divergence_of_a_xi_is_twisted_partial():
    inst, D = divergence("z3-haar")
    calc = D.calc
    alg = calc.algebra
    for i in range(calc.n):
        for a in alg.basis_elements():
            values = tuple(a if j == i else alg.zero() for j in range(calc.n))
            assert D(hom_from_values(calc, values)) == D.partial_sigma[i](a)


def test_supercircle_divergence_formula():
    inst, D = divergence("supercircle:3")
    alg = D.algebra
    dx, dth = inst.derivation.partial
    f_x, f_th = alg.e("z^2") + alg.e("zθ"), alg.e("z^-1θ") + alg.e("z")
    f = hom_from_values(D.calc, (f_x, f_th))
    assert D(f) == dx(f_x) - dth(f_th)
    assert D(f) == alg.e("z^2").scale(2) + alg.e("zθ") - alg.e("z^-1")


def test_divergence_of_zero():
    _, D = divergence("z2-haar")
    assert D(hom_from_values(D.calc, (D.algebra.zero(),))) == D.algebra.zero()


@pytest.mark.parametrize("name", ["z2-haar", "z3-haar", "inner-z2", "supercircle:4"])
def test_divergence_law(name):
    _, D = divergence(name)
    assert check_divergence_law(D).ok


def test_divergence_law_zero_derivation():
    _, D = zero_derivation("z2-haar")
    assert check_divergence_law(D).ok


def test_divergence_law_detects_a_wrong_map():
    _, D = divergence("z2-haar")
    # a "divergence" that ignores the twist: plain partial instead of d^sigma
    D.twisted = MultiDerivation([D.pfd.derivation.partial[0].scale(2)], D.pfd.sigma_hat)
    assert not check_divergence_law(D).ok


def test_z2_integral():
    _, D = divergence("z2-haar")
    P = integral(D)
    alg = D.algebra
    assert P.rank == 1
    assert [v for v in P.image_basis()] == [alg.e("e_e") - alg.e("e_g")]
    a, b = Fraction(2, 3), Fraction(-5)
    assert P(alg.e("e_e").scale(a) + alg.e("e_g").scale(b)) == (a + b,)
    assert P.table() == {"e_e": (1,), "e_g": (1,)}


def test_zero_derivation_integral_is_identity():
    _, D = zero_derivation("z3-haar")
    P = integral(D)
    assert P.rank == 3
    alg = D.algebra
    for k in alg.basis():
        assert P(alg.e(k)) == tuple(1 if j == k else 0 for j in range(3))


def test_z3_integral_is_sum():
    _, D = divergence("z3-haar")
    P = integral(D)
    assert P.rank == 1
    assert P.functionals() == [(1, 1, 1)]


@pytest.mark.parametrize("name", ["z2-haar", "z3-haar", "inner-z2"])
def test_integral_presentation_invariants(name):
    _, D = divergence(name)
    assert check_integral_presentation(integral(D), D).ok


def test_graded_integral_routes_to_window():
    _, D = divergence("supercircle:2")
    with pytest.raises(InstanceError):
        integral(D)


def test_berezin_window():
    inst, D = divergence("supercircle:4")
    rep = integral_window(D, inst.claimed)
    assert rep.ok
    assert rep.notes["verified generators"] == 2 * len(D.algebra.basis())


def test_even_functional_rejected():
    _, D = divergence("supercircle:3")
    alg = D.algebra
    eps = ClaimedIntegral.from_mapping(alg, {"1": 1})
    rep = integral_window(D, eps)
    assert not rep.ok
    # f with f_theta = -theta has divergence 1
    f = hom_from_values(D.calc, (alg.zero(), -alg.e("θ")))
    assert D(f) == alg.one()
    assert eps(D(f)) == (1,)


def test_zero_functional_rejected():
    _, D = divergence("supercircle:2")
    rep = integral_window(D, ClaimedIntegral.from_mapping(D.algebra, {}))
    assert [v.identity for v in rep.violations] == ["Lambda is not the zero functional"]


def test_window_mismatch():
    inst, D = divergence("supercircle:2")
    with pytest.raises(InstanceError):
        integral_window(D, inst.claimed, window=5)


def test_z2_ibp_example():
    inst, D = divergence("z2-haar")
    P = integral(D)
    alg = D.algebra
    ee = alg.e("e_e")
    assert P(ee * D.partial_sigma[0](ee)) == (-1,)
    term = P(D.partial_sigma[0](ee) * inst.sigma_hat[0, 0](ee))
    assert term == (1,)
    assert ibp_residual(D, P, ee, ee, 0) == (0,)


def test_ibp_a_equals_one():
    _, D = divergence("z3-haar")
    P = integral(D)
    alg = D.algebra
    for b in alg.basis_elements():
        for i in range(2):
            assert ibp_residual(D, P, alg.one(), b, i) == (0,)


def test_supercircle_ibp_example():
    inst, D = divergence("supercircle:4")
    alg = D.algebra
    assert ibp_residual(D, inst.claimed, alg.e("z"), alg.e("z^-1"), 0) == (0,)


@pytest.mark.parametrize("name", ["z2-haar", "z3-haar", "inner-z2", "supercircle:3"])
def test_ibp_report_clean(name):
    inst, D = divergence(name)
    Lam = integral(D) if D.calc.finite else inst.claimed
    rep = ibp_report(D, Lam)
    assert rep.ok and rep.notes["max residual"] == "0"
    assert exactness_check(D, Lam).ok


def test_ibp_requires_free_derivation():
    from ncdiv.algebra import AlgMatrix

    inst, D = divergence("z2-haar")
    alg = D.algebra
    D.pfd.system.base.pi = AlgMatrix(alg, [[alg.e("e_e")]])
    with pytest.raises(InstanceError):
        ibp_residual(D, integral(D), alg.one(), alg.one(), 0)


def test_exactness_z2():
    _, D = divergence("z2-haar")
    P = integral(D)
    alg = D.algebra
    assert D.partial_sigma[0](alg.e("e_e")) == alg.e("e_g") - alg.e("e_e")
    assert P(alg.e("e_g") - alg.e("e_e")) == (0,)


def test_exactness_zero_derivation():
    _, D = zero_derivation("z2-haar")
    assert exactness_check(D, integral(D)).ok


def test_exactness_supercircle_even_modes():
    inst, D = divergence("supercircle:4")
    alg = D.algebra
    for k in range(-4, 5):
        zk = alg.e((k, 0))
        assert inst.claimed(D.partial_sigma[0](zk)) == (0,)


def test_proportionality():
    assert proportionality([2, 2, 2], [1, 1, 1]) == 2
    assert proportionality([Fraction(1, 2), 0], [1, 0]) == Fraction(1, 2)
    assert proportionality([1, 2], [1, 1]) is None
    assert proportionality([0, 0], [0, 0]) is None


def test_divergence_needs_projectively_free_data():
    inst = build("preproj-toy")
    calc = build_calculus(inst.system, inst.derivation)
    with pytest.raises(InstanceError):
        Divergence(calc, None)


def test_window_hom_generators_count():
    _, D = divergence("supercircle:2")
    assert len(hom_window(D.calc)) == 20
    with pytest.raises(InstanceError):
        hom_basis(D.calc)
