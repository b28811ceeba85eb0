import random

import pytest

from ncdiv.calculus import build_calculus, hom_window
from ncdiv.errors import InstanceError
from ncdiv.gallery import (
    build,
    check_hopf_twist,
    check_inner,
    check_supercircle_divergence,
    covariant_derivation,
    finite_group_functionals,
    gallery_names,
    haar_functional,
    haar_uniqueness,
    hopf_instance,
    inner_calculus,
    inner_integral_identity,
    random_commutative_system,
    right_integral_annihilation,
)
from ncdiv.hopf import cyclic_group_table, group_function_algebra
from ncdiv.integral import Divergence, integral
from ncdiv.systems import check_preprojective


def hopf(order):
    table, names = cyclic_group_table(order)
    return group_function_algebra(table, names)


def test_z2_functionals():
    h = finite_group_functionals(hopf(2), (1,))
    assert h.theta == (((0, 1),),)
    assert h.chi == ((-1, 1),)
    assert h.check_functionals().ok


def test_z3_functionals():
    h = finite_group_functionals(hopf(3), (1, 2))
    assert h.n == 2
    assert h.check_functionals().ok


def test_broken_functional_detected():
    h = finite_group_functionals(hopf(3), (1, 2))
    h.chi = ((1, 1, 0), h.chi[1])
    assert not h.check_functionals().ok


def test_empty_subset_gives_zero_generators():
    h = finite_group_functionals(hopf(2), ())
    p = covariant_derivation(h)
    assert p.n == 0


@pytest.mark.parametrize("subset", [(0,), (1, 1), (5,)])
def test_bad_subsets(subset):
    with pytest.raises(InstanceError):
        finite_group_functionals(hopf(3), subset)


def test_right_integral_annihilation():
    inst = build("z2-haar")
    assert right_integral_annihilation(inst.hopf, haar_functional(inst.hopf.hopf)).ok
    eps = inst.hopf.hopf.counit
    rep = right_integral_annihilation(inst.hopf, eps)
    assert not rep.ok
    assert any("e_g" in v.where for v in rep.violations)


@pytest.mark.parametrize("order", [2, 3])
def test_hopf_derived_checks(order):
    inst = hopf_instance(order)
    D = Divergence(build_calculus(inst.pfd), inst.pfd)
    assert check_hopf_twist(inst.hopf, D).ok
    rep = haar_uniqueness(inst.hopf, integral(D))
    assert rep.ok and rep.notes["annihilator dim"] == 1


def test_inner_instance():
    inst = build("inner-z2")
    calc = build_calculus(inst.pfd)
    axioms, derived = check_inner(calc, inst.inner_delta)
    assert axioms.ok and derived.ok
    P = integral(Divergence(calc, inst.pfd))
    assert P.table() == {"e_e": (1,), "e_g": (0,)}
    assert inner_integral_identity(inst.pfd, P, inst.inner_delta).ok


def test_inner_zero_delta_is_zero_derivation():
    inst = build("inner-z2")
    alg = inst.algebra
    zero = (alg.zero(),)
    sigma = inst.system.sigma
    pfd = inner_calculus(sigma, zero, inst.sigma_bar, inst.sigma_hat)
    assert all(p(a) == alg.zero() for p in pfd.derivation.partial for a in alg.basis_elements())
    calc = build_calculus(pfd)
    axioms, derived = check_inner(calc, zero)
    assert axioms.ok and derived.ok
    P = integral(Divergence(calc, pfd))
    assert P.rank == 2
    assert inner_integral_identity(pfd, P, zero).ok


def test_inner_identity_at_one():
    inst = build("inner-z2")
    alg = inst.algebra
    P = integral(Divergence(build_calculus(inst.pfd), inst.pfd))
    (delta,) = inst.inner_delta
    lhs = inst.sigma_bar[0, 0](delta) * inst.sigma_hat[0, 0](alg.one())
    assert P(lhs) == P(inst.sigma_bar[0, 0](delta))


def test_supercircle_values():
    inst = build("supercircle:3")
    alg = inst.algebra
    lam = inst.claimed
    assert lam(alg.e("θ")) == (1,)
    for k in range(-3, 4):
        assert lam(alg.e((k, 0))) == (0,)
        if k:
            assert lam(alg.e((k, 1))) == (0,)
    D = Divergence(build_calculus(inst.pfd), inst.pfd)
    assert check_supercircle_divergence(D, hom_window(D.calc)).ok


def test_toy_is_not_projectively_free():
    inst = build("preproj-toy")
    assert inst.pfd is None
    assert check_preprojective(inst.system).ok


def test_random_systems_pass():
    rng = random.Random(11)
    for _ in range(10):
        inst = random_commutative_system(rng)
        assert inst.n <= 3 and inst.algebra.dim <= 4
        assert check_preprojective(inst.system).ok


def test_build_errors():
    with pytest.raises(InstanceError):
        build("nope")
    with pytest.raises(InstanceError):
        build("supercircle:x")
    with pytest.raises(InstanceError):
        build("supercircle:1")


def test_build_window_override():
    assert build("supercircle", window=3).name == "supercircle:3"
    assert build("supercircle:2", window=5).name == "supercircle:5"
    assert "z2-haar" in gallery_names()
