import random

import pytest

from ncdiv.algebra import AlgMatrix, embed, identity_op, point_algebra, zero_op
from ncdiv.calculus import (
    Calculus,
    HomElement,
    build_calculus,
    check_calculus,
    check_hom_space,
    check_pi_calculus,
    check_reconstruction,
    check_right_duals,
    hom_basis,
    hom_from_values,
    hom_window,
    random_hom,
    reconstruct,
)
from ncdiv.errors import CalculusError, InstanceError
from ncdiv.gallery import build
from ncdiv.systems import MultiDerivation, PreProjectiveSystem


def calculus(name):
    inst = build(name)
    return inst, build_calculus(inst.pfd) if inst.pfd is not None else build_calculus(inst.system, inst.derivation)


def test_free_case_relations():
    inst, calc = calculus("z3-haar")
    alg = calc.algebra
    assert calc.dimension == 2 * alg.dim
    for k in alg.basis():
        a = alg.e(k)
        sa = inst.system.sigma(a)
        for i in range(2):
            want = tuple(sa[i, j] for j in range(2))
            assert calc.right_action(calc.omega[i], a) == want


def test_supercircle_differential():
    inst, calc = calculus("supercircle:3")
    alg = calc.algebra
    a = alg.e("z^2") + alg.e("z^-1θ")
    dx, dth = inst.derivation.partial
    assert calc.d(a) == (dx(a), dth(a))
    assert calc.d(alg.e("zθ")) == (alg.e("zθ"), alg.e("z"))


def test_toy_module_is_t_times_a():
    inst, calc = calculus("preproj-toy")
    alg = calc.algebra
    assert calc.dimension == 1
    (m,) = calc.module_basis
    assert m == (alg.e("t"), alg.zero())
    assert check_calculus(calc).ok


def test_free_right_duals():
    _, calc = calculus("z2-haar")
    for i in range(calc.n):
        for j in range(calc.n):
            want = calc.algebra.one() if i == j else calc.algebra.zero()
            assert calc.xi(i, calc.omega[j]) == want


def test_z2_right_dual_is_translation():
    inst, calc = calculus("z2-haar")
    alg = calc.algebra
    rg = inst.sigma_bar[0, 0]
    for a in alg.basis_elements():
        assert calc.xi(0, (a,)) == rg(a)
    assert rg(alg.e("e_e")) == alg.e("e_g")


def test_unitality():
    _, calc = calculus("z3-haar")
    one = calc.algebra.one()
    for w in calc.omega:
        assert calc.right_action(w, one) == w


@pytest.mark.parametrize("name", ["z2-haar", "z3-haar", "inner-z2", "preproj-toy", "supercircle:3"])
def test_calculus_invariants(name):
    inst, calc = calculus(name)
    assert check_calculus(calc).ok
    assert check_pi_calculus(calc).ok
    if inst.sigma_bar is not None:
        assert check_right_duals(calc).ok


def test_hom_dimension_free_rank_one():
    _, calc = calculus("z2-haar")
    homs = hom_basis(calc)
    assert len(homs) == 2
    assert check_hom_space(calc, homs).ok


def test_hom_dimension_toy():
    _, calc = calculus("preproj-toy")
    homs = hom_basis(calc)
    assert len(homs) == 1
    assert check_hom_space(calc, homs).ok


def test_supercircle_homs_determined_by_generator_values():
    _, calc = calculus("supercircle:2")
    homs = hom_window(calc)
    assert len(homs) == 2 * len(calc.algebra.basis())
    assert check_hom_space(calc, homs).ok
    with pytest.raises(InstanceError):
        hom_basis(calc)


def test_zero_module_has_empty_hom():
    alg = point_algebra(2)
    pi = AlgMatrix(alg, [[alg.zero()]])
    s = PreProjectiveSystem(pi, embed(pi))
    calc = build_calculus(s, MultiDerivation([zero_op(alg)], s.sigma))
    assert calc.dimension == 0
    assert hom_basis(calc) == []


def test_reconstruct_xi_free_case():
    _, calc = calculus("z3-haar")
    alg = calc.algebra
    for j in range(calc.n):
        values = tuple(alg.one() if i == j else alg.zero() for i in range(calc.n))
        f = hom_from_values(calc, values)
        g = reconstruct(calc, f)
        assert all(calc.hom_eval(g, m) == calc.xi(j, m) for m in calc.module_basis)


def test_reconstruct_zero():
    _, calc = calculus("z2-haar")
    zero = HomElement((calc.algebra.zero(),), tuple(calc.algebra.zero() for _ in calc.module_basis))
    g = reconstruct(calc, zero)
    assert all(v == calc.algebra.zero() for v in g.values)


def test_reconstruct_random_z3():
    _, calc = calculus("z3-haar")
    rng = random.Random(3)
    homs = hom_basis(calc)
    for _ in range(10):
        assert check_reconstruction(calc, random_hom(calc, rng, homs)).ok


def test_reconstruct_random_supercircle():
    _, calc = calculus("supercircle:4")
    rng = random.Random(5)
    for _ in range(5):
        assert check_reconstruction(calc, random_hom(calc, rng)).ok


def test_build_calculus_rejects_broken_data():
    inst = build("z2-haar")
    alg = inst.algebra
    bad = MultiDerivation([identity_op(alg)], inst.system.sigma)
    with pytest.raises(CalculusError):
        build_calculus(inst.system, bad)


def test_needs_derivation():
    with pytest.raises(InstanceError):
        build_calculus(build("z2-haar").system)


def test_right_duals_need_sigma_bar():
    inst = build("preproj-toy")
    calc = Calculus(inst.system, inst.derivation)
    with pytest.raises(InstanceError):
        calc.xi(0, calc.omega[0])
