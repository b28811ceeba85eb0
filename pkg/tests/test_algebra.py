import pytest

from ncdiv.algebra import (
    AlgebraAxiomError,
    AlgMatrix,
    FiniteDimAlgebra,
    LinOp,
    OpMatrix,
    WindowError,
    bullet,
    diagonal,
    embed,
    grassmann_extension,
    identity_op,
    identity_opmatrix,
    laurent_grassmann,
    matrix_algebra,
    point_algebra,
    polynomial_quotient,
    right_mult,
    tensor_product,
)
from ncdiv.hopf import cyclic_group_table, group_function_algebra


def z2():
    table, names = cyclic_group_table(2)
    return group_function_algebra(table, names)


def test_unit_acts_trivially():
    for alg in (point_algebra(3), polynomial_quotient([0, 0, 1]), matrix_algebra(2), z2().algebra):
        one = alg.one()
        for a in alg.basis_elements():
            assert one * a == a == a * one


def test_indicator_products():
    alg = z2().algebra
    ee, eg = alg.e("e_e"), alg.e("e_g")
    assert ee * eg == alg.zero()
    assert ee * ee == ee


def test_theta_squares_to_zero():
    alg = laurent_grassmann(2)
    theta = alg.e("θ")
    assert theta * theta == alg.zero()


def test_laurent_grassmann_product():
    alg = laurent_grassmann(2)
    z, theta = alg.e("z"), alg.e("θ")
    assert (z + theta) * (z - theta) == alg.e("z^2")


def test_laurent_grassmann_labels_round_trip():
    alg = laurent_grassmann(3)
    for k in alg.basis():
        assert alg.key(alg.label(k)) == k


def test_window_is_enforced():
    alg = laurent_grassmann(2)
    with pytest.raises(WindowError):
        alg.e("z^2") * alg.e("z")
    with pytest.raises(WindowError):
        alg.key("z^3")


def test_laurent_grassmann_axioms_in_window():
    assert laurent_grassmann(3).check_axioms().ok


def test_perturbed_structure_constant_rejected():
    alg = point_algebra(2)
    bad = alg.perturbed(0, 1, 0)
    assert not bad.check_axioms().ok
    with pytest.raises(AlgebraAxiomError):
        FiniteDimAlgebra(bad.labels, bad.structure, bad.unit)


def test_bad_shapes_rejected():
    with pytest.raises(ValueError):
        FiniteDimAlgebra(["a", "b"], [[[1]]], [1, 0])
    with pytest.raises(ValueError):
        FiniteDimAlgebra(["a", "a"], [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], [1, 0])


def test_identity_composition():
    alg = matrix_algebra(2)
    f = right_mult(alg, alg.e("E01") + alg.e("E11"))
    assert (identity_op(alg) @ f).equals(f)


def test_translation_is_an_involution_on_z2():
    h = z2()
    rg = h.hit_op(h.ev(1))
    assert (rg @ rg).equals(identity_op(h.algebra))


def test_parity_is_an_involution():
    alg = laurent_grassmann(2)
    p = alg.parity()
    assert (p @ p).equals(identity_op(alg))


def test_composition_order():
    alg = matrix_algebra(2)
    x, y = alg.e("E01"), alg.e("E10")
    f, g = right_mult(alg, x), right_mult(alg, y)
    a = alg.e("E00")
    assert (f @ g)(a) == (a * y) * x


def test_linop_matrix_round_trip():
    alg = polynomial_quotient([0, 0, 1])
    m = [[1, 2], [0, 3]]
    op = LinOp.from_matrix(alg, m)
    assert op.matrix() == m
    # column c is the image of e_c
    assert op(alg.e(1)) == alg.from_vector([2, 3])


def test_bullet_unit():
    alg = matrix_algebra(2)
    F = OpMatrix(alg, [[right_mult(alg, alg.e("E01")), identity_op(alg)],
                       [identity_op(alg), right_mult(alg, alg.e("E11"))]])
    one = identity_opmatrix(alg, 2)
    assert bullet(one, F).equals(F)
    assert bullet(F, one).equals(F)


def test_bullet_n1_is_composition():
    alg = matrix_algebra(2)
    f, g = right_mult(alg, alg.e("E01")), right_mult(alg, alg.e("E10"))
    got = bullet(OpMatrix(alg, [[f]]), OpMatrix(alg, [[g]]))
    assert got[0, 0].equals(f @ g)


def test_bullet_supercircle_sigma_bar_sigma_transpose():
    alg = laurent_grassmann(3)
    sigma = diagonal(alg, [identity_op(alg), alg.parity()])
    assert bullet(sigma, sigma.T).equals(identity_opmatrix(alg, 2))


def test_transpose():
    alg = point_algebra(2)
    a, b = right_mult(alg, alg.e(0)), right_mult(alg, alg.e(1))
    ident = identity_op(alg)
    F = OpMatrix(alg, [[ident, a], [b, ident]])
    assert F.T[1, 0] is a and F.T[0, 1] is b
    assert F.T.T.equals(F)
    D = diagonal(alg, [a, b])
    assert D.T.equals(D)


def test_embed_identity():
    alg = matrix_algebra(2)
    assert embed(AlgMatrix.identity(alg, 3)).equals(identity_opmatrix(alg, 3))


def test_embed_diagonal_products_commutative():
    alg = point_algebra(3)
    p = AlgMatrix(alg, [[alg.e(0) + alg.e(1), alg.zero()], [alg.zero(), alg.e(2)]])
    q = AlgMatrix(alg, [[alg.e(1), alg.zero()], [alg.zero(), alg.e(2) + alg.e(0)]])
    assert bullet(embed(p), embed(q)).equals(embed(p * q))


def test_embed_reverses_order_for_n1():
    alg = matrix_algebra(2)
    p = AlgMatrix(alg, [[alg.e("E01")]])
    q = AlgMatrix(alg, [[alg.e("E10") + alg.e("E11")]])
    assert bullet(embed(p), embed(q)).equals(embed(q * p))
    assert not bullet(embed(p), embed(q)).equals(embed(p * q))


def _op_product(p, q):
    """Matrix product over the opposite algebra: ``sum_k q_kj p_ik``."""
    alg, n = p.algebra, p.n
    return AlgMatrix(alg, [[sum((q[k, j] * p[i, k] for k in range(n)), alg.zero()) for j in range(n)]
                           for i in range(n)])


def test_embed_is_multiplicative_over_opposite_algebra():
    alg = matrix_algebra(2)
    E = alg.e
    p = AlgMatrix(alg, [[E("E01"), E("E00")], [E("E11"), E("E10") + E("E01")]])
    q = AlgMatrix(alg, [[E("E10"), E("E11")], [E("E00") + E("E01"), E("E01")]])
    assert bullet(embed(p), embed(q)).equals(embed(_op_product(p, q)))


def test_idempotents():
    alg = polynomial_quotient([0, -1, 1])
    t, zero, one = alg.e("t"), alg.zero(), alg.one()
    assert AlgMatrix.identity(alg, 2).is_idempotent()
    assert AlgMatrix(alg, [[t, zero], [zero, zero]]).is_idempotent()
    assert AlgMatrix(alg, [[one, one], [zero, zero]]).is_idempotent()
    assert not AlgMatrix(alg, [[one + one, zero], [zero, zero]]).is_idempotent()


def test_row_times_matrix():
    alg = point_algebra(2)
    one, zero = alg.one(), alg.zero()
    p = AlgMatrix(alg, [[one, one], [zero, zero]])
    assert p.apply((alg.e(0), alg.e(1))) == (alg.e(0), alg.e(0))


def test_group_algebras():
    h2 = z2()
    assert h2.algebra.dim == 2
    for k in h2.algebra.basis():
        assert h2.antipode.image(k) == h2.algebra.e(k)
    table, names = cyclic_group_table(3)
    h3 = group_function_algebra(table, names)
    A = h3.algebra
    assert A.dim == 3
    assert h3.antipode(A.e("e_g")) == A.e("e_g2")
    assert h3.antipode(A.e("e_g2")) == A.e("e_g")
    assert h3.antipode(A.e("e_e")) == A.e("e_e")
    assert h2.check_axioms().ok and h3.check_axioms().ok


def test_non_abelian_group_hopf_axioms():
    # S_3 as permutations of (0, 1, 2)
    import itertools
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms]
    h = group_function_algebra(table)
    assert h.check_axioms().ok


def test_bad_group_tables():
    from ncdiv.hopf import GroupTableError
    with pytest.raises(GroupTableError):
        group_function_algebra([[0, 1], [0, 1]])
    with pytest.raises(GroupTableError):
        group_function_algebra([[0, 1]])


def test_constructors():
    a = tensor_product(point_algebra(2), polynomial_quotient([0, 0, 1]))
    assert a.dim == 4 and a.check_axioms().ok and a.is_commutative()
    g = grassmann_extension(point_algebra(2))
    assert g.dim == 4 and g.check_axioms().ok
    theta = g.e("p0θ") + g.e("p1θ")
    assert theta * theta == g.zero()
    m = matrix_algebra(2)
    assert not m.is_commutative()
