"""Worked instances: covariant calculi on finite groups, inner calculi,
the supercircle with its Berezin integral, and a non-free toy system.

Every builder returns an :class:`Instance`, a bundle of data that
:mod:`ncdiv.suite` knows how to check exhaustively.
"""

import itertools
from dataclasses import dataclass

from .algebra import (
    AlgMatrix,
    Element,
    LinOp,
    OpMatrix,
    diagonal,
    embed,
    identity_op,
    laurent_grassmann,
    point_algebra,
    polynomial_quotient,
    tensor_product,
)
from .errors import InstanceError
from .fields import QQ
from .hopf import cyclic_group_table, evaluate, group_function_algebra
from .integral import ClaimedIntegral, annihilator
from .linalg import row_space
from .report import Report
from .systems import (
    MultiDerivation,
    PreProjectiveSystem,
    ProjectiveSystem,
    ProjectivelyFreeDerivation,
    check_multiderivation,
)

__all__ = [
    "Instance",
    "HopfData",
    "finite_group_functionals",
    "covariant_derivation",
    "right_integral_annihilation",
    "check_hopf_twist",
    "haar_functional",
    "haar_uniqueness",
    "inner_partials",
    "inner_calculus",
    "check_inner",
    "inner_integral_identity",
    "supercircle",
    "supercircle_divergence",
    "berezin",
    "preproj_toy",
    "random_commutative_system",
    "GALLERY",
    "build",
    "gallery_names",
]


@dataclass
class Instance:
    """Everything needed to run the full check suite on one example."""

    name: str
    algebra: object
    system: PreProjectiveSystem
    derivation: MultiDerivation = None
    sigma_bar: OpMatrix = None
    sigma_hat: OpMatrix = None
    claimed: ClaimedIntegral = None
    reference: tuple = None          # functional (basis values) to compare Lambda against
    hopf: "HopfData" = None
    inner_delta: tuple = None

    @property
    def projective(self):
        if self.sigma_bar is None:
            return None
        return ProjectiveSystem(self.system, self.sigma_bar)

    @property
    def pfd(self):
        if self.sigma_bar is None or self.sigma_hat is None or self.derivation is None:
            return None
        return ProjectivelyFreeDerivation(self.derivation, self.projective, self.sigma_hat)

    @property
    def n(self):
        return self.system.n


# --- finite groups ------------------------------------------------------------


@dataclass
class HopfData:
    hopf: object                 # HopfAlgebra
    subset: tuple                # group element indices g_1..g_n
    theta: tuple                 # theta[i][j]: functional
    chi: tuple                   # chi[i]: functional

    @property
    def algebra(self):
        return self.hopf.algebra

    @property
    def n(self):
        return len(self.chi)

    def check_functionals(self):
        """theta is multiplicative as a matrix, theta(1) = I, chi is a theta-twisted derivation."""
        alg = self.algebra
        eps = self.hopf.counit
        lab = alg.label
        rep = Report("covariant functionals", kind="axiom")
        n = self.n
        one = alg.one()
        for i in range(n):
            for j in range(n):
                rep.expect(evaluate(self.theta[i][j], one) == (1 if i == j else 0), "theta_ij(1) = delta_ij", (i, j))
        for ka, kb in itertools.product(alg.basis(), repeat=2):
            ab = alg.e(ka) * alg.e(kb)
            for i in range(n):
                for j in range(n):
                    lhs = evaluate(self.theta[i][j], ab)
                    rhs = sum((self.theta[i][k][ka] * self.theta[k][j][kb] for k in range(n)), 0)
                    rep.expect(lhs == rhs, "theta_ij(ab) = sum_k theta_ik(a) theta_kj(b)", (i, j, lab(ka), lab(kb)))
                lhs = evaluate(self.chi[i], ab)
                rhs = sum((self.chi[j][ka] * self.theta[j][i][kb] for j in range(n)), 0) + eps[ka] * self.chi[i][kb]
                rep.expect(lhs == rhs, "chi_i(ab) = sum_j chi_j(a) theta_ji(b) + eps(a) chi_i(b)",
                           (i, lab(ka), lab(kb)))
        return rep


def finite_group_functionals(hopf, subset):
    """``theta_ij = delta_ij ev_{g_i}`` and ``chi_i = ev_{g_i} - eps`` for distinct non-identity g_i."""
    subset = tuple(subset)
    ident = hopf.counit.index(1)
    if len(set(subset)) != len(subset):
        raise InstanceError("subset elements must be distinct")
    if any(not (0 <= g < hopf.dim) for g in subset):
        raise InstanceError("subset elements must be group element indices")
    if ident in subset:
        raise InstanceError("the identity element is not allowed in the subset")
    n = len(subset)
    zero = tuple(0 for _ in range(hopf.dim))
    theta = tuple(tuple(hopf.ev(subset[i]) if i == j else zero for j in range(n)) for i in range(n))
    chi = tuple(tuple(x - e for x, e in zip(hopf.ev(g), hopf.counit)) for g in subset)
    return HopfData(hopf, subset, theta, chi)


def covariant_derivation(h):
    """Partials, twists and their right and hat versions through the hit action."""
    hopf = h.hopf
    alg = h.algebra
    n = h.n
    s_inv = hopf.antipode_power(-1)
    s_inv2 = hopf.antipode_power(-2)
    partial = [hopf.hit_op(h.chi[i], f"chi_{i}>") for i in range(n)]
    sigma = OpMatrix(alg, [[hopf.hit_op(h.theta[i][j]) for j in range(n)] for i in range(n)])
    sigma_bar = OpMatrix(alg, [[hopf.hit_op(hopf.compose(h.theta[j][i], s_inv)) for j in range(n)]
                               for i in range(n)])
    sigma_hat = OpMatrix(alg, [[hopf.hit_op(hopf.compose(h.theta[i][j], s_inv2)) for j in range(n)]
                               for i in range(n)])
    base = PreProjectiveSystem(AlgMatrix.identity(alg, n), sigma)
    return ProjectivelyFreeDerivation(MultiDerivation(partial, sigma), ProjectiveSystem(base, sigma_bar), sigma_hat)


def haar_functional(hopf):
    """``sum_g ev_g``: the value 1 on every indicator."""
    return tuple(1 for _ in hopf.algebra.basis())


def right_integral_annihilation(h, lam, name="right integral"):
    """``lam((chi_i o S^-2) > a)`` and ``lam(S^2(d_i(a)))`` for all basis a and all i."""
    hopf = h.hopf
    alg = h.algebra
    s_inv2 = hopf.antipode_power(-2)
    s2 = hopf.antipode_power(2)
    rep = Report(name, kind="result")
    worst = 0
    for i in range(h.n):
        twisted = hopf.compose(h.chi[i], s_inv2)
        for k in alg.basis():
            a = alg.e(k)
            r1 = evaluate(lam, hopf.hit(twisted, a))
            r2 = evaluate(lam, s2(hopf.hit(h.chi[i], a)))
            worst = max(worst, abs(r1), abs(r2))
            rep.expect(r1 == 0, "lambda((chi_i o S^-2) > a) = 0", (i, alg.label(k)), f"residual {r1}")
            rep.expect(r2 == 0, "lambda(S^2(d_i(a))) = 0", (i, alg.label(k)), f"residual {r2}")
    rep.notes["max residual"] = str(worst)
    return rep


def check_hopf_twist(h, D):
    """The twisted partials are hit actions: ``d^sigma_i = (chi_i o S^-2) >``."""
    hopf = h.hopf
    alg = h.algebra
    s_inv2 = hopf.antipode_power(-2)
    rep = Report("hopf twisted partials", kind="derived")
    for i in range(h.n):
        f = hopf.compose(h.chi[i], s_inv2)
        for k in alg.basis():
            a = alg.e(k)
            rep.expect(D.partial_sigma[i](a) == hopf.hit(f, a), "d^sigma_i(a) = (chi_i o S^-2) > a",
                       (i, alg.label(k)))
    return rep


def haar_uniqueness(h, P):
    """Compare the span of Lambda with the annihilator of all ``(chi_i o S^-2) > a``."""
    hopf = h.hopf
    alg = h.algebra
    s_inv2 = hopf.antipode_power(-2)
    vectors = [hopf.hit(hopf.compose(h.chi[i], s_inv2), alg.e(k)).vector()
               for i in range(h.n) for k in alg.basis()]
    ann = annihilator(vectors, alg.dim)
    mine = row_space(P.functionals(), alg.dim)
    rep = Report("haar uniqueness", kind="result")
    same = ann.dim == mine.dim and all(list(v) in mine for v in ann.basis)
    rep.expect(same, "span(Lambda) = annihilator of (chi_i o S^-2) > A", (),
               f"annihilator dim {ann.dim}, Lambda rank {mine.dim}")
    rep.notes["annihilator dim"] = ann.dim
    return rep


def hopf_instance(order, subset=None, name=None, field=QQ):
    table, names = cyclic_group_table(order)
    hopf = group_function_algebra(table, names, field)
    subset = tuple(range(1, order)) if subset is None else tuple(subset)
    h = finite_group_functionals(hopf, subset)
    p = covariant_derivation(h)
    return Instance(name or f"z{order}-haar", hopf.algebra, p.system.base, p.derivation,
                    p.sigma_bar, p.sigma_hat, reference=haar_functional(hopf), hopf=h)


def hopf_from_options(algebra, table, names, subset):
    """Attach finite-group Hopf data to an (imported) algebra."""
    hopf = group_function_algebra(table, names, algebra.field, algebra=algebra)
    return finite_group_functionals(hopf, subset)


# --- inner calculi ------------------------------------------------------------


def inner_partials(sigma, delta):
    """``d_i(a) = sum_j delta_j sigma_ji(a) - a delta_i``."""
    alg = sigma.algebra
    n = sigma.n
    delta = tuple(delta)
    if len(delta) != n:
        raise InstanceError(f"delta has {len(delta)} entries, sigma is {n}x{n}")

    def partial(i):
        def rule(k):
            a = alg.e(k)
            return sum((delta[j] * sigma[j, i](a) for j in range(n)), alg.zero()) - a * delta[i]
        return LinOp(alg, rule, f"d_{i}")

    return [partial(i) for i in range(n)]


def inner_calculus(sigma, delta, sigma_bar=None, sigma_hat=None, pi=None):
    """Inner multi-derivation; a ProjectivelyFreeDerivation when sigma_bar and sigma_hat are given.

    Raises InstanceError unless sigma is multiplicative.
    """
    alg = sigma.algebra
    rep = _sigma_multiplicative(sigma)
    if not rep.ok:
        raise InstanceError("sigma is not an algebra map: " + rep.summary())
    d = MultiDerivation(inner_partials(sigma, delta), sigma)
    if sigma_bar is None or sigma_hat is None:
        return d
    pi = AlgMatrix.identity(alg, sigma.n) if pi is None else pi
    return ProjectivelyFreeDerivation(d, ProjectiveSystem(PreProjectiveSystem(pi, sigma), sigma_bar), sigma_hat)


def _sigma_multiplicative(sigma):
    alg = sigma.algebra
    rep = Report("sigma algebra map", kind="axiom")
    table = {k: sigma(alg.e(k)) for k in alg.basis()}
    for ka, kb in itertools.product(alg.basis(), repeat=2):
        if alg.fits(ka, kb):
            rep.expect(sigma(alg.e(ka) * alg.e(kb)) == table[ka] * table[kb], "sigma(ab) = sigma(a) sigma(b)",
                       (alg.label(ka), alg.label(kb)))
    return rep


def check_inner(calc, delta):
    """sigma multiplicative (axiom) and ``da = D a - a D`` with ``D = sum_i delta_i omega_i``."""
    alg = calc.algebra
    axioms = _sigma_multiplicative(calc.system.sigma)
    rep = Report("inner calculus", kind="derived")
    D = calc.zero_vector()
    for x, w in zip(delta, calc.omega):
        D = calc.add(D, calc.left(x, w))
    rep.merge(check_multiderivation(MultiDerivation(inner_partials(calc.system.sigma, delta), calc.system.sigma)))
    for k in alg.basis():
        a = alg.e(k)
        rhs = calc.add(calc.right_action(D, a), tuple(-x for x in calc.left(a, D)))
        rep.expect(calc.d(a) == rhs, "da = D a - a D", (alg.label(k),))
    return axioms, rep


def inner_integral_identity(pfd, Lam, delta):
    """``Lambda(sum_kl sbar_kl(delta_l) shat_ki(a)) = Lambda(sum_l a sbar_il(delta_l))``."""
    alg = pfd.algebra
    n = pfd.n
    sbar, shat = pfd.sigma_bar, pfd.sigma_hat
    rep = Report("inner integral identity", kind="derived")
    for i in range(n):
        for key in alg.basis():
            a = alg.e(key)
            lhs = sum((sbar[k, l](delta[l]) * shat[k, i](a) for k in range(n) for l in range(n)), alg.zero())
            rhs = sum((a * sbar[i, l](delta[l]) for l in range(n)), alg.zero())
            res = tuple(x - y for x, y in zip(Lam(lhs), Lam(rhs)))
            rep.expect(all(x == 0 for x in res), "Lambda(sbar(delta) shat_i(a)) = Lambda(a sbar_i(delta))",
                       (i, alg.label(key)), f"residual {res}")
    return rep


def inner_z2():
    table, names = cyclic_group_table(2)
    hopf = group_function_algebra(table, names)
    alg = hopf.algebra
    rg = hopf.hit_op(hopf.ev(1), "R_g")
    sigma = OpMatrix(alg, [[rg]])
    delta = (alg.e(0),)
    p = inner_calculus(sigma, delta, sigma, sigma)
    return Instance("inner-z2", alg, p.system.base, p.derivation, p.sigma_bar, p.sigma_hat, inner_delta=delta)


# --- supercircle --------------------------------------------------------------


def _dx(alg):
    return LinOp(alg, lambda k: Element(alg, {k: k[0]}), "d_x")


def _dtheta(alg):
    return LinOp(alg, lambda k: Element(alg, {(k[0], 0): 1}) if k[1] else alg.zero(), "d_theta")


def berezin(alg):
    """``z^k theta^e -> 1`` iff ``k = 0, e = 1``."""
    return ClaimedIntegral.from_mapping(alg, {(0, 1): 1}, "berezin")


def supercircle_divergence(f_x, f_theta):
    """Closed form ``d_x f_x - d_theta f_theta`` on coefficient dicts."""
    alg = f_x.algebra
    out = {}
    for (k, e), c in f_x.coeffs.items():
        out[k, e] = out.get((k, e), 0) + k * c
    for (k, e), c in f_theta.coeffs.items():
        if e:
            out[k, 0] = out.get((k, 0), 0) - c
    return Element(alg, out)


def supercircle(window=4):
    if window < 2:
        raise InstanceError("supercircle window must be at least 2")
    alg = laurent_grassmann(window)
    sigma = diagonal(alg, [identity_op(alg), alg.parity()])
    d = MultiDerivation([_dx(alg), _dtheta(alg)], sigma)
    base = PreProjectiveSystem(AlgMatrix.identity(alg, 2), sigma)
    return Instance(f"supercircle:{window}", alg, base, d, sigma, sigma, claimed=berezin(alg))


def check_supercircle_divergence(D, homs):
    rep = Report("supercircle divergence formula", kind="result")
    for h, f in enumerate(homs):
        want = supercircle_divergence(*f.values)
        got = D(f)
        rep.expect(got == want, "div f = d_x f_x - d_theta f_theta", (h,), lambda: f"{got} != {want}")
    return rep


# --- non-free toy -------------------------------------------------------------


def preproj_toy():
    """``Q[t]/(t^2 - t)`` with ``pi = diag(t, 0)``, ``sigma(a) = a pi`` and an inner derivation."""
    alg = polynomial_quotient([0, -1, 1])
    t, zero = alg.e(1), alg.zero()
    pi = AlgMatrix(alg, [[t, zero], [zero, zero]])
    sigma = embed(pi)
    delta = (alg.one(), alg.one())
    d = MultiDerivation(inner_partials(sigma, delta), sigma)
    return Instance("preproj-toy", alg, PreProjectiveSystem(pi, sigma), d, inner_delta=delta)


# --- random commutative systems -----------------------------------------------


def _idempotents(alg):
    out = []
    for coeffs in itertools.product((0, 1, -1), repeat=alg.dim):
        a = alg.from_vector(list(coeffs))
        if a * a == a:
            out.append(a)
    return out


def _random_algebra(rng):
    choice = rng.randrange(6)
    if choice == 0:
        return point_algebra(rng.randint(1, 4))
    if choice == 1:
        return polynomial_quotient([0, 0, 1])
    if choice == 2:
        return polynomial_quotient([0, 0, 0, 1])
    if choice == 3:
        return polynomial_quotient([0, -1, 1])
    if choice == 4:
        return tensor_product(polynomial_quotient([0, -1, 1]), polynomial_quotient([0, 0, 1]))
    return tensor_product(point_algebra(2), polynomial_quotient([0, 0, 1]))


def random_commutative_system(rng, max_n=3):
    """A random ``sigma(a) = a pi`` system with ``pi = U D U^-1`` over a commutative algebra, d <= 4."""
    alg = _random_algebra(rng)
    n = rng.randint(1, max_n)
    idem = _idempotents(alg)
    zero, one = alg.zero(), alg.one()
    D = AlgMatrix(alg, [[rng.choice(idem) if i == j else zero for j in range(n)] for i in range(n)])
    U = AlgMatrix.identity(alg, n)
    Uinv = AlgMatrix.identity(alg, n)
    if n > 1:
        for _ in range(rng.randint(0, 3)):
            i, j = rng.sample(range(n), 2)
            x = alg.random_element(rng, bound=2)
            E = [[(one if r == c else zero) for c in range(n)] for r in range(n)]
            F = [row[:] for row in E]
            E[i][j] = x
            F[i][j] = -x
            U = U * AlgMatrix(alg, E)
            Uinv = AlgMatrix(alg, F) * Uinv
    pi = U * D * Uinv
    sigma = embed(pi)
    delta = tuple(alg.random_element(rng, bound=2) for _ in range(n))
    d = MultiDerivation(inner_partials(sigma, delta), sigma)
    return Instance(f"random-{alg.name}-n{n}", alg, PreProjectiveSystem(pi, sigma), d, inner_delta=delta)


# --- registry -----------------------------------------------------------------


GALLERY = {
    "z2-haar": lambda: hopf_instance(2),
    "z3-haar": lambda: hopf_instance(3),
    "inner-z2": inner_z2,
    "preproj-toy": preproj_toy,
}


def gallery_names():
    return sorted(GALLERY) + ["supercircle:<W>"]


def build(name, window=None):
    """Build a named gallery instance; ``supercircle:W`` or ``supercircle`` with ``window``."""
    if name == "supercircle" or name.startswith("supercircle:"):
        _, _, w = name.partition(":")
        if w:
            try:
                w = int(w)
            except ValueError:
                raise InstanceError(f"bad supercircle window {w!r}") from None
        else:
            w = window if window is not None else 4
        if window is not None and window != w:
            w = window
        return supercircle(w)
    try:
        return GALLERY[name]()
    except KeyError:
        raise InstanceError(f"unknown gallery instance {name!r}; known: {', '.join(gallery_names())}") from None
