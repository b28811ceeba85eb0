"""First-order differential calculus on the projective module ``M = A^n pi``.

M is realized as row vectors ``v`` with ``v pi = v``.  The generators are
the rows of pi (``omega_i``), the left duals are coordinate projections
(``eta_j(v) = v_j``), the right action is ``m . a = m tsigma(a) pi`` and the
differential is ``da = d(a) pi``.  When a sigma_bar is present the right duals
``xi_i = sum_j sigma_bar_ij o eta_j`` make M right projective too.

Right A-module maps ``M -> A`` (``HomElement``) are stored by their values
on the generators and, for finite-dimensional algebras, by their values on a
k-basis of M.
"""

from dataclasses import dataclass

from .algebra import FiniteDimAlgebra, row_times
from .errors import CalculusError, InstanceError
from .linalg import kernel, row_space
from .report import Report
from .systems import (
    PreProjectiveSystem,
    ProjectiveSystem,
    ProjectivelyFreeDerivation,
    pi_twist,
)

__all__ = [
    "Calculus",
    "HomElement",
    "build_calculus",
    "check_calculus",
    "check_right_duals",
    "check_pi_calculus",
    "hom_basis",
    "hom_window",
    "hom_from_values",
    "reconstruct",
    "check_reconstruction",
    "check_hom_space",
    "random_hom",
]


@dataclass(frozen=True)
class HomElement:
    values: tuple            # f(omega_i)
    table: tuple = None      # f on Calculus.module_basis (finite-dimensional case)

    def __repr__(self):
        return "HomElement(" + ", ".join(repr(v) for v in self.values) + ")"


class Calculus:
    def __init__(self, system, derivation, sigma_bar=None, sigma_hat=None):
        if isinstance(system, ProjectiveSystem):
            sigma_bar = system.sigma_bar
            system = system.base
        if not isinstance(system, PreProjectiveSystem):
            raise InstanceError("a calculus needs a pre-projective system")
        if derivation.n != system.n:
            raise InstanceError("derivation and system sizes disagree")
        self.system = system
        self.derivation = derivation
        self.sigma_bar = sigma_bar
        self.sigma_hat = sigma_hat
        self.algebra = system.algebra
        self.n = system.n
        self.pi = system.pi
        self.omega = tuple(self.pi.row(i) for i in range(self.n))
        self.finite = isinstance(self.algebra, FiniteDimAlgebra)
        self._module_basis = None
        self._twist_cache = {}
        if self.finite:
            d = self.algebra.dim
            rows = []
            for i in range(self.n):
                for k in self.algebra.basis():
                    rows.append(self.flat(self.left(self.algebra.e(k), self.omega[i])))
            self._module_basis = row_space(rows, self.n * d)

    # --- module structure ---------------------------------------------------

    def flat(self, m):
        out = []
        for x in m:
            out.extend(self.algebra.to_vector(x))
        return out

    def unflat(self, v):
        d = self.algebra.dim
        return tuple(self.algebra.from_vector(v[i * d:(i + 1) * d]) for i in range(self.n))

    @property
    def module_subspace(self):
        return self._module_basis

    @property
    def module_basis(self):
        if not self.finite:
            raise InstanceError("graded modules have no finite k-basis; use spanning()")
        return [self.unflat(list(row)) for row in self._module_basis.basis]

    @property
    def dimension(self):
        return self._module_basis.dim if self.finite else None

    def in_module(self, m):
        return row_times(m, self.pi) == tuple(m)

    def eta(self, j, m):
        return m[j]

    def left(self, a, m):
        return tuple(a * x for x in m)

    def add(self, m, p):
        return tuple(x + y for x, y in zip(m, p))

    def zero_vector(self):
        return tuple(self.algebra.zero() for _ in range(self.n))

    def _twist(self, which, a):
        key = (which, a)
        try:
            return self._twist_cache[key]
        except KeyError:
            op = self.system.sigma_tilde if which == "t" else self.system.sigma
            out = self._twist_cache[key] = op(a)
            return out

    def right_action(self, m, a):
        return row_times(row_times(m, self._twist("t", a)), self.pi)

    def right_action_sigma(self, m, a):
        return row_times(row_times(m, self._twist("s", a)), self.pi)

    def d(self, a):
        return row_times(self.derivation(a), self.pi)

    def xi(self, i, m):
        if self.sigma_bar is None:
            raise InstanceError("right duals need sigma_bar (a projective system)")
        zero = self.algebra.zero()
        return sum((self.sigma_bar[i, j](m[j]) for j in range(self.n)), zero)

    def spanning(self, margin=0):
        """``(row, degree_keys)`` pairs spanning M over k (graded: inside ``W - margin``)."""
        if self.finite:
            return [(m, ()) for m in self.module_basis]
        alg = self.algebra
        out = []
        for i in range(self.n):
            for k in alg.basis():
                if abs(alg.degree(k)) + margin <= alg.window:
                    out.append((self.left(alg.e(k), self.omega[i]), (k,)))
        return out

    # --- Hom_A(M, A) -----------------------------------------------------------

    def hom_eval(self, f, m):
        zero = self.algebra.zero()
        if f.table is not None and self.finite:
            sub = self._module_basis
            coords = sub.coordinates(self.flat(m))
            return sum((c * f.table[s] for s, c in enumerate(coords) if c != 0), zero)
        return sum((f.values[i] * self.xi(i, m) for i in range(self.n)), zero)

    def hom_right_action(self, f, a):
        """``(f a)(m) = f(a m)``."""
        values = tuple(self.hom_eval(f, self.left(a, w)) for w in self.omega)
        table = None
        if f.table is not None and self.finite:
            table = tuple(self.hom_eval(f, self.left(a, b)) for b in self.module_basis)
        return HomElement(values, table)

    def hom_equal(self, f, g):
        return all(self.hom_eval(f, m) == self.hom_eval(g, m) for m, _ in self.spanning())


def build_calculus(system, derivation=None, verify=True):
    """Calculus from a system plus derivation, or from a ProjectivelyFreeDerivation."""
    sigma_hat = None
    if isinstance(system, ProjectivelyFreeDerivation):
        derivation = derivation or system.derivation
        sigma_hat = system.sigma_hat
        system = system.system
    if derivation is None:
        raise InstanceError("build_calculus needs a multi-derivation")
    calc = Calculus(system, derivation, sigma_hat=sigma_hat)
    if verify:
        rep = check_calculus(calc)
        if calc.sigma_bar is not None:
            rep.merge(check_right_duals(calc))
        if not rep.ok:
            raise CalculusError(rep)
    return calc


def _fits(alg, *keys):
    return alg.fits(*keys)


def check_calculus(calc):
    """Dual basis, bimodule laws, commutation relations and Leibniz rule."""
    alg = calc.algebra
    lab = alg.label
    rep = Report("calculus", kind="construction")
    n = calc.n
    keys = alg.basis()
    for i in range(n):
        for j in range(n):
            rep.expect(calc.eta(j, calc.omega[i]) == calc.pi[i, j], "eta_j(omega_i) = pi_ij", (i, j))
    one = alg.one()
    span = calc.spanning()
    for s, (m, mk) in enumerate(span):
        rep.expect(row_times(m, calc.pi) == m, "sum_i eta_i(m) omega_i = m", (s,))
        rep.expect(calc.right_action(m, one) == m, "m 1 = m", (s,))
        for ka in keys:
            if not _fits(alg, *mk, ka):
                continue
            a = alg.e(ka)
            ma = calc.right_action(m, a)
            rep.expect(ma == calc.right_action_sigma(m, a), "m tsigma(a) pi = m sigma(a) pi", (s, lab(ka)))
    # the right action is left A-linear by construction, so associativity
    # only needs checking on the generators
    for i in range(n):
        for ka in keys:
            a = alg.e(ka)
            wa = calc.right_action(calc.omega[i], a)
            for kb in keys:
                if not _fits(alg, ka, kb):
                    continue
                b = alg.e(kb)
                rep.expect(calc.right_action(wa, b) == calc.right_action(calc.omega[i], a * b),
                           "(omega_i a) b = omega_i (ab)", (i, lab(ka), lab(kb)))
    for ka in keys:
        a = alg.e(ka)
        sa, ta = calc.system.sigma(a), calc.system.sigma_tilde(a)
        for i in range(n):
            lhs = calc.right_action(calc.omega[i], a)
            via_s = _combine(calc, [(sa[i, j], calc.omega[j]) for j in range(n)])
            via_t = _combine(calc, [(ta[i, j], calc.omega[j]) for j in range(n)])
            rep.expect(lhs == via_s == via_t, "omega_i a = sum_j sigma_ij(a) omega_j = sum_j tsigma_ij(a) omega_j",
                       (i, lab(ka)))
    for ka in keys:
        for kb in keys:
            if not _fits(alg, ka, kb):
                continue
            a, b = alg.e(ka), alg.e(kb)
            lhs = calc.d(a * b)
            rhs = calc.add(calc.right_action(calc.d(a), b), calc.left(a, calc.d(b)))
            rep.expect(lhs == rhs, "d(ab) = d(a) b + a d(b)", (lab(ka), lab(kb)))
    rep.notes["rank"] = n
    if calc.finite:
        rep.notes["dimension"] = calc.dimension
    return rep


def _combine(calc, pairs):
    out = calc.zero_vector()
    for c, w in pairs:
        out = calc.add(out, calc.left(c, w))
    return out


def check_right_duals(calc):
    """``a omega_i = sum_j omega_j sigma_bar_ji(a)`` and the right dual basis (omega_i, xi_i)."""
    alg = calc.algebra
    lab = alg.label
    rep = Report("right dual basis", kind="derived")
    n = calc.n
    keys = alg.basis()
    for ka in keys:
        a = alg.e(ka)
        sb = calc.sigma_bar(a)
        for i in range(n):
            lhs = calc.left(a, calc.omega[i])
            rhs = calc.zero_vector()
            for j in range(n):
                rhs = calc.add(rhs, calc.right_action(calc.omega[j], sb[j, i]))
            rep.expect(lhs == rhs, "a omega_i = sum_j omega_j sigma_bar_ji(a)", (i, lab(ka)))
    for s, (m, mk) in enumerate(calc.spanning()):
        total = calc.zero_vector()
        for i in range(n):
            total = calc.add(total, calc.right_action(calc.omega[i], calc.xi(i, m)))
        rep.expect(total == m, "sum_i omega_i xi_i(m) = m", (s,))
        for ka in keys:
            if not _fits(alg, *mk, ka):
                continue
            a = alg.e(ka)
            ma = calc.right_action(m, a)
            for i in range(n):
                rep.expect(calc.xi(i, ma) == calc.xi(i, m) * a, "xi_i(m a) = xi_i(m) a", (i, s, lab(ka)))
    return rep


def check_pi_calculus(calc):
    """The calculus of ``(d^pi, tsigma)`` has the same differential as ``(d, sigma)``."""
    alg = calc.algebra
    rep = Report("pi-twisted calculus coincides", kind="derived")
    dpi = pi_twist(calc.derivation, calc.system)
    for k in alg.basis():
        a = alg.e(k)
        via_pi = row_times(dpi(a), calc.pi)
        rep.expect(via_pi == calc.d(a), "sum_i d^pi_i(a) omega_i = da", (alg.label(k),))
        direct = _combine(calc, [(x, w) for x, w in zip(dpi(a), calc.omega)])
        rep.expect(direct == calc.d(a), "d^pi(a) written in omega = da", (alg.label(k),))
    return rep


# --- Hom ---------------------------------------------------------------------


def hom_basis(calc):
    """A k-basis of all right A-module maps ``M -> A`` (finite-dimensional algebras).

    Solves ``f(m_s a_t) = f(m_s) a_t`` for the values of f on the k-basis
    ``m_s`` of M and the algebra basis ``a_t``.
    """
    if not calc.finite:
        raise InstanceError("graded algebras: use hom_window")
    alg = calc.algebra
    d = alg.dim
    basis = calc.module_basis
    k = len(basis)
    if k == 0:
        return []
    sub = calc.module_subspace
    nvars = k * d
    rows = []
    for s, m in enumerate(basis):
        for q in alg.basis():
            coords = sub.coordinates(calc.flat(calc.right_action(m, alg.e(q))))
            for p in range(d):
                row = [0] * nvars
                for r, c in enumerate(coords):
                    if c != 0:
                        row[r * d + p] += c
                for t in range(d):
                    sc = alg.structure[t][q][p]
                    if sc != 0:
                        row[s * d + t] -= sc
                rows.append(row)
    ker = kernel(rows, nvars)
    out = []
    for vec in ker.basis:
        table = tuple(alg.from_vector(vec[s * d:(s + 1) * d]) for s in range(k))
        f = HomElement((), table)
        values = tuple(calc.hom_eval(f, w) for w in calc.omega)
        out.append(HomElement(values, table))
    return out


def hom_window(calc):
    """Window generators of Hom: ``f(omega_i) = basis element``, other values zero.

    Such maps are determined by their values on the generators through the
    right dual basis, so a sigma_bar is required.
    """
    if calc.sigma_bar is None:
        raise InstanceError("hom_window needs a projective system")
    alg = calc.algebra
    zero = alg.zero()
    out = []
    for i in range(calc.n):
        for k in alg.basis():
            values = tuple(alg.e(k) if j == i else zero for j in range(calc.n))
            out.append(HomElement(values))
    return out


def hom_from_values(calc, values):
    """The right module map with prescribed values on the generators (needs sigma_bar)."""
    if calc.sigma_bar is None:
        raise InstanceError("hom_from_values needs a projective system")
    values = tuple(values)
    f = HomElement(values)
    if calc.finite:
        table = tuple(calc.hom_eval(f, b) for b in calc.module_basis)
        f = HomElement(tuple(calc.hom_eval(f, w) for w in calc.omega), table)
    return f


def check_hom_space(calc, homs):
    """Right linearity of each map and closure of the span under ``f -> f a``."""
    alg = calc.algebra
    lab = alg.label
    rep = Report("hom space", kind="construction")
    for h, f in enumerate(homs):
        margin = _value_degree(alg, f)
        for s, (m, mk) in enumerate(calc.spanning(margin)):
            for ka in alg.basis():
                if not _fits(alg, *mk, ka) or (alg.window is not None and margin + sum(
                        abs(alg.degree(k)) for k in (*mk, ka)) > alg.window):
                    continue
                a = alg.e(ka)
                rep.expect(calc.hom_eval(f, calc.right_action(m, a)) == calc.hom_eval(f, m) * a,
                           "f(m a) = f(m) a", (h, s, lab(ka)))
    if calc.finite and homs:
        d = alg.dim
        span = row_space([_hom_vector(f) for f in homs], len(homs[0].table) * d)
        for h, f in enumerate(homs):
            for ka in alg.basis():
                fa = calc.hom_right_action(f, alg.e(ka))
                rep.expect(_hom_vector(fa) in span, "f a stays in Hom", (h, lab(ka)))
    rep.notes["hom dimension"] = len(homs)
    return rep


def _hom_vector(f):
    out = []
    for x in f.table:
        out.extend(x.vector())
    return out


def _value_degree(alg, f):
    if alg.window is None:
        return 0
    return max((abs(alg.degree(k)) for v in f.values for k in v.coeffs), default=0)


def _reconstruct_eval(calc, f, m):
    shat = calc.sigma_hat
    zero = calc.algebra.zero()
    total = zero
    for i in range(calc.n):
        for k in range(calc.n):
            c = shat[i, k](f.values[k])
            total = total + calc.xi(i, calc.left(c, m))
    return total


def reconstruct(calc, f):
    """Rebuild f as ``sum_ik xi_i sigma_hat_ik(f(omega_k))``."""
    if calc.sigma_hat is None or calc.sigma_bar is None:
        raise InstanceError("reconstruction needs sigma_bar and sigma_hat")
    values = tuple(_reconstruct_eval(calc, f, w) for w in calc.omega)
    table = None
    if calc.finite:
        table = tuple(_reconstruct_eval(calc, f, b) for b in calc.module_basis)
    return HomElement(values, table)


def check_reconstruction(calc, f, label=0):
    """Compare f with its reconstruction on a spanning set of M."""
    rep = Report("reconstruction", kind="derived")
    alg = calc.algebra
    margin = _value_degree(alg, f)
    for s, (m, _) in enumerate(calc.spanning(margin)):
        lhs = _reconstruct_eval(calc, f, m)
        rhs = calc.hom_eval(f, m)
        rep.expect(lhs == rhs, "f = sum xi_i sigma_hat_ik(f(omega_k))", (label, s), lambda: f"{lhs} != {rhs}")
    return rep


def random_hom(calc, rng, homs=None, max_degree=None):
    """A random right module map: a combination of ``homs`` or random generator values."""
    alg = calc.algebra
    if calc.finite:
        homs = hom_basis(calc) if homs is None else homs
        if not homs:
            return HomElement(tuple(alg.zero() for _ in range(calc.n)), ())
        coeffs = [alg.field.random(rng) for _ in homs]
        table = tuple(sum((c * f.table[s] for c, f in zip(coeffs, homs)), alg.zero())
                      for s in range(len(homs[0].table)))
        g = HomElement((), table)
        return HomElement(tuple(calc.hom_eval(g, w) for w in calc.omega), table)
    bound = alg.window // 2 if max_degree is None else max_degree
    keys = [k for k in alg.basis() if abs(alg.degree(k)) <= bound]
    return HomElement(tuple(alg.random_element(rng, keys) for _ in range(calc.n)))

