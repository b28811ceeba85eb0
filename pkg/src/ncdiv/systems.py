"""Twisted multi-derivations, (pre-)projective systems and their checkers.

All matrices act on the right of row vectors: ``d(ab) = d(a) sigma(b) + a d(b)``
reads ``d_i(ab) = sum_j d_j(a) sigma_ji(b) + a d_i(b)``.  Every axiom is
checked on basis elements (enough by linearity); graded algebras only on
basis tuples whose products stay inside the degree window.
"""

from dataclasses import dataclass, field

from .algebra import AlgMatrix, LinOp, OpMatrix, bullet, embed, identity_opmatrix
from .errors import InconsistencyError, InstanceError
from .linalg import kernel, solve
from .report import Report

__all__ = [
    "MultiDerivation",
    "PreProjectiveSystem",
    "ProjectiveSystem",
    "ProjectivelyFreeDerivation",
    "free_derivation",
    "check_multiderivation",
    "check_preprojective",
    "derived_identities",
    "check_projective",
    "check_projectively_free",
    "pi_twist",
    "sigma_twist",
    "sigma_bar_diagnostic",
    "DERIVED_IDENTITIES",
]


@dataclass
class MultiDerivation:
    partial: tuple
    sigma: OpMatrix

    def __post_init__(self):
        self.partial = tuple(self.partial)
        if len(self.partial) != self.sigma.n:
            raise InstanceError(f"{len(self.partial)} partials but sigma is {self.sigma.n}x{self.sigma.n}")

    @property
    def n(self):
        return len(self.partial)

    @property
    def algebra(self):
        return self.sigma.algebra

    def __call__(self, a):
        return tuple(p(a) for p in self.partial)


@dataclass
class PreProjectiveSystem:
    pi: AlgMatrix
    sigma: OpMatrix
    sigma_tilde: OpMatrix = None

    def __post_init__(self):
        if self.sigma_tilde is None:
            self.sigma_tilde = self.sigma
        if not (self.pi.n == self.sigma.n == self.sigma_tilde.n):
            raise InstanceError("pi, sigma and sigma_tilde must have the same size")

    @property
    def n(self):
        return self.pi.n

    @property
    def algebra(self):
        return self.sigma.algebra


@dataclass
class ProjectiveSystem:
    base: PreProjectiveSystem
    sigma_bar: OpMatrix

    def __post_init__(self):
        if self.sigma_bar.n != self.base.n:
            raise InstanceError("sigma_bar has the wrong size")

    pi = property(lambda self: self.base.pi)
    sigma = property(lambda self: self.base.sigma)
    sigma_tilde = property(lambda self: self.base.sigma_tilde)
    n = property(lambda self: self.base.n)
    algebra = property(lambda self: self.base.algebra)


@dataclass
class ProjectivelyFreeDerivation:
    derivation: MultiDerivation
    system: ProjectiveSystem
    sigma_hat: OpMatrix
    _twists: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.sigma_hat.n != self.system.n or self.derivation.n != self.system.n:
            raise InstanceError("derivation, system and sigma_hat sizes disagree")

    @property
    def n(self):
        return self.system.n

    @property
    def algebra(self):
        return self.system.algebra

    @property
    def is_free(self):
        return self.system.pi.is_identity()

    @property
    def sigma_bar(self):
        return self.system.sigma_bar


def free_derivation(partial, sigma, sigma_bar, sigma_hat):
    """The free case ``pi = 1``, ``sigma_tilde = sigma``."""
    alg = sigma.algebra
    base = PreProjectiveSystem(AlgMatrix.identity(alg, sigma.n), sigma)
    return ProjectivelyFreeDerivation(MultiDerivation(partial, sigma), ProjectiveSystem(base, sigma_bar), sigma_hat)


def _pairs(alg):
    keys = alg.basis()
    return [(i, j) for i in keys for j in keys if alg.fits(i, j)]


def _sigma_table(sigma, alg):
    return {k: sigma(alg.e(k)) for k in alg.basis()}


def check_multiderivation(d, name="multi-derivation"):
    """``d_i(ab) = sum_j d_j(a) sigma_ji(b) + a d_i(b)`` on all basis pairs."""
    alg = d.algebra
    rep = Report(name, kind="axiom")
    lab = alg.label
    for ka, kb in _pairs(alg):
        a, b = alg.e(ka), alg.e(kb)
        da, db, dab = d(a), d(b), d(a * b)
        sb = d.sigma(b)
        for i in range(d.n):
            rhs = sum((da[j] * sb[j, i] for j in range(d.n)), alg.zero()) + a * db[i]
            rep.expect(dab[i] == rhs, "d(ab) = d(a)sigma(b) + a d(b)", (i, lab(ka), lab(kb)),
                       lambda: f"{dab[i]} != {rhs}")
    return rep


def check_preprojective(s):
    """Idempotency of pi plus the three defining conditions."""
    alg = s.algebra
    rep = Report("pre-projective system", kind="axiom")
    lab = alg.label
    pi = s.pi
    rep.expect(pi.is_idempotent(), "pi pi = pi", ())
    sig = _sigma_table(s.sigma, alg)
    tsig = _sigma_table(s.sigma_tilde, alg)
    for ka, kb in _pairs(alg):
        if not alg.fits(kb, ka):
            continue
        lhs = tsig[kb] * sig[ka] * pi
        rhs = s.sigma_tilde(alg.e(kb) * alg.e(ka)) * pi
        rep.expect(lhs == rhs, "tsigma(b)sigma(a)pi = tsigma(ba)pi", (lab(ka), lab(kb)))
    rep.expect(s.sigma_tilde(alg.one()) == pi, "tsigma(1) = pi", ())
    for k in alg.basis():
        rep.expect(sig[k] * pi == pi * tsig[k], "sigma(a)pi = pi tsigma(a)", (lab(k),))
    return rep


DERIVED_IDENTITIES = (
    "pi sigma(a) pi = tsigma(a) pi",
    "pi tsigma(a) = tsigma(a) pi",
    "pi tsigma(a) pi = tsigma(a) pi",
    "sigma(a) pi = tsigma(a) pi",
    "pi sigma(a) pi = sigma(a) pi",
    "tsigma(b) tsigma(a) pi = tsigma(ba) pi = tsigma(b) pi tsigma(a)",
    "sigma(b) sigma(a) pi = sigma(ba) pi, sigma(1) pi = pi",
)


def derived_identities(s):
    """Re-verify every consequence of the pre-projective axioms.

    For input passing :func:`check_preprojective` the report must be empty;
    a violation means the checker itself is wrong.
    """
    alg = s.algebra
    rep = Report("derived identities", kind="derived", identities=list(DERIVED_IDENTITIES))
    lab = alg.label
    pi = s.pi
    sig = _sigma_table(s.sigma, alg)
    tsig = _sigma_table(s.sigma_tilde, alg)
    p1, p2, p3, p4, p5, t_alg, s_alg = DERIVED_IDENTITIES
    for k in alg.basis():
        where = (lab(k),)
        sp, tp = sig[k] * pi, tsig[k] * pi
        rep.expect(pi * sig[k] * pi == tp, p1, where)
        rep.expect(pi * tsig[k] == tp, p2, where)
        rep.expect(pi * tsig[k] * pi == tp, p3, where)
        rep.expect(sp == tp, p4, where)
        rep.expect(pi * sig[k] * pi == sp, p5, where)
    for ka, kb in _pairs(alg):
        if not alg.fits(kb, ka):
            continue
        where = (lab(ka), lab(kb))
        ba = alg.e(kb) * alg.e(ka)
        t_ba = s.sigma_tilde(ba) * pi
        rep.expect(tsig[kb] * tsig[ka] * pi == t_ba and t_ba == tsig[kb] * pi * tsig[ka], t_alg, where)
        rep.expect(sig[kb] * sig[ka] * pi == s.sigma(ba) * pi, s_alg, where)
    rep.expect(s.sigma(alg.one()) * pi == pi, s_alg, ("1",))
    return rep


def _expect_opmatrix(rep, lhs, rhs, identity):
    alg = lhs.algebra
    rep.tick()
    for i, j, k in lhs.mismatches(rhs):
        rep.fail(identity, (i, j, alg.label(k)))


def _multiplicative(rep, op, identity):
    alg = op.algebra
    lab = alg.label
    table = _sigma_table(op, alg)
    for ka, kb in _pairs(alg):
        rep.expect(op(alg.e(ka) * alg.e(kb)) == table[ka] * table[kb], identity, (lab(ka), lab(kb)))
    rep.expect(op(alg.one()).is_identity(), identity + " (unit)", ("1",))


def check_projective(p):
    """sigma_bar is an algebra map with ``sigma_bar . tsigma^T = 1`` and ``sigma^T . sigma_bar = pi``."""
    alg = p.algebra
    rep = Report("projective system", kind="axiom")
    _multiplicative(rep, p.sigma_bar, "sigma_bar(ab) = sigma_bar(a) sigma_bar(b)")
    _expect_opmatrix(rep, bullet(p.sigma_bar, p.sigma_tilde.T), identity_opmatrix(alg, p.n),
                     "sigma_bar . tsigma^T = I")
    _expect_opmatrix(rep, bullet(p.sigma.T, p.sigma_bar), embed(p.pi), "sigma^T . sigma_bar = pi")
    return rep


def check_projectively_free(p):
    """Return ``(axioms, derived)`` reports for a projectively free derivation.

    ``derived`` checks that sigma_hat is an algebra map, which follows from
    the axioms; a failure there with clean axioms signals a bug.
    """
    alg = p.algebra
    rep = Report("projectively free", kind="axiom")
    ident = identity_opmatrix(alg, p.n)
    _expect_opmatrix(rep, bullet(p.sigma_hat, p.sigma_bar.T), ident, "sigma_hat . sigma_bar^T = I")
    _expect_opmatrix(rep, bullet(p.sigma_bar.T, p.sigma_hat), ident, "sigma_bar^T . sigma_hat = I")
    if p.is_free:
        _expect_opmatrix(rep, p.system.sigma_tilde, p.system.sigma, "pi = I forces tsigma = sigma")
    rep.notes["free"] = p.is_free
    derived = Report("sigma_hat algebra map", kind="derived")
    _multiplicative(derived, p.sigma_hat, "sigma_hat(ab) = sigma_hat(a) sigma_hat(b)")
    return rep, derived


def pi_twist(d, s, validate=True):
    """``(d^pi, tsigma)`` with ``d^pi(a) = d(a) pi``."""
    if d.n != s.n:
        raise InstanceError("derivation and system sizes disagree")
    alg = d.algebra
    n = d.n
    pi = s.pi

    def twisted(i):
        terms = [(d.partial[j], pi[j, i]) for j in range(n)]
        return LinOp(alg, lambda k: sum((op.image(k) * x for op, x in terms), alg.zero()), f"d^pi_{i}")

    out = MultiDerivation([twisted(i) for i in range(n)], s.sigma_tilde)
    if validate:
        rep = check_multiderivation(out, "pi-twisted multi-derivation")
        if not rep.ok:
            raise InconsistencyError("d^pi is not a tsigma-twisted multi-derivation", rep)
    return out


def sigma_twist(p, validate=True):
    """``(d^sigma, sigma_hat)`` with ``d^sigma_i = sum_jk sigma_bar_kj o d^pi_j o sigma_hat_ki``."""
    key = ("sigma", validate)
    if key in p._twists:
        return p._twists[key]
    alg = p.algebra
    n = p.n
    dpi = pi_twist(p.derivation, p.system.base, validate=validate)
    sbar, shat = p.sigma_bar, p.sigma_hat

    def twisted(i):
        terms = [sbar[k, j] @ dpi.partial[j] @ shat[k, i] for j in range(n) for k in range(n)]
        return LinOp(alg, lambda key: sum((t.image(key) for t in terms), alg.zero()), f"d^sigma_{i}")

    out = MultiDerivation([twisted(i) for i in range(n)], shat)
    if validate:
        rep = check_multiderivation(out, "sigma-twisted multi-derivation")
        if not rep.ok:
            raise InconsistencyError("d^sigma is not a sigma_hat-twisted multi-derivation", rep)
    p._twists[key] = out
    return out


def sigma_bar_diagnostic(s):
    """Does the linear part of the projective-system equations admit a sigma_bar?

    Solves ``sigma_bar . tsigma^T = I`` and ``sigma^T . sigma_bar = pi`` for
    the d x d matrices of the entries of sigma_bar (finite-dimensional
    algebras only).  Multiplicativity is not imposed.  Returns a dict with
    ``solvable``, ``solution_dim`` and, when solvable, one ``particular``
    solution as an OpMatrix.
    """
    alg = s.algebra
    n, d = s.n, alg.dim
    S = [[s.sigma[i, j].matrix() for j in range(n)] for i in range(n)]
    T = [[s.sigma_tilde[i, j].matrix() for j in range(n)] for i in range(n)]
    P = [[embed(s.pi)[i, j].matrix() for j in range(n)] for i in range(n)]

    def var(i, j, r, c):
        return ((i * n + j) * d + r) * d + c

    nvars = n * n * d * d
    rows, rhs = [], []
    for i in range(n):
        for j in range(n):
            for r in range(d):
                for c in range(d):
                    row = [0] * nvars
                    for k in range(n):
                        for t in range(d):
                            row[var(i, k, r, t)] += T[j][k][t][c]
                    rows.append(row)
                    rhs.append(1 if (i == j and r == c) else 0)
                    row = [0] * nvars
                    for k in range(n):
                        for t in range(d):
                            row[var(k, j, t, c)] += S[k][i][r][t]
                    rows.append(row)
                    rhs.append(P[i][j][r][c])
    x = solve(rows, rhs, nvars)
    if x is None:
        return {"solvable": False, "solution_dim": 0}
    free_dim = kernel(rows, nvars).dim
    ops = [[LinOp.from_matrix(alg, [[x[var(i, j, r, c)] for c in range(d)] for r in range(d)])
            for j in range(n)] for i in range(n)]
    return {"solvable": True, "solution_dim": free_dim, "particular": OpMatrix(alg, ops)}
