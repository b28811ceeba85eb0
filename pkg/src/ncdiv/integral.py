"""The divergence on Hom_A(M, A), its cokernel integral and integration by parts.

For a projectively free derivation the divergence is
``f -> sum_i d^sigma_i(f(omega_i))``.  On finite-dimensional algebras its
image V is computed exactly and the integral is the quotient map
``A -> A / V`` in canonical coordinates (unnormalized).  Graded algebras
have no finite image; there a claimed functional is verified instead.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import FiniteDimAlgebra
from .calculus import hom_basis, hom_window
from .errors import InstanceError
from .linalg import Quotient, kernel, row_space
from .report import Report
from .systems import sigma_twist

__all__ = [
    "Divergence",
    "IntegralPresentation",
    "ClaimedIntegral",
    "divergence",
    "check_divergence_law",
    "integral",
    "check_integral_presentation",
    "integral_window",
    "ibp_residual",
    "ibp_report",
    "exactness_check",
    "proportionality",
    "annihilator",
]


class Divergence:
    def __init__(self, calc, pfd, validate=True):
        if calc.sigma_bar is None or calc.sigma_hat is None:
            raise InstanceError("a divergence needs a projectively free derivation")
        self.calc = calc
        self.pfd = pfd
        self.twisted = sigma_twist(pfd, validate=validate)

    @property
    def algebra(self):
        return self.calc.algebra

    @property
    def partial_sigma(self):
        return self.twisted.partial

    def __call__(self, f):
        alg = self.algebra
        return sum((p(v) for p, v in zip(self.twisted.partial, f.values)), alg.zero())


def divergence(D, f):
    return D(f)


def _default_homs(D):
    return hom_basis(D.calc) if D.calc.finite else hom_window(D.calc)


def _value_keys(f):
    return [k for v in f.values for k in v.coeffs]


def _fits_hom(alg, f, *keys):
    if alg.window is None:
        return True
    extra = max((abs(alg.degree(k)) for k in _value_keys(f)), default=0)
    return extra + sum(abs(alg.degree(k)) for k in keys) <= alg.window


def check_divergence_law(D, homs=None):
    """``div(f a) = div(f) a + f(da)`` for every hom generator f and basis a."""
    calc = D.calc
    alg = calc.algebra
    homs = _default_homs(D) if homs is None else homs
    rep = Report("divergence law", kind="derived")
    for h, f in enumerate(homs):
        df = D(f)
        for ka in alg.basis():
            if not _fits_hom(alg, f, ka):
                continue
            a = alg.e(ka)
            lhs = D(calc.hom_right_action(f, a))
            rhs = df * a + calc.hom_eval(f, calc.d(a))
            rep.expect(lhs == rhs, "div(f a) = div(f) a + f(da)", (h, alg.label(ka)), lambda: f"{lhs} != {rhs}")
    rep.notes["hom generators"] = len(homs)
    return rep


@dataclass(frozen=True)
class IntegralPresentation:
    """``V = div(Hom)`` inside A and the cokernel map in quotient coordinates."""

    algebra: FiniteDimAlgebra
    image: object
    quotient: Quotient

    @property
    def rank(self):
        return self.quotient.dim

    def __call__(self, a):
        return self.quotient.coordinates(self.algebra.to_vector(a))

    def table(self):
        return {self.algebra.label(k): self(self.algebra.e(k)) for k in self.algebra.basis()}

    def functionals(self):
        """The r coordinate functionals, each as its values on the basis."""
        return [tuple(row) for row in self.quotient.matrix()]

    def image_basis(self):
        return [self.algebra.from_vector(list(row)) for row in self.image.basis]

    def lift(self, coords):
        return self.algebra.from_vector(self.quotient.section(coords))


@dataclass(frozen=True)
class ClaimedIntegral:
    """A functional given by its values on basis keys (missing keys are zero)."""

    algebra: object
    values: tuple            # sorted ((key, scalar), ...)
    name: str = "claimed"

    @classmethod
    def from_mapping(cls, algebra, mapping, name="claimed"):
        vals = {}
        for k, v in mapping.items():
            if isinstance(k, str):
                k = algebra.key(k)
            v = algebra.field.coerce(v)
            if v != 0:
                vals[k] = v
        return cls(algebra, tuple(sorted(vals.items(), key=lambda kv: algebra.sort_key(kv[0]))), name)

    rank = 1

    def __call__(self, a):
        vals = dict(self.values)
        return (sum((c * vals.get(k, 0) for k, c in a.coeffs.items()), 0),)

    def is_zero(self):
        return not self.values

    def table(self):
        return {self.algebra.label(k): self(self.algebra.e(k)) for k in self.algebra.basis()}

    def mapping(self):
        return {self.algebra.label(k): v for k, v in self.values}


def integral(D):
    """Image of the divergence and the cokernel map (finite-dimensional algebras)."""
    alg = D.algebra
    if not isinstance(alg, FiniteDimAlgebra):
        raise InstanceError("graded algebra: verify a claimed functional with integral_window")
    images = [D(f).vector() for f in hom_basis(D.calc)]
    V = row_space(images, alg.dim)
    return IntegralPresentation(alg, V, Quotient(V))


def check_integral_presentation(P, D=None):
    """Lambda kills V, is surjective, and Lambda o section = id."""
    alg = P.algebra
    rep = Report("integral presentation", kind="construction")
    for s, v in enumerate(P.image_basis()):
        rep.expect(all(x == 0 for x in P(v)), "Lambda(V) = 0", (s,))
    for j in range(P.rank):
        unit = tuple(1 if i == j else 0 for i in range(P.rank))
        rep.expect(P(P.lift(unit)) == unit, "Lambda(section(c)) = c", (j,))
    rep.expect(len(P.functionals()) == P.rank and
               row_space(P.functionals(), alg.dim).dim == P.rank if P.rank else True,
               "Lambda surjective", ())
    if D is not None:
        for h, f in enumerate(hom_basis(D.calc)):
            rep.expect(all(x == 0 for x in P(D(f))), "Lambda o div = 0", (h,))
    rep.notes["dim coker"] = P.rank
    return rep


def integral_window(D, claimed, window=None):
    """Check ``claimed(div f) = 0`` for every window generator f and that claimed != 0."""
    alg = D.algebra
    rep = Report("integral on window", kind="result")
    if window is not None and alg.window is not None and window != alg.window:
        raise InstanceError(f"algebra window is {alg.window}, not {window}")
    homs = hom_window(D.calc)
    for h, f in enumerate(homs):
        res = claimed(D(f))
        rep.expect(all(x == 0 for x in res), "Lambda(div f) = 0", (h, _describe_generator(alg, f)),
                   lambda: f"residual {res}")
    nonzero = any(any(x != 0 for x in claimed(alg.e(k))) for k in alg.basis())
    rep.expect(nonzero, "Lambda is not the zero functional", ())
    rep.notes["window"] = alg.window
    rep.notes["verified generators"] = len(homs)
    return rep


def _describe_generator(alg, f):
    for i, v in enumerate(f.values):
        if v:
            return f"f(omega_{i}) = {v}"
    return "0"


def ibp_residual(D, Lam, a, b, i):
    """``Lambda(a d^sigma_i(b)) + sum_l Lambda(d^sigma_l(a) sigma_hat_li(b))``."""
    if not D.pfd.is_free:
        raise InstanceError("integration by parts is stated for free derivations (pi = I) only")
    ds = D.twisted.partial
    shat = D.pfd.sigma_hat
    out = list(Lam(a * ds[i](b)))
    for l in range(len(ds)):
        term = Lam(ds[l](a) * shat[l, i](b))
        out = [x + y for x, y in zip(out, term)]
    return tuple(out)


def ibp_report(D, Lam):
    alg = D.algebra
    rep = Report("integration by parts", kind="derived")
    worst = 0
    for ka in alg.basis():
        for kb in alg.basis():
            if not alg.fits(ka, kb):
                continue
            a, b = alg.e(ka), alg.e(kb)
            for i in range(D.pfd.n):
                res = ibp_residual(D, Lam, a, b, i)
                for x in res:
                    if x != 0:
                        worst = max(worst, _size(x))
                rep.expect(all(x == 0 for x in res), "Lambda(a d_i(b)) = -sum_l Lambda(d_l(a) shat_li(b))",
                           (i, alg.label(ka), alg.label(kb)), lambda: f"residual {res}")
    rep.notes["max residual"] = str(worst)
    return rep


def _size(x):
    try:
        return abs(x)
    except TypeError:
        return max(abs(c) for c in x.c)


def exactness_check(D, Lam):
    """``Lambda(d^sigma_i(a)) = 0`` for all basis a and all i."""
    alg = D.algebra
    rep = Report("exactness", kind="derived")
    for i, p in enumerate(D.twisted.partial):
        for k in alg.basis():
            res = Lam(p(alg.e(k)))
            rep.expect(all(x == 0 for x in res), "Lambda(d^sigma_i(a)) = 0", (i, alg.label(k)))
    return rep


def proportionality(values, reference):
    """Scalar c with ``values = c * reference`` exactly, or None."""
    values, reference = list(values), list(reference)
    if len(values) != len(reference):
        raise ValueError("length mismatch")
    pivot = next((i for i, r in enumerate(reference) if r != 0), None)
    if pivot is None:
        return None
    r = reference[pivot]
    c = values[pivot] / (Fraction(r) if isinstance(r, int) else r)
    if all(v == c * r for v, r in zip(values, reference)):
        return c
    return None


def annihilator(vectors, dim):
    """All functionals (as value vectors) vanishing on the given vectors."""
    if not vectors:
        return kernel([], dim)
    return kernel([list(v) for v in vectors], dim)
