"""Run every applicable checker on an instance and fold the results into an exit code.

Stages run in order and stop at the first stage whose defining axioms fail,
since later constructions assume them:

1. algebra (and Hopf) axioms
2. multi-derivation and system axioms, plus their derived identities
3. calculus construction, Hom and right duals
4. divergence, integral, integration by parts and instance-specific results
"""

import random
from dataclasses import dataclass, field

from .algebra import FiniteDimAlgebra, LaurentGrassmann
from .calculus import (
    Calculus,
    check_calculus,
    check_hom_space,
    check_pi_calculus,
    check_reconstruction,
    check_right_duals,
    hom_basis,
    hom_window,
    random_hom,
)
from .gallery import (
    check_hopf_twist,
    check_inner,
    check_supercircle_divergence,
    haar_uniqueness,
    inner_integral_identity,
    right_integral_annihilation,
)
from .integral import (
    Divergence,
    check_divergence_law,
    check_integral_presentation,
    exactness_check,
    ibp_report,
    integral,
    integral_window,
    proportionality,
)
from .report import MAX_VIOLATIONS, Report
from .systems import (
    check_multiderivation,
    check_preprojective,
    check_projective,
    check_projectively_free,
    derived_identities,
    sigma_twist,
)

__all__ = ["SuiteResult", "run_suite", "exit_code", "EXIT_OK", "EXIT_VIOLATION", "EXIT_PARSE", "EXIT_INCONSISTENT"]

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_INCONSISTENT = 3

# report kinds whose failure with clean axioms means a bug in this package
_CONSEQUENCES = ("derived", "construction")


@dataclass
class SuiteResult:
    instance: object
    reports: list = field(default_factory=list)
    calculus: object = None
    divergence: object = None
    integral: object = None          # IntegralPresentation or ClaimedIntegral
    homs: list = None
    stopped: str = None              # stage at which the run stopped early

    def add(self, rep, max_violations):
        rep.max_violations = max_violations
        del rep.violations[max_violations:]
        self.reports.append(rep)
        return rep

    @property
    def axioms_ok(self):
        return all(r.ok for r in self.reports if r.kind == "axiom")

    @property
    def ok(self):
        return all(r.ok for r in self.reports)

    def report(self, name):
        return next((r for r in self.reports if r.name == name), None)

    @property
    def exit_code(self):
        return exit_code(self.reports)


def exit_code(reports):
    if all(r.ok for r in reports):
        return EXIT_OK
    if not all(r.ok for r in reports if r.kind in ("axiom", "result")):
        # consequences of a false claim (e.g. a wrong Lambda) are not internal bugs
        return EXIT_VIOLATION
    if any(not r.ok for r in reports if r.kind in _CONSEQUENCES):
        return EXIT_INCONSISTENT
    return EXIT_VIOLATION


def run_suite(inst, max_violations=MAX_VIOLATIONS, samples=5, seed=0, stages=4):
    """Check ``inst`` through ``stages`` stages (see module docstring)."""
    res = SuiteResult(inst)

    def add(rep):
        return res.add(rep, max_violations)

    def stop(stage):
        res.stopped = stage
        return res

    alg = inst.algebra
    add(alg.check_axioms())
    if inst.hopf is not None:
        add(inst.hopf.hopf.check_axioms())
        add(inst.hopf.check_functionals())
    if not res.axioms_ok:
        return stop("algebra")
    if stages < 2:
        return res

    # stage 2: systems
    if inst.derivation is not None:
        add(check_multiderivation(inst.derivation))
    pre = add(check_preprojective(inst.system))
    if pre.ok:
        add(derived_identities(inst.system))
    proj, pfd = inst.projective, inst.pfd
    if proj is not None:
        add(check_projective(proj))
    if pfd is not None:
        axioms, derived = check_projectively_free(pfd)
        add(axioms)
        add(derived)
    if not res.axioms_ok:
        return stop("systems")
    if inst.derivation is None or stages < 3:
        return res

    # stage 3: calculus
    calc = Calculus(inst.system, inst.derivation, inst.sigma_bar, inst.sigma_hat)
    res.calculus = calc
    add(check_calculus(calc))
    add(check_pi_calculus(calc))
    if inst.sigma_bar is not None:
        add(check_right_duals(calc))
    if inst.inner_delta is not None:
        axioms, derived = check_inner(calc, inst.inner_delta)
        add(axioms)
        add(derived)
    if calc.finite:
        res.homs = hom_basis(calc)
        hom_rep = add(check_hom_space(calc, res.homs))
        hom_rep.notes["module dimension"] = calc.dimension
    elif inst.sigma_bar is not None:
        res.homs = hom_window(calc)
    if not res.axioms_ok or pfd is None or stages < 4:
        return res

    # stage 4: divergence and integral
    twisted = sigma_twist(pfd, validate=False)
    add(check_multiderivation(twisted, "sigma-twisted multi-derivation")).kind = "derived"
    D = Divergence(calc, pfd, validate=False)
    res.divergence = D
    add(check_divergence_law(D, res.homs))

    rng = random.Random(seed)
    rec = Report("reconstruction", kind="derived")
    for h, f in enumerate(res.homs if calc.finite else []):
        rec.merge(check_reconstruction(calc, f, h))
    for s in range(samples):
        rec.merge(check_reconstruction(calc, random_hom(calc, rng, res.homs if calc.finite else None),
                                       f"random {s}"))
    add(rec)

    if isinstance(alg, FiniteDimAlgebra):
        P = integral(D)
        res.integral = P
        rep = add(check_integral_presentation(P, D))
        rep.notes["image basis"] = [str(v) for v in P.image_basis()]
        Lam = P
        if inst.claimed is not None:
            claimed = add(integral_window(D, inst.claimed))
            claimed.name = "claimed integral"
            c = proportionality(_claimed_vector(inst.claimed), P.functionals()[0]) if P.rank == 1 else None
            claimed.notes["scalar against computed Lambda"] = str(c)
    elif inst.claimed is not None:
        Lam = inst.claimed
        res.integral = Lam
        add(integral_window(D, Lam))
    else:
        return res

    add(exactness_check(D, Lam))
    if pfd.is_free:
        add(ibp_report(D, Lam))
    if inst.reference is not None and isinstance(alg, FiniteDimAlgebra):
        rep = Report("proportional to reference", kind="result")
        c = proportionality(P.functionals()[0], inst.reference) if P.rank == 1 else None
        rep.expect(c is not None, "dim coker = 1 and Lambda = c * reference", (), f"dim coker {P.rank}")
        if c is not None:
            rep.notes["scalar"] = str(c)
        add(rep)
    if inst.hopf is not None:
        add(check_hopf_twist(inst.hopf, D))
        add(right_integral_annihilation(inst.hopf, inst.reference or tuple(1 for _ in alg.basis())))
        add(haar_uniqueness(inst.hopf, P))
    if inst.inner_delta is not None and pfd.is_free:
        add(inner_integral_identity(pfd, Lam, inst.inner_delta))
    if isinstance(alg, LaurentGrassmann) and calc.n == 2:
        add(check_supercircle_divergence(D, res.homs))
    return res


def _claimed_vector(claimed):
    alg = claimed.algebra
    return [claimed(alg.e(k))[0] for k in alg.basis()]
