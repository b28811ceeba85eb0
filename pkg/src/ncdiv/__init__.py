"""Exact noncommutative differential calculus: twisted multi-derivations,
projective systems, divergences and their cokernel integrals."""

__version__ = "0.1.0"

from .algebra import (
    AlgMatrix,
    Element,
    FiniteDimAlgebra,
    GradedAlgebra,
    LinOp,
    OpMatrix,
    bullet,
    embed,
    laurent_grassmann,
    point_algebra,
    polynomial_quotient,
)
from .calculus import Calculus, build_calculus, hom_basis, hom_window, reconstruct
from .fields import QQ, cyclotomic
from .gallery import Instance, build
from .integral import Divergence, integral, integral_window, ibp_residual
from .report import Report
from .suite import run_suite
from .systems import (
    MultiDerivation,
    PreProjectiveSystem,
    ProjectiveSystem,
    ProjectivelyFreeDerivation,
    check_multiderivation,
    check_preprojective,
    derived_identities,
)

__all__ = [
    "__version__",
    "AlgMatrix", "Element", "FiniteDimAlgebra", "GradedAlgebra", "LinOp", "OpMatrix",
    "bullet", "embed", "laurent_grassmann", "point_algebra", "polynomial_quotient",
    "Calculus", "build_calculus", "hom_basis", "hom_window", "reconstruct",
    "QQ", "cyclotomic", "Instance", "build",
    "Divergence", "integral", "integral_window", "ibp_residual",
    "Report", "run_suite",
    "MultiDerivation", "PreProjectiveSystem", "ProjectiveSystem", "ProjectivelyFreeDerivation",
    "check_multiderivation", "check_preprojective", "derived_identities",
]
