"""Invariant generalised Killing spinors on metric Lie algebras.

Builds spinor modules over odd-dimensional metric Lie algebras, computes
the frame form of the Levi-Civita connection and its spin lift, solves for
the endomorphism of the generalised Killing equation, and cross-checks the
results against the closed-form family catalog.
"""

from .algebra import (
    FrameChange,
    LieAlgebra,
    MetricLieAlgebra,
    check_jacobi,
    jacobi_violation,
    metric_from_frame_change,
    orthonormalize,
)
from .catalog import (
    BianchiFamily,
    FAMILY_TAGS,
    HeisenbergParams,
    heisenberg_gk_eigenvalues,
    heisenberg_metric,
    is_symmetric_family,
    make_bianchi,
    make_heisenberg,
    reference_A,
    reference_asymmetry,
    reference_eigenvalues,
    reference_ricci_3d,
)
from .clifford import (
    CliffordModule,
    Spinor,
    cliff_relations_check,
    cliff_vector,
    get_module,
    spin_lift,
)
from .connection import (
    CurvatureData,
    NomizuMap,
    curvature,
    metricity_violation,
    nomizu,
    ricci_spinorial_check,
    spin_nomizu,
    torsion_violation,
)
from .errors import (
    FormatError,
    InvalidFrameError,
    InvalidMetricError,
    InvalidOperatorError,
    InvalidParameterError,
    InvalidSpinorError,
    SpinlabError,
    StructureError,
    UnsupportedDimensionError,
)
from .gks import (
    GKReport,
    dirac_trace_3d,
    eigen_analysis,
    explicit_A_3d,
    full_report,
    genericity_sweep,
    gk_equation_residual,
    solve_endomorphism,
    solve_symmetric_endomorphism,
    symmetry_conditions_3d,
)

__all__ = [
    "BianchiFamily",
    "CliffordModule",
    "CurvatureData",
    "FAMILY_TAGS",
    "FormatError",
    "FrameChange",
    "GKReport",
    "HeisenbergParams",
    "InvalidFrameError",
    "InvalidMetricError",
    "InvalidOperatorError",
    "InvalidParameterError",
    "InvalidSpinorError",
    "LieAlgebra",
    "MetricLieAlgebra",
    "NomizuMap",
    "Spinor",
    "SpinlabError",
    "StructureError",
    "UnsupportedDimensionError",
    "check_jacobi",
    "cliff_relations_check",
    "cliff_vector",
    "curvature",
    "dirac_trace_3d",
    "eigen_analysis",
    "explicit_A_3d",
    "full_report",
    "genericity_sweep",
    "get_module",
    "gk_equation_residual",
    "heisenberg_gk_eigenvalues",
    "heisenberg_metric",
    "is_symmetric_family",
    "jacobi_violation",
    "make_bianchi",
    "make_heisenberg",
    "metric_from_frame_change",
    "metricity_violation",
    "nomizu",
    "orthonormalize",
    "reference_A",
    "reference_asymmetry",
    "reference_eigenvalues",
    "reference_ricci_3d",
    "ricci_spinorial_check",
    "solve_endomorphism",
    "solve_symmetric_endomorphism",
    "spin_lift",
    "spin_nomizu",
    "symmetry_conditions_3d",
    "torsion_violation",
]
