"""Exact computations for the Klein four-group grading of so(4k).

Modules: ``exact`` (rationals, matrices, elimination), ``lie`` (so(N)
bases, brackets, Killing form), ``grading`` (involutions, graded
components, certificates), ``metrics`` (adapted invariant forms),
``signature`` (spectra and classification), ``cli``.
"""

from .exact import DimensionError, DomainError, ExactMatrix, Rational, exact_inertia, solve_linear
from .grading import (
    GradedDecomposition,
    InvolutionSet,
    KleinLabel,
    build_involutions,
    explicit_s3_fixture,
    graded_basis,
    klein_mul,
    project,
    symmetric_pair_check,
    tau,
    verify_fixed_algebra,
    verify_grading,
)
from .lie import ClosureError, LieBasis, bracket, killing_form, so_basis, structure_constants
from .metrics import (
    GramForm,
    MetricParams,
    build_form,
    invariance_residual,
    invariant_form_space,
    killing_restriction,
    natural_reductivity_check,
)
from .signature import (
    ClassificationReport,
    ComponentSpectrum,
    Signature,
    classification_oracle,
    classify,
    component_signature,
    component_spectrum,
    spectrum_oracle,
    threshold_audit,
)

__version__ = "0.1.0"
