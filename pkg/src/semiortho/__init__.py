"""Orthogonal polynomials on the unit circle and the 2x2 matrix orthogonal
polynomials on [-1, 1] built from them."""

from .asymptotics import (
    DomainError,
    bernstein_szego_measure,
    resolving_nodes,
    gamma_limit,
    joukowski_inverse,
    lonp_convergence_report,
    lonp_limit,
    matrix_szego,
    szego_function,
    matrix_szego_data,
    vsof_asymptotics_check,
)
from .laurent import ComplexPoly, LaurentPoly, reversed_poly
from .matrix_op import (
    MatPoly2,
    leading_data,
    lomp_normalizers,
    lomp_sequence,
    lonp_frame,
    matrix_poly_from_sof_sequence,
    matrix_poly_recurrence,
    quasi_orthogonality_report,
    real_recurrence_coeffs,
    standard_lonp_sequence,
)
from .measures import (
    CircleMeasure,
    MatrixMeasure,
    associated_matrix_measure,
    circle_inner,
    lebesgue,
    matrix_inner,
    positivity_check,
    project_measures,
    table_weight,
    trig_poly_weight,
    vector_inner,
)
from .opuc import (
    AdmissibilityError,
    SchurSequence,
    derived_sequences,
    schur_from_measure,
    szego_sequence,
)
from .sof import gram_block, schur_matrix, vsof, vsof_sequence, xy_decompose

__version__ = "0.1.0"
