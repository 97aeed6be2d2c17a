"""Exact verification of the Terwilliger algebra of wreath products of
cyclic association schemes."""

__version__ = "0.1.0"

from .cyclotomic import ONE, ZERO, CycloNum, cyclotomic_polynomial, euler_phi, rational, zeta
from .linalg import ExactMatrix, ExactSpan, SpanBasis, product_closure
from .scheme import AxiomReport, AxiomViolation, CheckResult, Scheme, load_scheme, save_scheme
from .structure import (
    CentralIdempotentFamily,
    DecompReport,
    MatrixUnitFamily,
    StructureError,
    build_central_idempotents,
    build_matrix_units,
    check_adjacency_action,
    check_block_form,
    check_central_idempotents,
    check_commutation,
    check_matrix_units,
    decomposition_report,
    dimension_formula,
    matrix_block_size,
    one_dim_ideal_count,
)
from .terwilliger import (
    TerwilligerContext,
    TriplyRegularReport,
    algebra_closure,
    algebra_dimension,
    check_primary_module,
    check_triple_list,
    check_triply_regular,
    make_context,
    predict_triple_nonzero,
    standard_generators,
    t0_dimension,
    t0_span,
    triple_intersection,
    triple_product,
    wreath_context,
)
from .wreath import (
    WreathIndex,
    check_ball_structure,
    check_moduli,
    check_vanishing_criterion,
    class_indices,
    cyclic_scheme,
    index_from_flat,
    indices_below_level,
    num_classes,
    predict_vanishing,
    wreath_of_cyclics,
    wreath_product,
)

__all__ = [name for name in dir() if not name.startswith("_")]
