"""Product-integration collocation for weakly singular nonlocal operators.

Piecewise linear (PLC) and piecewise quadratic (PQC) schemes for
I(a,b,x) = int_a^b u(y) |x-y|^(-gamma) dy, 0 <= gamma < 1, and for the
nonlocal equation int_a^b (u(x) - u(y)) |x-y|^(-gamma) dy = f(x) with
Dirichlet boundary data.
"""

from .grid import KernelParams, UniformGrid
from .coeffs import (PlcCoeffs, PqcCoeffs, eta_scaling, plc_weights,
                     pqc_weights, sigma_scaling)
from .oracle import (ManufacturedProblem, OracleError, TestFunction,
                     boundary_basis_integrals, closed_form_integral, constant,
                     exact_nonlocal_rhs, exponential, kernel_row_integral,
                     monomial, singular_integral)
from .plc import (PlcIntegralRule, assemble_plc_system, plc_integral,
                  plc_matrix, truncation_error)
from .plc import make_rule as make_plc_rule
from .pqc import (PqcIntegralRule, PqcNodeOrdering, assemble_pqc_system,
                  ordering_permutation, pqc_integral, pqc_matrix,
                  pqc_truncation_at, reorder_system)
from .pqc import make_rule as make_pqc_rule
from .solver import (CollocationSystem, SingularSystemError, StructureReport,
                     check_structure, gershgorin_reference_bound,
                     min_eigenvalue, solve_dense)
from .study import (StudyConfig, StudyReport, StudyRow, emit_table,
                    fit_orders, parse_table_csv, report_filename,
                    run_global_study, run_truncation_study)

__version__ = "0.1.0"

__all__ = [
    "KernelParams", "UniformGrid",
    "PlcCoeffs", "PqcCoeffs", "sigma_scaling", "eta_scaling",
    "plc_weights", "pqc_weights",
    "TestFunction", "constant", "monomial", "exponential",
    "ManufacturedProblem", "OracleError", "singular_integral",
    "closed_form_integral", "kernel_row_integral", "exact_nonlocal_rhs",
    "boundary_basis_integrals",
    "PlcIntegralRule", "make_plc_rule", "plc_integral", "plc_matrix",
    "assemble_plc_system", "truncation_error",
    "PqcIntegralRule", "make_pqc_rule", "pqc_integral", "pqc_matrix",
    "assemble_pqc_system", "pqc_truncation_at", "PqcNodeOrdering",
    "ordering_permutation", "reorder_system",
    "CollocationSystem", "StructureReport", "SingularSystemError",
    "solve_dense", "check_structure", "min_eigenvalue",
    "gershgorin_reference_bound",
    "StudyConfig", "StudyReport", "StudyRow", "run_truncation_study",
    "run_global_study", "emit_table", "parse_table_csv", "fit_orders",
    "report_filename",
]
