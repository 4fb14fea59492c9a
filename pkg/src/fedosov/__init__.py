"""Exact Fedosov deformation quantization of polynomial symplectic algebras.

Polynomials have rational coefficients, elements of the Weyl-form algebra
are sparse term maps, and every identity is checked by exact comparison.
"""

from .element import WeylFormElement, grade_component, wedge_with_form
from .engine import (
    FedosovData,
    FlatSection,
    build_fedosov,
    curvature,
    deformation_coefficients,
    fedosov_D,
    flat_section,
    flatness_residue,
    gamma_recursion,
    hseries_coefficients,
    hseries_to_records,
    parity_defects,
    quantize,
    star_product,
)
from .errors import (
    CertificationError,
    DegreeError,
    FedosovError,
    InvalidConnectionError,
    NotDivisibleError,
    ProblemSpecError,
    StructureError,
)
from .operators import T, delta, delta_star, delta_tilde, epsilon, exterior_d, nabla, tau
from .pbw import moyal_flat, pbw_product, pbw_straighten, project, symmetrize
from .poly import PolySyntaxError, RationalPoly, format_poly, parse_poly
from .problem import Problem, load_problem, parse_problem
from .product import ad_gamma, div_h, graded_commutator, poisson_bracket_S, weyl_product
from .structure import (
    SymplecticConnection,
    SymplecticStructure,
    flat,
    flat_connection,
    ham,
    omega_pairing,
    poisson_bracket,
    sharp,
    standard_structure,
    validate_connection,
    validate_structure,
)

__version__ = "0.1.0"
