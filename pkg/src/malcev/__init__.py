"""Exact-arithmetic structure-constant algebras: identity scans for the Malcev,
Jacobi and five-variable h identities, sl2-driven decomposition and
coordinatization, forward constructions and machine-checked isomorphisms."""

from .constructions import (
    CommutativeScalarAlgebra,
    SparsePoly,
    build_extension,
    det_pairing,
    det_plucker_generators,
    dual_number_scalars,
    m5,
    m7_of,
    m7_scalar,
    m_tilde,
    pair_scalars,
    plucker_check,
    rational_scalars,
    sl2_of,
    symplectic_star,
    verify_scalar_algebra,
)
from .core import (
    Algebra,
    Element,
    LinearMap,
    ModuleAction,
    direct_sum,
    find_unit,
    load_algebra,
    load_algebra_json,
    multiply,
    product_span,
    quotient_by_ideal,
    split_null_extension,
)
from .errors import (
    CoordinatizationError,
    DecompositionError,
    DimensionError,
    EmbeddingError,
    ForeignElementError,
    IdealError,
    MalcevError,
    PairingError,
    ScalarAlgebraError,
    SchemaError,
)
from .identities import (
    IdentityReport,
    alpha_map,
    brace,
    check_alpha_centroid,
    check_anticommutative,
    check_centroid,
    check_identity,
    check_jacobian_product_rule,
    check_p_shift,
    check_p_swap,
    h_val,
    jacobian,
    p_val,
)
from .iso import AlgebraMorphism, is_m7_form, phi_map, t2_parameter, verify_morphism
from .linalg import Matrix, Subspace, kernel, rational_str, rref, to_fraction
from .sl2 import (
    CoordAlgebra,
    Decomposition,
    PairingForm,
    Sl2Embedding,
    annihilator,
    coordinatize,
    decompose,
    extract_pairing,
    j_part,
    lm_module,
    n_part,
    sl2_algebra,
    v2_module,
    verify_sl2,
    zero_pairing,
)

__version__ = "0.1.0"
