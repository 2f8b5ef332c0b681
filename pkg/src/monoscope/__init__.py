"""Deciding and quantifying n-monotonicity of finite graph operators."""

from .chains import (
    DEFAULT_TOL,
    ChainValue,
    CycleWitness,
    OrderReport,
    antiderivative,
    build_kt,
    chi_chain_sum,
    chi_n,
    is_n_monotone,
    is_n_related,
    monotonicity_order,
    phi_chain_sum,
    phi_n,
    satisfies_cn,
)
from .envelope import (
    EnvelopeInstance,
    PsiViolation,
    build_envelope,
    check_monotone_via_psi,
    find_psi_violation,
    psi_eval,
)
from .errors import (
    ImproperValueError,
    InputError,
    MonoscopeError,
    SimplexError,
    UndefinedSumError,
    UnsupportedOracleError,
)
from .extreal import NEG_INF, POS_INF, ExtReal, inf_over, sup_over
from .operators import (
    ChainWeights,
    FiniteOperator,
    chain_weights,
    load_operator,
    operator_from_dict,
    operator_to_dict,
    save_operator,
)
from .oracles import (
    AnalyticOracle,
    IdentityOracle,
    NormalConeOracle,
    RotationOracle,
    SampleSpec,
    SkewLinearOracle,
    oracle_chi,
    oracle_from_dict,
    oracle_order,
    oracle_phi,
    sample_graph,
)
from .spaces import PairingSpace, coupling

__all__ = [
    "DEFAULT_TOL",
    "ChainValue",
    "ChainWeights",
    "CycleWitness",
    "EnvelopeInstance",
    "ExtReal",
    "FiniteOperator",
    "AnalyticOracle",
    "IdentityOracle",
    "ImproperValueError",
    "InputError",
    "MonoscopeError",
    "NEG_INF",
    "NormalConeOracle",
    "OrderReport",
    "POS_INF",
    "PairingSpace",
    "PsiViolation",
    "RotationOracle",
    "SampleSpec",
    "SimplexError",
    "SkewLinearOracle",
    "UndefinedSumError",
    "UnsupportedOracleError",
    "antiderivative",
    "build_envelope",
    "build_kt",
    "chain_weights",
    "check_monotone_via_psi",
    "chi_chain_sum",
    "chi_n",
    "coupling",
    "find_psi_violation",
    "inf_over",
    "is_n_monotone",
    "is_n_related",
    "load_operator",
    "monotonicity_order",
    "operator_from_dict",
    "operator_to_dict",
    "oracle_chi",
    "oracle_from_dict",
    "oracle_order",
    "oracle_phi",
    "phi_chain_sum",
    "phi_n",
    "psi_eval",
    "sample_graph",
    "satisfies_cn",
    "save_operator",
    "sup_over",
]
