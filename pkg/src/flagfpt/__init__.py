"""Exact a-invariants and F-pure thresholds of coordinate rings of flag varieties."""

from .fpt_engine import (
    FlagQuery,
    FptResult,
    MethodDisagreement,
    MethodUnavailable,
    QueryError,
    evaluate,
    fpt_chain_method,
    fpt_hypersurface_Dn_d1,
    fpt_rho_multiple,
    fpt_root_method,
    fpt_typeA_flag_formula,
    fpt_veronese,
    table1,
    table2,
)
from .lattices import (
    FinitePoset,
    PrincipalChain,
    YoungLatticeSpec,
    build_idn,
    build_minuscule_tuple,
    build_minuscule_weightposet,
    build_young,
    principal_chain,
)
from .root_system import ParabolicSpec, RootSystem, RootSystemType, root_system, two_rho_I

__version__ = "0.1.0"
