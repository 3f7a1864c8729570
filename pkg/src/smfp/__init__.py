"""Siegel modular forms mod p: truncated Fourier expansions and the checks built on them."""

from .coeffdomain import GF, QQ, CoeffDomain, FpElement, bernoulli, reduce_mod_p
from .errors import (
    DomainMismatch,
    InsufficientPrecision,
    NonIntegralAtP,
    NoSolution,
    NotThetaDecomposable,
    OddCharacteristic,
    ParseError,
    ScaleModulusClash,
    SMFPError,
    WeightInfeasible,
    WeightMismatch,
)
from .generators import (
    ThetaCharacteristic,
    chi10_prop,
    delta_g1,
    eisenstein_g1,
    hasse_series,
    psi4_prop,
    theta_constant_g2,
)
from .operators import (
    OperatorLog,
    cartier,
    fourier_jacobi,
    hecke_Tl_g1,
    op_phi,
    op_theta_det,
    op_theta_matrix,
    op_U,
    op_V,
    theta_decompose,
    verify_theta_identity,
)
from .quadforms import HalfIntegralForm, UnimodularMatrix, act, enumerate_forms, reduce_g2
from .qseries import (
    MatrixQSeries,
    QSeries,
    add,
    deserialize,
    eq_upto,
    mul,
    power,
    reduce_series,
    serialize,
    sub,
)
from .structure import (
    equivariance_check,
    express_in_generators_g1,
    irreducibility_search_g1,
    is_p_singular,
    p_root,
    rank1_classify,
    section_p_singularity_check,
    star_star_solver,
    tp_equals_v_check,
    weight_congruence,
)

__version__ = "0.1.0"
