"""Exact proximity operator of the log-sum penalty.

Closed-form scalar/vector/matrix proximity operators of
``sum_i log(1 + |x_i|/eps)``, the bisection locator of the jump point of
the nonconvex-regime operator, a simulator and analytic limit map of the
iteratively reweighted l1 scheme (including its exact failure intervals),
and an independent brute-force grid oracle used by the test suite.
"""

from .errors import (
    ConvergenceError,
    DomainError,
    LogSumProxError,
    MatrixFormatError,
    PreconditionError,
    RegimeError,
)
from .irl1 import (
    DEFAULT_MAX_ITERS,
    DEFAULT_STOP_TOL,
    FailureCase,
    FailureReport,
    Interval,
    IrlTrace,
    LimitKind,
    LimitPrediction,
    StopReason,
    failure_intervals,
    irl1_predict_limit,
    irl1_simulate,
    irl1_step,
    limit_matches_prox,
    r1_inverse,
)
from .matrix import (
    MatrixProxResult,
    SvdFactorization,
    logdet_penalty,
    matrix_objective,
    prox_matrix,
    svd,
)
from .matrix_io import (
    read_matrix,
    read_matrix_bin,
    read_matrix_csv,
    write_matrix,
    write_matrix_bin,
    write_matrix_csv,
)
from .oracle import OracleConfig, OracleProxInfo, oracle_prox, oracle_prox_info, oracle_z_star
from .scalar import (
    ProxKind,
    ProxParams,
    ProxResult,
    Regime,
    ZStarResult,
    gap_r,
    prox_scalar,
    q_objective,
    r1,
    r2,
    z_star,
)
from .vector import (
    VectorProxResult,
    logsum_penalty,
    prox_vector,
    prox_vector_sorted_check,
    vector_objective,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DomainError",
    "LogSumProxError",
    "MatrixFormatError",
    "PreconditionError",
    "RegimeError",
    "DEFAULT_MAX_ITERS",
    "DEFAULT_STOP_TOL",
    "FailureCase",
    "FailureReport",
    "Interval",
    "IrlTrace",
    "LimitKind",
    "LimitPrediction",
    "StopReason",
    "failure_intervals",
    "irl1_predict_limit",
    "irl1_simulate",
    "irl1_step",
    "limit_matches_prox",
    "r1_inverse",
    "MatrixProxResult",
    "SvdFactorization",
    "logdet_penalty",
    "matrix_objective",
    "prox_matrix",
    "svd",
    "read_matrix",
    "read_matrix_bin",
    "read_matrix_csv",
    "write_matrix",
    "write_matrix_bin",
    "write_matrix_csv",
    "OracleConfig",
    "OracleProxInfo",
    "oracle_prox",
    "oracle_prox_info",
    "oracle_z_star",
    "ProxKind",
    "ProxParams",
    "ProxResult",
    "Regime",
    "ZStarResult",
    "gap_r",
    "prox_scalar",
    "q_objective",
    "r1",
    "r2",
    "z_star",
    "VectorProxResult",
    "logsum_penalty",
    "prox_vector",
    "prox_vector_sorted_check",
    "vector_objective",
    "__version__",
]
