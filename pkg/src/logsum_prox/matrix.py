"""Proximity operator of the log-sum penalty composed with singular values.

The matrix problem

    min  ||X - Z||_F^2 / (2*lam) + sum_i log(1 + sigma_i(X)/eps)

reduces to the vector prox on sigma(Z): factor ``Z = U diag(sigma) V^T``,
shrink the singular values componentwise, and rebuild
``X* = U diag(d) V^T``.  The shrunk vector ``d`` stays descending, so it is
a valid singular-value vector and the reduction is tight.

When sigma(Z) has entries on the jump point the minimizer is not unique;
one canonical choice (zero branch) is returned and the affected indices
are reported.  The same applies to repeated singular values, where U and V
themselves are not unique: any valid factorization gives the same
``sigma(X*)`` and objective.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, PreconditionError
from .scalar import ProxParams
from .vector import logsum_penalty, prox_vector

__all__ = [
    "SvdFactorization",
    "MatrixProxResult",
    "svd",
    "prox_matrix",
    "logdet_penalty",
    "matrix_objective",
]


@dataclass(frozen=True)
class SvdFactorization:
    """Thin SVD: ``u (m,k)``, ``singular_values (k,)`` descending nonnegative,
    ``v (n,k)``, with ``k = min(m, n)`` and orthonormal columns in both factors."""

    u: np.ndarray
    singular_values: np.ndarray
    v: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.singular_values) @ self.v.T


def _validated_matrix(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.size == 0:
        raise PreconditionError(f"expected a nonempty 2-d matrix, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise PreconditionError("matrix entries must be finite")
    return x


def svd(x, tol: float = 1e-12) -> SvdFactorization:
    """Thin singular value decomposition of a real matrix.

    Backed by LAPACK through ``numpy.linalg.svd``, which is deterministic
    for fixed input and converges to machine precision (any ``tol`` down to
    ~1e-15 is met).  Raises ``ConvergenceError`` if the iterative
    diagonalization inside LAPACK fails.
    """
    x = _validated_matrix(x)
    if not (tol > 0):
        raise ValueError(f"tol must be positive, got {tol!r}")
    try:
        u, s, vt = np.linalg.svd(x, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD did not converge for shape {x.shape}: {exc}") from exc
    return SvdFactorization(u=u, singular_values=s, v=vt.T)


@dataclass(frozen=True)
class MatrixProxResult:
    """Canonical matrix minimizer.

    ``d`` holds the shrunk singular values (descending, zeros for every
    value below the scalar threshold); ``ambiguous_indices`` marks singular
    values that sat on the jump point, where the alternative branch
    ``r2(z_star)`` is equally optimal.
    """

    x_star: np.ndarray
    d: np.ndarray
    ambiguous_indices: tuple[int, ...]
    objective_value: float


def matrix_objective(params: ProxParams, x, z) -> float:
    """``||x - z||_F^2 / (2*lam) + logdet_penalty(x)``."""
    x = _validated_matrix(x)
    z = _validated_matrix(z)
    fro2 = float(np.sum((x - z) ** 2))
    return fro2 / (2.0 * params.lam) + logdet_penalty(params, x)


def prox_matrix(params: ProxParams, z) -> MatrixProxResult:
    """Solve the matrix problem exactly via the singular-value reduction."""
    z = _validated_matrix(z)
    fac = svd(z)
    vec = prox_vector(params, fac.singular_values)
    d = vec.canonical
    x_star = (fac.u * d) @ fac.v.T
    fro2 = float(np.sum((x_star - z) ** 2))
    objective = fro2 / (2.0 * params.lam) + logsum_penalty(params, d)
    return MatrixProxResult(
        x_star=x_star,
        d=d,
        ambiguous_indices=vec.ambiguous_indices,
        objective_value=objective,
    )


def logdet_penalty(params: ProxParams, x) -> float:
    """``sum_i log(1 + sigma_i(x)/eps)``.

    Equals ``log det(I + (x x^T)^{1/2}/eps)`` for wide-or-square ``x``
    (``m <= n``) and the transposed form otherwise.
    """
    fac = svd(x)
    return float(np.sum(np.log1p(fac.singular_values / params.eps)))
