"""Small dense linear algebra used by the simulators.

Matrices are plain 2-D numpy arrays. The routines here are deliberately
simple: the walk operators are at most a few hundred rows, and the
subspace operators are 2x2 or 3x3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, ConvergenceError, DimensionError, NumericError

EXPM_TOL = 1e-12
SCALED_NORM_MAX = 0.5


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Eigenvalues and matching eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    def pairs(self):
        return [(self.values[k], self.vectors[:, k]) for k in range(self.values.size)]


def as_matrix(m, square: bool = False) -> np.ndarray:
    arr = np.asarray(m)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    if arr.dtype.kind in "fc" and not np.all(np.isfinite(arr)):
        raise NumericError("matrix has non-finite entries")
    return arr


def matvec(m, x) -> np.ndarray:
    m = as_matrix(m)
    x = np.asarray(x)
    if x.ndim != 1 or x.shape[0] != m.shape[1]:
        raise DimensionError(f"cannot multiply {m.shape} matrix by vector of shape {x.shape}")
    return m @ x


def expm(m, t: float = 1.0, tol: float = EXPM_TOL) -> np.ndarray:
    """Matrix exponential e^{m t} by scaling and squaring a Taylor series.

    The argument is scaled by 2^-s so that its 1-norm is at most 0.5, the
    series is summed until a term drops below ``tol * 2^-s`` (each squaring
    roughly doubles the absolute error), then squared s times.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    m = as_matrix(m, square=True)
    if not math.isfinite(t):
        raise NumericError("t must be finite")
    a = m * t
    norm = np.abs(a).sum(axis=0).max() if a.size else 0.0
    s = 0
    if norm > SCALED_NORM_MAX:
        s = int(math.ceil(math.log2(norm / SCALED_NORM_MAX)))
    b = a / (2.0 ** s)
    eye = np.eye(a.shape[0], dtype=np.result_type(a.dtype, float))
    result = eye.copy()
    term = eye.copy()
    cutoff = tol * 2.0 ** (-s)
    for k in range(1, 200):
        term = term @ b / k
        result = result + term
        if np.abs(term).sum(axis=0).max() <= cutoff:
            break
    else:
        raise ConvergenceError("Taylor series did not converge")
    for _ in range(s):
        result = result @ result
    if not np.all(np.isfinite(result)):
        raise NumericError("matrix exponential overflowed")
    return result


def expm_apply(m, t: float, x, tol: float = EXPM_TOL) -> np.ndarray:
    """Return e^{m t} x."""
    m = as_matrix(m, square=True)
    return matvec(expm(m, t, tol), x)


def _is_hermitian(m: np.ndarray, tol: float = 1e-12) -> bool:
    scale = max(1.0, float(np.abs(m).max())) if m.size else 1.0
    return bool(np.abs(m - m.conj().T).max() <= tol * scale) if m.size else True


def hermitian_eigen(m, max_sweeps: int = 100) -> EigenSystem:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns real eigenvalues in ascending order and orthonormal eigenvector
    columns. Real-symmetric input yields real eigenvectors.
    """
    m = as_matrix(m, square=True)
    if not _is_hermitian(m):
        raise ContractError("matrix is not Hermitian")
    complex_in = np.iscomplexobj(m)
    a = np.array(m, dtype=complex if complex_in else float)
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=a.dtype)
    scale = float(np.sqrt(np.sum(np.abs(a) ** 2))) or 1.0
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = float(np.sqrt(np.sum(np.abs(a[offdiag]) ** 2)))
        if off <= 1e-15 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= 1e-18 * scale:
                    a[p, q] = a[q, p] = 0.0
                    continue
                # Phase-rotate column q so the pivot becomes real, then do
                # the classical real rotation on the 2x2 block.
                phase = apq / r
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                if abs(tau) > 1e150:
                    tan = 0.5 / tau
                else:
                    tan = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + tan * tan)
                s = tan * c
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                if not complex_in:
                    g = g.real
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ g
                a[p, q] = a[q, p] = 0.0
    else:
        raise ConvergenceError("Jacobi sweeps did not converge")
    values = np.real(np.diag(a)).copy()
    order = np.argsort(values, kind="stable")
    return EigenSystem(values[order], v[:, order])


def spectral_norm(m, rtol: float = 1e-10, max_iter: int = 100_000) -> float:
    """Largest singular value, by power iteration on m^H m."""
    m = as_matrix(m, square=True)
    n = m.shape[0]
    if n == 0:
        return 0.0
    gram = m.conj().T @ m
    # Fixed non-symmetric start so the iterate is not orthogonal to the
    # dominant vector of structured matrices (e.g. Laplacians kill ones).
    x = 1.0 + np.arange(n, dtype=float) / (n + 1) + 0.1 * np.sin(np.arange(1, n + 1))
    x = x / np.linalg.norm(x)
    lam = None
    prev_change = None
    noise = 8 * np.finfo(float).eps
    for _ in range(max_iter):
        y = gram @ x
        ny = float(np.linalg.norm(y))
        if ny == 0.0:
            return 0.0
        new = float(np.real(np.vdot(x, y)))
        x = y / ny
        if lam is not None:
            change = abs(new - lam)
            if change <= noise * abs(new):
                return math.sqrt(max(new, 0.0))
            # The Rayleigh quotient converges geometrically; the ratio of
            # successive changes estimates the rate, and the remaining
            # error is the tail of that geometric series.
            if prev_change is not None and change <= rtol * abs(new):
                rate = change / prev_change
                if rate < 1.0 and change * rate / (1.0 - rate) <= rtol * abs(new):
                    return math.sqrt(max(new, 0.0))
            prev_change = change
        lam = new
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps")
