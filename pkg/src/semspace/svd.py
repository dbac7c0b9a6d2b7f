"""Dense singular value decomposition, implemented here rather than delegated.

The factorization is a one-sided Jacobi iteration: plane rotations
orthogonalize the columns of the working matrix, the surviving column norms
are the singular values, and the accumulated rotations form the right
singular vectors. Tall inputs are first reduced by a Householder QR so the
iteration runs on a small square factor; wide inputs are transposed. Pairs
are visited in a fixed round-robin schedule, with every round's disjoint
pairs rotated in one vectorized step, so results are bit-reproducible.

Column pairs whose norms sit at roundoff level relative to the matrix are
excluded from the convergence measure; their directions are completed to an
orthonormal basis afterwards.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError

_MACHINE_EPS = float(np.finfo(np.float64).eps)

DEFAULT_TOL = 1e-14
DEFAULT_MAX_SWEEPS = 60


def _round_robin_rounds(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Tournament schedule: n-1 rounds of disjoint index pairs covering all pairs."""
    if n < 2:
        return []
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)
    rounds = []
    arr = players[:]
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = arr[i], arr[m - 1 - i]
            if a != -1 and b != -1:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps), np.array(qs)))
        arr = [arr[0], arr[-1]] + arr[1:-1]
    return rounds


def householder_qr(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Thin QR of a tall matrix (m >= n): Q with orthonormal columns, R upper triangular."""
    A = np.array(A, dtype=np.float64)
    m, n = A.shape
    if m < n:
        raise ValueError("householder_qr requires m >= n")
    reflectors: list[np.ndarray | None] = []
    for k in range(min(n, m - 1)):
        x = A[k:, k]
        norm_x = np.linalg.norm(x)
        if norm_x == 0.0:
            reflectors.append(None)
            continue
        v = x.copy()
        v[0] += np.copysign(norm_x, x[0]) if x[0] != 0 else norm_x
        norm_v = np.linalg.norm(v)
        if norm_v == 0.0:
            reflectors.append(None)
            continue
        v /= norm_v
        A[k:, k:] -= 2.0 * np.outer(v, v @ A[k:, k:])
        reflectors.append(v)
    R = np.triu(A[:n, :])
    Q = np.eye(m, n)
    for k in reversed(range(len(reflectors))):
        v = reflectors[k]
        if v is not None:
            Q[k:, :] -= 2.0 * np.outer(v, v @ Q[k:, :])
    return Q, R


def _complete_orthonormal(U: np.ndarray, dead: np.ndarray) -> None:
    """Fill zeroed columns of U with unit vectors orthogonal to all others."""
    rows = U.shape[0]
    for j in np.flatnonzero(dead):
        for seed in range(rows):
            v = np.zeros(rows)
            v[seed] = 1.0
            v -= U @ (U.T @ v)
            v -= U @ (U.T @ v)  # second pass for numerical safety
            norm_v = np.linalg.norm(v)
            if norm_v > 0.1:
                U[:, j] = v / norm_v
                break


def jacobi_svd(
    X: np.ndarray,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    tol: float = DEFAULT_TOL,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Factor X (m x c) into U, sigma, V with X = U @ diag(sigma) @ V.T.

    U is m x n and V is c x n with orthonormal columns, n = min(m, c), and
    sigma is non-increasing. Ties keep their pre-sort order, and each column
    of U has its largest-magnitude entry non-negative, so equal inputs give
    bit-identical factors.

    Raises ConvergenceError (carrying the achieved off-diagonal residual)
    if the sweep budget is exhausted.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.size == 0:
        raise ValueError("expected a non-empty 2-d matrix")
    m, c = X.shape
    transposed = m < c
    A = X.T.copy() if transposed else X.copy()

    Q0 = None
    if A.shape[0] > A.shape[1]:
        Q0, A = householder_qr(A)

    rows, n = A.shape
    V = np.eye(n)
    rounds = _round_robin_rounds(n)
    dead_level = (_MACHINE_EPS * np.linalg.norm(A)) ** 2

    converged = n < 2
    off = float("inf")
    for _ in range(max_sweeps):
        if converged:
            break
        off = 0.0
        for p, q in rounds:
            Ap = A[:, p]
            Aq = A[:, q]
            app = np.einsum("ij,ij->j", Ap, Ap)
            aqq = np.einsum("ij,ij->j", Aq, Aq)
            apq = np.einsum("ij,ij->j", Ap, Aq)
            live = (app > dead_level) & (aqq > dead_level)
            denom = np.sqrt(np.where(live, app * aqq, 1.0))
            rel = np.where(live, np.abs(apq) / denom, 0.0)
            if rel.size:
                off = max(off, float(rel.max()))
            active = rel > tol
            if not active.any():
                continue
            pa, qa = p[active], q[active]
            tau = (aqq[active] - app[active]) / (2.0 * apq[active])
            t = np.sign(tau) / (np.abs(tau) + np.hypot(1.0, tau))
            t = np.where(tau == 0.0, 1.0, t)
            cos_t = 1.0 / np.sqrt(1.0 + t * t)
            sin_t = t * cos_t
            Ap = A[:, pa]
            Aq = A[:, qa]
            A[:, pa] = cos_t * Ap - sin_t * Aq
            A[:, qa] = sin_t * Ap + cos_t * Aq
            Vp = V[:, pa]
            Vq = V[:, qa]
            V[:, pa] = cos_t * Vp - sin_t * Vq
            V[:, qa] = sin_t * Vp + cos_t * Vq
        converged = off <= tol
    if not converged:
        raise ConvergenceError(
            f"one-sided Jacobi did not converge in {max_sweeps} sweeps "
            f"(off-diagonal residual {off:.3e})",
            residual=off,
        )

    sigma = np.sqrt(np.einsum("ij,ij->j", A, A))
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    A = A[:, order]
    V = V[:, order]

    U = np.zeros_like(A)
    alive = sigma > (sigma[0] * _MACHINE_EPS * 10 if sigma[0] > 0 else 0.0)
    U[:, alive] = A[:, alive] / sigma[alive]
    sigma = np.where(alive, sigma, 0.0)
    _complete_orthonormal(U, ~alive)

    if Q0 is not None:
        U = Q0 @ U
    if transposed:
        U, V = V, U

    for j in range(U.shape[1]):
        i = int(np.argmax(np.abs(U[:, j])))
        if U[i, j] < 0:
            U[:, j] = -U[:, j]
            V[:, j] = -V[:, j]
    return U, sigma, V
