"""State-feedback design: pole placement, LQR, and block-diagram algebra."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadPoleSet,
    DegenerateSystem,
    NoConvergence,
    ShapeError,
    SingularWeight,
    Uncontrollable,
    UnsupportedShape,
    Unstabilizable,
)
from .systems import (
    AXIS_TOL,
    StateSpace,
    TransferFunction,
    make_ss,
    make_tf,
    sort_complex,
)

LQR_RESIDUAL_TOL = 1e-9
LQR_MAX_ITERS = 100


@dataclass(frozen=True)
class LqrSolution:
    """Optimal state-feedback gain with its Riccati certificate."""

    K: np.ndarray
    S: np.ndarray
    E: tuple[complex, ...]


def _as_matrix(M, name: str) -> np.ndarray:
    arr = np.atleast_2d(np.asarray(M, dtype=float))
    if arr.ndim != 2:
        raise ShapeError(f"{name} must be a matrix")
    return arr


def controllability_matrix(A, B) -> tuple[np.ndarray, int]:
    """Controllability matrix [B, AB, ..., A^(n-1)B] and its numerical rank."""
    A = _as_matrix(A, "A")
    B = _as_matrix(B, "B")
    n = A.shape[0]
    if A.shape != (n, n) or B.shape[0] != n:
        raise ShapeError(f"incompatible shapes A{A.shape}, B{B.shape}")
    blocks = [B]
    for _ in range(n - 1):
        blocks.append(A @ blocks[-1])
    ctrb = np.hstack(blocks) if blocks else B
    if ctrb.size == 0:
        return ctrb, 0
    svals = np.linalg.svd(ctrb, compute_uv=False)
    tol = n * np.finfo(float).eps * (svals[0] if len(svals) else 0.0)
    rank = int(np.sum(svals > tol))
    return ctrb, rank


def _check_conjugate_pairs(desired: np.ndarray) -> None:
    pool = list(desired)
    while pool:
        z = pool.pop()
        if abs(z.imag) <= 1e-12:
            continue
        match = None
        for i, w in enumerate(pool):
            if abs(w - z.conjugate()) <= 1e-9 * max(1.0, abs(z)):
                match = i
                break
        if match is None:
            raise BadPoleSet(f"complex pole {z} lacks a conjugate partner")
        pool.pop(match)


def acker(A, B, desired_poles) -> np.ndarray:
    """Ackermann gain K (1 x n) placing eigenvalues of A - BK at desired_poles."""
    A = _as_matrix(A, "A")
    B = _as_matrix(B, "B")
    n = A.shape[0]
    if B.shape != (n, 1):
        raise UnsupportedShape(f"acker requires single-input B of shape ({n}, 1), got {B.shape}")
    desired = np.asarray(desired_poles, dtype=complex).ravel()
    if len(desired) != n:
        raise BadPoleSet(f"need exactly {n} desired poles, got {len(desired)}")
    _check_conjugate_pairs(desired)
    ctrb, rank = controllability_matrix(A, B)
    if rank < n:
        raise Uncontrollable(f"(A, B) controllability rank {rank} < {n}")
    char = np.real(np.poly(desired))
    phi = np.zeros((n, n))
    for c in char:
        phi = phi @ A + c * np.eye(n)
    # K = e_n^T ctrb^-1 phi(A): last row of ctrb^-1 phi(A).
    K = np.linalg.solve(ctrb, phi)[-1, :]
    return K.reshape(1, n)


def place(A, B, desired_poles) -> np.ndarray:
    """Pole placement; the single-input case is Ackermann's formula."""
    B = _as_matrix(B, "B")
    if B.shape[1] != 1:
        raise UnsupportedShape("multi-input pole placement is not supported")
    return acker(A, B, desired_poles)


def lyapunov_solve(A: np.ndarray, W: np.ndarray) -> np.ndarray:
    """Solve A^T S + S A = -W by Kronecker vectorization (dense, exact-scale)."""
    n = A.shape[0]
    eye = np.eye(n)
    L = np.kron(eye, A.T) + np.kron(A.T, eye)
    s = np.linalg.solve(L, -W.reshape(-1, order="F"))
    S = s.reshape((n, n), order="F")
    return (S + S.T) / 2.0


def _is_hurwitz(A: np.ndarray) -> bool:
    return bool(np.all(np.linalg.eigvals(A).real < -AXIS_TOL)) if A.size else True


def _stabilizable(A: np.ndarray, B: np.ndarray) -> bool:
    """PBH test on every eigenvalue with nonnegative real part."""
    n = A.shape[0]
    for lam in np.linalg.eigvals(A):
        if lam.real < -AXIS_TOL:
            continue
        pencil = np.hstack([lam * np.eye(n) - A, B.astype(complex)])
        if np.linalg.matrix_rank(pencil) < n:
            return False
    return True


def _initial_stabilizing_gain(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Stabilizing K0 for the Newton iteration.

    Stable plants start from zero; single-input plants place poles at
    {-1, ..., -n}.  Remaining cases try Ackermann through each input
    column, verified by an eigenvalue check.
    """
    n, m = A.shape[0], B.shape[1]
    if _is_hurwitz(A):
        return np.zeros((m, n))
    targets = [-(i + 1.0) for i in range(n)]
    candidates = []
    if m == 1:
        candidates.append(B)
    else:
        candidates.extend(B[:, j : j + 1] for j in range(m))
        candidates.append(B @ np.ones((m, 1)))
    for col in candidates:
        try:
            k_row = acker(A, col, targets)
        except (Uncontrollable, UnsupportedShape):
            continue
        if m == 1:
            K0 = k_row
        else:
            # Lift the single-column gain back to full input width.
            weights, *_ = np.linalg.lstsq(B, col, rcond=None)
            K0 = weights @ k_row
        if _is_hurwitz(A - B @ K0):
            return K0
    raise Unstabilizable("could not construct a stabilizing initial gain")


def lqr(A, B, Q, R) -> LqrSolution:
    """Continuous-time LQR via Newton iteration on the Riccati equation.

    Each step solves one Lyapunov equation for the closed loop of the
    current gain; iterates converge monotonically from any stabilizing
    start.  The returned S satisfies A'S + SA - SBR^-1B'S + Q = 0 with
    Frobenius residual below 1e-8.
    """
    A = _as_matrix(A, "A")
    B = _as_matrix(B, "B")
    Q = _as_matrix(Q, "Q")
    R = _as_matrix(R, "R")
    n, m = A.shape[0], B.shape[1]
    if A.shape != (n, n) or B.shape != (n, m) or Q.shape != (n, n) or R.shape != (m, m):
        raise ShapeError(
            f"incompatible shapes A{A.shape}, B{B.shape}, Q{Q.shape}, R{R.shape}"
        )
    if not np.allclose(R, R.T, atol=1e-9):
        raise SingularWeight("R must be symmetric")
    r_eigs = np.linalg.eigvalsh(R)
    if np.min(r_eigs) <= 0:
        raise SingularWeight("R must be positive definite")
    if not np.allclose(Q, Q.T, atol=1e-9):
        raise ValueError("Q must be symmetric")
    if np.min(np.linalg.eigvalsh(Q)) < -1e-9:
        raise ValueError("Q must be positive semidefinite")
    if not _stabilizable(A, B):
        raise Unstabilizable("(A, B) fails the PBH stabilizability test")

    K = _initial_stabilizing_gain(A, B)
    S = np.zeros((n, n))
    for _ in range(LQR_MAX_ITERS):
        Acl = A - B @ K
        W = Q + K.T @ R @ K
        S = lyapunov_solve(Acl, W)
        K = np.linalg.solve(R, B.T @ S)
        residual = A.T @ S + S @ A - S @ B @ np.linalg.solve(R, B.T @ S) + Q
        if np.linalg.norm(residual, "fro") <= LQR_RESIDUAL_TOL:
            break
    else:
        raise NoConvergence(f"Riccati iteration failed after {LQR_MAX_ITERS} steps")
    E = sort_complex(np.linalg.eigvals(A - B @ K))
    return LqrSolution(K=K, S=S, E=E)


def closed_loop_state_feedback(sys: StateSpace, K) -> StateSpace:
    """Closed loop under u = -Kx: returns (A - BK, B, C, D)."""
    K = _as_matrix(K, "K")
    if K.shape != (sys.n_inputs, sys.n_states):
        raise ShapeError(
            f"K must be {sys.n_inputs}x{sys.n_states}, got {K.shape}"
        )
    return make_ss(sys.A - sys.B @ K, sys.B, sys.C, sys.D)


def interconnect(
    kind: str, g1: TransferFunction, g2: TransferFunction | None = None
) -> TransferFunction:
    """Series, parallel, or (negative) feedback combination of SISO TFs.

    Common factors between the resulting numerator and denominator are
    deliberately left uncancelled.  Feedback defaults to unity when g2
    is omitted.
    """
    if kind not in ("series", "parallel", "feedback"):
        raise ValueError(f"unknown interconnection {kind!r}")
    if g2 is None:
        g2 = make_tf([1.0], [1.0])
    n1, d1 = np.array(g1.num), np.array(g1.den)
    n2, d2 = np.array(g2.num), np.array(g2.den)
    if kind == "series":
        num, den = np.polymul(n1, n2), np.polymul(d1, d2)
    elif kind == "parallel":
        num = np.polyadd(np.polymul(n1, d2), np.polymul(n2, d1))
        den = np.polymul(d1, d2)
    else:
        num = np.polymul(n1, d2)
        den = np.polyadd(np.polymul(d1, d2), np.polymul(n1, n2))
    if not np.any(den):
        raise DegenerateSystem(f"{kind} interconnection denominator vanished")
    return make_tf(num, den)
