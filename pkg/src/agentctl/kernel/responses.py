"""Time-domain simulation and frequency-domain evaluation.

Time responses use exact zero-order-hold discretization (matrix
exponential of the augmented [[A, B], [0, 0]] block) on a uniform grid,
so sampled values carry no integration error.  Frequency responses are
direct substitutions s = jw.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import BadGrid, UnsupportedShape
from .systems import (
    AXIS_TOL,
    LinearSystem,
    StateSpace,
    TransferFunction,
    poles,
    polynomial_roots,
    sort_complex,
    tf_to_ss,
    zeros,
)

DEFAULT_POINTS = 500
UNSTABLE_HORIZON = 5.0
FREQ_POINTS = 200


@dataclass(frozen=True)
class TimeResponseData:
    """Sampled output of a simulation run."""

    t: np.ndarray
    y: np.ndarray
    u: np.ndarray
    kind: str


@dataclass(frozen=True)
class FrequencyResponseData:
    """Complex response G(jw) on a positive frequency grid."""

    omega: np.ndarray
    response: np.ndarray
    kind: str

    @property
    def has_nonfinite(self) -> bool:
        return not bool(np.all(np.isfinite(self.response)))


@dataclass(frozen=True)
class RootLocusData:
    """Closed-loop pole branches as the loop gain sweeps k >= 0."""

    gains: np.ndarray
    branches: np.ndarray  # shape (len(gains), order)


def default_horizon(sys: LinearSystem) -> float:
    """Simulation horizon: 8 slowest-pole time constants, clamped to [1, 100].

    Unstable systems get a short fixed window so divergence is visible
    without overflowing; systems with no strictly stable pole fall back
    to 10 time units.
    """
    p = poles(sys)
    if any(z.real > AXIS_TOL for z in p):
        return UNSTABLE_HORIZON
    stable = [z for z in p if z.real < -AXIS_TOL]
    if not stable:
        return 10.0
    slowest = max(z.real for z in stable)
    return float(min(100.0, max(1.0, 8.0 / abs(slowest))))


def _zoh(A: np.ndarray, B: np.ndarray, dt: float) -> tuple[np.ndarray, np.ndarray]:
    n, m = A.shape[0], B.shape[1]
    block = np.zeros((n + m, n + m))
    block[:n, :n] = A
    block[:n, n:] = B
    exp_block = expm(block * dt)
    return exp_block[:n, :n], exp_block[:n, n:]


def time_response(
    sys: LinearSystem,
    kind: str = "step",
    horizon: float | None = None,
    n_points: int | None = None,
    u=None,
) -> TimeResponseData:
    """Simulate a step, impulse, or forced response on a uniform grid.

    The impulse response is realized as the unforced decay from the
    initial state x(0) = B; any direct-feedthrough delta at t = 0 is
    omitted.  Forced inputs are held zero-order between samples.
    """
    if kind not in ("step", "impulse", "forced"):
        raise ValueError(f"unknown response kind {kind!r}")
    ss = sys if isinstance(sys, StateSpace) else tf_to_ss(sys)
    if not ss.is_siso:
        raise UnsupportedShape("time_response handles SISO systems only")
    if horizon is None:
        horizon = default_horizon(sys)
    if horizon <= 0:
        raise BadGrid(f"horizon must be positive, got {horizon}")
    n_points = DEFAULT_POINTS if n_points is None else int(n_points)
    if n_points < 2:
        raise BadGrid(f"need at least 2 grid points, got {n_points}")
    t = np.linspace(0.0, float(horizon), n_points)
    dt = t[1] - t[0]

    if kind == "step":
        u_vec = np.ones(n_points)
    elif kind == "impulse":
        u_vec = np.zeros(n_points)
    else:
        if u is None:
            raise BadGrid("forced response requires input samples u")
        u_vec = np.asarray(u, dtype=float).ravel()
        if u_vec.shape != t.shape:
            raise BadGrid(f"u must have {n_points} samples, got {u_vec.size}")

    n = ss.n_states
    y = np.zeros(n_points)
    if n == 0:
        y = ss.D[0, 0] * u_vec
        return TimeResponseData(t, y, u_vec, kind)

    Ad, Bd = _zoh(ss.A, ss.B, float(dt))
    if kind == "impulse":
        x = ss.B[:, 0].copy()
        for i in range(n_points):
            y[i] = (ss.C @ x).item()
            x = Ad @ x
    else:
        x = np.zeros(n)
        for i in range(n_points):
            y[i] = (ss.C @ x).item() + ss.D[0, 0] * u_vec[i]
            x = Ad @ x + Bd[:, 0] * u_vec[i]
    return TimeResponseData(t, y, u_vec, kind)


def default_frequency_grid(sys: LinearSystem, n_points: int = FREQ_POINTS) -> np.ndarray:
    """Log grid spanning two decades either side of the fastest feature."""
    magnitudes = [abs(z) for z in poles(sys) + zeros(sys) if abs(z) > 0]
    scale = max(magnitudes) if magnitudes else 1.0
    return np.logspace(np.log10(scale) - 2, np.log10(scale) + 2, n_points)


def frequency_response(
    sys: LinearSystem,
    kind: str = "bode",
    omega=None,
    n_points: int | None = None,
) -> FrequencyResponseData:
    """Evaluate G(jw) on a positive grid (rational form or resolvent form).

    A pole landing exactly on a grid point yields a non-finite sample,
    kept in place and reported via ``has_nonfinite``.
    """
    if kind not in ("bode", "nyquist"):
        raise ValueError(f"unknown frequency response kind {kind!r}")
    if omega is None:
        omega = default_frequency_grid(sys, n_points or FREQ_POINTS)
    omega = np.asarray(omega, dtype=float).ravel()
    if np.any(omega <= 0) or np.any(np.diff(omega) <= 0):
        raise BadGrid("omega grid must be positive and strictly increasing")

    if isinstance(sys, TransferFunction):
        s = 1j * omega
        den_vals = np.polyval(sys.den, s)
        num_vals = np.polyval(sys.num, s)
        with np.errstate(divide="ignore", invalid="ignore"):
            resp = num_vals / den_vals
    else:
        if not sys.is_siso:
            raise UnsupportedShape("frequency_response handles SISO systems only")
        n = sys.n_states
        resp = np.empty(len(omega), dtype=complex)
        eye = np.eye(n)
        for i, w in enumerate(omega):
            try:
                x = np.linalg.solve(1j * w * eye - sys.A, sys.B[:, 0])
                resp[i] = (sys.C @ x).item() + sys.D[0, 0]
            except np.linalg.LinAlgError:
                resp[i] = complex(np.inf, np.inf)
    return FrequencyResponseData(omega, resp, kind)


def root_locus_data(sys: TransferFunction, gains=None) -> RootLocusData:
    """Closed-loop poles of den + k num for each gain k >= 0.

    Branches are ordered for continuity: each gain's roots are greedily
    matched to the nearest branch endpoints of the previous gain.  If
    the leading coefficient cancels at some gain (biproper loops), the
    vanished branch is reported at complex infinity.
    """
    if not isinstance(sys, TransferFunction):
        raise UnsupportedShape("root_locus_data expects a SISO transfer function")
    if gains is None:
        gains = np.concatenate([[0.0], np.logspace(-3, 3, 100)])
    gains = np.asarray(gains, dtype=float).ravel()
    if np.any(gains < 0):
        raise BadGrid("root locus gains must be nonnegative")

    order = sys.order
    den = np.array(sys.den)
    num = np.concatenate([np.zeros(len(sys.den) - len(sys.num)), sys.num])
    branches = np.empty((len(gains), order), dtype=complex)
    prev: np.ndarray | None = None
    for i, k in enumerate(gains):
        roots = polynomial_roots(den + k * num)
        if len(roots) < order:
            roots = np.concatenate(
                [roots, np.full(order - len(roots), complex(np.inf, 0.0))]
            )
        if prev is None:
            ordered = np.array(sort_complex(roots))
        else:
            ordered = _match_to_previous(prev, roots)
        branches[i] = ordered
        prev = ordered
    return RootLocusData(gains, branches)


def _match_to_previous(prev: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """Greedy nearest-neighbor assignment keeping branch continuity."""
    remaining = list(range(len(roots)))
    ordered = np.empty_like(prev)
    for slot, anchor in enumerate(prev):
        if not np.isfinite(anchor):
            # Keep infinite branches pinned; pick any leftover non-finite
            # root first, else the farthest finite one.
            best = max(
                remaining,
                key=lambda j: (not np.isfinite(roots[j]), abs(roots[j])),
            )
        else:
            best = min(remaining, key=lambda j: abs(roots[j] - anchor))
        ordered[slot] = roots[best]
        remaining.remove(best)
    return ordered
