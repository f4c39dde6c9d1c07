"""Continuous-time LTI system representations and basic analysis.

Two interchangeable SISO-oriented representations are provided: a
rational :class:`TransferFunction` in the Laplace variable s and a
:class:`StateSpace` quadruple (A, B, C, D).  Construction normalizes
and validates; analysis (poles, zeros, DC gain, stability) is exact up
to the eigenvalue solver.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSystem, ImproperSystem, ShapeError, UnsupportedShape

# Tolerance on Re(pole) for calling a pole "on the imaginary axis".
AXIS_TOL = 1e-9

# Largest state dimension accepted; keeps dense O(n^6) solvers exact-scale.
MAX_STATES = 8


def strip_leading_zeros(coeffs) -> tuple[float, ...]:
    """Drop leading (highest-power) zero coefficients; keep at least one entry."""
    vals = [float(c) for c in coeffs]
    while len(vals) > 1 and vals[0] == 0.0:
        vals.pop(0)
    return tuple(vals)


def polynomial_roots(coeffs) -> np.ndarray:
    """Roots of a polynomial given descending-power coefficients.

    Builds the companion matrix of the monic polynomial and hands it to
    the general complex eigenvalue routine; the same path serves pole,
    zero, root-locus, and closed-loop eigenvalue computations.
    """
    c = np.atleast_1d(np.asarray(coeffs, dtype=float))
    c = np.array(strip_leading_zeros(c))
    n = len(c) - 1
    if n < 1:
        return np.array([], dtype=complex)
    monic = c[1:] / c[0]
    companion = np.zeros((n, n))
    companion[0, :] = -monic
    if n > 1:
        companion[1:, :-1] = np.eye(n - 1)
    return np.linalg.eigvals(companion)


def sort_complex(values) -> tuple[complex, ...]:
    """Sort complex values by (real part, imaginary part)."""
    return tuple(sorted((complex(v) for v in values), key=lambda z: (z.real, z.imag)))


def poly_to_string(coeffs, var: str = "s", ndigits: int | None = None) -> str:
    """Render descending-power coefficients as a human-readable polynomial."""
    coeffs = strip_leading_zeros(coeffs)
    deg = len(coeffs) - 1
    parts: list[str] = []
    for i, c in enumerate(coeffs):
        if c == 0 and deg > 0:
            continue
        power = deg - i
        mag = abs(c)
        if ndigits is not None:
            mag = round(mag, ndigits)
        if mag == int(mag):
            mag_s = str(int(mag))
        else:
            mag_s = f"{mag:g}"
        if power == 0:
            term = mag_s
        else:
            head = "" if mag == 1 else f"{mag_s} "
            term = f"{head}{var}" if power == 1 else f"{head}{var}^{power}"
        if not parts:
            parts.append(term if c >= 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c >= 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


def _as_readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class TransferFunction:
    """Proper SISO transfer function num(s)/den(s), descending powers."""

    num: tuple[float, ...]
    den: tuple[float, ...]

    @property
    def order(self) -> int:
        return len(self.den) - 1

    def evaluate(self, s: complex) -> complex:
        return complex(np.polyval(self.num, s) / np.polyval(self.den, s))

    def normalized(self) -> "TransferFunction":
        """Equivalent TF with a monic denominator."""
        lead = self.den[0]
        return TransferFunction(
            tuple(c / lead for c in self.num), tuple(c / lead for c in self.den)
        )

    def __str__(self) -> str:
        top = poly_to_string(self.num)
        bottom = poly_to_string(self.den)
        width = max(len(top), len(bottom))
        return f"{top.center(width)}\n{'-' * width}\n{bottom.center(width)}"


@dataclass(frozen=True)
class StateSpace:
    """State-space quadruple: x' = Ax + Bu, y = Cx + Du."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    @property
    def n_states(self) -> int:
        return self.A.shape[0]

    @property
    def n_inputs(self) -> int:
        return self.B.shape[1]

    @property
    def n_outputs(self) -> int:
        return self.C.shape[0]

    @property
    def is_siso(self) -> bool:
        return self.n_inputs == 1 and self.n_outputs == 1

    def __str__(self) -> str:
        def fmt(m: np.ndarray) -> str:
            return np.array2string(np.round(m, 10), separator=", ")

        return (
            f"A = {fmt(self.A)}\nB = {fmt(self.B)}\n"
            f"C = {fmt(self.C)}\nD = {fmt(self.D)}"
        )


LinearSystem = TransferFunction | StateSpace


@dataclass(frozen=True)
class StabilityReport:
    """Verdict of a pole-location stability check."""

    is_stable: bool
    rhp_pole_count: int
    marginal: bool
    poles: tuple[complex, ...]


def make_tf(num, den) -> TransferFunction:
    """Build a validated, zero-stripped proper transfer function."""
    num_t = strip_leading_zeros(np.atleast_1d(np.asarray(num, dtype=float)))
    den_t = strip_leading_zeros(np.atleast_1d(np.asarray(den, dtype=float)))
    if not all(math.isfinite(c) for c in num_t + den_t):
        raise DegenerateSystem("coefficients must be finite")
    if den_t == (0.0,) or all(c == 0.0 for c in den_t):
        raise DegenerateSystem("denominator is identically zero")
    if len(num_t) > len(den_t):
        raise ImproperSystem(
            f"numerator degree {len(num_t) - 1} exceeds denominator degree {len(den_t) - 1}"
        )
    return TransferFunction(num_t, den_t)


def make_ss(A, B, C, D) -> StateSpace:
    """Build a validated state-space system; matrices stored verbatim."""
    A = np.atleast_2d(np.asarray(A, dtype=float)) if np.size(A) else np.zeros((0, 0))
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeError(f"A must be square, got {A.shape}")
    if n > MAX_STATES:
        raise ShapeError(f"state dimension {n} exceeds supported maximum {MAX_STATES}")
    D = np.atleast_2d(np.asarray(D, dtype=float))
    p, m = D.shape
    B = np.asarray(B, dtype=float) if np.size(B) else np.zeros((n, m))
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    C = np.asarray(C, dtype=float) if np.size(C) else np.zeros((p, n))
    if C.ndim == 1:
        C = C.reshape(1, -1)
    if B.shape != (n, m):
        raise ShapeError(f"B must be {n}x{m}, got {B.shape}")
    if C.shape != (p, n):
        raise ShapeError(f"C must be {p}x{n}, got {C.shape}")
    for name, mat in (("A", A), ("B", B), ("C", C), ("D", D)):
        if not np.all(np.isfinite(mat)):
            raise ShapeError(f"{name} has non-finite entries")
    return StateSpace(_as_readonly(A), _as_readonly(B), _as_readonly(C), _as_readonly(D))


def tf_to_ss(sys: TransferFunction) -> StateSpace:
    """Controllable-canonical realization of a proper SISO TF."""
    if not isinstance(sys, TransferFunction):
        raise UnsupportedShape("tf_to_ss expects a transfer function")
    den = np.array(sys.den) / sys.den[0]
    num = np.array(sys.num) / sys.den[0]
    n = len(den) - 1
    b = np.concatenate([np.zeros(len(den) - len(num)), num])
    if n == 0:
        return make_ss(np.zeros((0, 0)), np.zeros((0, 1)), np.zeros((1, 0)), [[b[0]]])
    A = np.zeros((n, n))
    A[0, :] = -den[1:]
    if n > 1:
        A[1:, :-1] = np.eye(n - 1)
    B = np.zeros((n, 1))
    B[0, 0] = 1.0
    C = (b[1:] - b[0] * den[1:]).reshape(1, n)
    D = np.array([[b[0]]])
    return make_ss(A, B, C, D)


def ss_to_tf(sys: StateSpace) -> TransferFunction:
    """SISO transfer function C(sI - A)^-1 B + D via Faddeev-LeVerrier."""
    if not isinstance(sys, StateSpace):
        raise UnsupportedShape("ss_to_tf expects a state-space system")
    if not sys.is_siso:
        raise UnsupportedShape("ss_to_tf handles single-input single-output only")
    n = sys.n_states
    if n == 0:
        return make_tf([sys.D[0, 0]], [1.0])
    A, B, C, D = sys.A, sys.B, sys.C, sys.D
    char = np.zeros(n + 1)
    char[0] = 1.0
    M = np.eye(n)
    num_raw = np.zeros(n)
    num_raw[0] = (C @ M @ B).item()
    for k in range(1, n + 1):
        AM = A @ M
        char[k] = -np.trace(AM) / k
        M = AM + char[k] * np.eye(n)
        if k < n:
            num_raw[k] = (C @ M @ B).item()
    num = np.concatenate([[0.0], num_raw]) + D[0, 0] * char
    return make_tf(num, char)


def poles(sys: LinearSystem) -> tuple[complex, ...]:
    """System poles: denominator roots (TF) or eigenvalues of A (SS)."""
    if isinstance(sys, TransferFunction):
        return sort_complex(polynomial_roots(sys.den))
    return sort_complex(np.linalg.eigvals(sys.A)) if sys.n_states else ()


def zeros(sys: LinearSystem) -> tuple[complex, ...]:
    """SISO transmission zeros: numerator roots."""
    tf = sys if isinstance(sys, TransferFunction) else ss_to_tf(sys)
    if all(c == 0.0 for c in tf.num):
        return ()
    return sort_complex(polynomial_roots(tf.num))


def dc_gain(sys: LinearSystem) -> float:
    """Steady-state gain G(0); +-inf for a pole at the origin, nan for 0/0."""
    tf = sys if isinstance(sys, TransferFunction) else ss_to_tf(sys)
    num0 = tf.num[-1]
    den0 = tf.den[-1]
    if den0 == 0.0:
        if num0 == 0.0:
            return math.nan
        return math.copysign(math.inf, num0)
    return num0 / den0


def routh_rhp_count(den) -> int:
    """Right-half-plane root count from the Routh array's first column.

    Zero leading entries are perturbed by a small epsilon; an all-zero
    row is replaced with the derivative of its auxiliary polynomial.
    Reliable when no roots sit exactly on the imaginary axis.
    """
    coeffs = list(strip_leading_zeros(den))
    n = len(coeffs) - 1
    if n < 1:
        return 0
    if coeffs[0] < 0:
        coeffs = [-c for c in coeffs]
    row0 = coeffs[0::2]
    row1 = coeffs[1::2]
    width = len(row0)
    row1 += [0.0] * (width - len(row1))
    table = [row0, row1]
    eps = 1e-12
    for i in range(2, n + 1):
        prev, prev2 = table[i - 1], table[i - 2]
        if all(abs(v) < eps for v in prev):
            # Auxiliary polynomial from the row above, differentiated.
            order = n - (i - 2)
            aux = []
            for j, v in enumerate(prev2):
                power = order - 2 * j
                if power > 0:
                    aux.append(v * power)
            prev = aux + [0.0] * (width - len(aux))
            table[i - 1] = prev
        lead = prev[0] if abs(prev[0]) > eps else eps
        row = []
        for j in range(width - 1):
            a, b = prev2[0], prev2[j + 1]
            c, d = lead, prev[j + 1] if j + 1 < len(prev) else 0.0
            row.append((c * b - a * d) / c)
        row.append(0.0)
        table.append(row)
    first_col = [r[0] if abs(r[0]) > eps else eps for r in table[: n + 1]]
    changes = 0
    for a, b in zip(first_col, first_col[1:]):
        if a * b < 0:
            changes += 1
    return changes


def is_stable(sys: LinearSystem) -> StabilityReport:
    """Stability verdict from pole real parts (axis tolerance AXIS_TOL)."""
    p = poles(sys)
    rhp = sum(1 for z in p if z.real > AXIS_TOL)
    marginal = any(abs(z.real) <= AXIS_TOL for z in p)
    return StabilityReport(
        is_stable=(rhp == 0 and not marginal),
        rhp_pole_count=rhp,
        marginal=marginal,
        poles=p,
    )
