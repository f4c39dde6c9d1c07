"""Exception types raised by the control kernel."""


class KernelError(Exception):
    """Base class for all kernel failures."""


class DegenerateSystem(KernelError):
    """Denominator is identically zero (or collapses to zero)."""


class ImproperSystem(KernelError):
    """Numerator degree exceeds denominator degree."""


class ShapeError(KernelError):
    """Matrix dimensions are inconsistent."""


class UnsupportedShape(KernelError):
    """Operation restricted to SISO / single-input systems."""


class BadGrid(KernelError):
    """Simulation grid parameters are unusable."""


class Uncontrollable(KernelError):
    """Controllability matrix is rank deficient."""


class BadPoleSet(KernelError):
    """Desired pole set is malformed (wrong count or unpaired complex)."""


class Unstabilizable(KernelError):
    """No stabilizing state feedback exists (or none reachable here)."""


class SingularWeight(KernelError):
    """LQR input weight R is singular or not positive definite."""


class NoConvergence(KernelError):
    """Iterative solver exhausted its iteration budget."""
