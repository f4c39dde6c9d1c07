"""Deterministic continuous-time LTI mathematics behind the agent tools."""

from .design import (
    LqrSolution,
    acker,
    closed_loop_state_feedback,
    controllability_matrix,
    interconnect,
    lqr,
    lyapunov_solve,
    place,
)
from .errors import (
    BadGrid,
    BadPoleSet,
    DegenerateSystem,
    ImproperSystem,
    KernelError,
    NoConvergence,
    ShapeError,
    SingularWeight,
    Uncontrollable,
    UnsupportedShape,
    Unstabilizable,
)
from .responses import (
    FrequencyResponseData,
    RootLocusData,
    TimeResponseData,
    default_horizon,
    frequency_response,
    root_locus_data,
    time_response,
)
from .systems import (
    AXIS_TOL,
    LinearSystem,
    StabilityReport,
    StateSpace,
    TransferFunction,
    dc_gain,
    is_stable,
    make_ss,
    make_tf,
    poles,
    poly_to_string,
    polynomial_roots,
    routh_rhp_count,
    sort_complex,
    ss_to_tf,
    tf_to_ss,
    zeros,
)

__all__ = [
    "AXIS_TOL",
    "BadGrid",
    "BadPoleSet",
    "DegenerateSystem",
    "FrequencyResponseData",
    "ImproperSystem",
    "KernelError",
    "LinearSystem",
    "LqrSolution",
    "NoConvergence",
    "RootLocusData",
    "ShapeError",
    "SingularWeight",
    "StabilityReport",
    "StateSpace",
    "TimeResponseData",
    "TransferFunction",
    "Uncontrollable",
    "UnsupportedShape",
    "Unstabilizable",
    "acker",
    "closed_loop_state_feedback",
    "controllability_matrix",
    "dc_gain",
    "default_horizon",
    "frequency_response",
    "interconnect",
    "is_stable",
    "lqr",
    "lyapunov_solve",
    "make_ss",
    "make_tf",
    "place",
    "poles",
    "poly_to_string",
    "polynomial_roots",
    "root_locus_data",
    "routh_rhp_count",
    "sort_complex",
    "ss_to_tf",
    "tf_to_ss",
    "time_response",
    "zeros",
]
