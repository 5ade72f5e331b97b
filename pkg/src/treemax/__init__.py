"""Fractional maximal operators on homogeneous trees, computed exactly."""

__version__ = "0.1.0"

from .errors import (
    DivergenceError,
    DomainError,
    ParameterError,
    ResourceBudgetError,
    TreemaxError,
    UnsupportedTailError,
)
from .geometry import (
    SphereDecomposition,
    TreeParams,
    VertexAddress,
    ball_size,
    distance,
    enumerate_ball,
    sphere_decomposition,
    sphere_size,
)
from .lorentz import (
    DistributionFunction,
    FiniteFunction,
    GeometricTail,
    LorentzIndex,
    RadialFunction,
    distribution,
    lebesgue_norm,
    lorentz_norm,
    pytlik_surrogate,
    weak_norm,
)
from .maximal import (
    MaximalParams,
    RadialKernel,
    ball_average,
    convolve,
    convolve_radial,
    maximal_at,
    maximal_bruteforce,
    maximal_radial,
    maximal_weak_norm,
    maximal_weak_norm_bounds,
    uncentered_bruteforce,
)
from .numerics import LogScalar, get_precision, set_precision
from .theory import (
    Kind,
    Status,
    VecaParams,
    Verdict,
    make_ball_indicator,
    make_dirac,
    make_lower_profile,
    make_veca_g,
    make_veca_m,
    restricted_verdict,
    strong_verdict,
)
