"""Numerics for the two-measure structure of the mu-deformed Segal-Bargmann space."""

__version__ = "0.1.0"

from .errors import (
    DegenerateInputError,
    DivergenceError,
    DomainError,
    InconclusiveTailError,
    IntegrationError,
    QuadratureAccuracyError,
    RangeError,
)
from .holo import HoloPoly, annihilation, commutator_action, creation, mu_factorial, mu_number, parity_op, parity_split
from .measures import (
    DeformationParams,
    DensityKind,
    DensityPair,
    RadialDensity,
    definition_pair,
    density_even,
    density_odd,
    gaussian_density,
    normalize_pair,
    total_mass,
)
from .odesys import (
    TailClass,
    analytic_pair,
    change_of_variable_check,
    classify_tail,
    coupled_residual,
    decoupled_residual,
    equal_density_gap,
    integrate_coupled,
    modified_bessel_residual,
)
from .pairing import adjointness_gap, inner_product, monomial_norm_sq
from .quadrature import QuadratureSpec, radial_integral
from .specfun import bessel_i, bessel_i_prime, bessel_k, bessel_k_prime, derivative_identity_residual, gamma
