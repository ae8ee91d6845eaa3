"""Radial measure densities of the mu-deformed Segal-Bargmann space.

All densities depend on ``z`` only through ``r = |z|`` and are exposed as
functions of ``r``.  Plane integrals are taken in polar form, so the mass
of a density ``d`` is ``2*pi * int_0^inf d(r) r dr``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from . import specfun
from .errors import DegenerateInputError, DomainError
from .quadrature import QuadratureSpec, radial_integral

__all__ = [
    "DeformationParams",
    "DensityKind",
    "RadialDensity",
    "DensityPair",
    "normalization_constant",
    "density_even",
    "density_odd",
    "gaussian_density",
    "even_density",
    "odd_density",
    "gaussian",
    "custom",
    "combination",
    "definition_pair",
    "total_mass",
    "odd_mass_closed_form",
    "normalize_pair",
]


@dataclass(frozen=True)
class DeformationParams:
    """Deformation parameter ``mu > -1/2`` and scale ``lam > 0``."""

    mu: float
    lam: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.mu) and self.mu > -0.5):
            raise DomainError(f"deformation parameter must satisfy mu > -1/2, got mu={self.mu!r}")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise DomainError(f"scale must satisfy lambda > 0, got lambda={self.lam!r}")

    @property
    def length_scale(self) -> float:
        return 1.0 / math.sqrt(self.lam)


class DensityKind(enum.Enum):
    EVEN_K = "even-K"
    ODD_K = "odd-K"
    EVEN_I = "even-I"
    ODD_I = "odd-I"
    GAUSSIAN = "gaussian"
    CUSTOM = "custom"


def _bessel_power(kind: DensityKind, params: DeformationParams, r: float, derivative: bool) -> float:
    """``s**(mu+1/2) * C(s)`` with ``s = lam r^2`` (or its r-derivative)."""
    mu, lam = params.mu, params.lam
    if not r > 0:
        raise DomainError(f"density is defined only for r > 0, got r={r!r}")
    s = lam * r * r
    a = mu + 0.5
    order = mu - 0.5 if kind in (DensityKind.EVEN_K, DensityKind.EVEN_I) else mu + 0.5
    if kind in (DensityKind.EVEN_K, DensityKind.ODD_K):
        c = specfun.bessel_k(order, s)
    else:
        c = specfun.bessel_i(order, s)
    if not derivative:
        return s**a * c
    if kind in (DensityKind.EVEN_K, DensityKind.ODD_K):
        dc = specfun.bessel_k_prime(order, s)
    else:
        dc = specfun.bessel_i_prime(order, s)
    return 2.0 * lam * r * (a * s ** (a - 1.0) * c + s**a * dc)


@dataclass(frozen=True)
class RadialDensity:
    """A radial density ``r -> scale * base(r)`` with its r-derivative.

    Built-in kinds compute ``base`` from ``params``; ``CUSTOM`` densities carry
    their own ``func``/``dfunc``.  Instances are immutable and hashable, so
    equal densities share cached moments.
    """

    kind: DensityKind
    params: DeformationParams
    scale: float = 1.0
    func: Optional[Callable[[float], float]] = field(default=None, repr=False)
    dfunc: Optional[Callable[[float], float]] = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind is DensityKind.CUSTOM and (self.func is None or self.dfunc is None):
            raise ValueError("custom densities need both func and dfunc")

    def _base(self, r: float, derivative: bool) -> float:
        kind = self.kind
        if kind is DensityKind.CUSTOM:
            return (self.dfunc if derivative else self.func)(r)
        if kind is DensityKind.GAUSSIAN:
            lam = self.params.lam
            value = lam * math.exp(-lam * r * r) / math.pi
            return -2.0 * lam * r * value if derivative else value
        return _bessel_power(kind, self.params, r, derivative)

    def __call__(self, r: float) -> float:
        if self.scale == 0.0:
            return 0.0
        return self.scale * self._base(r, False)

    def deriv(self, r: float) -> float:
        if self.scale == 0.0:
            return 0.0
        return self.scale * self._base(r, True)

    def scaled(self, factor: float) -> "RadialDensity":
        return replace(self, scale=self.scale * factor)

    @property
    def mu(self) -> float:
        return self.params.mu


@dataclass(frozen=True)
class _Combination:
    parts: tuple[tuple[float, RadialDensity], ...]
    derivative: bool = False

    def __call__(self, r: float) -> float:
        if self.derivative:
            return math.fsum(c * d.deriv(r) for c, d in self.parts)
        return math.fsum(c * d(r) for c, d in self.parts)


@dataclass(frozen=True)
class DensityPair:
    """Candidate ``(nu_e, nu_o)``; ``k_coeff``/``i_coeff`` are the coordinates
    in the analytic ``{K-pair, I-pair}`` basis when known, else ``None``."""

    even: RadialDensity
    odd: RadialDensity
    k_coeff: Optional[float] = None
    i_coeff: Optional[float] = None

    def scaled(self, factor: float) -> "DensityPair":
        return DensityPair(
            self.even.scaled(factor),
            self.odd.scaled(factor),
            None if self.k_coeff is None else self.k_coeff * factor,
            None if self.i_coeff is None else self.i_coeff * factor,
        )

    @property
    def is_zero(self) -> bool:
        return self.even.scale == 0.0 and self.odd.scale == 0.0


def normalization_constant(mu: float) -> float:
    """``2**(1/2 - mu) / (pi * Gamma(mu + 1/2))``."""
    return 2.0 ** (0.5 - mu) / (math.pi * specfun.gamma(mu + 0.5))


def even_density(params: DeformationParams) -> RadialDensity:
    return RadialDensity(DensityKind.EVEN_K, params, params.lam * normalization_constant(params.mu))


def odd_density(params: DeformationParams) -> RadialDensity:
    return RadialDensity(DensityKind.ODD_K, params, params.lam * normalization_constant(params.mu))


def gaussian(lam: float = 1.0) -> RadialDensity:
    """``(lam/pi) exp(-lam r^2)``; reduces to the Bargmann density at ``lam = 1``."""
    return RadialDensity(DensityKind.GAUSSIAN, DeformationParams(0.0, lam))


def custom(func, dfunc, params: DeformationParams, scale: float = 1.0) -> RadialDensity:
    return RadialDensity(DensityKind.CUSTOM, params, scale, func, dfunc)


def combination(parts, params: DeformationParams) -> RadialDensity:
    """Real linear combination ``sum(c * d)`` of densities as one density."""
    parts = tuple((float(c), d) for c, d in parts if c != 0.0 and d.scale != 0.0)
    if not parts:
        return RadialDensity(DensityKind.CUSTOM, params, 0.0, _Combination(()), _Combination((), True))
    if len(parts) == 1:
        c, d = parts[0]
        return d.scaled(c)
    return custom(_Combination(parts), _Combination(parts, True), params)


def density_even(params: DeformationParams, r: float) -> float:
    """Even-sector density at radius ``r > 0``."""
    return even_density(params)(r)


def density_odd(params: DeformationParams, r: float) -> float:
    """Odd-sector density at radius ``r > 0``."""
    return odd_density(params)(r)


def gaussian_density(r: float) -> float:
    """``exp(-r^2)/pi`` for ``r >= 0``."""
    if not r >= 0:
        raise DomainError(f"gaussian_density requires r >= 0, got {r!r}")
    return math.exp(-r * r) / math.pi


def definition_pair(params: DeformationParams) -> DensityPair:
    """The two measure densities with the even one normalized to unit mass."""
    c = normalization_constant(params.mu)
    if params.lam == 1.0:
        return DensityPair(even_density(params), odd_density(params), c, 0.0)
    return DensityPair(even_density(params), odd_density(params))


def total_mass(d: RadialDensity, q: QuadratureSpec = QuadratureSpec()) -> float:
    """Plane mass ``2*pi * int_0^inf d(r) r dr``.

    Raises :class:`~musbs.errors.DivergenceError` for densities whose tail is
    not integrable (the ``I``-type kinds).
    """
    return 2.0 * math.pi * radial_integral(d, q, scale=d.params.length_scale)


def odd_mass_closed_form(mu: float) -> float:
    """``sqrt(pi) Gamma(mu+1) / Gamma(mu+1/2)``, the odd-density mass via the
    Mellin transform of ``K``; independent of any Bessel evaluation."""
    return math.exp(0.5 * math.log(math.pi) + math.lgamma(mu + 1.0) - math.lgamma(mu + 0.5))


def normalize_pair(pair: DensityPair, q: QuadratureSpec = QuadratureSpec()) -> DensityPair:
    """Scale both components by one factor so the even density has unit mass."""
    if pair.is_zero:
        raise DegenerateInputError("cannot normalize the zero pair")
    mass = total_mass(pair.even, q)
    if mass == 0.0:
        raise DegenerateInputError("even component has zero mass")
    return pair.scaled(1.0 / mass)
