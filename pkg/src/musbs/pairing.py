"""Two-measure inner product on holomorphic polynomials.

For monomials the angular integral is done analytically:
``int_0^{2 pi} e^{i(n-m) theta} d theta = 2 pi delta_{mn}``.  Only the
radial moments ``2 pi int r^{2n} nu(r) r dr`` are computed numerically, and
they are cached per (degree, density, quadrature spec).
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Optional

from .errors import DomainError
from .holo import HoloPoly, annihilation, creation
from .measures import DeformationParams, DensityPair, RadialDensity, definition_pair
from .quadrature import QuadratureSpec, radial_integral

__all__ = [
    "MAX_NORM_DEGREE",
    "radial_moment",
    "inner_product",
    "adjointness_gap",
    "monomial_norm_sq",
]

MAX_NORM_DEGREE = 12


@lru_cache(maxsize=4096)
def radial_moment(n: int, density: RadialDensity, q: QuadratureSpec) -> float:
    """``2 pi int_0^inf r^(2n) density(r) r dr``."""
    two_n = 2 * n
    return 2.0 * math.pi * radial_integral(
        lambda r: r**two_n * density(r), q, scale=density.params.length_scale
    )


def inner_product(
    f: HoloPoly,
    g: HoloPoly,
    params: DeformationParams,
    q: QuadratureSpec = QuadratureSpec(),
    densities: Optional[DensityPair] = None,
) -> complex:
    """``<f_e, g_e>_{L2(nu_e)} + <f_o, g_o>_{L2(nu_o)}``, conjugate-linear in ``f``.

    ``densities`` defaults to the unit-mass pair for ``params``; pass another
    pair to test alternative measures.
    """
    pair = densities if densities is not None else definition_pair(params)
    n_common = min(len(f.coeffs), len(g.coeffs))
    total = 0j
    for n in range(n_common):
        w = f.coeffs[n].conjugate() * g.coeffs[n]
        if w == 0:
            continue
        weight = pair.even if n % 2 == 0 else pair.odd
        total += w * radial_moment(n, weight, q)
    return total


def adjointness_gap(
    f: HoloPoly,
    g: HoloPoly,
    params: DeformationParams,
    q: QuadratureSpec = QuadratureSpec(),
    densities: Optional[DensityPair] = None,
) -> complex:
    """``<a* f, g> - <f, a g> / lambda``; vanishes when the ladder operators are adjoint.

    Monomial norms scale as ``lambda**-n``, so for general ``lambda`` the adjoint
    of multiplication by ``z`` is ``a / lambda``; at ``lambda = 1`` this is the
    plain relation ``<a* f, g> = <f, a g>``.
    """
    lhs = inner_product(creation(f), g, params, q, densities)
    rhs = inner_product(f, annihilation(g, params.mu), params, q, densities)
    return lhs - rhs / params.lam


def monomial_norm_sq(n: int, params: DeformationParams, q: QuadratureSpec = QuadratureSpec()) -> float:
    """``<z^n, z^n>`` by quadrature, for ``0 <= n <= 12``."""
    if not 0 <= n <= MAX_NORM_DEGREE:
        raise DomainError(f"monomial degree must lie in [0, {MAX_NORM_DEGREE}], got {n}")
    z_n = HoloPoly.monomial(n)
    return inner_product(z_n, z_n, params, q).real
