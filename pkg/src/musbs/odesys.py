r"""The radial ODE system that makes the ladder operators mutually adjoint.

Coupled first-order form, for radial densities :math:`(\nu_e, \nu_o)`::

    nu_o = -(1/2r) nu_e' + (2 mu / r^2) nu_e
    nu_e = -(1/2r) nu_o'

Eliminating one unknown gives the decoupled second-order equations::

    nu_e'' - ((1+4mu)/r) nu_e' + (8mu/r^2 - 4r^2) nu_e = 0
    nu_o'' - ((1+4mu)/r) nu_o' - 4r^2 nu_o = 0

and ``nu = r^(2mu+1) phi(r^2)`` turns both into the modified Bessel
equation of order ``mu -/+ 1/2``.  The two-dimensional solution space of
the coupled system is spanned by the K-pair (decaying, positive) and the
I-pair (growing, opposite signs).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError, InconclusiveTailError, IntegrationError, RangeError
from .measures import (
    DeformationParams,
    DensityKind,
    DensityPair,
    RadialDensity,
    combination,
)
from .quadrature import QuadratureSpec, integrate_interval

__all__ = [
    "OdeResidual",
    "ChangeOfVariable",
    "Trajectory",
    "TailClass",
    "analytic_pair",
    "solution_pair",
    "coupled_residual",
    "decoupled_residual",
    "bessel_equation_lhs",
    "modified_bessel_residual",
    "change_of_variable_check",
    "coupled_rhs",
    "integrate_coupled",
    "classify_tail",
    "equal_density_gap",
]


@dataclass(frozen=True)
class OdeResidual:
    r: float
    res1: float
    res2: float
    scale: float  # |nu_e(r)| + |nu_o(r)|

    @property
    def relative(self) -> float:
        worst = max(abs(self.res1), abs(self.res2))
        return worst / self.scale if self.scale else worst


def analytic_pair(kind: str, mu: float) -> DensityPair:
    """``"K"``: ``(r^(2mu+1) K_{mu-1/2}(r^2), r^(2mu+1) K_{mu+1/2}(r^2))``;
    ``"I"``: ``(-r^(2mu+1) I_{mu-1/2}(r^2), r^(2mu+1) I_{mu+1/2}(r^2))``."""
    params = DeformationParams(mu)
    if kind == "K":
        return DensityPair(
            RadialDensity(DensityKind.EVEN_K, params), RadialDensity(DensityKind.ODD_K, params), 1.0, 0.0
        )
    if kind == "I":
        return DensityPair(
            RadialDensity(DensityKind.EVEN_I, params, -1.0),
            RadialDensity(DensityKind.ODD_I, params),
            0.0,
            1.0,
        )
    raise DomainError(f"kind must be 'K' or 'I', got {kind!r}")


def solution_pair(k_coeff: float, i_coeff: float, mu: float) -> DensityPair:
    """``k_coeff * K-pair + i_coeff * I-pair``."""
    k, i = analytic_pair("K", mu), analytic_pair("I", mu)
    params = DeformationParams(mu)
    even = combination([(k_coeff, k.even), (i_coeff, i.even)], params)
    odd = combination([(k_coeff, k.odd), (i_coeff, i.odd)], params)
    return DensityPair(even, odd, float(k_coeff), float(i_coeff))


def coupled_residual(pair: DensityPair, mu: float, r: float) -> OdeResidual:
    """Residuals of the two coupled equations at radius ``r``."""
    if not r > 0:
        raise DomainError(f"r must be > 0, got {r!r}")
    ve, vo = pair.even(r), pair.odd(r)
    dve, dvo = pair.even.deriv(r), pair.odd.deriv(r)
    res1 = vo + dve / (2.0 * r) - 2.0 * mu / (r * r) * ve
    res2 = ve + dvo / (2.0 * r)
    return OdeResidual(r, res1, res2, abs(ve) + abs(vo))


def decoupled_residual(parity: str, f: RadialDensity, mu: float, r: float, *, relative: bool = False) -> float:
    """Left side of the decoupled equation for ``parity`` ("even"/"odd").

    The second derivative is a centered difference of ``f.deriv`` with step
    ``1e-5 * max(1, r)``.  With ``relative=True`` the value is divided by the
    sum of the magnitudes of the three terms.
    """
    if parity not in ("even", "odd"):
        raise DomainError(f"parity must be 'even' or 'odd', got {parity!r}")
    if not r > 0:
        raise DomainError(f"r must be > 0, got {r!r}")
    h = 1e-5 * max(1.0, r)
    d2 = (f.deriv(r + h) - f.deriv(r - h)) / (2.0 * h)
    d1 = f.deriv(r)
    v = f(r)
    potential = (8.0 * mu / (r * r) if parity == "even" else 0.0) - 4.0 * r * r
    terms = (d2, -(1.0 + 4.0 * mu) / r * d1, potential * v)
    lhs = math.fsum(terms)
    if relative:
        size = sum(abs(t) for t in terms)
        return lhs / size if size else lhs
    return lhs


def bessel_equation_lhs(nu: float, x: float, u: float, du: float, d2u: float) -> float:
    """``u'' + u'/x - (1 + nu^2/x^2) u`` from supplied values."""
    return d2u + du / x - (1.0 + nu * nu / (x * x)) * u


def modified_bessel_residual(nu: float, u: str, x: float, *, relative: bool = False) -> float:
    """Modified Bessel equation evaluated on ``I_nu`` or ``K_nu``.

    Derivatives come from the order recurrences, not from the equation.
    """
    if u == "I":
        vals = specfun.bessel_i(nu, x), specfun.bessel_i_prime(nu, x), specfun.bessel_i_second(nu, x)
    elif u == "K":
        vals = specfun.bessel_k(nu, x), specfun.bessel_k_prime(nu, x), specfun.bessel_k_second(nu, x)
    else:
        raise DomainError(f"u must be 'I' or 'K', got {u!r}")
    value, d1, d2 = vals
    lhs = bessel_equation_lhs(nu, x, value, d1, d2)
    if relative:
        size = abs(d2) + abs(d1 / x) + abs((1.0 + nu * nu / (x * x)) * value)
        return lhs / size if size else lhs
    return lhs


@dataclass(frozen=True)
class ChangeOfVariable:
    alpha: float
    even_order: float
    odd_order: float
    even_const: float
    odd_const: float


def change_of_variable_check(mu: float) -> ChangeOfVariable:
    """Constants produced by ``nu = r^alpha phi(r^2)`` with ``alpha = 2 mu + 1``.

    ``even_const`` and ``odd_const`` are the polynomials
    ``alpha^2 - 2 alpha - 4 alpha mu (+ 8 mu)``; they must collapse to
    ``-4 (mu -/+ 1/2)^2`` so that the equations become modified Bessel
    equations of order ``mu -/+ 1/2``.
    """
    alpha = 2.0 * mu + 1.0
    even_const = alpha * alpha - 2.0 * alpha - 4.0 * alpha * mu + 8.0 * mu
    odd_const = alpha * alpha - 2.0 * alpha - 4.0 * alpha * mu
    for got, want in ((even_const, -4.0 * (mu - 0.5) ** 2), (odd_const, -4.0 * (mu + 0.5) ** 2)):
        if not math.isclose(got, want, rel_tol=1e-12, abs_tol=1e-12):
            raise ArithmeticError(f"change of variable constant {got!r} != {want!r}")
    return ChangeOfVariable(alpha, mu - 0.5, mu + 0.5, even_const, odd_const)


# ---------------------------------------------------------------------------
# Numerical integration
# ---------------------------------------------------------------------------

# Dormand-Prince 5(4)
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = np.array(_A[6] + (0.0,))
_A_ROWS = tuple(np.array(row) for row in _A)
_B4 = np.array((5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40))
_E = _B5 - _B4


def coupled_rhs(mu: float, r: float, y: np.ndarray) -> np.ndarray:
    """Explicit form: ``nu_e' = (4 mu / r) nu_e - 2 r nu_o``, ``nu_o' = -2 r nu_e``."""
    ve, vo = y
    return np.array((4.0 * mu / r * ve - 2.0 * r * vo, -2.0 * r * ve))


@dataclass(frozen=True)
class Trajectory:
    mu: float
    r: np.ndarray
    even: np.ndarray
    odd: np.ndarray

    def max_relative_deviation(self, pair: DensityPair) -> float:
        """Largest componentwise relative deviation from ``pair`` on the step points."""
        worst = 0.0
        for r, e, o in zip(self.r, self.even, self.odd):
            for got, want in ((e, pair.even(float(r))), (o, pair.odd(float(r)))):
                dev = abs(got - want) / abs(want) if want else abs(got)
                worst = max(worst, dev)
        return worst


def integrate_coupled(
    mu: float, r0: float, ve0: float, vo0: float, r_end: float, tol: float = 1e-12
) -> Trajectory:
    """Integrate the coupled system from ``r0`` to ``r_end`` with an adaptive
    Dormand-Prince 5(4) pair.

    The local error of each accepted step, measured relative to the size of
    the solution vector, is at most ``tol``.  Because the error test is
    scale-invariant, scaling the initial data scales the whole trajectory.
    """
    DeformationParams(mu)
    if not r0 > 0:
        raise DomainError(f"r0 must be > 0, got {r0!r}")
    if not r0 < r_end <= 4.0:
        raise DomainError(f"need r0 < r_end <= 4, got r0={r0!r}, r_end={r_end!r}")
    if not 1e-12 <= tol <= 1e-4:
        raise DomainError(f"tol must lie in [1e-12, 1e-4], got {tol!r}")

    y = np.array((float(ve0), float(vo0)))
    r = float(r0)
    h = (r_end - r0) / 64.0
    rs, es, os_ = [r], [y[0]], [y[1]]
    k = np.empty((7, 2))
    for _ in range(1_000_000):
        if r >= r_end:
            break
        h = min(h, r_end - r)
        if h < 1e-13 * r_end:
            raise IntegrationError(f"step size underflow at r={r!r}")
        k[0] = coupled_rhs(mu, r, y)
        for s in range(1, 7):
            k[s] = coupled_rhs(mu, r + _C[s] * h, y + h * (_A_ROWS[s] @ k[:s]))
        y_new = y + h * (_B5 @ k)
        delta = h * (_E @ k)
        size = max(np.max(np.abs(y)), np.max(np.abs(y_new)))
        if size:
            # componentwise; the floor only guards a component passing through zero
            denom = np.maximum(np.maximum(np.abs(y), np.abs(y_new)), 1e-8 * size)
            err = float(np.max(np.abs(delta) / denom))
        else:
            err = 0.0
        if err <= tol:
            r = r_end if r_end - (r + h) < 1e-15 * r_end else r + h
            y = y_new
            rs.append(r)
            es.append(y[0])
            os_.append(y[1])
        factor = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * (tol / err) ** 0.2))
        h *= factor
    else:
        raise IntegrationError("step budget exhausted")
    return Trajectory(mu, np.array(rs), np.array(es), np.array(os_))


# ---------------------------------------------------------------------------
# Tail classification and the single-measure obstruction
# ---------------------------------------------------------------------------


class TailClass(enum.Enum):
    INTEGRABLE = "integrable"
    DIVERGENT = "divergent"


def classify_tail(
    pair: DensityPair, q: QuadratureSpec = QuadratureSpec(), max_radius: float = 32.0
) -> TailClass:
    """Decide whether both ``int_1^R |nu| r dr`` converge as ``R`` doubles.

    Integrable once a doubling changes neither integral by more than the
    quadrature tolerance; divergent as soon as either integral more than
    doubles.  Anything else within ``max_radius`` is inconclusive.
    """
    parts = (pair.even, pair.odd)

    def shell(d, a, b):
        return integrate_interval(lambda r: abs(d(r)) * r, a, b, q)[0]

    try:
        totals = [shell(d, 1.0, 2.0) for d in parts]
        radius = 2.0
        while radius < max_radius:
            new = [t + shell(d, radius, 2.0 * radius) for t, d in zip(totals, parts)]
            radius *= 2.0
            if any(not math.isfinite(n) or (t > 0 and n > 2.0 * t) for t, n in zip(totals, new)):
                return TailClass.DIVERGENT
            if all(abs(n - t) <= max(q.abs_tol, q.rel_tol * abs(n)) for t, n in zip(totals, new)):
                return TailClass.INTEGRABLE
            totals = new
    except (RangeError, OverflowError):
        return TailClass.DIVERGENT
    raise InconclusiveTailError(f"tail not classified within R={max_radius}")


def equal_density_gap(f: RadialDensity, mu: float, r: float) -> float:
    """``res1 - res2`` of the coupled residuals with ``nu_e = nu_o = f``.

    Analytically this is ``-2 mu f(r) / r^2``: a single density can satisfy
    both equations only if ``mu = 0`` or ``f`` vanishes.
    """
    res = coupled_residual(DensityPair(f, f), mu, r)
    return res.res1 - res.res2
