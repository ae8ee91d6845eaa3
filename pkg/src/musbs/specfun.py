r"""Gamma and modified Bessel functions of real order and positive argument.

``bessel_i`` sums the ascending series for :math:`x \le 15` and switches to
the Hankel asymptotic expansion (with its exponentially small companion term)
above that, falling back to the series for orders large enough that the
expansion cannot reach full precision.  ``bessel_k`` reduces the order to a fractional part
:math:`|\mu| \le 1/2`, evaluates :math:`K_\mu, K_{\mu+1}` by Temme's series
(:math:`x \le 2`) or Steed's continued fraction (:math:`x > 2`), and climbs
to the requested order with the forward recurrence, which is stable for
:math:`K`.  Integer orders need no special casing.

All functions are pure and operate on Python floats.
"""

from __future__ import annotations

import math

from .errors import DomainError, RangeError

__all__ = [
    "MIN_ORDER",
    "gamma",
    "bessel_i",
    "bessel_k",
    "bessel_i_prime",
    "bessel_k_prime",
    "bessel_i_second",
    "bessel_k_second",
    "derivative_identity_residual",
]

#: Lowest supported order (exclusive); covers mu -/+ 1/2 for every mu > -1/2.
MIN_ORDER = -1.5

SERIES_CUTOFF = 15.0
TEMME_CUTOFF = 2.0

_EPS = 1e-17
_MAXIT = 10_000
# log(DBL_MAX); beyond this exp() overflows
_LOG_MAX = 709.78
# last retained Hankel term must be below this, relative to the sum
_ASYMPTOTIC_TRUNCATION = 1e-14

# Taylor coefficients of 1/Gamma(1 + z) about z = 0.
_RGAMMA1_TAYLOR = (
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
    -2.2987456844353702066e-19,
)


def gamma(x: float) -> float:
    """Euler gamma function for ``x > 0``."""
    if not x > 0 or not math.isfinite(x):
        raise DomainError(f"gamma requires a finite x > 0, got {x!r}")
    try:
        return math.gamma(x)
    except OverflowError as exc:
        raise RangeError(f"gamma({x!r}) overflows") from exc


def _check(nu: float, x: float) -> None:
    if not math.isfinite(nu) or nu <= MIN_ORDER:
        raise DomainError(f"order must be finite and > {MIN_ORDER}, got {nu!r}")
    if not x > 0 or not math.isfinite(x):
        raise DomainError(f"argument must be finite and > 0, got {x!r}")


def _is_negative_integer(nu: float) -> bool:
    return nu < 0 and nu == math.floor(nu)


def _signed_rgamma_log(y: float) -> tuple[float, float]:
    """Return ``(sign, log|1/Gamma(y)|)`` for non-integer-or-positive ``y``."""
    if y > 0:
        return 1.0, -math.lgamma(y)
    sign = 1.0 if int(math.floor(-y)) % 2 == 1 else -1.0
    return sign, -math.lgamma(y)


# ---------------------------------------------------------------------------
# I_nu
# ---------------------------------------------------------------------------


def _i_series(nu: float, x: float) -> float:
    half = 0.5 * x
    sign, log_rg = _signed_rgamma_log(nu + 1.0)
    term = sign * math.exp(nu * math.log(half) + log_rg)
    quarter_sq = half * half
    total = term
    k = 0
    while k < _MAXIT:
        k += 1
        term *= quarter_sq / (k * (k + nu))
        total += term
        if abs(term) <= _EPS * abs(total) and k > half:
            break
    return total


def _i_hankel(nu: float, x: float) -> tuple[float, float]:
    """Hankel expansion of ``I_nu(x)`` and the relative size of its last term."""
    if x - 0.5 * math.log(2.0 * math.pi * x) > _LOG_MAX:
        raise RangeError(f"I_{nu}({x}) overflows double precision")
    mu4 = 4.0 * nu * nu
    t = 1.0
    alternating = 1.0
    plain = 1.0
    k = 0
    while k < _MAXIT:
        k += 1
        nxt = t * (mu4 - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if abs(nxt) >= abs(t):
            break
        t = nxt
        alternating += -t if k % 2 else t
        plain += t
        if t == 0.0 or abs(t) < _EPS * abs(alternating):
            break
    lead = math.exp(x - 0.5 * math.log(2.0 * math.pi * x))
    # exponentially small companion; matters for x just above the cutoff
    companion = -math.sin(nu * math.pi) * math.exp(-2.0 * x) * plain
    return lead * (alternating + companion), abs(t / alternating)


def _bessel_i(nu: float, x: float) -> float:
    if _is_negative_integer(nu):
        nu = -nu
    if x <= SERIES_CUTOFF:
        return _i_series(nu, x)
    value, truncation = _i_hankel(nu, x)
    if truncation > _ASYMPTOTIC_TRUNCATION:
        # nu**2 comparable to x: the expansion cannot reach full precision
        value = _i_series(nu, x)
        if not math.isfinite(value):
            raise RangeError(f"I_{nu}({x}) overflows double precision")
    return value


def bessel_i(nu: float, x: float) -> float:
    """Modified Bessel function of the first kind, :math:`I_\\nu(x)`.

    Raises :class:`DomainError` for ``x <= 0`` or ``nu <= -1.5`` and
    :class:`RangeError` once the value exceeds double range (``x`` near 700).
    """
    _check(nu, x)
    return _bessel_i(nu, x)


# ---------------------------------------------------------------------------
# K_nu
# ---------------------------------------------------------------------------


def _temme_gammas(xmu: float) -> tuple[float, float, float, float]:
    """gam1, gam2, 1/Gamma(1+xmu), 1/Gamma(1-xmu) for |xmu| <= 1/2."""
    # even/odd parts of the Taylor series; the odd part is kept divided by
    # xmu so that gam1 needs no division (subnormal xmu loses all digits)
    even = 0.0
    odd_over_xmu = 0.0
    p = 1.0
    xmu2 = xmu * xmu
    for k in range(0, len(_RGAMMA1_TAYLOR), 2):
        even += _RGAMMA1_TAYLOR[k] * p
        if k + 1 < len(_RGAMMA1_TAYLOR):
            odd_over_xmu += _RGAMMA1_TAYLOR[k + 1] * p
        p *= xmu2
    odd = xmu * odd_over_xmu
    return -odd_over_xmu, even, even + odd, even - odd


def _k_temme(xmu: float, x: float) -> tuple[float, float]:
    x2 = 0.5 * x
    pimu = math.pi * xmu
    fact = 1.0 if pimu == 0.0 else pimu / math.sin(pimu)
    d = -math.log(x2)
    e = xmu * d
    fact2 = 1.0 if e == 0.0 else math.sinh(e) / e
    gam1, gam2, gampl, gammi = _temme_gammas(xmu)
    ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
    total = ff
    e = math.exp(e)
    p = 0.5 * e / gampl
    q = 0.5 / (e * gammi)
    c = 1.0
    d = x2 * x2
    total1 = p
    xmu2 = xmu * xmu
    for i in range(1, _MAXIT):
        ff = (i * ff + p + q) / (i * i - xmu2)
        c *= d / i
        p /= i - xmu
        q /= i + xmu
        delta = c * ff
        total += delta
        total1 += c * (p - i * ff)
        if abs(delta) < abs(total) * _EPS:
            break
    return total, total1 * 2.0 / x


def _k_steed(xmu: float, x: float) -> tuple[float, float]:
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25 - xmu * xmu
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, _MAXIT):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _EPS:
            break
    h *= a1
    kmu = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s
    return kmu, kmu * (xmu + x + 0.5 - h) / x


def _k_pair(nu: float, x: float) -> tuple[float, float]:
    """K_nu(x), K_{nu+1}(x) for nu >= 0."""
    nl = int(nu + 0.5)
    xmu = nu - nl
    if x <= TEMME_CUTOFF:
        kmu, k1 = _k_temme(xmu, x)
    else:
        kmu, k1 = _k_steed(xmu, x)
    two_over_x = 2.0 / x
    for i in range(1, nl + 1):
        kmu, k1 = k1, (xmu + i) * two_over_x * k1 + kmu
    if not (math.isfinite(kmu) and math.isfinite(k1)):
        raise RangeError(f"K_{nu}({x}) overflows double precision")
    return kmu, k1


def bessel_k(nu: float, x: float) -> float:
    """Macdonald function :math:`K_\\nu(x)`; exactly symmetric in ``nu``.

    Underflows to ``0.0`` for ``x`` beyond roughly 700.
    """
    _check(nu, x)
    return _k_pair(abs(nu), x)[0]


# ---------------------------------------------------------------------------
# Derivatives
# ---------------------------------------------------------------------------


def bessel_i_prime(nu: float, x: float) -> float:
    """:math:`I'_\\nu(x) = I_{\\nu+1}(x) + (\\nu/x) I_\\nu(x)`."""
    _check(nu, x)
    return _bessel_i(nu + 1.0, x) + nu / x * _bessel_i(nu, x)


def bessel_k_prime(nu: float, x: float) -> float:
    """:math:`K'_\\nu(x) = (\\nu/x) K_\\nu(x) - K_{\\nu+1}(x)`."""
    _check(nu, x)
    a = abs(nu)
    k, k1 = _k_pair(a, x)
    return a / x * k - k1


def bessel_i_second(nu: float, x: float) -> float:
    """Second derivative from the order recurrences, (I_{nu-2} + 2 I_nu + I_{nu+2}) / 4."""
    _check(nu, x)
    return 0.25 * (_bessel_i(nu - 2.0, x) + 2.0 * _bessel_i(nu, x) + _bessel_i(nu + 2.0, x))


def bessel_k_second(nu: float, x: float) -> float:
    """Second derivative from the order recurrences, (K_{nu-2} + 2 K_nu + K_{nu+2}) / 4."""
    _check(nu, x)
    lo = _k_pair(abs(nu - 2.0), x)[0]
    mid = _k_pair(abs(nu), x)[0]
    hi = _k_pair(abs(nu + 2.0), x)[0]
    return 0.25 * (lo + 2.0 * mid + hi)


def derivative_identity_residual(kind: str, nu: float, s: float) -> float:
    """Absolute defect of a lowering identity for ``s**nu * C_nu(s)``.

    ``kind="K-down"`` checks ``d/ds(s^nu K_nu) = -s^nu K_{nu-1}``;
    ``kind="I-down"`` checks ``d/ds(s^nu I_nu) = s^nu I_{nu-1}``.
    The left side is formed with the product rule and the ``*_prime``
    functions; the right side with an independent evaluation at order
    ``nu - 1``.
    """
    if nu - 1.0 <= MIN_ORDER:
        raise DomainError(f"identity needs nu - 1 > {MIN_ORDER}, got nu={nu!r}")
    _check(nu, s)
    power = s**nu
    if kind == "K-down":
        lhs = nu * s ** (nu - 1.0) * bessel_k(nu, s) + power * bessel_k_prime(nu, s)
        rhs = -power * bessel_k(nu - 1.0, s)
    elif kind == "I-down":
        lhs = nu * s ** (nu - 1.0) * bessel_i(nu, s) + power * bessel_i_prime(nu, s)
        rhs = power * bessel_i(nu - 1.0, s)
    else:
        raise DomainError(f"kind must be 'K-down' or 'I-down', got {kind!r}")
    return abs(lhs - rhs)
