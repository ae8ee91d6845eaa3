"""Adaptive quadrature over finite intervals and over (0, inf) against r dr.

Finite intervals use globally adaptive bisection with a Gauss-Legendre
10/20 pair; nodes are interior, so integrable endpoint singularities are
never evaluated.  The half line is covered by consecutive shells of fixed
width.  Once shell contributions decay, the remainder is bounded by a
geometric series and folded into the error; contributions that keep
growing up to the truncation radius mean the integral diverges.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DivergenceError, DomainError, QuadratureAccuracyError, RangeError

__all__ = ["QuadratureSpec", "integrate_interval", "radial_integral", "radial_integral_with_error"]

_LO = [(float(x), float(w)) for x, w in zip(*np.polynomial.legendre.leggauss(10))]
_HI = [(float(x), float(w)) for x, w in zip(*np.polynomial.legendre.leggauss(20))]


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy and truncation contract for radial integrals.

    ``truncation_radius`` is the largest cutoff the shell sweep may reach
    (in units of the caller's length scale); the cutoff actually used is
    chosen adaptively below it.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-15
    max_subdivisions: int = 4000
    truncation_radius: float = 64.0

    def __post_init__(self):
        if not 1e-13 <= self.rel_tol <= 1e-4:
            raise DomainError(f"rel_tol must lie in [1e-13, 1e-4], got {self.rel_tol!r}")
        if not self.abs_tol >= 0:
            raise DomainError(f"abs_tol must be >= 0, got {self.abs_tol!r}")
        if self.max_subdivisions < 16:
            raise DomainError(f"max_subdivisions must be >= 16, got {self.max_subdivisions!r}")
        if not self.truncation_radius >= 2:
            raise DomainError(f"truncation_radius must be >= 2, got {self.truncation_radius!r}")


def _rule(g, a, b):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    lo = half * math.fsum(w * g(mid + half * x) for x, w in _LO)
    hi = half * math.fsum(w * g(mid + half * x) for x, w in _HI)
    return hi, abs(hi - lo)


def integrate_interval(
    g: Callable[[float], float], a: float, b: float, q: QuadratureSpec
) -> tuple[float, float]:
    """Integrate ``g`` over ``[a, b]``; returns ``(value, error_estimate)``."""
    if b == a:
        return 0.0, 0.0
    value, err = _rule(g, a, b)
    # max-heap on error; the counter keeps ordering deterministic on ties
    heap = [(-err, 0, a, b, value)]
    counter = 1
    total, total_err = value, err
    while total_err > max(q.abs_tol, q.rel_tol * abs(total)):
        if not math.isfinite(total):
            raise DivergenceError(f"integrand is not finite on [{a}, {b}]")
        if counter >= q.max_subdivisions:
            raise QuadratureAccuracyError(
                f"subdivision budget {q.max_subdivisions} exhausted on [{a}, {b}]", total, total_err
            )
        neg_err, _, lo, hi, v = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1 = _rule(g, lo, mid)
        v2, e2 = _rule(g, mid, hi)
        total += v1 + v2 - v
        total_err += e1 + e2 + neg_err
        heapq.heappush(heap, (-e1, counter, lo, mid, v1))
        heapq.heappush(heap, (-e2, counter + 1, mid, hi, v2))
        counter += 2
    # re-sum to shed drift from the running updates
    total = math.fsum(item[4] for item in heap)
    total_err = math.fsum(-item[0] for item in heap)
    return total, total_err


def radial_integral_with_error(
    g: Callable[[float], float], q: QuadratureSpec, scale: float = 1.0
) -> tuple[float, float]:
    """``int_0^inf g(r) r dr`` together with its error bound (incl. tail bound).

    ``scale`` is the natural length of the integrand; shells are ``scale``
    wide and the sweep stops at ``scale * q.truncation_radius``.
    """

    def integrand(r):
        return g(r) * r

    shells: list[float] = []
    total = 0.0
    err = 0.0
    r_max = scale * q.truncation_radius
    k = 0
    while True:
        a, b = k * scale, (k + 1) * scale
        try:
            s, e = integrate_interval(integrand, a, b, q)
        except (RangeError, OverflowError) as exc:
            raise DivergenceError(f"integrand overflowed on [{a}, {b}]") from exc
        if not math.isfinite(s):
            raise DivergenceError(f"integrand is not finite on [{a}, {b}]")
        shells.append(s)
        total += s
        err += e
        k += 1
        if len(shells) >= 2:
            prev, last = abs(shells[-2]), abs(shells[-1])
            target = 0.1 * max(q.abs_tol, q.rel_tol * abs(total))
            if last == 0.0 and prev == 0.0:
                return total, err
            if prev > 0.0 and last < prev:
                ratio = last / prev
                tail = last * ratio / (1.0 - ratio)
                if tail <= target:
                    return total, err + tail
        if b >= r_max:
            break
    if len(shells) >= 2 and abs(shells[-1]) >= abs(shells[-2]):
        raise DivergenceError(
            f"radial integral still growing at r={r_max} (last shell {shells[-1]!r})"
        )
    raise QuadratureAccuracyError(
        f"tail beyond r={r_max} not below tolerance", total, err + abs(shells[-1])
    )


def radial_integral(g: Callable[[float], float], q: QuadratureSpec, scale: float = 1.0) -> float:
    """``int_0^inf g(r) r dr`` by open-endpoint adaptive quadrature.

    Raises :class:`DivergenceError` when the shell contributions grow up to the
    truncation radius and :class:`QuadratureAccuracyError` when the
    subdivision budget runs out.
    """
    return radial_integral_with_error(g, q, scale)[0]
