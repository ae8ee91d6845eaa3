"""Polynomial model of holomorphic functions and the mu-deformed ladder operators.

Holomorphic functions are represented by their Taylor coefficients; the
operators act coefficient-wise, so the reflection term ``(mu/z)(f - Jf)``
never divides by ``z``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "HoloPoly",
    "parity_split",
    "parity_op",
    "creation",
    "annihilation",
    "commutator_action",
    "mu_number",
    "mu_factorial",
]


def _trim(coeffs: Iterable[complex]) -> tuple[complex, ...]:
    c = [complex(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class HoloPoly:
    """Polynomial ``sum_k coeffs[k] z^k`` in canonical (trimmed) form."""

    coeffs: tuple[complex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def monomial(cls, n: int, c: complex = 1.0) -> "HoloPoly":
        if n < 0:
            raise ValueError(f"monomial degree must be >= 0, got {n}")
        return cls((0,) * n + (c,))

    @property
    def degree(self) -> int | None:
        """Highest index with nonzero coefficient; ``None`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> complex:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0j

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __add__(self, other: "HoloPoly") -> "HoloPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return HoloPoly(self.coeff(k) + other.coeff(k) for k in range(n))

    def __sub__(self, other: "HoloPoly") -> "HoloPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return HoloPoly(self.coeff(k) - other.coeff(k) for k in range(n))

    def __mul__(self, scalar: complex) -> "HoloPoly":
        return HoloPoly(scalar * c for c in self.coeffs)

    __rmul__ = __mul__

    def __neg__(self) -> "HoloPoly":
        return HoloPoly(-c for c in self.coeffs)

    @property
    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    @property
    def is_odd(self) -> bool:
        return all(c == 0 for c in self.coeffs[0::2])


def _as_poly(f: HoloPoly | Sequence[complex]) -> HoloPoly:
    return f if isinstance(f, HoloPoly) else HoloPoly(tuple(f))


def parity_split(f: HoloPoly) -> tuple[HoloPoly, HoloPoly]:
    """``(f_e, f_o)`` with ``f_e = (f + Jf)/2`` and ``f_o = (f - Jf)/2``."""
    f = _as_poly(f)
    even = HoloPoly(c if k % 2 == 0 else 0 for k, c in enumerate(f.coeffs))
    odd = HoloPoly(c if k % 2 else 0 for k, c in enumerate(f.coeffs))
    return even, odd


def parity_op(f: HoloPoly) -> HoloPoly:
    """``(Jf)(z) = f(-z)``."""
    f = _as_poly(f)
    return HoloPoly(-c if k % 2 else c for k, c in enumerate(f.coeffs))


def creation(f: HoloPoly) -> HoloPoly:
    """Multiplication by ``z``."""
    f = _as_poly(f)
    if f.is_zero:
        return f
    return HoloPoly((0j,) + f.coeffs)


def mu_number(n: int, mu: float) -> float:
    """Deformed integer: ``n + 2 mu`` for odd ``n``, ``n`` for even ``n``."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return n + 2.0 * mu if n % 2 else float(n)


def mu_factorial(n: int, mu: float) -> float:
    """Product of ``mu_number(k, mu)`` for ``k = 1..n``; 1 for ``n = 0``."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return math.prod(mu_number(k, mu) for k in range(1, n + 1))


def annihilation(f: HoloPoly, mu: float) -> HoloPoly:
    """Dunkl-type lowering operator ``f' + (mu/z)(f(z) - f(-z))``.

    On monomials ``z^n -> mu_number(n) z^(n-1)``: the derivative gives ``n``
    and the reflection term adds ``2 mu`` exactly when ``n`` is odd.
    """
    f = _as_poly(f)
    return HoloPoly(mu_number(k, mu) * c for k, c in enumerate(f.coeffs) if k >= 1)


def commutator_action(f: HoloPoly, mu: float) -> HoloPoly:
    """``a(a* f) - a*(a f)``; equals ``f + 2 mu Jf``."""
    f = _as_poly(f)
    return annihilation(creation(f), mu) - creation(annihilation(f, mu))
