"""Regenerate ``oracle_values.py`` from mpmath at 40 significant digits.

Run from the repository root:  python3 tests/make_oracles.py
Nothing here imports the package under test.
"""

from __future__ import annotations

import pprint
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40

MUS = (-0.4, 0.0, 0.37, 0.5, 0.8, 1.0, 1.3, 2.5)


def c_mu(mu):
    return mp.mpf(2) ** (mp.mpf(0.5) - mu) / (mp.pi * mp.gamma(mu + mp.mpf(0.5)))


def nu_even(mu, r):
    s = r * r
    return c_mu(mu) * s ** (mu + mp.mpf(0.5)) * mp.besselk(mu - mp.mpf(0.5), s)


def nu_odd(mu, r):
    s = r * r
    return c_mu(mu) * s ** (mu + mp.mpf(0.5)) * mp.besselk(mu + mp.mpf(0.5), s)


def plane_moment(density, mu, n):
    """2 pi int r^(2n) density(r) r dr, split at the origin singularity."""
    f = lambda r: r ** (2 * n + 1) * density(mu, r)
    return 2 * mp.pi * mp.quad(f, [0, mp.mpf("0.5"), 1, 2, 4, 8, mp.inf])


def f(x):
    return float(x)


def build() -> dict:
    mu_, r_ = mp.mpf, mp.mpf
    out: dict = {}
    out["bessel_k"] = {
        (nu, x): f(mp.besselk(nu, x))
        for nu in (0.0, 0.3, 0.5, 1.2, 1.3, 2.5, -0.9, -1.4)
        for x in (0.05, 0.7, 1.0, 2.0, 5.0, 20.0)
    }
    out["bessel_i"] = {
        (nu, x): f(mp.besseli(nu, x))
        for nu in (0.0, 0.3, 0.5, 1.3, 2.5, 6.5, -0.9, -1.4)
        for x in (0.05, 0.7, 1.0, 5.0, 14.0, 16.0, 20.0, 40.0)
    }
    out["density_even"] = {(mu, r): f(nu_even(mu_(mu), r_(r))) for mu in MUS for r in (0.3, 1.0, 1.7)}
    out["density_odd"] = {(mu, r): f(nu_odd(mu_(mu), r_(r))) for mu in MUS for r in (0.3, 1.0, 1.7)}
    out["even_mass"] = {mu: f(plane_moment(nu_even, mu_(mu), 0)) for mu in MUS}
    out["odd_mass"] = {mu: f(plane_moment(nu_odd, mu_(mu), 0)) for mu in MUS}
    out["monomial_norm"] = {
        (mu, n): f(plane_moment(nu_even if n % 2 == 0 else nu_odd, mu_(mu), n))
        for mu in (-0.4, 0.5, 1.3)
        for n in range(0, 11)
    }
    out["singular_integral"] = f(mp.quad(lambda r: r ** mp.mpf(0.2) * mp.exp(-r), [0, 1, mp.inf]))
    out["gauss_at_one"] = f(mp.exp(-1) / mp.pi)
    out["k_half_at_one"] = f(mp.sqrt(mp.pi / 2) * mp.exp(-1))
    out["i_half_at_one"] = f(mp.sqrt(2 / mp.pi) * mp.sinh(1))
    return out


def main() -> None:
    values = build()
    target = Path(__file__).with_name("oracle_values.py")
    body = pprint.pformat(values, width=100, sort_dicts=True)
    target.write_text(
        '"""Frozen mpmath reference values; regenerate with make_oracles.py."""\n\n'
        f"ORACLE = {body}\n",
        encoding="utf-8",
    )
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
