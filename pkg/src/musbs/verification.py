"""Numerical verification checks and the report they produce.

Each check measures one structural property over a set of deformation
parameters and returns its worst-case metric.  ``run_checks`` runs
every check for one ``(mu, lambda)``; ``acceptance_suite`` runs them on
the fixed parameter sets used for release acceptance.
"""

from __future__ import annotations

import datetime as _dt
import json
import math
import os
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import __version__, specfun
from .holo import HoloPoly, commutator_action, mu_factorial, parity_op
from .measures import (
    DeformationParams,
    density_even,
    density_odd,
    even_density,
    gaussian,
    gaussian_density,
    odd_density,
    odd_mass_closed_form,
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
)
from .pairing import adjointness_gap, inner_product, monomial_norm_sq
from .quadrature import QuadratureSpec

SCHEMA_VERSION = 1

#: Parameter sets fixed by the acceptance criteria.
FIVE_MUS = (-0.4, 0.0, 0.5, 1.3, 2.5)
NORMALIZATION_MUS = (-0.4, 0.0, 0.5, 1.0, 2.5)
ODE_MUS = (0.0, 0.8, 2.0)
COMMUTATION_MUS = (-0.4, 0.0, 0.37, 1.0, 2.5)
CHANGE_OF_VARIABLE_MUS = (0.0, 0.25, 1.0, 2.5)

GAUSS_AT_ONE = 0.1170996630
COMMUTATION_SEED = 20081818

RESIDUAL_GRID = np.linspace(0.2, 2.5, 30)


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    metric: Optional[float]
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        metric = self.metric if self.metric is not None and math.isfinite(self.metric) else None
        return {"name": self.name, "status": self.status, "metric": metric, "tolerance": self.tolerance}


# ---------------------------------------------------------------------------
# Individual checks.  Each returns the worst metric over its parameter set.
# ---------------------------------------------------------------------------


def gaussian_reduction() -> float:
    """Both densities at mu=0 against exp(-r^2)/pi, 50 points on [0.1, 4]."""
    p = DeformationParams(0.0)
    worst = 0.0
    for r in np.linspace(0.1, 4.0, 50):
        g = gaussian_density(r)
        worst = max(worst, abs(density_even(p, r) - g), abs(density_odd(p, r) - g))
    return worst


def probability_normalization(mus, lam, q) -> float:
    return max(abs(total_mass(even_density(DeformationParams(mu, lam)), q) - 1.0) for mu in mus)


def odd_mass(mus, lam, q) -> float:
    return max(
        abs(total_mass(odd_density(DeformationParams(mu, lam)), q) - odd_mass_closed_form(mu)) for mu in mus
    )


def coupled_residuals(mus) -> float:
    worst = 0.0
    for mu in mus:
        for kind in ("K", "I"):
            pair = analytic_pair(kind, mu)
            worst = max(worst, max(coupled_residual(pair, mu, float(r)).relative for r in RESIDUAL_GRID))
    return worst


def decoupled_residuals(mus) -> float:
    worst = 0.0
    for mu in mus:
        for kind in ("K", "I"):
            pair = analytic_pair(kind, mu)
            for parity, f in (("even", pair.even), ("odd", pair.odd)):
                for r in RESIDUAL_GRID:
                    worst = max(worst, abs(decoupled_residual(parity, f, mu, float(r), relative=True)))
    return worst


def ode_crosscheck(mus, r0: float = 0.5, r_end: float = 2.0) -> float:
    worst = 0.0
    for mu in mus:
        pair = analytic_pair("K", mu)
        traj = integrate_coupled(mu, r0, pair.even(r0), pair.odd(r0), r_end)
        worst = max(worst, traj.max_relative_deviation(pair))
    return worst


def adjointness(mus, lam, q, degrees=range(9)) -> float:
    """|adjointness_gap(z^m, z^(m+1))| / max(1, |<a* z^m, z^(m+1)>|).

    ``m`` runs over both parities, so both nontrivial cases (f even/g odd
    and f odd/g even) are covered.
    """
    worst = 0.0
    for mu in mus:
        params = DeformationParams(mu, lam)
        for m in degrees:
            f, g = HoloPoly.monomial(m), HoloPoly.monomial(m + 1)
            lhs = inner_product(HoloPoly.monomial(m + 1), g, params, q)
            gap = adjointness_gap(f, g, params, q)
            worst = max(worst, abs(gap) / max(1.0, abs(lhs)))
    return worst


def commutation(mus, n_polys: int = 100, max_degree: int = 12, seed: int = COMMUTATION_SEED) -> float:
    rng = np.random.default_rng(seed)
    polys = []
    for _ in range(n_polys):
        deg = int(rng.integers(0, max_degree + 1))
        c = rng.uniform(-1, 1, deg + 1) + 1j * rng.uniform(-1, 1, deg + 1)
        polys.append(HoloPoly(tuple(complex(x) for x in c)))
    worst = 0.0
    for mu in mus:
        for f in polys:
            got = commutator_action(f, mu)
            want = f + (2.0 * mu) * parity_op(f)
            n = max(len(got.coeffs), len(want.coeffs))
            worst = max([worst] + [abs(got.coeff(k) - want.coeff(k)) for k in range(n)])
    return worst


def monomial_norms(mus, lam, q, degrees=range(11)) -> float:
    worst = 0.0
    for mu in mus:
        params = DeformationParams(mu, lam)
        for n in degrees:
            expected = mu_factorial(n, mu) / lam**n
            worst = max(worst, abs(monomial_norm_sq(n, params, q) / expected - 1.0))
    return worst


def tail_classification(mus, q) -> float:
    """Number of misclassified analytic pairs (0 when all are right)."""
    wrong = 0
    for mu in mus:
        wrong += classify_tail(analytic_pair("K", mu), q) is not TailClass.INTEGRABLE
        wrong += classify_tail(analytic_pair("I", mu), q) is not TailClass.DIVERGENT
    return float(wrong)


def single_measure_obstruction(mus) -> float:
    g = gaussian()
    worst = abs(abs(equal_density_gap(g, 0.5, 1.0)) - GAUSS_AT_ONE)
    for r in RESIDUAL_GRID:
        r = float(r)
        worst = max(worst, abs(equal_density_gap(g, 0.0, r)))
        for mu in mus:
            worst = max(worst, abs(equal_density_gap(g, mu, r) + 2.0 * mu * g(r) / (r * r)))
    return worst


def _closed_forms():
    def pre_i(x):
        return math.sqrt(2.0 / (math.pi * x))

    def pre_k(x):
        return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)

    return (
        (specfun.bessel_i, 0.5, lambda x: pre_i(x) * math.sinh(x)),
        (specfun.bessel_i, -0.5, lambda x: pre_i(x) * math.cosh(x)),
        (specfun.bessel_i, 1.5, lambda x: pre_i(x) * (math.cosh(x) - math.sinh(x) / x)),
        (specfun.bessel_k, 0.5, pre_k),
        (specfun.bessel_k, -0.5, pre_k),
        (specfun.bessel_k, 1.5, lambda x: pre_k(x) * (1.0 + 1.0 / x)),
    )


def special_functions(mus, tol_closed=1e-12, tol_wronskian=1e-9, tol_symmetry=1e-12) -> float:
    """Worst of (closed-form, Wronskian, order-symmetry) errors, each divided
    by its own tolerance; passes when <= 1."""
    grid = np.geomspace(0.05, 30.0, 50)
    closed = 0.0
    for fn, nu, exact in _closed_forms():
        for x in grid:
            x = float(x)
            closed = max(closed, abs(fn(nu, x) / exact(x) - 1.0))
    orders = sorted({0.0, 0.25, 0.5, 1.3, 2.5, *(m + 0.5 for m in mus), *(m - 0.5 for m in mus)})
    wronsk = 0.0
    for nu in orders:
        for x in grid:
            x = float(x)
            w = specfun.bessel_i(nu, x) * specfun.bessel_k_prime(nu, x) - specfun.bessel_i_prime(
                nu, x
            ) * specfun.bessel_k(nu, x)
            wronsk = max(wronsk, abs(w * x + 1.0))
    sym = 0.0
    for nu in (o for o in orders if abs(o) < -specfun.MIN_ORDER):
        for x in (0.05, 0.5, 1.0, 5.0, 20.0):
            sym = max(sym, abs(specfun.bessel_k(-nu, x) / specfun.bessel_k(nu, x) - 1.0))
    return max(closed / tol_closed, wronsk / tol_wronskian, sym / tol_symmetry)


def change_of_variable(mus) -> float:
    """Exact collapse of the change-of-variable constants on the reference set;
    ``change_of_variable_check`` itself raises if ``mus`` fail at 1e-12."""
    for mu in mus:
        change_of_variable_check(mu)
    worst = 0.0
    for mu in CHANGE_OF_VARIABLE_MUS:
        cv = change_of_variable_check(mu)
        worst = max(
            worst,
            abs(cv.even_const - (-4.0 * (mu - 0.5) ** 2)),
            abs(cv.odd_const - (-4.0 * (mu + 0.5) ** 2)),
        )
    return worst


# ---------------------------------------------------------------------------
# Orchestration
# ---------------------------------------------------------------------------

DEFAULT_TOLERANCES = {
    "gaussian-reduction": 1e-10,
    "probability-normalization": 1e-8,
    "odd-mass": 1e-8,
    "coupled-residuals": 1e-9,
    "decoupled-residuals": 1e-7,
    "ode-crosscheck": 1e-6,
    "adjointness": 1e-8,
    "commutation": 1e-14,
    "monomial-norms": 1e-7,
    "tail-classification": 0.0,
    "single-measure-obstruction": 1e-9,
    "special-functions": 1.0,
    "change-of-variable": 0.0,
}

CHECK_NAMES = tuple(DEFAULT_TOLERANCES)


def quadrature_for(tol: Optional[float]) -> QuadratureSpec:
    """Quadrature spec two orders tighter than ``tol``, clamped to the supported range."""
    if tol is None:
        return QuadratureSpec()
    return QuadratureSpec(rel_tol=min(1e-10, max(1e-13, tol / 100.0)))


def _run(name: str, fn: Callable[[], float], tolerance: float) -> CheckResult:
    try:
        metric = float(fn())
    except Exception as exc:  # a crashing check is reported, not propagated
        return CheckResult(name, "error", None, tolerance, f"{type(exc).__name__}: {exc}")
    status = "pass" if math.isfinite(metric) and metric <= tolerance else "fail"
    return CheckResult(name, status, metric, tolerance)


def _plan(sets: dict, lam: float, q: QuadratureSpec, tol: Optional[float]):
    sf = (lambda: special_functions(sets["special"])) if tol is None else (
        lambda: special_functions(sets["special"], tol, tol, tol) * tol
    )
    return {
        "gaussian-reduction": gaussian_reduction,
        "probability-normalization": lambda: probability_normalization(sets["normalization"], lam, q),
        "odd-mass": lambda: odd_mass(sets["odd_mass"], lam, q),
        "coupled-residuals": lambda: coupled_residuals(sets["five"]),
        "decoupled-residuals": lambda: decoupled_residuals(sets["five"]),
        "ode-crosscheck": lambda: ode_crosscheck(sets["ode"]),
        "adjointness": lambda: adjointness(sets["five"], lam, q),
        "commutation": lambda: commutation(sets["commutation"]),
        "monomial-norms": lambda: monomial_norms(sets["five"], lam, q),
        "tail-classification": lambda: tail_classification(sets["five"], q),
        "single-measure-obstruction": lambda: single_measure_obstruction(sets["five"]),
        "special-functions": sf,
        "change-of-variable": lambda: change_of_variable(sets["five"]),
    }


def _run_plan(sets, lam, tol) -> list[CheckResult]:
    q = quadrature_for(tol)
    plan = _plan(sets, lam, q, tol)
    return [
        _run(name, plan[name], DEFAULT_TOLERANCES[name] if tol is None else tol) for name in CHECK_NAMES
    ]


def run_checks(params: DeformationParams, tol: Optional[float] = None) -> list[CheckResult]:
    """All checks at one ``(mu, lambda)``; ``tol`` overrides every tolerance."""
    mus = (params.mu,)
    sets = dict(
        normalization=mus, odd_mass=mus, five=mus, ode=mus, commutation=mus, special=mus
    )
    return _run_plan(sets, params.lam, tol)


def acceptance_suite() -> list[CheckResult]:
    """All checks on the parameter sets fixed by the acceptance criteria (lambda = 1)."""
    sets = dict(
        normalization=NORMALIZATION_MUS,
        odd_mass=(1.0,),
        five=FIVE_MUS,
        ode=ODE_MUS,
        commutation=COMMUTATION_MUS,
        special=FIVE_MUS,
    )
    return _run_plan(sets, 1.0, None)


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------


def report_timestamp() -> str:
    """UTC ISO-8601 time, pinned by ``SOURCE_DATE_EPOCH`` when set."""
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        moment = _dt.datetime.fromtimestamp(int(epoch), tz=_dt.timezone.utc)
    else:
        moment = _dt.datetime.now(tz=_dt.timezone.utc).replace(microsecond=0)
    return moment.isoformat().replace("+00:00", "Z")


@dataclass(frozen=True)
class VerificationReport:
    params: DeformationParams
    checks: list = field(default_factory=list)
    timestamp: str = ""
    tool_version: str = __version__

    @property
    def status(self) -> str:
        return "pass" if self.checks and all(c.passed for c in self.checks) else "fail"

    def to_dict(self) -> dict:
        return {
            "schemaVersion": SCHEMA_VERSION,
            "params": {"mu": self.params.mu, "lambda": self.params.lam},
            "checks": [c.to_dict() for c in self.checks],
            "status": self.status,
            "timestamp": self.timestamp,
            "toolVersion": self.tool_version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"


def verify(params: DeformationParams, tol: Optional[float] = None) -> VerificationReport:
    return VerificationReport(params, run_checks(params, tol), report_timestamp())
