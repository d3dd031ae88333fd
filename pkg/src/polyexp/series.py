"""The h_s(x, lam, w) series family.

h_s(x, lam, w) = sum_{n>=1} x^n/n! * sum_{j<n} w^j/(lam+j)^s, the
exponential generating function of generalized-harmonic-type prefix sums
(|w| <= 1, Re lam > 0). Routes: the direct double sum with a running
prefix accumulator (linear work), the quadrature representation
h_s = e^x int_0^x e^(-t) e_s(t w, lam) dt, the Ein-based closed form at
s = lam = 1, and exact closed forms at negative integer s. Borel probes
scale by e^(-x) and compare against the transform-layer limits; the
large-lam expansion mirrors the polyexponential one with phi_n replaced
by its antiderivative.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import core, exact, transforms
from .quadrature import tanh_sinh
from .result import ConvergenceError, DomainError, EvalResult, QuadratureError

__all__ = [
    "HSeriesParams",
    "BorelPoint",
    "h_direct",
    "h_quadrature",
    "h1_closed",
    "h_neg_eval",
    "h_neg_poly_forms",
    "h_neg_alt_eval",
    "borel_probe",
    "h_asymptotic_lambda",
]

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class HSeriesParams:
    s: complex
    lam: complex
    w: complex
    x: complex

    def __post_init__(self):
        object.__setattr__(self, "s", complex(self.s))
        object.__setattr__(self, "lam", complex(self.lam))
        object.__setattr__(self, "w", complex(self.w))
        object.__setattr__(self, "x", complex(self.x))
        if self.lam.real <= 0:
            raise DomainError("Re lam must be positive")
        if abs(self.w) > 1.0 + 1e-12:
            raise DomainError("|w| must be <= 1")


def h_direct(params: HSeriesParams, tol: float = 1e-12, max_terms: int = 100_000) -> EvalResult:
    """Direct sum with running prefixes: term n reuses prefix_{n-1}.

    Stops once the factorial tail (with the prefix growth folded in) drops
    under tol; the error estimate adds the rounding level of the summed
    magnitudes.
    """
    s, lam, w, x = params.s, params.lam, params.w, params.x
    if x == 0:
        return EvalResult(0.0 + 0.0j, 0.0, 0, "h_series")
    acc = 0.0 + 0.0j
    sum_abs = 0.0
    prefix = 0.0 + 0.0j
    wpow = 1.0 + 0.0j
    xterm = 1.0 + 0.0j  # x^n / n!
    n = 0
    while True:
        prefix += wpow * cmath.exp(-s * cmath.log(lam + n))
        wpow *= w
        n += 1
        xterm *= x / n
        acc += xterm * prefix
        sum_abs += abs(xterm * prefix)
        if n >= 2.0 * abs(x) + 4.0:
            growth = max(1.0, (n + 2 + abs(lam)) ** (-s.real))
            bound = 4.0 * abs(xterm) * abs(x) / (n + 1) * (abs(prefix) + (n + 2) * growth)
            ratio = abs(x) / (n + 1)
            if s.real < 0:
                ratio *= (1.0 + 1.0 / (n + lam.real)) ** (-s.real)
            if ratio <= 0.5 and bound <= tol:
                return EvalResult(acc, bound + 2.0 * _EPS * sum_abs, n, "h_series")
        if n > max_terms:
            raise ConvergenceError(f"h series exceeded {max_terms} terms")


def h_quadrature(params: HSeriesParams, tol: float = 1e-10) -> EvalResult:
    """h_s = e^x int_0^x e^(-t) e_s(t w, lam) dt over the straight segment,
    with nested series calls at one-hundredth of the target."""
    s, lam, w, x = params.s, params.lam, params.w, params.x
    if x == 0:
        return EvalResult(0.0 + 0.0j, 0.0, 0, "h_quadrature")
    inner_tol = tol / 100.0
    inner_err = 0.0

    def f(u):
        nonlocal inner_err
        res = core.eval_series(s, lam, x * u * w, tol=inner_tol)
        inner_err = max(inner_err, res.abs_err_estimate)
        return cmath.exp(-x * u) * res.value

    scale = x * cmath.exp(x)
    val, err, work, ok = tanh_sinh(f, 0.0, 1.0, tol / max(abs(scale), 1.0))
    if not ok:
        raise QuadratureError("h quadrature did not converge")
    return EvalResult(
        scale * val, abs(scale) * (err + inner_err), work, "h_quadrature"
    )


def h1_closed(w, x) -> complex:
    """h_1(x, 1, w) = (e^x / w) [Ein(x) - Ein(x (1-w))], w != 0."""
    w, x = complex(w), complex(x)
    if w == 0:
        raise DomainError("closed form needs w != 0")
    return cmath.exp(x) / w * (core.ein(x) - core.ein(x * (1.0 - w)))


def h_neg_poly_forms(p: int) -> tuple[exact.ExactPoly, exact.ExactPoly]:
    """The two exact assemblies of g_p (h_{-p}(x) = e^x g_p(x)):
    Stirling-over-k versus phi_p(x) - phi_p(0) + int_0^x phi_p. They must
    coincide; the boundary value phi_p(0) only matters at p = 0."""
    direct = exact.h_neg_closed_poly(p)
    phi = exact.phi_poly(p)
    boundary = exact.ExactPoly([phi.coefficient(0)])
    via_phi = phi - boundary + exact.phi_antiderivative(p)
    return direct, via_phi


def h_neg_eval(p: int, x) -> complex:
    """h_{-p}(x, 1, 1) = e^x g_p(x) with exact g_p."""
    if p < 0:
        raise DomainError("p must be >= 0")
    x = complex(x)
    return cmath.exp(x) * complex(exact.h_neg_closed_poly(p)(x))


def _exp2_antiderivative(q: exact.ExactPoly) -> exact.ExactPoly:
    """A with d/dt [e^(-2t) A(t)] = e^(-2t) q(t): A = -sum_j q^(j)/2^(j+1)."""
    from fractions import Fraction

    acc = exact.ExactPoly()
    deriv = q
    scale = Fraction(-1, 2)
    while not deriv.is_zero():
        acc = acc + scale * deriv
        deriv = deriv.derivative()
        scale = scale / 2
    return acc


def h_neg_alt_eval(p: int, x, tol: float = 1e-13) -> EvalResult:
    """h_{-p}(x, 1, -1) = -phi_p(-x) e^(-x) - e^x int_0^x e^(-2t) phi_p(-t) dt
    for p >= 1, with the integral done exactly over the polynomial.

    The p = 0 case has a boundary term phi_0(0) = 1 that this form lacks;
    use h_direct there.
    """
    if p < 1:
        raise DomainError("alternating closed form holds for p >= 1; use h_direct at p = 0")
    x = complex(x)
    phi = exact.phi_poly(p)
    q = phi.compose_linear(-1, 0)  # phi_p(-t)
    anti = _exp2_antiderivative(q)
    integral = cmath.exp(-2.0 * x) * complex(anti(x)) - complex(anti(exact.Fraction(0)))
    value = -complex(q(x)) * cmath.exp(-x) - cmath.exp(x) * integral
    est = 8.0 * _EPS * (abs(complex(q(x))) * abs(cmath.exp(-x)) + abs(cmath.exp(x) * integral) + abs(value))
    return EvalResult(value, est, p + 1, "closed_form")


class BorelPoint(NamedTuple):
    x: float
    scaled_value: complex  # e^(-x) h_s(x, lam, w)
    target: complex


def borel_probe(s, lam, w, x_grid: Sequence[float], tol: float = 1e-9) -> list[BorelPoint]:
    """e^(-x) h_s(x, lam, w) along an ascending positive grid, paired with
    the limit it should approach: Phi(w, s, lam) for |w| < 1, zeta(s, lam)
    at w = 1 (Re s > 1), eta(s, lam) at w = -1.

    The scaled sums carry the e^(-x) weight inside each term in log scale,
    so the grid may go up to x = 700 without overflow.
    """
    s, lam, w = complex(s), complex(lam), complex(w)
    grid = [float(x) for x in x_grid]
    if any(x <= 0 for x in grid) or sorted(grid) != grid:
        raise DomainError("x_grid must be ascending and positive")
    if grid[-1] > 700.0:
        raise DomainError("grid capped at x = 700 to stay inside binary64")

    if abs(w) < 1.0 - 1e-14:
        target = transforms.lerch_phi(w, s, lam, tol=tol).value
    elif w == 1.0:
        if s.real <= 1.0:
            raise DomainError("w = 1 target (zeta) needs Re s > 1")
        target = transforms.hurwitz_zeta(s, lam, tol=tol).value
    elif w == -1.0:
        target = transforms.eta(s, lam, tol=tol).value
    else:
        raise DomainError("no defined target for |w| = 1 off the real axis")

    out = []
    for x in grid:
        n_max = int(x + 12.0 * math.sqrt(x) + 60.0)
        prefix = 0.0 + 0.0j
        wpow = 1.0 + 0.0j
        acc = 0.0 + 0.0j
        for n in range(1, n_max + 1):
            prefix += wpow * cmath.exp(-s * cmath.log(lam + n - 1))
            wpow *= w
            log_weight = n * math.log(x) - x - math.lgamma(n + 1)
            acc += math.exp(log_weight) * prefix
        out.append(BorelPoint(x=x, scaled_value=acc, target=target))
    return out


def h_asymptotic_lambda(s, lam, x, order: int) -> EvalResult:
    """Large-lam expansion e^x sum_n C(-s, n) [int_0^x phi_n] lam^(-n-s);
    first-omitted-term error estimate."""
    if order < 0 or order > 10:
        raise DomainError("order must be in 0..10")
    s, lam, x = complex(s), complex(lam), complex(x)
    if lam == 0:
        raise DomainError("lam must be nonzero")
    ex = cmath.exp(x)
    loglam = cmath.log(lam)
    acc = 0.0 + 0.0j
    binom = 1.0 + 0.0j
    for n in range(order + 1):
        anti = complex(exact.phi_antiderivative(n)(x))
        acc += binom * cmath.exp(-(n + s) * loglam) * anti
        binom *= (-s - n) / (n + 1)
    omitted = binom * cmath.exp(-(order + 1 + s) * loglam) * complex(
        exact.phi_antiderivative(order + 1)(x)
    )
    return EvalResult(ex * acc, abs(ex * omitted), order + 1, "asymptotic")
