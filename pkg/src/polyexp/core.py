"""Numeric evaluation routes for e_s(x, lam) = sum x^n / (n! (n+lam)^s).

Routes implemented here, each independently testable against the others:

  * direct series with an analytic factorial-tail bound,
  * closed form e^x * Q_p(x, lam) at non-positive integer orders,
  * repeated-integral recursion from e_0 = e^t,
  * Hankel contour integral (separate branch-weighted form at positive
    integer orders),
  * Taylor shift in the lam variable and the geometric generating sum,
  * large-lam asymptotic expansion and the leading large-x behaviour.

Also houses the gamma kernel (Lanczos + reflection), the lower incomplete
gamma via the s = 1 series, the entire function Ein, and a numerically
stable evaluator for the weighted products e^(-t) e_s(z t, lam) that the
transform layer integrates.

All powers (n+lam)^s, t^(lam-1), z^(s-1) are principal-branch.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass

import numpy as np

from . import exact
from .quadrature import _level_nodes
from .result import (
    ContourResolutionError,
    ConvergenceError,
    DomainError,
    EvalResult,
    PoleError,
)

__all__ = [
    "EvalResult",
    "HankelContourSpec",
    "gamma_fn",
    "rising_factorial",
    "lower_inc_gamma",
    "ein",
    "eval_series",
    "series_tail_bound",
    "exp_weighted_series",
    "eval_negint",
    "eval_via_recursion",
    "eval_hankel",
    "hankel_contour_integral",
    "default_contour",
    "taylor_shift",
    "generating_sum",
    "asymptotic_lambda",
    "asymptotic_x_leading",
]

_EPS = 2.220446049250313e-16
DEFAULT_TOL = 1e-12


def _series_cap(max_terms=None) -> int:
    if max_terms is not None:
        return int(max_terms)
    return int(os.environ.get("POLYEXP_MAX_TERMS", "10000"))


def _require_lam(lam: complex):
    if complex(lam).real <= 0:
        raise DomainError(f"Re lam must be positive, got lam = {lam}")


# ---------------------------------------------------------------------------
# gamma kernel
# ---------------------------------------------------------------------------

# Lanczos, g = 7, 9 terms
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(z: complex) -> complex:
    """Complex Gamma(z); reflection formula for Re z < 1/2.

    Raises PoleError at the non-positive integers.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == int(z.real):
        raise PoleError(f"gamma pole at z = {z.real:g}")
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * gamma_fn(1.0 - z))
    z -= 1.0
    acc = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc += c / (z + i)
    t = z + 7.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * acc


def rising_factorial(s: complex, m: int) -> complex:
    """(s)_m = s (s+1) ... (s+m-1), multiplicatively (no gamma quotients)."""
    acc = 1.0 + 0.0j
    for j in range(m):
        acc *= s + j
    return acc


# ---------------------------------------------------------------------------
# direct series
# ---------------------------------------------------------------------------


def series_tail_bound(s: complex, lam: complex, x: complex, n: int) -> float:
    """Bound on |sum_{k>n} x^k/(k! (k+lam)^s)|, valid once n >= 2|x| and the
    term ratio has dropped below 1/2.

    |x|^(n+1)/(n+1)! * max(1, (n+1+Re lam)^(-Re s)) * 2 * G with
    G = exp(|Im s| * pi / 2) absorbing the branch factor of (k+lam)^(-s)
    (Re(k+lam) > 0 keeps arguments inside (-pi/2, pi/2)).
    """
    s, lam, x = complex(s), complex(lam), complex(x)
    g = math.exp(abs(s.imag) * math.pi / 2.0)
    lead = abs(x) ** (n + 1) / math.factorial(min(n + 1, 170))
    if n + 1 > 170:  # avoid factorial overflow; continue the quotient in logs
        lead = math.exp((n + 1) * math.log(abs(x)) - math.lgamma(n + 2)) if x != 0 else 0.0
    power = max(1.0, (n + 1 + lam.real) ** (-s.real))
    return lead * power * 2.0 * g


def eval_series(s, lam, x, tol: float = DEFAULT_TOL, max_terms=None) -> EvalResult:
    """Partial sum of the defining series, stopped by the analytic tail bound.

    (n+lam)^s uses the principal branch of log(n+lam); well defined since
    Re(n+lam) > 0. The error estimate adds the rounding level of the
    accumulated terms (relevant for alternating arguments) to the bound.
    """
    s, lam, x = complex(s), complex(lam), complex(x)
    _require_lam(lam)
    if tol <= 0:
        raise DomainError("tol must be positive")
    cap = _series_cap(max_terms)

    acc = 0.0 + 0.0j
    sum_abs = 0.0
    power_term = 1.0 + 0.0j  # x^n / n!
    n = 0
    while True:
        term = power_term * cmath.exp(-s * cmath.log(n + lam))
        acc += term
        sum_abs += abs(term)
        # stopping rule: past 2|x|, ratio below 1/2 (with the power-growth
        # factor for Re s < 0), and the stated bound under tolerance
        if n >= 2.0 * abs(x):
            ratio = abs(x) / (n + 1)
            if s.real < 0:
                ratio *= (1.0 + 1.0 / (n + lam.real)) ** (-s.real)
            if ratio <= 0.5 and series_tail_bound(s, lam, x, n) <= tol:
                break
        n += 1
        if n > cap:
            raise ConvergenceError(
                f"series needs more than {cap} terms for tol={tol:g} at x={x}"
            )
        power_term *= x / n
    err = series_tail_bound(s, lam, x, n) + 2.0 * _EPS * sum_abs
    return EvalResult(acc, err, n + 1, "series")


def exp_weighted_series(s, lam, z, t, tol: float = 1e-14):
    """Stable e^(-t) * e_s(z*t, lam) for t >= 0, |z| <= ~1.

    The naked series overflows binary64 once t exceeds ~700 and, for
    oscillating z, its terms dwarf the weighted result; here every term
    carries the e^(-t) weight in log scale, so magnitudes stay bounded by
    e^((|z|-1)t). For large t*|z| only the Poisson window around n = t|z|
    is summed. Returns (value, abs_err, nterms).
    """
    s, lam, z = complex(s), complex(lam), complex(z)
    t = float(t)
    _require_lam(lam)
    if t < 0:
        raise DomainError("t must be >= 0")
    if t == 0.0 or z == 0:
        value = cmath.exp(-s * cmath.log(lam)) * math.exp(-t)
        return value, 4.0 * _EPS * abs(value), 1
    if s.imag == 0.0 and s.real <= 0.0 and s.real == int(s.real):
        # closed form e^((z-1)t) Q_p(z t, lam): the windowed sum would lose
        # everything to cancellation once (n+lam)^p amplifies the terms
        p = int(-s.real)
        value = cmath.exp((z - 1.0) * t) * complex(exact.q_poly(p)(z * t, lam))
        return value, 8.0 * _EPS * abs(value) * (p + 1), p + 1
    m = t * abs(z)
    half_width = 12.0 * math.sqrt(m) + 60.0
    n_lo = int(max(0, math.floor(m - half_width)))
    n_hi = int(math.ceil(m + half_width))
    ns = np.arange(n_lo, n_hi + 1)
    # log weights ln(t|z|^n / n!) - t, anchored with one lgamma call
    logm = math.log(m)
    if n_lo == 0:
        lgam = np.concatenate([[0.0], np.cumsum(np.log(ns[1:]))])
    else:
        base = math.lgamma(n_lo + 1)
        lgam = base + np.concatenate([[0.0], np.cumsum(np.log(ns[1:]))])
    logw = ns * logm - t - lgam
    phase = ns * cmath.phase(z)
    powers = np.exp(-s * np.log(ns + lam))
    terms = np.exp(logw + 1j * phase) * powers
    value = complex(terms.sum())
    sum_abs = float(np.abs(terms).sum())
    edge = (abs(terms[0]) + abs(terms[-1])) * len(ns)
    err = 2.0 * _EPS * sum_abs + edge
    return value, err, len(ns)


# ---------------------------------------------------------------------------
# closed form at non-positive integer order
# ---------------------------------------------------------------------------


def eval_negint(p: int, lam, x) -> complex:
    """e_{-p}(x, lam) = e^x * Q_p(x, lam), exact polynomial evaluated in binary64."""
    if p < 0:
        raise DomainError("p must be >= 0")
    lam, x = complex(lam), complex(x)
    _require_lam(lam)
    return cmath.exp(x) * complex(exact.q_poly(p)(x, lam))


# ---------------------------------------------------------------------------
# recursion route
# ---------------------------------------------------------------------------

_CHUNK = 2_000_000


def _unit_nodes(level: int):
    """tanh-sinh nodes/weights on (0, 1), exact tiny offsets at the 0 end."""
    off_a, off_b, w = _level_nodes(level, previous_only_odd=False)
    u = np.where(off_a <= off_b, 0.5 * off_a, 1.0 - 0.5 * off_b)
    keep = (u > 0.0) & (u < 1.0)
    return u[keep], 0.5 * w[keep]


def eval_via_recursion(p: int, lam, x, tol: float = 1e-10) -> EvalResult:
    """e_p(x, lam) by p nested integrations of e_{q+1} = x^-lam int t^(lam-1) e_q.

    Each level is normalized onto (0,1): e_{q+1}(x) = int_0^1 u^(lam-1)
    e_q(x u) du, the straight segment from 0 to x with principal-branch
    powers. Every recursion depth shares one tanh-sinh rule, evaluated on
    the full product grid with numpy; the rule's level is raised until two
    successive resolutions agree.
    """
    if p < 1:
        raise DomainError("recursion route needs p >= 1")
    lam, x = complex(lam), complex(x)
    _require_lam(lam)
    if x == 0:
        raise DomainError("recursion route needs x != 0")

    work = 0

    def level_value(level):
        nonlocal work
        u, w = _unit_nodes(level)
        wu = w * np.exp((lam - 1.0) * np.log(u))

        def e_rec(q, pts):
            nonlocal work
            if q == 0:
                work += pts.size
                return np.exp(pts)
            out = np.empty(pts.shape, dtype=complex)
            step = max(1, _CHUNK // max(1, u.size))
            for i in range(0, pts.size, step):
                block = pts[i : i + step]
                grid = block[:, None] * u[None, :]
                vals = e_rec(q - 1, grid.ravel()).reshape(grid.shape)
                out[i : i + step] = vals @ wu
            return out

        return complex(e_rec(p, np.array([x], dtype=complex))[0])

    prev = None
    err = math.inf
    for level in range(4, 8 if p <= 2 else 7):
        val = level_value(level)
        if prev is not None:
            err = abs(val - prev)
            if err <= max(tol, tol * abs(val)):
                return EvalResult(val, err, work, "recursion")
        prev = val
    raise ConvergenceError(f"recursion route stalled at error {err:g} (tol {tol:g})")


# ---------------------------------------------------------------------------
# Hankel contour
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HankelContourSpec:
    """Contour parameters: circle radius, ray truncation, starting node counts."""

    epsilon: float = 1.0
    truncation: float = 60.0
    nodes_ray: int = 64
    nodes_circle: int = 64

    def __post_init__(self):
        if not (0 < self.epsilon < self.truncation):
            raise ValueError("need 0 < epsilon < truncation")
        if self.nodes_ray < 8 or self.nodes_circle < 8:
            raise ValueError("node counts must be >= 8")


def default_contour(s, lam, x, tol: float = 1e-10) -> HankelContourSpec:
    """epsilon = 1 and a truncation chosen so the discarded ray tail,
    bounded via |e^(lam z)| <= e^(-Re lam * T) * e^(|x| e^(-T)), sits
    below the error target."""
    s, lam, x = complex(s), complex(lam), complex(x)
    T = max(30.0, abs(x) + abs(lam) + 30.0)
    while True:
        tail = (
            math.exp(-lam.real * T + abs(x) * math.exp(-T))
            * max(T, 1.0) ** max(s.real - 1.0, 0.0)
            * (T / lam.real)
        )
        if tail <= 0.05 * tol or T > 1e5:
            break
        T *= 1.3
    return HankelContourSpec(epsilon=1.0, truncation=T)


def _gauss_panel(f, a, b, n):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    t = mid + half * nodes
    return complex(half * np.sum(f(t) * weights))


def _hankel_raw(power, lam, kernel, contour, log_weight, tol):
    """(1/2 pi i) * integral over the contour of z^power e^(lam z) K(z) [Log z].

    Rays carry arg z = -pi (lower) and +pi (upper); the circle runs theta
    from -pi to pi, all on the principal branch. Node counts double until
    two refinements agree.
    """
    eps, T = contour.epsilon, contour.truncation
    vmax = math.log(T / eps)

    def ray_integrand(v):
        u = eps * np.exp(v)
        base = np.exp(-lam * u) * kernel(-u) * u  # du = u dv
        lower = np.exp(power * (np.log(u) - 1j * math.pi))
        upper = np.exp(power * (np.log(u) + 1j * math.pi))
        if log_weight:
            lower = lower * (np.log(u) - 1j * math.pi)
            upper = upper * (np.log(u) + 1j * math.pi)
        return base * (lower - upper)

    def circle_integrand(theta):
        z = eps * np.exp(1j * theta)
        val = np.exp(power * (math.log(eps) + 1j * theta)) * np.exp(lam * z) * kernel(z)
        if log_weight:
            val = val * (math.log(eps) + 1j * theta)
        return val * 1j * z

    n_ray, n_circ = contour.nodes_ray, contour.nodes_circle
    prev = None
    work = 0
    for _ in range(8):
        rays = _gauss_panel(ray_integrand, 0.0, vmax, n_ray)
        circ = _gauss_panel(circle_integrand, -math.pi, math.pi, n_circ)
        total = (rays + circ) / (2j * math.pi)
        work += n_ray + n_circ
        if prev is not None and abs(total - prev) <= max(tol, tol * abs(total)):
            return total, abs(total - prev), work
        prev = total
        n_ray *= 2
        n_circ *= 2
    raise ContourResolutionError(
        f"contour refinements stalled; last difference {abs(total - prev):g}"
    )


def hankel_contour_integral(s, lam, kernel, contour=None, tol: float = 1e-10) -> complex:
    """Gamma(1-s)/(2 pi i) * integral of z^(s-1) e^(lam z) kernel(z) dz over
    the contour; s must not be a positive integer. kernel receives numpy
    arrays of contour points."""
    s, lam = complex(s), complex(lam)
    if s.imag == 0.0 and s.real >= 1.0 and s.real == int(s.real):
        raise DomainError("positive integer order needs the log-weighted form")
    if contour is None:
        contour = default_contour(s, lam, 0.0, tol)
    raw, _, _ = _hankel_raw(s - 1.0, lam, kernel, contour, log_weight=False, tol=tol)
    return gamma_fn(1.0 - s) * raw


def eval_hankel(s, lam, x, contour: HankelContourSpec | None = None, tol: float = 1e-9) -> EvalResult:
    """Hankel-contour evaluation of e_s(x, lam).

    Non-integer s uses Gamma(1-s)/(2 pi i) * integral of z^(s-1) e^(lam z)
    e^(x e^z); positive integer m uses the log-weighted form with
    prefactor (-1)^m / (2 pi i (m-1)!). Near-integer non-integer s (within
    1e-8) is refused: Gamma(1-s) blows up while the contour integral
    vanishes, and binary64 cannot resolve the product.
    """
    s, lam, x = complex(s), complex(lam), complex(x)
    _require_lam(lam)
    if contour is None:
        contour = default_contour(s, lam, x, tol)
    kernel = lambda z: np.exp(x * np.exp(z))

    is_pos_int = s.imag == 0.0 and s.real >= 1.0 and s.real == int(s.real)
    if not is_pos_int and s.imag == 0.0 and s.real >= 0.5:
        nearest = round(s.real)
        if nearest >= 1 and 0 < abs(s.real - nearest) < 1e-8:
            raise ContourResolutionError(
                "s within 1e-8 of a positive integer: use the integer form"
            )

    if is_pos_int:
        m = int(s.real)
        raw, diff, work = _hankel_raw(
            float(m - 1), lam, kernel, contour, log_weight=True, tol=tol
        )
        value = raw * (-1.0) ** m / math.factorial(m - 1)
    else:
        raw, diff, work = _hankel_raw(s - 1.0, lam, kernel, contour, log_weight=False, tol=tol)
        value = gamma_fn(1.0 - s) * raw
        diff *= abs(gamma_fn(1.0 - s))

    # consistency: real parameters must give a real value
    if s.imag == 0.0 and lam.imag == 0.0 and x.imag == 0.0:
        scale = max(abs(value), 1e-30)
        if abs(value.imag) > max(1e-10, 100.0 * diff, 1e-9 * scale):
            raise ContourResolutionError(
                f"ray contributions inconsistent: spurious imaginary part {value.imag:g}"
            )
    return EvalResult(value, diff + 1e-15 * abs(value), work, "hankel")


# ---------------------------------------------------------------------------
# Taylor shift, generating sum
# ---------------------------------------------------------------------------


def taylor_shift(s, lam, z, x, terms: int, tol: float = DEFAULT_TOL) -> EvalResult:
    """Estimate e_s(x, lam - z) from sum_m (s)_m/m! e_{s+m}(x, lam) z^m.

    Requires |z| < |lam|; the tail estimate is geometric with ratio
    |z|/|lam|.
    """
    s, lam, z, x = complex(s), complex(lam), complex(z), complex(x)
    _require_lam(lam)
    if terms < 1:
        raise DomainError("terms must be >= 1")
    if abs(z) >= abs(lam):
        raise DomainError(f"Taylor shift diverges for |z| >= |lam| ({abs(z):g} >= {abs(lam):g})")
    acc = 0.0 + 0.0j
    inner_err = 0.0
    work = 0
    coeff = 1.0 + 0.0j  # (s)_m / m!
    zpow = 1.0 + 0.0j
    last = 0.0 + 0.0j
    for m in range(terms):
        inner = eval_series(s + m, lam, x, tol=max(tol / 10.0, 1e-15))
        last = coeff * inner.value * zpow
        acc += last
        inner_err += abs(coeff * zpow) * inner.abs_err_estimate
        work += inner.work
        coeff *= (s + m) / (m + 1)
        zpow *= z
    ratio = abs(z) / abs(lam)
    tail = abs(last) * ratio / (1.0 - ratio) if ratio > 0 else 0.0
    return EvalResult(acc, tail + inner_err, work, "taylor_shift")


def generating_sum(lam, x, z, terms: int, tol: float = DEFAULT_TOL) -> complex:
    """sum_{p < terms} e_p(x, lam) z^p; converges to e^x + z e_1(x, lam - z)."""
    lam, x, z = complex(lam), complex(x), complex(z)
    _require_lam(lam)
    if abs(z) >= abs(lam):
        raise DomainError(f"generating sum diverges for |z| >= |lam|")
    acc = cmath.exp(x)
    zpow = 1.0 + 0.0j
    for p in range(1, terms):
        zpow *= z
        acc += zpow * eval_series(p, lam, x, tol=max(tol / 10.0, 1e-15)).value
    return acc


# ---------------------------------------------------------------------------
# asymptotics
# ---------------------------------------------------------------------------


def asymptotic_lambda(s, lam, x, order: int) -> EvalResult:
    """Large-lam expansion e^x sum_n C(-s, n) lam^(-n-s) phi_n(x).

    C(-s, n) is the generalized binomial built multiplicatively. The error
    estimate is the magnitude of the first omitted term; the caller judges
    whether lam is large enough for the expansion to help.
    """
    if order < 0 or order > 12:
        raise DomainError("order must be in 0..12")
    s, lam, x = complex(s), complex(lam), complex(x)
    if lam == 0:
        raise DomainError("lam must be nonzero")
    ex = cmath.exp(x)
    acc = 0.0 + 0.0j
    binom = 1.0 + 0.0j  # C(-s, n)
    loglam = cmath.log(lam)
    for n in range(order + 1):
        phi_val = complex(exact.phi_poly(n)(x))
        acc += binom * cmath.exp(-(n + s) * loglam) * phi_val
        binom *= (-s - n) / (n + 1)
    omitted = binom * cmath.exp(-(order + 1 + s) * loglam) * complex(
        exact.phi_poly(order + 1)(x)
    )
    return EvalResult(ex * acc, abs(ex * omitted), order + 1, "asymptotic")


def asymptotic_x_leading(s, lam, x, sign: int) -> complex:
    """Predicted leading behaviour for large real x (diagnostic only).

    sign=+1: e^x * x^(-s) as x -> +inf; sign=-1: the decaying direction
    Gamma(lam)/Gamma(s) * (log x)^(s-1) * x^(-lam). At non-positive
    integer s the reciprocal gamma factor is zero and so is the estimate.
    """
    s, lam = complex(s), complex(lam)
    x = float(x)
    if x < 10.0:
        raise DomainError("leading-order diagnostics need x >= 10")
    if sign == 1:
        return cmath.exp(x) * cmath.exp(-s * math.log(x))
    if sign == -1:
        try:
            inv_gamma_s = 1.0 / gamma_fn(s)
        except PoleError:
            return 0.0 + 0.0j
        lx = math.log(x)
        return (
            gamma_fn(lam)
            * inv_gamma_s
            * cmath.exp((s - 1.0) * math.log(lx))
            * cmath.exp(-lam * math.log(x))
        )
    raise DomainError("sign must be +1 or -1")


# ---------------------------------------------------------------------------
# incomplete gamma, Ein
# ---------------------------------------------------------------------------


def lower_inc_gamma(lam, x) -> complex:
    """gamma(lam, x) = integral_0^x t^(lam-1) e^(-t) dt via x^lam e_1(-x, lam)."""
    lam = complex(lam)
    x = float(x)
    _require_lam(lam)
    if x < 0:
        raise DomainError("x must be >= 0")
    if x == 0.0:
        return 0.0 + 0.0j
    return cmath.exp(lam * math.log(x)) * eval_series(1.0, lam, -x).value


def ein(z) -> complex:
    """Ein(z) = sum_{k>=1} (-1)^(k-1) z^k / (k! k), entire; equals z e_2(-z)."""
    z = complex(z)
    if z == 0:
        return 0.0 + 0.0j
    acc = 0.0 + 0.0j
    zk = 1.0 + 0.0j  # z^k / k!
    k = 0
    while True:
        k += 1
        zk *= z / k
        if abs(zk) > 1e290:
            raise OverflowError(f"Ein series overflows before converging at |z| = {abs(z):g}")
        acc += (-1.0) ** (k - 1) * zk / k
        if k > abs(z) and abs(zk) / k < _EPS * max(abs(acc), 1e-300):
            return acc
        if k > 100000:
            raise ConvergenceError("Ein series did not converge")
