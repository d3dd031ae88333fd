"""Integral transforms built on the polyexponential.

The Laplace-type identities evaluated here:

  Phi(x, s, lam)  = integral_0^inf e_s(t x, lam) e^(-t) dt      (|x| < 1, or
                    |x| <= 1 with Re s > 1)
  zeta(s, lam)    = the same at x = 1 (Re s > 1)
  eta(s, lam)     = integral_0^inf e_s(-t, lam) e^(-t) dt       (all s)
  zeta(s)         = eta(s, 1) / (1 - 2^(1-s))                   (s != 1)

plus the Mellin-transform identities: the transform of e_p(-x, lam) equals
Gamma(s)/(lam-s)^p on the strip 0 < Re s < Re lam, the vanishing moments
of e^(-x) Q_p(-x, lam) at s = lam, Gamma(s) e_s(x, lam) as a Mellin
integral in s, and the corresponding representation of Gamma(s) h_s.

Every weighted integrand e^(-t) e_s(z t, lam) is evaluated through the
log-scaled series (core.exp_weighted_series) at one-hundredth of the outer
tolerance, so neither e^t overflow nor alternating-series cancellation can
contaminate quadrature nodes.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from . import core, exact
from .quadrature import IntegrandHandle, QuadratureSpec, quad_semiinfinite, tanh_sinh
from .result import ConditioningError, DomainError, EvalResult, PoleError, QuadratureError

__all__ = [
    "QuadratureSpec",
    "IntegrandHandle",
    "quad_semiinfinite",
    "lerch_phi",
    "hurwitz_zeta",
    "eta",
    "riemann_zeta",
    "mellin_transform_polyexp",
    "vanishing_moment",
    "mellin_s_representation",
    "h_mellin_representation",
    "lerch_series",
    "eta_alternating_series",
]


def _split_point(weight_scale: float, lam: complex) -> float:
    """Core/tail split: max(10, 5|x| + |lam|) for weight argument x."""
    return max(10.0, 5.0 * weight_scale + abs(lam))


def _laplace_weighted(s, lam, z, tol):
    """integral_0^inf e^(-t) e_s(z t, lam) dt with envelope chosen from z."""
    s, lam, z = complex(s), complex(lam), complex(z)
    inner_tol = tol / 100.0

    def f(t):
        return core.exp_weighted_series(s, lam, z, t, inner_tol)[0]

    split = _split_point(abs(z), lam)
    if z == 1.0:
        # pure power-law tail t^(-s): extrapolation ladder
        handle = IntegrandHandle(
            f=f,
            envelope_rate=0.0,
            envelope_power=min(-s.real, -1.001),
            tail_exponent=s,
        )
    else:
        rate = 1.0 - max(z.real, 0.0)
        handle = IntegrandHandle(
            f=f, envelope_rate=rate, envelope_power=max(0.0, -s.real)
        )
    spec = QuadratureSpec(target_tol=tol, split_point=split)
    return quad_semiinfinite(handle, spec)


def lerch_phi(x, s, lam, tol: float = 1e-10) -> EvalResult:
    """Lerch transcendent Phi(x, s, lam) = sum x^n/(n+lam)^s as a Laplace
    integral of the polyexponential.

    Domain: |x| < 1 for any s, or |x| <= 1 with Re s > 1.
    """
    x, s, lam = complex(x), complex(s), complex(lam)
    if lam.real <= 0:
        raise DomainError("Re lam must be positive")
    if abs(x) >= 1.0 + 1e-14 or (abs(x) > 1.0 - 1e-14 and s.real <= 1.0):
        raise DomainError(
            f"lerch_phi needs |x| < 1, or |x| <= 1 with Re s > 1; got x={x}, s={s}"
        )
    if x == 0:
        value = cmath.exp(-s * cmath.log(lam))
        return EvalResult(value, 1e-16 * abs(value), 1, "closed_form")
    return _laplace_weighted(s, lam, x, tol)


def hurwitz_zeta(s, lam, tol: float = 1e-10) -> EvalResult:
    """zeta(s, lam) as integral_0^inf e_s(t, lam) e^(-t) dt, Re s > 1 only.

    The integrand decays like t^(-Re s): the representation simply does not
    converge for Re s <= 1, so that region is refused.
    """
    s, lam = complex(s), complex(lam)
    if s.real <= 1.0:
        raise DomainError("hurwitz_zeta integral converges only for Re s > 1")
    if lam.real <= 0:
        raise DomainError("Re lam must be positive")
    return _laplace_weighted(s, lam, 1.0, tol)


def eta(s, lam, tol: float = 1e-10) -> EvalResult:
    """eta(s, lam) = integral_0^inf e_s(-t, lam) e^(-t) dt, entire in s.

    The integrand decays like t^(-Re lam) (log t)^(Re s - 1) e^(-t), so the
    integral converges for every complex s.
    """
    s, lam = complex(s), complex(lam)
    if lam.real <= 0:
        raise DomainError("Re lam must be positive")
    return _laplace_weighted(s, lam, -1.0, tol)


def riemann_zeta(s, tol: float = 1e-10, method: str = "auto") -> EvalResult:
    """zeta(s) from eta(s,1)/(1 - 2^(1-s)); method="laplace" uses the direct
    integral of e_s(t) e^(-t) instead (Re s > 1 only).

    Refuses s = 1 and points where |1 - 2^(1-s)| < 1e-3 (the prefactor
    would amplify the quadrature error out of control).
    """
    s = complex(s)
    if s == 1.0:
        raise PoleError("zeta pole at s = 1")
    if method not in ("auto", "eta", "laplace"):
        raise DomainError(f"unknown method {method!r}")
    if method == "laplace":
        return hurwitz_zeta(s, 1.0, tol)
    denom = 1.0 - 2.0 ** complex(1.0 - s)
    if abs(denom) < 1e-3:
        raise ConditioningError(
            f"1 - 2^(1-s) = {denom:g}: eta route ill-conditioned this close to a zero"
        )
    base = eta(s, 1.0, tol * abs(denom))
    return EvalResult(
        base.value / denom,
        base.abs_err_estimate / abs(denom),
        base.work,
        base.method,
    )


# ---------------------------------------------------------------------------
# Mellin transform of e_p(-x, lam)
# ---------------------------------------------------------------------------


def _polyexp_neg_large_x(p: int, lam: complex, x: float, tol: float) -> complex:
    """e_p(-x, lam) for large x > 0, p >= 1, without cancellation.

    Gamma(p) e_p(-x, lam) = integral_0^inf t^(p-1) e^(-lam t) e^(-x e^(-t)) dt.
    Substituting t = log x + v and pulling x^(-lam) out front leaves an
    O(1)-scaled bump supported on v in (-7, ~40/Re lam) whatever the size
    of x (the e^(-e^(-v)) factor is identically zero in binary64 below
    v = -7), so the inner rule needs no x-dependent tolerance gymnastics.
    """
    lx = math.log(x)

    def g(v):
        return np.exp(-lam * v) * np.exp(-np.exp(-v)) * (v + lx) ** (p - 1)

    scale = max(1.0, lx) ** (p - 1)
    v_lo = max(-7.0, -lx)
    v_hi = 10.0 / max(lam.real, 0.05)
    while (p - 1) * math.log(v_hi + lx) - lam.real * v_hi > math.log(tol * scale) - 3.0:
        v_hi *= 1.3
    val, _, _, ok = tanh_sinh(g, v_lo, v_hi, tol * scale, max_level=11, vectorized=True)
    if not ok:
        raise QuadratureError("inner large-x polyexponential quadrature stalled")
    return cmath.exp(-lam * lx) * val / core.gamma_fn(float(p))


_X_SWITCH = 10.0  # below: direct series; above: the flipped integral


def _polyexp_neg(p: int, lam: complex, x: float, tol: float) -> complex:
    if p == 0:
        return math.exp(-x)
    if x <= _X_SWITCH:
        return core.eval_series(float(p), lam, -x, tol=tol).value
    return _polyexp_neg_large_x(p, lam, x, tol)


def mellin_transform_polyexp(s, p: int, lam, tol: float = 1e-9) -> EvalResult:
    """integral_0^inf x^(s-1) e_p(-x, lam) dx on the strip 0 < Re s < Re lam.

    Must equal Gamma(s)/(lam - s)^p. Evaluated in the log variable
    x = e^u, where both tails decay exponentially (rates Re s on the left
    and Re(lam - s) on the right); e_p(-x, lam) at large x comes from its
    own positive-integrand representation, since the alternating series is
    hopeless there.
    """
    s, lam = complex(s), complex(lam)
    if p < 0:
        raise DomainError("p must be >= 0")
    if not (0.0 < s.real < lam.real):
        raise DomainError(f"need 0 < Re s < Re lam, got s={s}, lam={lam}")
    inner_tol = tol / 50.0

    def g(u):
        x = math.exp(u)
        return cmath.exp(s * u) * _polyexp_neg(p, lam, x, inner_tol)

    # truncation points from the exponential envelopes in u
    u_mid = math.log(_X_SWITCH)
    u_left = -(-math.log(tol / 6.0) + abs(p) * 2.0 + 5.0) / s.real
    rate_right = lam.real - s.real
    u_right = (-math.log(tol / 6.0) + 5.0) / rate_right
    while (p - 1) * math.log(max(u_right, 2.0)) - rate_right * u_right > math.log(tol / 6.0):
        u_right *= 1.3

    work = 0
    total = 0.0 + 0.0j
    err = 0.0
    for a, b in ((u_left, u_mid), (u_mid, u_right)):
        val, e, nev, ok = tanh_sinh(g, a, b, tol / 4.0, max_level=10)
        if not ok:
            raise QuadratureError("mellin transform panel stalled")
        total += val
        err += e
        work += nev
    return EvalResult(total, err + tol / 3.0, work, "quadrature")


def vanishing_moment(p: int, lam, tol: float = 1e-9) -> EvalResult:
    """integral_0^inf x^(lam-1) e^(-x) Q_p(-x, lam) dx; identically zero for
    p >= 1 (the s = lam endpoint of the Mellin strip)."""
    if p < 1:
        raise DomainError("vanishing moments are stated for p >= 1")
    lam = complex(lam)
    if lam.real <= 0:
        raise DomainError("Re lam must be positive")
    # collapse Q_p at this lam once: coefficients in x
    q = exact.q_poly(p)
    coeffs = [
        complex(sum(float(c.numerator) / float(c.denominator) * lam**j for j, c in enumerate(row)))
        for row in q.rows
    ]

    def qval(x):
        acc = 0.0 + 0.0j
        for c in reversed(coeffs):
            acc = acc * (-x) + c
        return acc

    def f(x):
        return cmath.exp((lam - 1.0) * math.log(x)) * math.exp(-x) * qval(x)

    handle = IntegrandHandle(
        f=f,
        envelope_rate=1.0,
        envelope_power=float(p) + lam.real - 1.0,
        singularity_alpha=lam.real,
    )
    spec = QuadratureSpec(target_tol=tol, split_point=_split_point(1.0, lam))
    return quad_semiinfinite(handle, spec)


def mellin_s_representation(s, lam, x, tol: float = 1e-10) -> EvalResult:
    """integral_0^inf t^(s-1) e^(-lam t) e^(x e^(-t)) dt = Gamma(s) e_s(x, lam),
    for Re s > 0."""
    s, lam, x = complex(s), complex(lam), complex(x)
    if s.real <= 0:
        raise DomainError("need Re s > 0")
    if lam.real <= 0:
        raise DomainError("Re lam must be positive")

    def f(t):
        return cmath.exp((s - 1.0) * math.log(t)) * cmath.exp(-lam * t) * cmath.exp(
            x * math.exp(-t)
        )

    handle = IntegrandHandle(
        f=f,
        envelope_rate=lam.real,
        envelope_power=max(s.real - 1.0, 0.0),
        singularity_alpha=s.real,
    )
    spec = QuadratureSpec(target_tol=tol, split_point=_split_point(abs(x), lam))
    return quad_semiinfinite(handle, spec)


def h_mellin_representation(s, lam, x, tol: float = 1e-10) -> EvalResult:
    """integral_0^inf t^(s-1) e^(-lam t) [e^x - e^(x e^(-t))]/(1 - e^(-t)) dt,
    which equals Gamma(s) h_s(x, lam) for Re s > 1.

    The t -> 0 singularity of the bracket/(1 - e^(-t)) pair is removable;
    expm1 keeps the quotient fully accurate down to t = 0, so no series
    switch is needed.
    """
    s, lam = complex(s), complex(lam)
    x = float(x)
    if s.real <= 1:
        raise DomainError("need Re s > 1")
    if lam.real <= 0:
        raise DomainError("Re lam must be positive")
    ex = math.exp(x)

    def f(t):
        quotient = ex * math.expm1(x * math.expm1(-t)) / math.expm1(-t)
        return cmath.exp((s - 1.0) * math.log(t)) * cmath.exp(-lam * t) * quotient

    handle = IntegrandHandle(
        f=f,
        envelope_rate=lam.real,
        envelope_power=max(s.real - 1.0, 0.0),
        singularity_alpha=s.real - 1.0 if s.real < 2 else 1.0,
    )
    spec = QuadratureSpec(target_tol=tol, split_point=_split_point(abs(x), lam))
    return quad_semiinfinite(handle, spec)


# ---------------------------------------------------------------------------
# series cross-check routes (used by the identity suites)
# ---------------------------------------------------------------------------


def lerch_series(x, s, lam, tol: float = 1e-12, max_terms: int = 2_000_000) -> complex:
    """Direct sum of x^n/(n+lam)^s for |x| < 1, geometric tail bound."""
    x, s, lam = complex(x), complex(s), complex(lam)
    if abs(x) >= 1:
        raise DomainError("direct Lerch series needs |x| < 1")
    acc = 0.0 + 0.0j
    xn = 1.0 + 0.0j
    n = 0
    while True:
        term = xn * cmath.exp(-s * cmath.log(n + lam))
        acc += term
        if n > 4 and abs(term) / (1.0 - abs(x)) < tol:
            return acc
        xn *= x
        n += 1
        if n > max_terms:
            raise QuadratureError("lerch series did not reach tolerance")


def eta_alternating_series(s, lam, direct_terms: int = 40, euler_terms: int = 40) -> complex:
    """sum (-1)^n (n+lam)^(-s) with Euler acceleration of the tail.

    Needs Re s > 0 for ordinary convergence (the acceleration extends the
    practical range but this helper is only used as a cross-check there).
    """
    s, lam = complex(s), complex(lam)
    acc = 0.0 + 0.0j
    for n in range(direct_terms):
        acc += (-1.0) ** n * cmath.exp(-s * cmath.log(n + lam))
    # Euler transform of the remainder sum_{j>=0} (-1)^j b_j
    b = np.array(
        [
            cmath.exp(-s * cmath.log(direct_terms + j + lam))
            for j in range(euler_terms)
        ],
        dtype=complex,
    )
    sign = (-1.0) ** direct_terms
    euler = 0.0 + 0.0j
    for k in range(euler_terms - 1):
        euler += (-1.0) ** k * b[0] / 2.0 ** (k + 1)
        b = b[1:] - b[:-1]  # forward difference
    return acc + sign * euler
