"""Quadrature engines.

A level-doubling tanh-sinh (double-exponential) rule for finite intervals,
able to absorb integrable endpoint singularities, plus the semi-infinite
driver used by the transform layer: double-exponential core on
(0, split), then a tail handled under the integrand's declared decay
envelope. Exponential envelopes get a truncated log-space integration
with an explicit remainder bound; pure power-law envelopes get a
Richardson ladder over doubling truncation points, since no binary64
truncation point is far enough out on its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .result import EvalResult, QuadratureError

_HALF_PI = math.pi / 2.0
_U_MAX = 5.5  # tanh-sinh truncation; weights are ~1e-160 here


def _level_nodes(level: int, previous_only_odd: bool):
    """tanh-sinh abscissae for mesh h = 2^-level on [-1, 1].

    Returns (offset_a, offset_b, weight) arrays where offset_a = 1 + x and
    offset_b = 1 - x are computed in a cancellation-free form, so endpoint
    distances stay meaningful down to ~1e-160.
    """
    h = 2.0 ** (-level)
    if previous_only_odd and level > 0:
        j = np.arange(1, int(_U_MAX / h) + 1, 2)
    else:
        j = np.arange(0, int(_U_MAX / h) + 1)
    u = j * h
    v = _HALF_PI * np.sinh(u)
    w = h * _HALF_PI * np.cosh(u) / np.cosh(v) ** 2
    # 1 -+ tanh(v) without cancellation
    far = 2.0 / (np.exp(2.0 * v) + 1.0)  # 1 - tanh(v)
    near = 2.0 - far  # 1 + tanh(v)
    # mirror to negative u; node at u=0 must not be duplicated
    if not previous_only_odd or level == 0:
        mask = j > 0
        off_a = np.concatenate([far[mask][::-1], near])
        off_b = np.concatenate([near[mask][::-1], far])
        weight = np.concatenate([w[mask][::-1], w])
    else:
        off_a = np.concatenate([far[::-1], near])
        off_b = np.concatenate([near[::-1], far])
        weight = np.concatenate([w[::-1], w])
    return off_a, off_b, weight


def tanh_sinh(
    f: Callable,
    a: float,
    b: float,
    tol: float = 1e-12,
    max_level: int = 11,
    min_level: int = 3,
    vectorized: bool = False,
):
    """Integrate f over [a, b] by level-doubling tanh-sinh quadrature.

    Returns (value, err_estimate, nevals, converged). The integrand may
    return complex values and may blow up at either endpoint as long as
    the singularity is integrable; nodes never land exactly on a or b.
    """
    if b == a:
        return 0.0 + 0.0j, 0.0, 0, True
    r = 0.5 * (b - a)

    def evaluate(level, only_odd):
        off_a, off_b, weight = _level_nodes(level, only_odd)
        t = np.where(off_a <= off_b, a + r * off_a, b - r * off_b)
        keep = (t > a) & (t < b)
        t, weight = t[keep], weight[keep]
        if vectorized:
            vals = np.asarray(f(t), dtype=complex)
        else:
            vals = np.array([f(float(ti)) for ti in t], dtype=complex)
        bad = ~np.isfinite(vals)
        if bad.any():
            vals = np.where(bad, 0.0, vals)
        return complex(np.sum(vals * weight)), len(t)

    total, nev = evaluate(min_level, only_odd=False)
    value = r * total
    err = math.inf
    for level in range(min_level + 1, max_level + 1):
        extra, n2 = evaluate(level, only_odd=True)
        new_value = 0.5 * value + r * extra
        nev += n2
        err = abs(new_value - value)
        value = new_value
        if err <= max(tol, tol * abs(value)):
            return value, err, nev, True
    return value, err, nev, False


@dataclass(frozen=True)
class QuadratureSpec:
    """Targets for the semi-infinite driver."""

    target_tol: float = 1e-10
    max_refinements: int = 16
    split_point: float = 10.0

    def __post_init__(self):
        if self.target_tol <= 0:
            raise ValueError("target_tol must be positive")
        if not (0 < self.max_refinements <= 30):
            raise ValueError("max_refinements must be in 1..30")
        if self.split_point <= 0:
            raise ValueError("split_point must be positive")


@dataclass
class IntegrandHandle:
    """An integrand on (0, inf) with its declared decay envelope.

    |f(t)| <= C * t^envelope_power * exp(-envelope_rate * t) for large t,
    with C estimated by sampling. envelope_rate may be 0 only when
    envelope_power < -1 (integrable power-law tail); in that case
    tail_exponent, when given, is the exact complex decay exponent sigma
    with f ~ t^-sigma used by the tail extrapolation ladder.
    singularity_alpha declares the worst allowed behaviour t^(alpha-1)
    at the origin.
    """

    f: Callable
    envelope_rate: float
    envelope_power: float = 0.0
    singularity_alpha: float = 1.0
    tail_exponent: Optional[complex] = None
    vectorized: bool = False

    def __post_init__(self):
        if self.envelope_rate < 0:
            raise ValueError("envelope_rate must be >= 0")
        if self.envelope_rate == 0 and self.envelope_power >= -1:
            raise ValueError("power-law tails need envelope_power < -1")
        if self.singularity_alpha <= 0:
            raise ValueError("singularity_alpha must be positive")


def _envelope_constant(handle: IntegrandHandle, split: float) -> float:
    probes = [split, 1.5 * split, 2.5 * split, 4.0 * split]
    c = 0.0
    for t in probes:
        ref = t**handle.envelope_power * math.exp(-handle.envelope_rate * t)
        if ref == 0.0:
            continue
        c = max(c, abs(complex(handle.f(np.array([t]))[0] if handle.vectorized else handle.f(t))) / ref)
    return 2.0 * c  # safety factor


def _exp_tail_bound(c: float, rate: float, power: float, T: float) -> float:
    """Bound for integral of C t^power e^(-rate t) over (T, inf)."""
    if c == 0.0:
        return 0.0
    slack = 1.0 - power / (rate * T) if power > 0 else 1.0
    if slack <= 0.1:
        return math.inf
    return c * T**power * math.exp(-rate * T) / (rate * slack)


def _log_panel(handle: IntegrandHandle, t0: float, t1: float, tol: float, max_level: int):
    """Integrate f over [t0, t1] after the substitution t = t0 * e^v."""
    vmax = math.log(t1 / t0)
    if handle.vectorized:
        g = lambda v: handle.f(t0 * np.exp(v)) * t0 * np.exp(v)
    else:
        g = lambda v: handle.f(t0 * math.exp(v)) * t0 * math.exp(v)
    return tanh_sinh(g, 0.0, vmax, tol, max_level=max_level, vectorized=handle.vectorized)


def _richardson_tail(handle: IntegrandHandle, core: complex, split: float, spec: QuadratureSpec):
    """Power-law tails: extrapolate I(T_j) over T_j = split * 2^j.

    With f ~ C t^-sigma (Re sigma > 1) the partial integrals satisfy
    I(inf) - I(T) = T^(1-sigma) * (b0 + b1/T + ...), so a Richardson
    ladder with exponents sigma - 1 + i converges fast.
    """
    sigma = handle.tail_exponent
    if sigma is None:
        sigma = complex(-handle.envelope_power)
    tol = spec.target_tol
    n_points = min(spec.max_refinements, 9)
    partials = []
    work = 0
    inner_err = 0.0
    current = core
    t_lo = split
    for j in range(n_points):
        t_hi = t_lo * 2.0
        val, err, nev, ok = _log_panel(handle, t_lo, t_hi, tol / (6 * n_points), max_level=10)
        if not ok:
            raise QuadratureError("tail panel failed to converge")
        current += val
        partials.append(current)
        inner_err += err
        work += nev
        t_lo = t_hi
    # Richardson ladder, ratio 2, exponent ladder sigma-1, sigma, sigma+1, ...
    rows = [list(partials)]
    stages = min(len(partials) - 1, 6)
    for i in range(stages):
        mu = sigma - 1.0 + i
        factor = 2.0**mu - 1.0
        prev = rows[-1]
        rows.append([prev[j + 1] + (prev[j + 1] - prev[j]) / factor for j in range(len(prev) - 1)])
    best = rows[-1][-1]
    second = rows[-2][-1]
    err = abs(best - second) + inner_err
    return best, err, work


def quad_semiinfinite(handle: IntegrandHandle, spec: QuadratureSpec) -> EvalResult:
    """Integrate handle.f over (0, inf).

    Core interval (0, split_point) by tanh-sinh; the tail by log-space
    tanh-sinh out to a truncation point justified by the envelope, with
    the envelope remainder added to the error estimate. Power-law
    envelopes (rate 0) use the extrapolation ladder instead, since the
    remainder bound alone would force absurd truncation points.
    """
    tol = spec.target_tol
    split = spec.split_point
    max_level = min(4 + spec.max_refinements, 12)
    core, core_err, work, ok = tanh_sinh(
        handle.f, 0.0, split, tol / 4, max_level=max_level, vectorized=handle.vectorized
    )
    if not ok:
        raise QuadratureError("core interval did not converge")

    if handle.envelope_rate > 0.0:
        c = _envelope_constant(handle, split)
        T = split * 2.0
        rate, power = handle.envelope_rate, handle.envelope_power
        hops = 0
        while _exp_tail_bound(c, rate, power, T) > tol / 4 and hops < 60:
            T *= 1.5
            hops += 1
        if hops >= 60:
            raise QuadratureError("could not place the tail truncation point")
        tail, tail_err, nev, ok = _log_panel(handle, split, T, tol / 4, max_level=max_level)
        if not ok:
            raise QuadratureError("tail integration did not converge")
        remainder = _exp_tail_bound(c, rate, power, T)
        return EvalResult(core + tail, core_err + tail_err + remainder, work + nev, "quadrature")

    value, tail_err, nev = _richardson_tail(handle, core, split, spec)
    return EvalResult(value, core_err + tail_err, work + nev, "quadrature+tail_extrapolation")
