"""h-series family: closed forms, route agreement, Borel probes, asymptotics."""

import cmath
import math
from fractions import Fraction

import pytest

from polyexp import core, series, transforms
from polyexp.exact import phi_poly
from polyexp.result import DomainError
from polyexp.series import (
    HSeriesParams,
    borel_probe,
    h1_closed,
    h_asymptotic_lambda,
    h_direct,
    h_neg_alt_eval,
    h_neg_eval,
    h_neg_poly_forms,
    h_quadrature,
)

E = math.e


def brute_h(s, lam, w, x, n_terms=30):
    acc = 0.0 + 0.0j
    fact = 1.0
    prefix = 0.0 + 0.0j
    wpow = 1.0 + 0.0j
    for n in range(1, n_terms + 1):
        prefix += wpow * (lam + n - 1) ** -complex(s)
        wpow *= w
        fact *= n
        acc += complex(x) ** n / fact * prefix
    return acc


# -- direct route -------------------------------------------------------------


def test_h_direct_empty():
    res = h_direct(HSeriesParams(1, 1, 1, 0))
    assert res.value == 0 and res.work == 0


def test_h_direct_harmonic_generating_function():
    res = h_direct(HSeriesParams(1, 1, 1, 1), tol=1e-13)
    assert abs(res.value - brute_h(1, 1, 1, 1, 30)) < 1e-12


def test_h_direct_spec_value_27e4():
    # (1/4) e (1 + 8 + 14 + 4) = 27e/4
    res = h_direct(HSeriesParams(-3, 1, 1, 1), tol=1e-13)
    assert abs(res.value - 27.0 * E / 4.0) < 1e-12


def test_h_direct_params_validated():
    with pytest.raises(DomainError):
        HSeriesParams(1, -1, 1, 1)
    with pytest.raises(DomainError):
        HSeriesParams(1, 1, 1.5, 1)


@pytest.mark.parametrize("s", [1.0, 2.0, -2.0])
@pytest.mark.parametrize("lam", [1.0, 1.5])
@pytest.mark.parametrize("w", [1.0, -1.0, 0.5])
@pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
def test_h_route_agreement(s, lam, w, x):
    a = h_direct(HSeriesParams(s, lam, w, x), tol=1e-12)
    b = h_quadrature(HSeriesParams(s, lam, w, x), tol=1e-10)
    assert abs(a.value - b.value) < 1e-8


def test_h_quadrature_empty():
    assert h_quadrature(HSeriesParams(2, 1, 1, 0)).value == 0


def test_h_quadrature_complex_segment():
    params = HSeriesParams(2.0, 1.0, 0.5, 1.0 + 0.5j)
    a = h_direct(params, tol=1e-13)
    b = h_quadrature(params, tol=1e-10)
    assert abs(a.value - b.value) < 1e-8


# -- closed forms ---------------------------------------------------------------


def test_h1_closed_at_w1_is_ein_form():
    got = h1_closed(1.0, 1.0)
    assert abs(got - E * core.ein(1.0)) < 1e-14
    ref = h_direct(HSeriesParams(1, 1, 1, 1), tol=1e-13)
    assert abs(got - ref.value) < 1e-10


def test_h1_closed_at_zero():
    assert h1_closed(0.5, 0.0) == 0


@pytest.mark.parametrize("w", [1.0, -1.0, 0.5, 0.5j])
@pytest.mark.parametrize("x", [0.5, 1.0])
def test_h1_closed_matches_direct(w, x):
    got = h1_closed(w, x)
    ref = h_direct(HSeriesParams(1.0, 1.0, w, x), tol=1e-13)
    assert abs(got - ref.value) < 1e-9


def test_h1_closed_rejects_zero_w():
    with pytest.raises(DomainError):
        h1_closed(0.0, 1.0)


def test_h_neg_eval_values():
    # g_3(1) = 27/4 exactly at the polynomial level
    from polyexp.exact import h_neg_closed_poly

    assert h_neg_closed_poly(3)(Fraction(1)) == Fraction(27, 4)
    assert abs(h_neg_eval(3, 1.0) - 27.0 * E / 4.0) < 1e-12
    assert abs(h_neg_eval(0, 1.0) - E) < 1e-13  # sum n x^n/n! = x e^x at x=1
    assert abs(h_neg_eval(2, 2.0) - brute_h(-2, 1, 1, 2.0, 35)) < 1e-10


@pytest.mark.parametrize("p", range(0, 11))
def test_h_neg_two_assemblies_coincide(p):
    direct, via_phi = h_neg_poly_forms(p)
    assert direct == via_phi


@pytest.mark.parametrize("p", [1, 2, 3])
@pytest.mark.parametrize("x", [0.5, 1.0])
def test_h_neg_alt_eval_matches_series(p, x):
    got = h_neg_alt_eval(p, x)
    ref = brute_h(-p, 1.0, -1.0, x, 30)
    assert abs(got.value - ref) < 1e-9


def test_h_neg_alt_eval_at_zero():
    assert abs(h_neg_alt_eval(2, 0.0).value) < 1e-15


def test_h_neg_alt_eval_p0_refused():
    with pytest.raises(DomainError):
        h_neg_alt_eval(0, 1.0)
    # p = 0 belongs to h_direct: sum x^n/n! (1-1+1-...) has Borel value
    res = h_direct(HSeriesParams(0, 1, -1, 1.0), tol=1e-12)
    assert abs(res.value - brute_h(0, 1, -1, 1.0, 30)) < 1e-11


# -- Borel probes ------------------------------------------------------------------


def test_borel_zeta2_trend():
    pts = borel_probe(2.0, 1.0, 1.0, [10.0, 20.0, 40.0])
    errs = [abs(p.scaled_value - p.target) for p in pts]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 0.05
    assert abs(pts[0].target - math.pi**2 / 6) < 1e-8


def test_borel_eta_half_trend():
    pts = borel_probe(0.5, 1.0, -1.0, [10.0, 20.0, 40.0])
    errs = [abs(p.scaled_value - p.target) for p in pts]
    assert errs[0] > errs[1] > errs[2]


def test_borel_lerch_target():
    pts = borel_probe(2.0, 1.0, 0.5, [5.0, 10.0])
    ref = transforms.lerch_phi(0.5, 2.0, 1.0, tol=1e-10).value
    assert abs(pts[0].target - ref) < 1e-12
    assert abs(pts[1].scaled_value - ref) < abs(pts[0].scaled_value - ref)


def test_borel_domain_guards():
    with pytest.raises(DomainError):
        borel_probe(0.5, 1.0, 1.0, [10.0])  # w = 1 needs Re s > 1
    with pytest.raises(DomainError):
        borel_probe(2.0, 1.0, cmath.exp(0.3j), [10.0])  # |w| = 1 off axis
    with pytest.raises(DomainError):
        borel_probe(2.0, 1.0, 1.0, [10.0, 800.0])  # overflow cap
    with pytest.raises(DomainError):
        borel_probe(2.0, 1.0, 1.0, [20.0, 10.0])  # not ascending


# -- ODE relation -----------------------------------------------------------------


@pytest.mark.parametrize(
    "s,lam,w,x",
    [
        (1.0, 1.0, 1.0, 0.5),
        (2.0, 1.5, -1.0, 1.0),
        (0.5, 1.0, 0.5, 0.7),
        (-2.0, 1.0, 1.0, 1.2),
        (2.0, 1.0, 1.0, 2.0),
        (1.0, 2.0, -1.0, 0.3),
    ],
)
def test_h_ode_relation(s, lam, w, x):
    # d/dx h - h = e_s(x w, lam)
    h = 1e-5
    up = h_direct(HSeriesParams(s, lam, w, x + h), tol=1e-13).value
    dn = h_direct(HSeriesParams(s, lam, w, x - h), tol=1e-13).value
    mid = h_direct(HSeriesParams(s, lam, w, x), tol=1e-13).value
    lhs = (up - dn) / (2 * h) - mid
    rhs = core.eval_series(s, lam, w * x, tol=1e-13).value
    assert abs(lhs - rhs) < 1e-5


# -- asymptotics --------------------------------------------------------------------


def test_h_asymptotic_order0():
    res = h_asymptotic_lambda(2.0, 50.0, 1.0, 0)
    assert abs(res.value - E * 1.0 * 50.0**-2.0) <= res.abs_err_estimate + 1e-15


def test_h_asymptotic_within_estimate():
    ref = h_direct(HSeriesParams(2.0, 40.0, 1.0, 1.0), tol=1e-14).value
    for order in range(4):
        res = h_asymptotic_lambda(2.0, 40.0, 1.0, order)
        assert abs(res.value - ref) <= res.abs_err_estimate, order


def test_h_asymptotic_improves_with_order():
    ref = h_direct(HSeriesParams(1.0, 25.0, 1.0, 0.5), tol=1e-14).value
    errs = [abs(h_asymptotic_lambda(1.0, 25.0, 0.5, k).value - ref) for k in range(6)]
    assert all(errs[i + 1] < errs[i] for i in range(5))


# -- cross-module: Mellin representation of Gamma(s) h_s ------------------------------


@pytest.mark.parametrize("s,lam,x", [(2.0, 1.0, 1.0), (3.0, 2.0, -1.0)])
def test_h_mellin_representation_cross_route(s, lam, x):
    res = transforms.h_mellin_representation(s, lam, x, tol=1e-10)
    ref = h_direct(HSeriesParams(s, lam, 1.0, x), tol=1e-13)
    expect = core.gamma_fn(s) * ref.value
    assert abs(res.value - expect) < 1e-8
