import math

import numpy as np
import pytest

from freebound.quadrature import (
    chebyshev_pv_zero,
    gauss_band,
    log_moment,
    plain_moment,
    pv_integral,
    tanh_sinh,
    tanh_sinh_rule,
)


def test_plain_moments():
    for m in range(5):
        num = tanh_sinh(lambda v, omv, m=m: v**m / np.sqrt(v * omv))
        assert abs(num - plain_moment(m)) < 1e-11


def test_log_moments():
    for m in range(5):
        num = tanh_sinh(lambda v, omv, m=m: v**m * np.log(v) / np.sqrt(v * omv), n=240)
        assert abs(num - log_moment(m)) < 1e-10


def test_log_moment_zero_is_minus_2pi_log2():
    assert abs(log_moment(0) + 2.0 * math.pi * math.log(2.0)) < 1e-15


def test_gauss_band_smooth():
    val = gauss_band(lambda u: np.sin(u), 0.0, math.pi)
    assert abs(val - 2.0) < 1e-12


def test_gauss_band_sqrt_edges():
    # int_0^1 sqrt(u(1-u)) du = pi/8
    val = gauss_band(lambda u: np.sqrt(u * (1.0 - u)), 0.0, 1.0)
    assert abs(val - math.pi / 8.0) < 1e-12


def test_pv_odd_kernel():
    assert pv_integral(lambda u: np.ones_like(u), -1.0, 1.0, 0.0) == pytest.approx(0.0, abs=1e-12)


def test_pv_weighted_closed_form():
    w, beta = 0.3, 1.0
    val = pv_integral(lambda u: 1.0 / ((beta + u) * np.sqrt(u * (1.0 - u))), 0.0, 1.0, w)
    exact = math.pi / ((beta + w) * math.sqrt(beta * (beta + 1.0)))
    assert abs(val - exact) < 1e-10


def test_pv_pole_outside():
    # int_0^1 du/((w-u) sqrt(u(1-u))) = pi/sqrt(w(w-1)) for w > 1
    w = 1.7
    val = pv_integral(lambda u: 1.0 / np.sqrt(u * (1.0 - u)), 0.0, 1.0, w)
    assert abs(val - math.pi / math.sqrt(w * (w - 1.0))) < 1e-10
    assert abs(chebyshev_pv_zero(w) - math.pi / math.sqrt(w * (w - 1.0))) < 1e-15
    assert chebyshev_pv_zero(0.4) == 0.0


def test_pv_rejects_endpoint_pole():
    with pytest.raises(ValueError):
        pv_integral(lambda u: np.ones_like(u), 0.0, 1.0, 1.0)


def test_tanh_sinh_rule_weights_sum():
    v, omv, w = tanh_sinh_rule(200)
    assert abs(np.sum(w) - 1.0) < 1e-13
    assert abs(np.sum(w / np.sqrt(v * omv)) - math.pi) < 1e-12
    assert np.all(v > 0) and np.all(omv > 0)


def test_pv_log_models():
    """PV of log(v) and log(1-v) against the Chebyshev weight: the closed
    forms used by the resolvent, checked here by pole-splitting."""

    def split_pv(f, w, e=1e-8):
        left = gauss_band(lambda u: f(u) / (w - u), 0.0, w - e, n=128, n_max=2048)
        right = gauss_band(lambda u: f(u) / (w - u), w + e, 1.0, n=128, n_max=2048)
        return left + right

    for w in (0.23, 0.5, 0.81):
        model0 = -2.0 * math.pi / math.sqrt(w * (1.0 - w)) * math.atan(math.sqrt((1.0 - w) / w))
        model1 = 2.0 * math.pi / math.sqrt(w * (1.0 - w)) * math.atan(math.sqrt(w / (1.0 - w)))
        num0 = split_pv(lambda u: np.log(u) / np.sqrt(u * (1.0 - u)), w)
        num1 = split_pv(lambda u: np.log(1.0 - u) / np.sqrt(u * (1.0 - u)), w)
        assert abs(num0 - model0) < 5e-6
        assert abs(num1 - model1) < 5e-6
