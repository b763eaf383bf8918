import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from su11 import sampling
from su11.errors import DomainError
from su11.gwflow import (
    S_SWITCH, FlowConfig, field_factor, flow_array, gw_field_closed_form,
    gw_field_hyp, gw_field_rect, gw_flow, lie_derivative_residual, pi_dot_coefficient,
    pi_dot_tensor, pi_t_tensor, scaled_field, verify_gw, verify_gw_batch,
)
from su11.spaces import HypCoords, QStarPoint, hyp_of_rect, rect_of_hyp
from su11.tensors import PI0, PI_ADM, Chart, tensor_at

from conftest import admissible_qstar


def _pi0(p):
    return tensor_at(PI0, Chart.RECT_QSTAR, p)


# -- pi_t and its derivative ------------------------------------------------

def test_pi_t_at_one_and_near_zero():
    p = QStarPoint(0.1, 0.2, 1.0)
    assert pi_t_tensor(1.0, p).dist(tensor_at(PI_ADM, None, p)) == 0
    # t lam coth(t lam) + t z = 1 + t z + O(t^2): the leading correction is linear
    t = 1e-6
    diff = pi_t_tensor(t, p).triple() - _pi0(p).triple()
    assert np.max(np.abs(diff - t * p.z * _pi0(p).triple())) < 1e-11


def test_pi_t_difference_is_first_order():
    p = QStarPoint(0.3, 0.4, 1.0)
    d = [pi_t_tensor(t, p).dist(_pi0(p)) for t in (1e-2, 1e-3)]
    assert d[0] / d[1] == pytest.approx(10, rel=0.02)


@given(admissible_qstar(), st.floats(0.01, 2.0))
def test_pi_t_is_rescaled_pi(p, t):
    direct = tensor_at(PI_ADM, None, QStarPoint(*(t * p.as_array()))).triple() / t
    assert np.max(np.abs(pi_t_tensor(t, p).triple() - direct)) < 1e-13 * max(1, p.z ** 2)


def test_pi_dot_identity(rng):
    for p in sampling.admissible_qstar(rng, 1000, **sampling.MODERATE):
        lam = p.lam
        expect = tensor_at(PI_ADM, None, p).triple() - (lam / math.sinh(lam)) ** 2 * _pi0(p).triple()
        assert np.max(np.abs(pi_dot_tensor(p).triple() - expect)) < 1e-13


def test_pi_dot_matches_t_derivative(rng):
    h = 1e-4
    for p in sampling.admissible_qstar(rng, 100, **sampling.MODERATE):
        fd = (pi_t_tensor(1 + h, p).triple() - pi_t_tensor(1 - h, p).triple()) / (2 * h)
        assert np.max(np.abs(fd - pi_dot_tensor(p).triple())) < 1e-6


def test_pi_dot_on_axis():
    z = 1.4
    b = pi_dot_tensor(QStarPoint(0, 0, z))
    k = z / math.tanh(z) + z - z ** 2 / math.sinh(z) ** 2
    assert b.component("x", "y") == pytest.approx(-k * z, abs=1e-14)
    assert float(pi_dot_coefficient(z, z)) == pytest.approx(k, abs=1e-15)


# -- the field --------------------------------------------------------------

def test_field_vanishes_at_axis():
    assert gw_field_hyp(HypCoords(1.0, 0.0, 0.0, True)) == 0
    for z in np.linspace(0.01, 10, 50):
        assert np.array_equal(gw_field_rect(QStarPoint(0, 0, float(z))), np.zeros(3))


def test_taylor_matches_closed_form_at_switch():
    lam = 1.0
    s = S_SWITCH
    below = gw_field_hyp((lam, s * (1 - 1e-12)))
    assert abs(below - gw_field_closed_form(lam, s)) < 1e-10


def _f_mp(lam, s):
    # closed form in 50-digit arithmetic
    with mpmath.workdps(50):
        lam, s = mpmath.mpf(lam), mpmath.mpf(s)
        k = mpmath.coth(lam)
        c = lam / mpmath.sinh(lam) ** 2
        ch = mpmath.cosh(s)
        br = mpmath.log((k + ch) / (k + 1)) + c * (1 / (k + ch) - 1 / (k + 1))
        return float(-((k + ch) / mpmath.sinh(s)) * br)


@pytest.mark.parametrize("lam", [0.1, 0.5, 1.0, 2.0, 3.0])
@pytest.mark.parametrize("s", [1e-6, 1e-4, 5e-4, 0.999e-3])
def test_taylor_branch_vs_high_precision(lam, s):
    exact = _f_mp(lam, s)
    assert abs(gw_field_hyp((lam, s)) - exact) < 1e-14 * abs(exact)


@pytest.mark.parametrize("s", [1e-3, 0.01, 0.5, 3.0, 20.0])
def test_closed_form_branch_vs_high_precision(s):
    exact = _f_mp(1.0, s)
    assert abs(gw_field_hyp((1.0, s)) - exact) < 1e-9 * abs(exact)


def test_field_asymptotic_slope():
    ratio = gw_field_hyp((1.0, 20.0)) / 20.0
    assert abs(abs(ratio) - 1) < 0.15
    assert ratio < 0


def test_field_rejects_bad_input():
    with pytest.raises(DomainError):
        gw_field_hyp((0.0, 1.0))
    with pytest.raises(DomainError):
        gw_field_rect(QStarPoint(1, 0, 0.5))


@given(admissible_qstar(s=(0.05, 3.0), lam=(0.1, 3.0)))
def test_rect_field_is_f_times_ds(p):
    h = hyp_of_rect(p)
    f = gw_field_hyp(h)
    ds = np.array([h.lam * math.cosh(h.s) * math.cos(h.phi),
                   h.lam * math.cosh(h.s) * math.sin(h.phi), h.lam * math.sinh(h.s)])
    assert np.max(np.abs(gw_field_rect(p) - f * ds)) < 1e-12 * max(1.0, np.max(np.abs(f * ds)))


def test_field_factor_smooth_through_axis():
    lam = 0.8
    u = np.array([0.0, 1e-14, 1e-10, 1e-6, 1e-3])
    F = field_factor(lam, u)
    assert np.all(np.isfinite(F))
    assert np.all(np.abs(np.diff(F)) < 1e-3)


def test_tangency(rng):
    for p in sampling.admissible_qstar(rng, 1000, **sampling.MODERATE):
        X = gw_field_rect(p)
        assert abs(p.z * X[2] - p.x * X[0] - p.y * X[1]) < 1e-12


def test_zero_linearization_at_origin():
    d = np.array([0.3, 0.4, 1.0])
    ratios = [np.linalg.norm(gw_field_rect(QStarPoint(*(e * d)))) / np.linalg.norm(e * d)
              for e in (1e-2, 1e-3)]
    assert 8 < ratios[0] / ratios[1] < 12


def test_scaled_field():
    p = QStarPoint(0.3, 0.4, 1.2)
    assert np.array_equal(scaled_field(1.0, p), gw_field_rect(p))
    assert np.array_equal(scaled_field(0.3, QStarPoint(0, 0, 2)), np.zeros(3))
    norms = [np.linalg.norm(scaled_field(t, p)) for t in (1e-2, 1e-3, 1e-4)]
    assert max(norms) / min(norms) < 1.1
    with pytest.raises(ValueError):
        scaled_field(0.0, p)


def test_growth_bound_on_leaves():
    # |f(s)| <= C (1 + s) with C = 1 on every sampled leaf: the flow is complete
    for lam in (0.1, 0.5, 1.0, 2.0, 3.0):
        s = np.linspace(0, 200, 2001)
        f = np.array([gw_field_hyp((lam, float(v))) for v in s])
        assert np.all(np.abs(f) <= 1 + s)


def test_lie_derivative_identity(rng):
    worst = max(lie_derivative_residual(p) for p in sampling.admissible_qstar(rng, 100))
    assert worst < 1e-5


# -- the flow ---------------------------------------------------------------

def test_flow_config_validation():
    with pytest.raises(ValueError):
        FlowConfig(t_start=0.5)
    with pytest.raises(ValueError):
        FlowConfig(steps=0)
    with pytest.raises(ValueError):
        FlowConfig(fd_step=0.0)


def test_axis_fixed():
    p = QStarPoint(0, 0, 1.7)
    assert gw_flow(p) == p
    assert verify_gw(p) < 1e-3


def test_flow_rejects_non_admissible():
    with pytest.raises(DomainError):
        gw_flow(QStarPoint(1, 0, 0.5))
    with pytest.raises(DomainError):
        flow_array(np.array([[1.0, 0.0, 0.5]]))


def test_flow_conserves_lambda_and_phi(rng):
    pts = sampling.admissible_qstar(rng, 50, **sampling.MODERATE)
    out = flow_array(np.array([p.as_array() for p in pts]))
    for p, q in zip(pts, out):
        img = QStarPoint(*q)
        assert abs(img.lam - p.lam) < 1e-12 * max(1, img.z)
        if p.x or p.y:
            assert abs(math.atan2(img.y, img.x) - math.atan2(p.y, p.x)) < 1e-12


def test_flow_expands_along_leaf():
    # area matching between the leaf forms forces s to increase
    h = HypCoords(1.0, 0.3, 0.8)
    img = hyp_of_rect(gw_flow(rect_of_hyp(h)))
    assert img.s > h.s


def test_step_halving(rng):
    P = np.array([p.as_array() for p in sampling.admissible_qstar(rng, 30, **sampling.MODERATE)])
    a = flow_array(P, FlowConfig(steps=2000))
    b = flow_array(P, FlowConfig(steps=4000))
    assert np.max(np.abs(a - b)) < 1e-8


def test_batched_flow_matches_single():
    pts = [QStarPoint(0.3, 0.4, 1.2), QStarPoint(-1.0, 0.2, 2.0)]
    batch = flow_array(np.array([p.as_array() for p in pts]))
    for p, row in zip(pts, batch):
        assert np.array_equal(gw_flow(p).as_array(), row)


def test_verify_gw_small_defects(rng):
    pts = sampling.admissible_qstar(rng, 20)
    defects, images = verify_gw_batch(np.array([p.as_array() for p in pts]))
    assert defects.max() < 1e-3
    assert images.shape == (20, 3)


def test_verify_gw_convergence_trend():
    p = rect_of_hyp(HypCoords(3.0, 0.4, 3.0))
    d = [verify_gw(p, FlowConfig(steps=n)) for n in (500, 1000, 2000)]
    assert d[0] > d[1] > d[2]


def test_verify_gw_floor_is_start_time_bias():
    p = rect_of_hyp(HypCoords(1.0, 0.4, 1.0))
    assert verify_gw(p, FlowConfig(t_start=1e-8)) < verify_gw(p, FlowConfig(t_start=1e-6)) / 10
