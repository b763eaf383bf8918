"""Explicit Ginzburg-Weinstein vector field and its time-one flow.

The field is tangent to the hyperboloids ``z^2 - x^2 - y^2 = lam^2`` and, in
hyperbolic coordinates ``(lam, phi, s)``, equals ``f(s) d/ds`` with

    f(s) = -((k + cosh s) / sinh s) * [ln((k + cosh s)/(k + 1))
           + (lam / sinh^2 lam) (1/(k + cosh s) - 1/(k + 1))],   k = coth lam.

Array functions take points as ``(..., 3)`` arrays in ``(x, y, z)`` order so
that many trajectories can be integrated together.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, FlowError
from .spaces import Chart, HypCoords, QStarPoint, is_admissible
from .tensors import PI_ADM, Bivector3, dlamcoth_over_lam, lam_coth, pi_t, tensor_at

S_SWITCH = 1e-3

# The displayed field satisfies L_X pi = pi_dot. Carrying pi_0 to pi_t forward
# in t needs L_V pi_t = -d/dt pi_t, so the flow is generated by -X_t.
FLOW_SIGN = -1.0


@dataclass(frozen=True)
class FlowConfig:
    t_start: float = 1e-6
    steps: int = 2000
    fd_step: float = 1e-5

    def __post_init__(self):
        if not (0 < self.t_start <= 0.01):
            raise ValueError(f"t_start must lie in (0, 0.01], got {self.t_start}")
        if not (isinstance(self.steps, int) and self.steps > 0):
            raise ValueError(f"steps must be a positive integer, got {self.steps}")
        if not self.fd_step > 0:
            raise ValueError(f"fd_step must be positive, got {self.fd_step}")


# -- pi_t and its derivative ------------------------------------------------

def pi_t_tensor(t: float, p: QStarPoint) -> Bivector3:
    """``pi(t p) / t``, i.e. ``(t lam coth(t lam) + t z) pi_0`` at ``p``."""
    b = tensor_at(pi_t(t), Chart.RECT_QSTAR, p)
    if not np.all(np.isfinite(b.triple())):
        raise DomainError(f"non-finite pi_t at t={t}, p={p}")
    return b


def pi_dot_coefficient(lam, z):
    lam = np.asarray(lam, dtype=float)
    return lam_coth(lam) + z - (lam / np.sinh(lam)) ** 2


def pi_dot_tensor(p: QStarPoint) -> Bivector3:
    """``d/dt pi_t`` at ``t = 1``."""
    if not is_admissible(p):
        raise DomainError(f"{p} is not admissible")
    k = float(pi_dot_coefficient(p.lam, p.z))
    return Bivector3(Chart.RECT_QSTAR, -k * p.z, -k * p.y, k * p.x)


# -- the field in hyperbolic coordinates -------------------------------------

def _consts(lam):
    lam = np.asarray(lam, dtype=float)
    A = 1.0 / np.tanh(lam) + 1.0
    c = lam / np.sinh(lam) ** 2
    a_minus_c = 1.0 + lam * dlamcoth_over_lam(lam)
    return A, c, a_minus_c


def _taylor_coeffs(lam):
    """``f(s) = f1 s + f3 s^3 + O(s^5)``."""
    A, c, amc = _consts(lam)
    beta1 = amc / A ** 2
    beta2 = -0.5 / A ** 2 + c / A ** 3
    F0 = -A * beta1 / 2
    F1 = -(A * beta2 + beta1 - A * beta1 / 2) / 2
    return F0, F0 / 6 + F1 / 2


def gw_field_closed_form(lam: float, s: float) -> float:
    """The displayed coefficient of ``d/ds``, with no small-``s`` handling."""
    k = 1.0 / math.tanh(lam)
    c = lam / math.sinh(lam) ** 2
    ch = math.cosh(s)
    bracket = math.log((k + ch) / (k + 1)) + c * (1 / (k + ch) - 1 / (k + 1))
    return -((k + ch) / math.sinh(s)) * bracket


def gw_field_hyp(h) -> float:
    """Coefficient ``f(s)`` of ``d/ds``; accepts :class:`HypCoords` or ``(lam, s)``.

    Below ``s = 1e-3`` the cubic Taylor polynomial (exact through fourth
    order, since ``f`` is odd) replaces the closed form, which cancels there.
    """
    lam, s = (h.lam, h.s) if isinstance(h, HypCoords) else h
    if not (lam > 0 and s >= 0):
        raise DomainError(f"need lam > 0 and s >= 0, got lam={lam}, s={s}")
    if s < S_SWITCH:
        f1, f3 = _taylor_coeffs(lam)
        return float(f1 * s + f3 * s ** 3)
    return gw_field_closed_form(lam, s)


def _log1p_ratio_gap(v):
    # log1p(v)/v - 1/(1+v), series below 1e-2
    v = np.asarray(v, dtype=float)
    small = v < 1e-2
    series = np.zeros_like(v)
    for n in range(8, 0, -1):
        series = v * ((-1) ** (n + 1) * n / (n + 1) + series)
    safe = np.where(small, 1.0, v)
    closed = np.log1p(safe) / safe - 1.0 / (1.0 + safe)
    return np.where(small, series, closed)


def field_factor(lam, u):
    """``f(s) / sinh(s)`` as a function of ``lam`` and ``u = cosh(s) - 1``.

    Smooth through ``u = 0``; every cancelling difference is expanded.
    """
    A, c, amc = _consts(lam)
    v = u / A
    b_over_u = _log1p_ratio_gap(v) / A + amc / (A * (A + u))
    return -(A + u) * b_over_u / (u + 2.0)


# -- rectangular form ------------------------------------------------------

def _lam_u(P):
    x, y, z = P[..., 0], P[..., 1], P[..., 2]
    r2 = x * x + y * y
    r = np.sqrt(r2)
    lam = np.sqrt((z - r) * (z + r))
    u = r2 / ((z + lam) * lam)
    return lam, u


def field_array(P) -> np.ndarray:
    """Field at each row of ``P``: ``(f/sinh s)/lam * (x z, y z, x^2 + y^2)``."""
    P = np.asarray(P, dtype=float)
    lam, u = _lam_u(P)
    F = field_factor(lam, u) / lam
    x, y, z = P[..., 0], P[..., 1], P[..., 2]
    return np.stack([F * x * z, F * y * z, F * (x * x + y * y)], axis=-1)


def _admissible_mask(P):
    x, y, z = P[..., 0], P[..., 1], P[..., 2]
    return (z > 0) & (z > np.hypot(x, y))


def gw_field_rect(p: QStarPoint) -> np.ndarray:
    """The field in ``(x, y, z)`` components; exactly zero on the positive z-axis."""
    if not is_admissible(p):
        raise DomainError(f"{p} is neither admissible nor on the positive z-axis")
    return field_array(p.as_array())


def scaled_field_array(t: float, P) -> np.ndarray:
    return field_array(t * np.asarray(P, dtype=float)) / (t * t)


def scaled_field(t: float, p: QStarPoint) -> np.ndarray:
    """``X(t p) / t^2``."""
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if not is_admissible(p):
        raise DomainError(f"{p} is not admissible")
    out = scaled_field_array(t, p.as_array())
    if not np.all(np.isfinite(out)):
        raise DomainError(f"non-finite scaled field at t={t}, p={p}")
    return out


# -- flow ------------------------------------------------------------------

def _s_rate(t, lam, s):
    # ds/dt for the scaled field: X(t p)/t^2 = (f_{t lam}(s) / t) d/ds at p
    u = 2.0 * np.sinh(s / 2) ** 2
    return FLOW_SIGN * field_factor(t * lam, u) * np.sinh(s) / t


def flow_array(P0, cfg: FlowConfig = FlowConfig()) -> np.ndarray:
    """Integrate every row of ``P0`` from ``t_start`` to 1 with classical RK4.

    The field is ``f(s) d/ds``, so ``lam`` and ``phi`` are constants of motion
    and only ``s`` is integrated. This is the same ODE written in hyperbolic
    coordinates; it keeps ``lam`` exact and avoids integrating the rapidly
    growing rectangular components directly.
    """
    P = np.array(P0, dtype=float)
    if not np.all(_admissible_mask(P)):
        raise DomainError("flow start points must be admissible")
    x, y, z = P[..., 0], P[..., 1], P[..., 2]
    r = np.hypot(x, y)
    lam = np.sqrt((z - r) * (z + r))
    s0 = np.arcsinh(r / lam)
    s = s0.copy()
    comp = np.zeros_like(s)  # Kahan compensation for the running sum
    h = (1.0 - cfg.t_start) / cfg.steps
    for n in range(cfg.steps):
        t = cfg.t_start + n * h
        k1 = _s_rate(t, lam, s)
        k2 = _s_rate(t + h / 2, lam, s + (h / 2) * k1)
        k3 = _s_rate(t + h / 2, lam, s + (h / 2) * k2)
        k4 = _s_rate(t + h, lam, s + h * k3)
        inc = (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4) - comp
        new = s + inc
        comp = (new - s) - inc
        s = new
        if not np.all(np.isfinite(s) & (s >= 0)):
            raise FlowError("trajectory left the admissible cone", t + h)
    # (x, y) scale by sinh(s1)/sinh(s0), an even smooth function of s0
    ratio = np.where(s0 > 0, np.sinh(s) / np.where(s0 > 0, np.sinh(s0), 1.0), 1.0)
    return np.stack([x * ratio, y * ratio, lam * np.cosh(s)], axis=-1)


def gw_flow(p: QStarPoint, cfg: FlowConfig = FlowConfig()) -> QStarPoint:
    """Time-one map of the Ginzburg-Weinstein flow."""
    if not is_admissible(p):
        raise DomainError(f"{p} is not admissible")
    return QStarPoint.from_array(flow_array(p.as_array()[None, :], cfg)[0])


def _lamcoth_of_sq(l2):
    # lam coth(lam) as an analytic function of lam^2, continued to lam^2 <= 0
    if l2 > 0:
        return float(lam_coth(math.sqrt(l2)))
    mu = math.sqrt(-l2)
    return 1.0 if mu == 0 else mu / math.tan(mu)


def _pi_matrix(q):
    """Matrix of ``pi`` at ``q`` read from ``z^2 - x^2 - y^2`` directly.

    Images of far-out points have ``z`` so large that ``z - r`` is below one
    ulp of ``z``; the coefficient is smooth in ``lam^2`` so it is evaluated
    there without an admissibility test.
    """
    x, y, z = q
    r = math.hypot(x, y)
    k = _lamcoth_of_sq((z - r) * (z + r)) + z
    return k * _pi0_matrix(q)


def _pi0_matrix(q):
    x, y, z = q
    return np.array([[0.0, -z, -y], [z, 0.0, x], [y, -x, 0.0]])


def verify_gw_batch(points, cfg: FlowConfig = FlowConfig()):
    """Relative defect of ``(phi_1)_* pi_0 = pi`` at each point, plus the images.

    The Jacobian of ``phi_1`` is taken by central differences of the whole flow,
    with all 7 trajectories per point integrated in one batch.
    """
    P = np.atleast_2d(np.asarray(points, dtype=float))
    n = len(P)
    hs = cfg.fd_step * np.maximum(1.0, np.linalg.norm(P, axis=1))
    starts = [P]
    for k in range(3):
        e = np.zeros(3)
        e[k] = 1.0
        starts.append(P + hs[:, None] * e)
        starts.append(P - hs[:, None] * e)
    out = flow_array(np.concatenate(starts), cfg).reshape(7, n, 3)
    images = out[0]
    defects = np.empty(n)
    for i in range(n):
        J = np.column_stack([(out[1 + 2 * k, i] - out[2 + 2 * k, i]) / (2 * hs[i])
                             for k in range(3)])
        pushed = J @ _pi0_matrix(P[i]) @ J.T
        target = _pi_matrix(images[i])
        defects[i] = np.max(np.abs(pushed - target)) / max(1.0, np.max(np.abs(target)))
    return defects, images


def verify_gw(p: QStarPoint, cfg: FlowConfig = FlowConfig()) -> float:
    if not is_admissible(p):
        raise DomainError(f"{p} is not admissible")
    defects, _ = verify_gw_batch(p.as_array(), cfg)
    return float(defects[0])


# -- Lie derivative check ----------------------------------------------------

def lie_derivative_residual(p: QStarPoint, h: float = 1e-5) -> float:
    """``max |L_X pi - pi_dot|`` with analytic ``pi`` and Richardson-differenced ``X``."""
    from .tensors import coefficients, fd_jacobian

    q = p.as_array()
    P, dP = coefficients(PI_ADM, q)
    Xv = field_array(q)
    DX = fd_jacobian(field_array, q, h * max(1.0, float(np.linalg.norm(q))))
    # (L_X P)^{ij} = X^k d_k P^{ij} - P^{kj} d_k X^i - P^{ik} d_k X^j
    L = np.einsum("k,kij->ij", Xv, dP) - DX @ P - P @ DX.T
    return float(np.max(np.abs(L - pi_dot_tensor(p).matrix())))
