"""Maps between the admissible loci.

``sym`` (AN -> Q), ``exp_q``/``log_q`` (su(1,1)* <-> Q), the right dressing
action of SU(1,1) on AN, the Gelfand-Tsetlin map ``fr_map`` and the admissible
spectrum of AN and SL(2, C) elements.
"""

import math
from dataclasses import dataclass

import numpy as np

from .algebra import dagger, det, eig2
from .errors import DomainError
from .spaces import (
    ANPoint, Chart, GElement, QPoint, QStarPoint, from_matrix, is_admissible, q_lambda,
    to_matrix,
)
from .tensors import ChartMap


@dataclass(frozen=True)
class DressResult:
    """Factorisation ``diag(e^{z/2}, e^{-z/2}) g = g_prime b_prime``."""

    g_prime: GElement
    b_prime: ANPoint


def sym(p: ANPoint) -> QPoint:
    """``M -> M^dagger M`` in coordinates."""
    e = math.exp(p.z / 2)
    return QPoint(p.x * e, p.y * e, e * e)


def sym_inverse(q: QPoint) -> ANPoint:
    e = math.sqrt(q.c)
    return ANPoint(math.log(q.c), q.a / e, q.b / e)


def _sinhc(lam):
    return 1.0 if lam == 0 else math.sinh(lam) / lam


def exp_q(p: QStarPoint) -> QPoint:
    """``cosh(lam) I + sinh(lam)/lam M``, valid because ``M^2 = lam^2 I``."""
    if not is_admissible(p):
        raise DomainError(f"exp_q: {p} is not admissible")
    lam = p.lam
    k = _sinhc(lam)
    return QPoint(p.x * k, p.y * k, math.cosh(lam) + p.z * k)


def log_q(q: QPoint) -> QStarPoint:
    """Inverse of :func:`exp_q` on the admissible locus."""
    if not is_admissible(q):
        raise DomainError(f"log_q: {q} is not admissible (trace {q.trace}, c {q.c})")
    lam = q_lambda(q)
    k = lam / math.sinh(lam)
    return QStarPoint(q.a * k, q.b * k, q.c * k - lam / math.tanh(lam))


def dress(z: float, g: GElement) -> DressResult:
    """Right dressing of ``diag(e^{z/2}, e^{-z/2})`` by ``g``."""
    if not z > 0:
        raise DomainError(f"dressing needs z > 0, got {z}")
    u, v = g.u, g.v
    rho = math.sqrt(abs(u) ** 2 * math.exp(z) - abs(v) ** 2 * math.exp(-z))
    up = u * math.exp(z / 2) / rho
    vp = v * math.exp(-z / 2) / rho
    m = 2 * u.conjugate() * v * math.sinh(z) / rho
    # |u'|^2 - |v'|^2 = 1 analytically; renormalise away the rounding
    n = math.sqrt(abs(up) ** 2 - abs(vp) ** 2)
    return DressResult(GElement(up / n, vp / n), ANPoint(2 * math.log(rho), m.real, m.imag))


def fr_map(p: QStarPoint) -> QPoint:
    """Gelfand-Tsetlin identification ``(z, lam, theta) -> (w = z, lam, theta)``.

    The off-diagonal entry is ``(x + iy) sqrt(q)`` with
    ``q = (e^z - e^lam)(e^z - e^-lam) / (z^2 - lam^2)``; both factors are
    evaluated through ``expm1`` so the map is smooth and exact on the axis.
    """
    if not is_admissible(p):
        raise DomainError(f"fr_map: {p} is not admissible")
    lam = p.lam
    r2 = p.x ** 2 + p.y ** 2
    gap = r2 / (p.z + lam)  # z - lam without cancellation
    f1 = math.exp(lam) * (1.0 if gap == 0 else math.expm1(gap) / gap)
    f2 = math.exp(-lam) * math.expm1(p.z + lam) / (p.z + lam)
    k = math.sqrt(max(f1 * f2, 0.0))
    return QPoint(p.x * k, p.y * k, math.exp(p.z))


def fr_map_literal(p: QStarPoint) -> QPoint:
    """The same map written with the unfactored radicand; undefined on the axis."""
    lam = p.lam
    rad = math.exp(2 * p.z) - 2 * math.exp(p.z) * math.cosh(lam) + 1
    rad = 0.0 if -1e-12 < rad < 0 else rad
    r = math.hypot(p.x, p.y)
    R = math.sqrt(rad)
    return QPoint(R * p.x / r, R * p.y / r, math.exp(p.z))


def adm_spectrum_an(p: ANPoint) -> float:
    """Admissible spectrum ``gamma`` with ``2 cosh(gamma) = Delta``."""
    delta = p.delta
    if not (p.z > 0 and delta > 2 + 1e-12):
        raise DomainError(f"not admissible: z={p.z}, Delta={delta}")
    # (Delta - 2)/2 = 2 sinh^2(z/2) - |x+iy|^2/2, free of cancellation in cosh
    half = 2 * math.sinh(p.z / 2) ** 2 - (p.x ** 2 + p.y ** 2) / 2
    return math.log1p(half + math.sqrt(half * (half + 2)))


def adm_spectrum_slc(M: np.ndarray) -> float:
    """Admissible spectrum of ``M`` in SL(2, C), read off ``M^dagger M``."""
    M = np.asarray(M, dtype=np.complex128)
    if abs(det(M) - 1) > 1e-10 * max(1.0, float(np.max(np.abs(M))) ** 2):
        raise DomainError(f"det(M) = {det(M)} is not 1")
    S = dagger(M) @ M
    c = S[0, 0].real
    T = (S[0, 0] + S[1, 1]).real
    if not (T > 2 + 1e-12 and c > T / 2):
        raise DomainError(f"not admissible: tr(M^dagger M)={T}, c={c}")
    mu1, mu2 = eig2(S)
    if abs(mu1.imag) > 1e-9 * abs(mu1) or abs(mu2.imag) > 1e-9 * abs(mu1):
        raise DomainError(f"non-real spectrum of M^dagger M: {mu1}, {mu2}")
    return 0.5 * math.log(mu1.real / mu2.real)


# -- coordinate maps for pushforwards ---------------------------------------

def _sym_arr(q):
    z, x, y = q
    e = math.exp(z / 2)
    return np.array([x * e, y * e, e * e])


def _sym_jac(q):
    z, x, y = q
    e = math.exp(z / 2)
    return np.array([[x * e / 2, e, 0.0], [y * e / 2, 0.0, e], [e * e, 0.0, 0.0]])


SYM = ChartMap("sym", Chart.RECT_AN, Chart.RECT_Q, _sym_arr, _sym_jac)
LOG = ChartMap("log", Chart.RECT_Q, Chart.RECT_QSTAR,
               lambda q: log_q(QPoint(*q)).as_array())
LOG_SYM = SYM.then(LOG)
FR = ChartMap("fr", Chart.RECT_QSTAR, Chart.RECT_Q, lambda q: fr_map(QStarPoint(*q)).as_array())


def sym_matrix(p: ANPoint) -> QPoint:
    """``sym`` computed literally as ``dagger(M) @ M`` then read back."""
    M = to_matrix(p)
    return from_matrix(dagger(M) @ M, "q")
