"""Poisson bivectors in coordinates and the machinery to check them.

Coefficients and their first partial derivatives are written out by hand for
every supported (structure, chart) pair, so Jacobi and Casimir defects are
evaluated without finite differences. Finite differences only enter through
map Jacobians (:func:`fd_jacobian`) and explicitly requested cross-checks.
"""

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .algebra import X as X_MAT, Y as Y_MAT
from .errors import ChartError, DomainError
from .spaces import (
    ANPoint, CHART_COORDS, Chart, GElement, GTQCoords, GTStarCoords, HypCoords,
    QPoint, QStarPoint, to_matrix,
)


class Tag(str, enum.Enum):
    PI0 = "pi0"
    PI_AN = "pi_an"
    PI_Q = "pi_q"
    PI_ADM = "pi_adm"
    PI_T = "pi_t"


@dataclass(frozen=True)
class Structure:
    tag: Tag
    t: Optional[float] = None

    def __post_init__(self):
        if self.tag is Tag.PI_T and not (self.t is not None and self.t > 0):
            raise ValueError(f"PI_T needs t > 0, got {self.t}")


PI0 = Structure(Tag.PI0)
PI_AN = Structure(Tag.PI_AN)
PI_Q = Structure(Tag.PI_Q)
PI_ADM = Structure(Tag.PI_ADM)


def pi_t(t: float) -> Structure:
    return Structure(Tag.PI_T, float(t))


SUPPORTED = {
    Tag.PI0: (Chart.RECT_QSTAR, Chart.GT_STAR),
    Tag.PI_AN: (Chart.RECT_AN,),
    Tag.PI_Q: (Chart.RECT_Q, Chart.GT_Q),
    Tag.PI_ADM: (Chart.RECT_QSTAR, Chart.HYPERBOLIC),
    Tag.PI_T: (Chart.RECT_QSTAR,),
}

_POINT_CHART = {
    QStarPoint: Chart.RECT_QSTAR,
    ANPoint: Chart.RECT_AN,
    QPoint: Chart.RECT_Q,
    HypCoords: Chart.HYPERBOLIC,
    GTStarCoords: Chart.GT_STAR,
    GTQCoords: Chart.GT_Q,
}


@dataclass(frozen=True)
class Bivector3:
    """Antisymmetric 2-tensor in a 3-dimensional chart.

    ``p12``, ``p13``, ``p23`` are the coefficients of ``d1^d2``, ``d1^d3``,
    ``d2^d3`` in the chart's coordinate order (see :mod:`su11.spaces`).
    """

    chart: Chart
    p12: float
    p13: float
    p23: float

    @classmethod
    def from_matrix(cls, chart, P) -> "Bivector3":
        return cls(Chart(chart), float(P[0, 1]), float(P[0, 2]), float(P[1, 2]))

    def matrix(self) -> np.ndarray:
        return _antisym(self.p12, self.p13, self.p23)

    def component(self, i: str, j: str) -> float:
        """Coefficient of ``d_i ^ d_j`` by coordinate name, e.g. ``("theta", "z")``."""
        names = CHART_COORDS[self.chart]
        return float(self.matrix()[names.index(i), names.index(j)])

    def triple(self) -> np.ndarray:
        return np.array([self.p12, self.p13, self.p23])

    def dist(self, other: "Bivector3") -> float:
        """Max-norm distance; both bivectors must be in the same chart."""
        if self.chart is not other.chart:
            raise ChartError(f"cannot compare {self.chart.value} with {other.chart.value}")
        return float(np.max(np.abs(self.triple() - other.triple())))

    def norm(self) -> float:
        return float(np.max(np.abs(self.triple())))


def _antisym(p12, p13, p23):
    return np.array([[0.0, p12, p13], [-p12, 0.0, p23], [-p13, -p23, 0.0]])


# -- scalar helpers ---------------------------------------------------------

def lam_coth(lam):
    """``lam * coth(lam)``, equal to 1 at 0."""
    lam = np.asarray(lam, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = lam / np.tanh(lam)
    return np.where(lam == 0, 1.0, out)


def dlamcoth_over_lam(lam):
    """``(coth(lam) - lam/sinh(lam)^2) / lam``: derivative of ``lam coth lam`` over ``lam``.

    Uses the Taylor series below 0.05, where the closed form cancels.
    """
    lam = np.asarray(lam, dtype=float)
    small = np.abs(lam) < 0.05
    l2 = lam * lam
    series = 2.0 / 3 - l2 * (4.0 / 45 - l2 * (12.0 / 945 - l2 * 8.0 / 4725))
    safe = np.where(small, 1.0, lam)
    closed = (1.0 / np.tanh(safe) - safe / np.sinh(safe) ** 2) / safe
    return np.where(small, series, closed)


def _timelike_lambda(x, y, z):
    r = math.hypot(x, y)
    q = (z - r) * (z + r)
    if not (z > 0 and q > 0):
        raise DomainError(f"({x}, {y}, {z}) is not admissible")
    return math.sqrt(q)


# -- coefficients and first partials -----------------------------------------
# Each returns (P, dP) with P[i, j] the coefficient and dP[l, i, j] = d_l P[i, j].

def _pi0_rect(q):
    x, y, z = q
    P = _antisym(-z, -y, x)
    dP = np.array([_antisym(0, 0, 1), _antisym(0, -1, 0), _antisym(-1, 0, 0)], dtype=float)
    return P, dP


def _scaled_pi0_rect(q, t):
    # (t lam coth(t lam) + t z) * pi0
    x, y, z = q
    lam = _timelike_lambda(x, y, z)
    F = float(lam_coth(t * lam)) + t * z
    E = float(dlamcoth_over_lam(t * lam))
    grad = np.array([-t * t * E * x, -t * t * E * y, t * t * E * z + t])
    P0, dP0 = _pi0_rect(q)
    return F * P0, grad[:, None, None] * P0 + F * dP0


def _pi_an(q):
    z, x, y = q
    P = _antisym(y, -x, -math.sinh(z))
    dP = np.array([_antisym(0, 0, -math.cosh(z)), _antisym(0, -1, 0), _antisym(1, 0, 0)],
                  dtype=float)
    return P, dP


def _pi_q(q):
    a, b, c = q
    if not c > 0:
        raise DomainError(f"RECT_Q chart needs c > 0, got {c}")
    P = _antisym(0.5 * (1 - a * a - b * b - c * c), -b * c, a * c)
    dP = np.array([_antisym(-a, 0, c), _antisym(-b, -c, 0), _antisym(-c, -b, a)])
    return P, dP


def _pi_hyp(q):
    lam, _, s = q
    if not (lam > 0 and s > 0):
        raise DomainError(f"hyperbolic chart needs lambda > 0 and s > 0, got {tuple(q)}")
    sh, ch = math.sinh(s), math.cosh(s)
    coth = 1.0 / math.tanh(lam)
    g = (coth + ch) / sh
    dg_lam = -1.0 / (math.sinh(lam) ** 2 * sh)
    dg_s = -(1.0 + coth * ch) / sh ** 2
    P = _antisym(0, 0, g)
    dP = np.array([_antisym(0, 0, dg_lam), np.zeros((3, 3)), _antisym(0, 0, dg_s)])
    return P, dP


def _gt_const(q):
    # d_theta ^ d_first with coordinate order (first, lambda, theta)
    return _antisym(0, -1.0, 0), np.zeros((3, 3, 3))


def _dispatch(s: Structure, chart: Chart):
    chart = Chart(chart)
    if chart not in SUPPORTED[s.tag]:
        raise ChartError(f"{s.tag.value} is not available in chart {chart.value}")
    if s.tag is Tag.PI0:
        return _pi0_rect if chart is Chart.RECT_QSTAR else _gt_const
    if s.tag is Tag.PI_AN:
        return _pi_an
    if s.tag is Tag.PI_Q:
        return _pi_q if chart is Chart.RECT_Q else _gt_const
    if s.tag is Tag.PI_ADM:
        return _pi_hyp if chart is Chart.HYPERBOLIC else (lambda q: _scaled_pi0_rect(q, 1.0))
    return lambda q: _scaled_pi0_rect(q, s.t)


def _coords(p, chart):
    if isinstance(p, tuple(_POINT_CHART)):
        if _POINT_CHART[type(p)] is not Chart(chart):
            raise ChartError(f"{type(p).__name__} is not a point of chart {Chart(chart).value}")
        return p.as_array()
    q = np.asarray(p, dtype=float)
    if q.shape != (3,):
        raise ValueError(f"expected 3 coordinates, got shape {q.shape}")
    return q


def _chart_for(s: Structure, p, chart):
    if chart is not None:
        return Chart(chart)
    if type(p) in _POINT_CHART:
        return _POINT_CHART[type(p)]
    return SUPPORTED[s.tag][0]


def coefficients(s: Structure, p, chart=None):
    """Coefficient matrix and its partials ``(P, dP)`` at ``p``."""
    chart = _chart_for(s, p, chart)
    return _dispatch(s, chart)(_coords(p, chart))


def tensor_at(s: Structure, chart, p) -> Bivector3:
    chart = _chart_for(s, p, chart)
    P, _ = _dispatch(s, chart)(_coords(p, chart))
    return Bivector3.from_matrix(chart, P)


# -- functions and brackets -------------------------------------------------

@dataclass(frozen=True)
class ScalarField:
    """A function of chart coordinates, optionally with its analytic gradient."""

    value: Callable[[np.ndarray], float]
    grad: Optional[Callable[[np.ndarray], np.ndarray]] = None
    name: str = ""

    def gradient(self, q, analytic: bool = True) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        if analytic and self.grad is not None:
            return np.asarray(self.grad(q), dtype=float)
        return central_gradient(self.value, q)


def coordinate(i: int, name: str = "") -> ScalarField:
    e = np.zeros(3)
    e[i] = 1.0
    return ScalarField(lambda q: float(q[i]), lambda q: e, name or f"q{i}")


def central_gradient(f, q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    h = max(1e-6, 1e-6 * float(np.linalg.norm(q)))
    g = np.empty(3)
    for k in range(3):
        e = np.zeros(3)
        e[k] = h
        g[k] = (f(q + e) - f(q - e)) / (2 * h)
    return g


def _contract(P, a, b):
    # sum_{i<j} P_ij (a_i b_j - a_j b_i): exactly zero when a is b
    return (P[0, 1] * (a[0] * b[1] - a[1] * b[0])
            + P[0, 2] * (a[0] * b[2] - a[2] * b[0])
            + P[1, 2] * (a[1] * b[2] - a[2] * b[1]))


def bracket(s: Structure, f: ScalarField, g: ScalarField, p, chart=None, analytic=True) -> float:
    """Poisson bracket ``pi(df, dg)`` at ``p``."""
    chart = _chart_for(s, p, chart)
    q = _coords(p, chart)
    P, _ = _dispatch(s, chart)(q)
    return float(_contract(P, f.gradient(q, analytic), g.gradient(q, analytic)))


def jacobi_defect(s: Structure, p, chart=None) -> float:
    """``|{q1,{q2,q3}} + {q2,{q3,q1}} + {q3,{q1,q2}}|`` from analytic partials."""
    P, dP = coefficients(s, p, chart)
    total = 0.0
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        total += float(P[i, :] @ dP[:, j, k])
    return abs(total)


def _sq_form(sign_z):
    # sign_z * z^2 - x^2 - y^2 in (x, y, z) order, up to overall sign
    def value(q):
        return sign_z * (q[2] ** 2 - q[0] ** 2 - q[1] ** 2)

    def grad(q):
        return sign_z * np.array([-2 * q[0], -2 * q[1], 2 * q[2]])

    return value, grad


def _xi_value(q):
    z, x, y = q
    return 2 * math.cosh(z) - x * x - y * y


def _xi_grad(q):
    z, x, y = q
    return np.array([2 * math.sinh(z), -2 * x, -2 * y])


def _trace_value(q):
    a, b, c = q
    return (1 + c * c - a * a - b * b) / c


def _trace_grad(q):
    a, b, c = q
    return np.array([-2 * a / c, -2 * b / c, 1 - (1 - a * a - b * b) / (c * c)])


_LAMBDA = coordinate(1, "lambda")
_HYP_LAMBDA = coordinate(0, "lambda")

CASIMIRS = {
    (Tag.PI0, Chart.RECT_QSTAR): ScalarField(*_sq_form(1.0), "z^2-x^2-y^2"),
    (Tag.PI0, Chart.GT_STAR): _LAMBDA,
    (Tag.PI_AN, Chart.RECT_AN): ScalarField(_xi_value, _xi_grad, "2cosh z-x^2-y^2"),
    (Tag.PI_Q, Chart.RECT_Q): ScalarField(_trace_value, _trace_grad, "trace"),
    (Tag.PI_Q, Chart.GT_Q): _LAMBDA,
    (Tag.PI_ADM, Chart.RECT_QSTAR): ScalarField(*_sq_form(-1.0), "x^2+y^2-z^2"),
    (Tag.PI_ADM, Chart.HYPERBOLIC): _HYP_LAMBDA,
    (Tag.PI_T, Chart.RECT_QSTAR): ScalarField(*_sq_form(-1.0), "x^2+y^2-z^2"),
}


def casimir_defect(s: Structure, p, chart=None, casimir: Optional[ScalarField] = None,
                   analytic: bool = True) -> float:
    """``max_i |{C, q_i}|`` for the registered (or supplied) Casimir ``C``."""
    chart = _chart_for(s, p, chart)
    q = _coords(p, chart)
    C = casimir if casimir is not None else CASIMIRS[(s.tag, chart)]
    P, _ = _dispatch(s, chart)(q)
    dC = C.gradient(q, analytic)
    return float(np.max(np.abs(dC @ P)))


# -- maps and pushforwards --------------------------------------------------

@dataclass(frozen=True)
class ChartMap:
    """A differentiable map between charts, acting on coordinate arrays."""

    name: str
    source: Chart
    target: Chart
    func: Callable[[np.ndarray], np.ndarray]
    jac: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __call__(self, q) -> np.ndarray:
        return np.asarray(self.func(np.asarray(q, dtype=float)), dtype=float)

    def then(self, other: "ChartMap") -> "ChartMap":
        """Composite ``other o self`` (Jacobian by chain rule when both are analytic)."""
        if other.source is not self.target:
            raise ChartError(f"cannot compose {self.name} -> {other.name}")
        jac = None
        if self.jac is not None and other.jac is not None:
            jac = lambda q: other.jac(self(q)) @ self.jac(q)  # noqa: E731
        return ChartMap(f"{other.name}.{self.name}", self.source, other.target,
                        lambda q: other(self(q)), jac)


def fd_jacobian(func, q, h: Optional[float] = None) -> np.ndarray:
    """Central-difference Jacobian with one Richardson level (steps h, h/2)."""
    q = np.asarray(q, dtype=float)
    if h is None:
        h = 1e-5 * max(1.0, float(np.linalg.norm(q)))

    def central(step):
        cols = []
        for k in range(q.size):
            e = np.zeros_like(q)
            e[k] = step
            cols.append((np.asarray(func(q + e)) - np.asarray(func(q - e))) / (2 * step))
        return np.column_stack(cols)

    D = (4.0 * central(h / 2) - central(h)) / 3.0
    if not np.all(np.isfinite(D)):
        raise DomainError(f"non-finite Jacobian at {q.tolist()}")
    return D


def push_matrix(J, P) -> np.ndarray:
    return J @ P @ J.T


def pushforward(fmap: ChartMap, s: Structure, p, mode: str = "analytic") -> Bivector3:
    """Push ``s`` at ``p`` forward along ``fmap``: ``J P J^T`` expressed at ``fmap(p)``."""
    q = _coords(p, fmap.source)
    P, _ = _dispatch(s, fmap.source)(q)
    if mode == "analytic":
        if fmap.jac is None:
            raise ValueError(f"map {fmap.name} has no analytic Jacobian")
        J = np.asarray(fmap.jac(q), dtype=float)
    elif mode == "fd":
        J = fd_jacobian(fmap, q)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if not np.all(np.isfinite(J)):
        raise DomainError(f"non-finite Jacobian of {fmap.name} at {q.tolist()}")
    return Bivector3.from_matrix(fmap.target, push_matrix(J, P))


# -- quadratic bracket on SU(1,1) -------------------------------------------

_ENTRIES = ("u", "ubar", "v", "vbar")


def pig_bracket(i: str, j: str, g: GElement) -> complex:
    """Entrywise bracket of the matrix coefficients of ``g``."""
    if i not in _ENTRIES or j not in _ENTRIES:
        raise ValueError(f"entries must be among {_ENTRIES}, got {i!r}, {j!r}")
    u, v = g.u, g.v
    ub, vb = u.conjugate(), v.conjugate()
    table = {
        ("u", "ubar"): -2j * abs(v) ** 2,
        ("u", "v"): -1j * u * v,
        ("u", "vbar"): -1j * u * vb,
        ("ubar", "v"): 1j * ub * v,
        ("ubar", "vbar"): 1j * ub * vb,
        ("v", "vbar"): 0j,
    }
    if i == j:
        return 0j
    if (i, j) in table:
        return table[(i, j)]
    return -table[(j, i)]


def _real4(V) -> np.ndarray:
    # tangent matrix -> (Re du, Im du, Re dv, Im dv), read off the first row
    return np.array([V[0, 0].real, V[0, 0].imag, V[0, 1].real, V[0, 1].imag])


def pig_tensor(g: GElement, lam_left=X_MAT, lam_right=Y_MAT) -> np.ndarray:
    """``(r_g)_* L - (l_g)_* L`` for ``L = 1/2 X ^ Y``, as a 4x4 matrix.

    Coordinates are ``(Re u, Im u, Re v, Im v)``; translations act linearly on
    the ambient matrices, so their differentials are plain matrix products.
    """
    G = to_matrix(g)
    a, b = _real4(lam_left @ G), _real4(lam_right @ G)
    c, d = _real4(G @ lam_left), _real4(G @ lam_right)
    return 0.5 * (np.outer(a, b) - np.outer(b, a)) - 0.5 * (np.outer(c, d) - np.outer(d, c))


_ENTRY_COVECTORS = {
    "u": np.array([1, 1j, 0, 0]),
    "ubar": np.array([1, -1j, 0, 0]),
    "v": np.array([0, 0, 1, 1j]),
    "vbar": np.array([0, 0, 1, -1j]),
}


def bracket_from_tensor(P4: np.ndarray, i: str, j: str) -> complex:
    """Complex bracket of two entry functions induced by a real 4x4 bivector."""
    return complex(_ENTRY_COVECTORS[i] @ P4 @ _ENTRY_COVECTORS[j])


ENTRY_PAIRS = (("u", "ubar"), ("u", "v"), ("u", "vbar"),
               ("ubar", "v"), ("ubar", "vbar"), ("v", "vbar"))

# tangent directions at any h for the coordinates (Re u, Im u, Re v, Im v)
_DIRECTIONS = (np.eye(2, dtype=complex),
               np.diag([1j, -1j]),
               np.array([[0, 1], [1, 0]], dtype=complex),
               np.array([[0, 1j], [-1j, 0]]))


def left_translation_jacobian(g: GElement) -> np.ndarray:
    G = to_matrix(g)
    return np.column_stack([_real4(G @ E) for E in _DIRECTIONS])


def right_translation_jacobian(h: GElement) -> np.ndarray:
    Hm = to_matrix(h)
    return np.column_stack([_real4(E @ Hm) for E in _DIRECTIONS])


def multiplicativity_defect(g: GElement, h: GElement) -> float:
    """``max |pi(gh) - (l_g)_* pi(h) - (r_h)_* pi(g)|``."""
    gh = GElement(*_uv(to_matrix(g) @ to_matrix(h)))
    L = left_translation_jacobian(g)
    R = right_translation_jacobian(h)
    res = pig_tensor(gh) - L @ pig_tensor(h) @ L.T - R @ pig_tensor(g) @ R.T
    return float(np.max(np.abs(res)))


def _uv(M):
    u, v = complex(M[0, 0]), complex(M[0, 1])
    # renormalise so rounding in the product does not trip the |u|^2-|v|^2 check
    n = math.sqrt(abs(u) ** 2 - abs(v) ** 2)
    return u / n, v / n


def sphere_family_coeff(w: complex, tau: float) -> float:
    """Coefficient of ``i dw ^ d(conj w)`` in the family ``pi(tau)`` on the sphere."""
    m = abs(w) ** 2
    return (1 - m) * m + tau * (1 - m) ** 2
