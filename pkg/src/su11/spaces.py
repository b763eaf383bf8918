"""Coordinate points, charts and matrix realizations.

Every point type stores its coordinates in a fixed order, and the chart of the
same name uses exactly that order for tangent and bivector components:

=============  ======================  =========================
chart          point type              coordinate order
=============  ======================  =========================
RECT_QSTAR     :class:`QStarPoint`     (x, y, z)
RECT_AN        :class:`ANPoint`        (z, x, y)
RECT_Q         :class:`QPoint`         (a, b, c)
HYPERBOLIC     :class:`HypCoords`      (lambda, phi, s)
GT_STAR        :class:`GTStarCoords`   (z, lambda, theta)
GT_Q           :class:`GTQCoords`      (w, lambda, theta)
=============  ======================  =========================
"""

import cmath
import enum
import math
from dataclasses import dataclass, field, fields
from functools import singledispatch

import numpy as np

from .algebra import dagger, det, mat2
from .errors import ChartError, DomainError, ShapeError

TWO_PI = 2.0 * math.pi


class Chart(str, enum.Enum):
    RECT_QSTAR = "rect_qstar"
    RECT_AN = "rect_an"
    RECT_Q = "rect_q"
    HYPERBOLIC = "hyperbolic"
    GT_STAR = "gt_star"
    GT_Q = "gt_q"


CHART_COORDS = {
    Chart.RECT_QSTAR: ("x", "y", "z"),
    Chart.RECT_AN: ("z", "x", "y"),
    Chart.RECT_Q: ("a", "b", "c"),
    Chart.HYPERBOLIC: ("lambda", "phi", "s"),
    Chart.GT_STAR: ("z", "lambda", "theta"),
    Chart.GT_Q: ("w", "lambda", "theta"),
}


class Space(str, enum.Enum):
    QSTAR = "qstar"
    AN = "an"
    Q = "q"
    G = "g"


def _check_finite(obj):
    for f in fields(obj):
        v = getattr(obj, f.name)
        if isinstance(v, bool):
            continue
        if isinstance(v, complex):
            ok = math.isfinite(v.real) and math.isfinite(v.imag)
        else:
            ok = math.isfinite(v)
        if not ok:
            raise ValueError(f"{type(obj).__name__}.{f.name} is not finite: {v!r}")


class _Point:
    """Mixin: finite-coordinate check and array conversion."""

    def __post_init__(self):
        _check_finite(self)

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, n) for n in self._coords], dtype=float)

    @classmethod
    def from_array(cls, arr):
        return cls(*(float(v) for v in arr))


@dataclass(frozen=True)
class QStarPoint(_Point):
    """Point of su(1,1)* realised as ``[[z, x+iy], [-x+iy, -z]]``."""

    x: float
    y: float
    z: float
    _coords = ("x", "y", "z")

    @property
    def lam(self) -> float:
        """``sqrt(z^2 - x^2 - y^2)``; NaN outside the timelike region."""
        r = math.hypot(self.x, self.y)
        q = (abs(self.z) - r) * (abs(self.z) + r)
        return math.sqrt(q) if q >= 0 else math.nan


@dataclass(frozen=True)
class ANPoint(_Point):
    """Upper-triangular ``[[exp(z/2), x+iy], [0, exp(-z/2)]]``."""

    z: float
    x: float
    y: float
    _coords = ("z", "x", "y")

    @property
    def delta(self) -> float:
        """Trace of ``b^dagger b``: ``e^z + e^-z - x^2 - y^2``."""
        return 2.0 * math.cosh(self.z) - self.x ** 2 - self.y ** 2


@dataclass(frozen=True)
class QPoint(_Point):
    """Element ``[[c, a+ib], [-a+ib, d]]`` of Q with ``d = (1 - a^2 - b^2)/c``."""

    a: float
    b: float
    c: float
    _coords = ("a", "b", "c")

    def __post_init__(self):
        super().__post_init__()
        if not self.c > 0:
            raise DomainError(f"QPoint requires c > 0, got c={self.c}")

    @property
    def d(self) -> float:
        return (1.0 - self.a ** 2 - self.b ** 2) / self.c

    @property
    def trace(self) -> float:
        return self.c + self.d

    @property
    def trace_excess(self) -> float:
        """``trace - 2`` computed without cancellation."""
        return ((self.c - 1.0) ** 2 - self.a ** 2 - self.b ** 2) / self.c


@dataclass(frozen=True)
class GElement:
    """SU(1,1) element ``[[u, v], [conj v, conj u]]`` with ``|u|^2 - |v|^2 = 1``."""

    u: complex
    v: complex

    def __post_init__(self):
        object.__setattr__(self, "u", complex(self.u))
        object.__setattr__(self, "v", complex(self.v))
        _check_finite(self)
        au, av = abs(self.u) ** 2, abs(self.v) ** 2
        if abs(au - av - 1.0) > 1e-12 * max(1.0, au):
            raise DomainError(f"|u|^2 - |v|^2 = {au - av!r}, expected 1")

    @classmethod
    def from_angles(cls, r: float, alpha: float, beta: float) -> "GElement":
        """``u = cosh(r) e^{i alpha}``, ``v = sinh(r) e^{i beta}``."""
        return cls(math.cosh(r) * cmath.exp(1j * alpha), math.sinh(r) * cmath.exp(1j * beta))

    def inverse(self) -> "GElement":
        return GElement(self.u.conjugate(), -self.v)

    def real_coords(self) -> np.ndarray:
        return np.array([self.u.real, self.u.imag, self.v.real, self.v.imag])


@dataclass(frozen=True)
class HypCoords(_Point):
    lam: float
    phi: float
    s: float
    on_axis: bool = field(default=False, compare=False)
    _coords = ("lam", "phi", "s")

    def __post_init__(self):
        super().__post_init__()
        if not (self.lam > 0 and 0 <= self.phi < TWO_PI and self.s >= 0):
            raise DomainError(f"hyperbolic coordinates out of range: {self}")


@dataclass(frozen=True)
class GTStarCoords(_Point):
    z: float
    lam: float
    theta: float
    on_axis: bool = field(default=False, compare=False)
    _coords = ("z", "lam", "theta")

    def __post_init__(self):
        super().__post_init__()
        if not (self.lam > 0 and self.z >= self.lam and 0 <= self.theta < TWO_PI):
            raise DomainError(f"Gelfand-Tsetlin coordinates out of range: {self}")


@dataclass(frozen=True)
class GTQCoords(_Point):
    w: float
    lam: float
    theta: float
    on_axis: bool = field(default=False, compare=False)
    _coords = ("w", "lam", "theta")

    def __post_init__(self):
        super().__post_init__()
        if not (self.lam > 0 and self.w >= self.lam and 0 <= self.theta < TWO_PI):
            raise DomainError(f"Gelfand-Tsetlin coordinates out of range: {self}")


_SPACE_OF = {QStarPoint: Space.QSTAR, ANPoint: Space.AN, QPoint: Space.Q, GElement: Space.G}


def _angle(y, x):
    a = math.atan2(y, x)
    if a < 0:
        a += TWO_PI
    # atan2 of a tiny negative y can round to exactly 2*pi
    return 0.0 if a >= TWO_PI else a


# -- matrix realizations ----------------------------------------------------

@singledispatch
def _to_matrix(p):
    raise ChartError(f"no matrix realization for {type(p).__name__}")


@_to_matrix.register
def _(p: QStarPoint):
    return mat2(p.z, complex(p.x, p.y), complex(-p.x, p.y), -p.z)


@_to_matrix.register
def _(p: ANPoint):
    return mat2(math.exp(p.z / 2), complex(p.x, p.y), 0, math.exp(-p.z / 2))


@_to_matrix.register
def _(p: QPoint):
    return mat2(p.c, complex(p.a, p.b), complex(-p.a, p.b), p.d)


@_to_matrix.register
def _(p: GElement):
    return mat2(p.u, p.v, p.v.conjugate(), p.u.conjugate())


def to_matrix(p, space=None) -> np.ndarray:
    """Matrix realization of a point; ``space``, if given, must match the point type."""
    if space is not None and _SPACE_OF.get(type(p)) != Space(space):
        raise ChartError(f"{type(p).__name__} is not a point of space {Space(space).value}")
    return _to_matrix(p)


def from_matrix(M, space):
    """Recover coordinates of ``M`` in ``space``.

    ``M`` must lie in the space to within ``1e-10`` relative to its size;
    otherwise :class:`ShapeError` is raised carrying the residual.
    """
    M = np.asarray(M, dtype=np.complex128)
    space = Space(space)
    scale = max(1.0, float(np.max(np.abs(M))))
    tol = 1e-10 * scale

    def check(residual, what):
        if not residual <= tol:
            raise ShapeError(f"matrix is not {what}", residual)

    if space is Space.QSTAR:
        res = max(float(np.max(np.abs(dagger(M) - M))), abs(M[0, 0] + M[1, 1]))
        check(res, "a traceless fixed point of dagger")
        return QStarPoint(M[0, 1].real, M[0, 1].imag, M[0, 0].real)
    if space is Space.AN:
        m11, m22 = M[0, 0], M[1, 1]
        res = max(abs(M[1, 0]), abs(m11.imag), abs(m22.imag), abs(det(M) - 1))
        check(res, "upper triangular with det 1")
        if not m11.real > 0:
            raise ShapeError("diagonal of AN element must be positive", abs(m11.real))
        return ANPoint(2.0 * math.log(m11.real), M[0, 1].real, M[0, 1].imag)
    if space is Space.Q:
        res = max(float(np.max(np.abs(dagger(M) - M))), abs(det(M) - 1))
        check(res, "in Q (dagger-fixed, det 1)")
        if not M[0, 0].real > 0:
            raise ShapeError("chart Q' needs c > 0", abs(M[0, 0].real))
        return QPoint(M[0, 1].real, M[0, 1].imag, M[0, 0].real)
    res = max(abs(M[1, 0] - M[0, 1].conjugate()), abs(M[1, 1] - M[0, 0].conjugate()),
              abs(det(M) - 1))
    check(res, "in SU(1,1)")
    return GElement(complex(M[0, 0]), complex(M[0, 1]))


# -- admissibility ----------------------------------------------------------

@singledispatch
def is_admissible(p) -> bool:
    raise ChartError(f"admissibility is not defined for {type(p).__name__}")


@is_admissible.register
def _(p: QStarPoint) -> bool:
    return p.z > 0 and p.z > math.hypot(p.x, p.y)


@is_admissible.register
def _(p: ANPoint) -> bool:
    # Delta - 2 = 4 sinh^2(z/2) - |x+iy|^2
    return p.z > 0 and 4.0 * math.sinh(p.z / 2) ** 2 > p.x ** 2 + p.y ** 2


@is_admissible.register
def _(p: QPoint) -> bool:
    return p.trace_excess > 0 and p.c > p.trace / 2


def _require(p):
    if not is_admissible(p):
        raise DomainError(f"{p} is not admissible")


# -- chart conversions ------------------------------------------------------

def hyp_of_rect(p: QStarPoint) -> HypCoords:
    _require(p)
    r = math.hypot(p.x, p.y)
    lam = math.sqrt((p.z - r) * (p.z + r))
    s = math.asinh(r / lam)
    on_axis = r == 0
    return HypCoords(lam, 0.0 if on_axis else _angle(p.y, p.x), s, on_axis=on_axis)


def rect_of_hyp(h: HypCoords) -> QStarPoint:
    r = h.lam * math.sinh(h.s)
    return QStarPoint(r * math.cos(h.phi), r * math.sin(h.phi), h.lam * math.cosh(h.s))


def gtstar_of_rect(p: QStarPoint) -> GTStarCoords:
    _require(p)
    r = math.hypot(p.x, p.y)
    lam = math.sqrt((p.z - r) * (p.z + r))
    on_axis = r == 0
    return GTStarCoords(p.z, lam, 0.0 if on_axis else _angle(p.y, p.x), on_axis=on_axis)


def rect_of_gtstar(g: GTStarCoords) -> QStarPoint:
    r = math.sqrt((g.z - g.lam) * (g.z + g.lam))
    return QStarPoint(r * math.cos(g.theta), r * math.sin(g.theta), g.z)


def q_lambda(q: QPoint) -> float:
    """``arccosh(T/2)`` for the trace ``T`` of ``q``, evaluated as ``log1p``."""
    half = q.trace_excess / 2
    if not half > 0:
        raise DomainError(f"trace of {q} is not greater than 2")
    return math.log1p(half + math.sqrt(half * (half + 2.0)))


def gtq_of_qpoint(q: QPoint) -> GTQCoords:
    _require(q)
    lam = q_lambda(q)
    on_axis = q.a == 0 and q.b == 0
    w = math.log(q.c)
    # rounding can put w a hair below lambda on the axis
    w = max(w, lam)
    return GTQCoords(w, lam, 0.0 if on_axis else _angle(q.b, q.a), on_axis=on_axis)


def qpoint_of_gtq(g: GTQCoords) -> QPoint:
    # (e^w - e^lam)(e^w - e^-lam), with the first factor via expm1
    r2 = math.exp(g.lam) * math.expm1(g.w - g.lam) * (math.exp(g.w) - math.exp(-g.lam))
    r = math.sqrt(max(r2, 0.0))
    return QPoint(r * math.cos(g.theta), r * math.sin(g.theta), math.exp(g.w))
