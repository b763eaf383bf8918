"""Spectral inequalities for admissible elements.

The multiplicative inequality ``gamma(b1 b2) >= gamma(b1) + gamma(b2)`` for
admissible upper-triangular elements, its linear counterpart (the reversed
triangle inequality for future timelike vectors), and closure of admissible
elements under products.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .maps import adm_spectrum_an, dress
from .spaces import ANPoint, GElement, QStarPoint, is_admissible


@dataclass(frozen=True)
class SampleSpec:
    lam: float
    seed: int
    boost_range: float = 2.0

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"lam must be positive, got {self.lam}")
        if not self.boost_range >= 0:
            raise ValueError(f"boost_range must be non-negative, got {self.boost_range}")


def random_group_element(rng: np.random.Generator, boost_range: float) -> GElement:
    """``u = cosh(r) e^{i alpha}``, ``v = sinh(r) e^{i beta}`` with uniform r, alpha, beta."""
    alpha, beta = rng.uniform(0, 2 * math.pi, size=2)
    r = rng.uniform(0, boost_range) if boost_range > 0 else 0.0
    return GElement.from_angles(r, alpha, beta)


def sample_admissible_an(spec: SampleSpec) -> ANPoint:
    """Dress ``diag(e^{lam/2}, e^{-lam/2})`` by a seeded random SU(1,1) element."""
    rng = np.random.default_rng(spec.seed)
    return dress(spec.lam, random_group_element(rng, spec.boost_range)).b_prime


def _check(b: ANPoint, which: str):
    if not is_admissible(b):
        raise DomainError(f"{which} = {b} is not admissible")


def an_product(b1: ANPoint, b2: ANPoint) -> ANPoint:
    """``b1 b2`` in AN coordinates: upper entry ``e^{z1/2} m2 + m1 e^{-z2/2}``."""
    m = (math.exp(b1.z / 2) * complex(b2.x, b2.y)
         + complex(b1.x, b1.y) * math.exp(-b2.z / 2))
    return ANPoint(b1.z + b2.z, m.real, m.imag)


def product_spectrum(b1: ANPoint, b2: ANPoint) -> float:
    """Admissible spectrum of the matrix product ``b1 b2``.

    Evaluated on the AN coordinates of the product, which avoids the
    cancellation in ``(b1 b2)^dagger (b1 b2)``; raises DomainError if the
    product is not admissible.
    """
    return adm_spectrum_an(an_product(b1, b2))


def thompson_defect(b1: ANPoint, b2: ANPoint) -> float:
    """``gamma(b1 b2) - gamma(b1) - gamma(b2)``; non-negative for admissible inputs."""
    _check(b1, "b1")
    _check(b2, "b2")
    return product_spectrum(b1, b2) - adm_spectrum_an(b1) - adm_spectrum_an(b2)


def product_admissible(b1: ANPoint, b2: ANPoint) -> bool:
    _check(b1, "b1")
    _check(b2, "b2")
    try:
        product_spectrum(b1, b2)
    except DomainError:
        return False
    return True


def linear_defect(m1: QStarPoint, m2: QStarPoint) -> float:
    """``lam(m1 + m2) - lam(m1) - lam(m2)`` for admissible ``m1``, ``m2``."""
    for name, m in (("m1", m1), ("m2", m2)):
        if not is_admissible(m):
            raise DomainError(f"{name} = {m} is not admissible")
    total = QStarPoint(m1.x + m2.x, m1.y + m2.y, m1.z + m2.z)
    return total.lam - m1.lam - m2.lam


def product_trace_closed_form(z1: float, g: GElement, z2: float) -> float:
    """Trace of ``(b1 a2)^dagger (b1 a2)`` with ``b1 = dress(z1, g)`` and diagonal ``a2``.

    With ``r = e^{z1/2}`` and ``rho = e^{z2/2}`` this is
    ``r^2 rho^2 |u|^2 - r^-2 rho^2 |v|^2 + r^-2 rho^-2 |u|^2 - r^2 rho^-2 |v|^2``.
    """
    r2, p2 = math.exp(z1), math.exp(z2)
    au, av = abs(g.u) ** 2, abs(g.v) ** 2
    return r2 * p2 * au - p2 / r2 * av + au / (r2 * p2) - r2 / p2 * av


def reduced_defect(z1: float, g: GElement, z2: float) -> float:
    """Defect for a diagonal second factor from ``mu + 1/mu = T``, without matrices.

    ``T = r^2 rho^2 + r^-2 rho^-2 + |v|^2 (rho^2 - rho^-2)(r^2 - r^-2)`` and the
    defect is ``log(mu) - log(r^2 rho^2)`` for the larger root ``mu``.
    """
    av = abs(g.v) ** 2
    # T - 2 = 4 sinh^2((z1+z2)/2) + 4 |v|^2 sinh(z1) sinh(z2), no cancellation
    half = 2 * math.sinh((z1 + z2) / 2) ** 2 + 2 * av * math.sinh(z1) * math.sinh(z2)
    log_mu = math.log1p(half + math.sqrt(half * (half + 2)))
    return log_mu - (z1 + z2)


# -- batched sweeps ----------------------------------------------------------
# Stacked-array versions of the scalar functions above, used for the 1e5-pair
# sweeps; tests check them against the scalar path pair by pair.

def dress_batch(z, u, v):
    """``b_prime`` of :func:`~su11.maps.dress` for arrays; returns ``(z', x', y')``."""
    z = np.asarray(z, dtype=float)
    rho = np.sqrt(np.abs(u) ** 2 * np.exp(z) - np.abs(v) ** 2 * np.exp(-z))
    m = 2 * np.conj(u) * v * np.sinh(z) / rho
    return 2 * np.log(rho), m.real, m.imag


def an_matrices(z, x, y):
    n = np.shape(z)[0]
    M = np.zeros((n, 2, 2), dtype=np.complex128)
    M[:, 0, 0] = np.exp(z / 2)
    M[:, 0, 1] = x + 1j * y
    M[:, 1, 1] = np.exp(-z / 2)
    return M


def adm_spectrum_an_batch(z, x, y):
    """Admissible spectrum per row; NaN where the element is not admissible."""
    half = 2 * np.sinh(z / 2) ** 2 - (x * x + y * y) / 2
    ok = (z > 0) & (half > 0.5e-12)
    safe = np.where(ok, half, 1.0)
    return np.where(ok, np.log1p(safe + np.sqrt(safe * (safe + 2))), np.nan)


def spectrum_from_matrices(M):
    """Admissible spectrum of each stacked SL(2, C) matrix; NaN if not admissible.

    ``det(M^dagger M) = 1``, so ``gamma = arccosh(T/2)`` with ``T`` the trace;
    this avoids the cancelling determinant of ``M^dagger M``.
    """
    Md = np.conj(np.swapaxes(M, -1, -2))
    Md[:, 0, 1] *= -1
    Md[:, 1, 0] *= -1
    S = Md @ M
    T = (S[:, 0, 0] + S[:, 1, 1]).real
    c = S[:, 0, 0].real
    ok = (T > 2 + 1e-12) & (c > T / 2)
    half = np.where(ok, (T - 2) / 2, 1.0)
    return np.where(ok, np.log1p(half + np.sqrt(half * (half + 2))), np.nan)


@dataclass
class ThompsonSweep:
    """Per-pair results of a seeded sweep; arrays of length ``n``."""

    lam1: np.ndarray
    lam2: np.ndarray
    b1: np.ndarray  # (n, 3) rows (z, x, y)
    b2: np.ndarray
    gamma1: np.ndarray
    gamma2: np.ndarray
    gamma12: np.ndarray

    @property
    def defect(self) -> np.ndarray:
        return self.gamma12 - self.gamma1 - self.gamma2

    @property
    def admissible(self) -> np.ndarray:
        return np.isfinite(self.gamma12)


def thompson_sweep(seed: int, n: int, lam_range=(0.05, 3.0), boost_range: float = 2.0):
    """Seeded pairs of admissible elements and their spectra.

    ``lam1``, ``lam2`` are log-uniform on ``lam_range``; each factor is the
    diagonal element with that spectrum dressed by a random group element.
    Pair ``i`` depends only on ``(seed, i)``.
    """
    rng = np.random.default_rng(seed)
    lo, hi = np.log(lam_range[0]), np.log(lam_range[1])
    draws = rng.uniform(size=(n, 8))
    lam1 = np.exp(lo + (hi - lo) * draws[:, 0])
    lam2 = np.exp(lo + (hi - lo) * draws[:, 1])
    factors = []
    for lam, k in ((lam1, 2), (lam2, 5)):
        alpha = 2 * math.pi * draws[:, k]
        beta = 2 * math.pi * draws[:, k + 1]
        r = boost_range * draws[:, k + 2]
        u, v = np.cosh(r) * np.exp(1j * alpha), np.sinh(r) * np.exp(1j * beta)
        factors.append(np.column_stack(dress_batch(lam, u, v)))
    b1, b2 = factors
    # the product is again upper triangular: diagonal e^{(z1+z2)/2} and upper
    # entry e^{z1/2} m2 + m1 e^{-z2/2}; reusing the AN formula avoids the
    # cancellation in the trace of M^dagger M
    m = (np.exp(b1[:, 0] / 2) * (b2[:, 1] + 1j * b2[:, 2])
         + (b1[:, 1] + 1j * b1[:, 2]) * np.exp(-b2[:, 0] / 2))
    return ThompsonSweep(lam1, lam2, b1, b2,
                         adm_spectrum_an_batch(*b1.T), adm_spectrum_an_batch(*b2.T),
                         adm_spectrum_an_batch(b1[:, 0] + b2[:, 0], m.real, m.imag))


def linear_sweep(seed: int, n: int, lam_range=(0.05, 3.0), s_max: float = 3.0):
    """Seeded pairs of admissible points of su(1,1)* and their linear defects."""
    rng = np.random.default_rng(seed)
    lo, hi = np.log(lam_range[0]), np.log(lam_range[1])
    draws = rng.uniform(size=(n, 6))

    def points(cols):
        lam = np.exp(lo + (hi - lo) * draws[:, cols[0]])
        phi = 2 * math.pi * draws[:, cols[1]]
        s = s_max * draws[:, cols[2]]
        r = lam * np.sinh(s)
        return np.column_stack([r * np.cos(phi), r * np.sin(phi), lam * np.cosh(s)]), lam

    m1, l1 = points((0, 1, 2))
    m2, l2 = points((3, 4, 5))
    tot = m1 + m2
    rt = np.hypot(tot[:, 0], tot[:, 1])
    lam_sum = np.sqrt((tot[:, 2] - rt) * (tot[:, 2] + rt))
    return m1, m2, lam_sum - l1 - l2
