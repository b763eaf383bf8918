"""Seeded samplers for the verification sweeps."""

import math

import numpy as np

from .maps import dress
from .spaces import ANPoint, GElement, QPoint, QStarPoint


# Domain for checks with absolute tolerances: z stays below 2 cosh(1.5) ~ 4.7,
# so entries of pi and of the Flaschka-Ratiu image stay O(100).
MODERATE = {"lam_range": (0.1, 2.0), "s_range": (0.0, 1.5)}


def log_uniform(rng, lo, hi, size=None):
    return np.exp(rng.uniform(math.log(lo), math.log(hi), size=size))


def admissible_qstar(rng, n, lam_range=(0.1, 3.0), s_range=(0.0, 3.0)) -> list[QStarPoint]:
    """Points of the admissible cone from hyperbolic coordinates."""
    lam = log_uniform(rng, *lam_range, size=n)
    phi = rng.uniform(0, 2 * math.pi, size=n)
    s = rng.uniform(*s_range, size=n)
    r = lam * np.sinh(s)
    return [QStarPoint(float(a), float(b), float(c))
            for a, b, c in zip(r * np.cos(phi), r * np.sin(phi), lam * np.cosh(s))]


def group_elements(rng, n, boost_range=2.0) -> list[GElement]:
    r = rng.uniform(0, boost_range, size=n)
    alpha = rng.uniform(0, 2 * math.pi, size=n)
    beta = rng.uniform(0, 2 * math.pi, size=n)
    return [GElement.from_angles(float(a), float(b), float(c)) for a, b, c in zip(r, alpha, beta)]


def admissible_an(rng, n, lam_range=(0.05, 2.0), boost_range=1.0) -> list[ANPoint]:
    """Dressed diagonal elements: every admissible AN element arises this way."""
    lam = log_uniform(rng, *lam_range, size=n)
    gs = group_elements(rng, n, boost_range)
    return [dress(float(z), g).b_prime for z, g in zip(lam, gs)]


def box(rng, n, lo, hi) -> np.ndarray:
    """``n`` points uniform in the box ``lo <= q <= hi`` (3-vectors)."""
    return rng.uniform(lo, hi, size=(n, 3))


def q_points(rng, n) -> list[QPoint]:
    q = box(rng, n, (-2.0, -2.0, 0.1), (2.0, 2.0, 3.0))
    return [QPoint(*map(float, row)) for row in q]
