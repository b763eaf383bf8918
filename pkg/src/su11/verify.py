"""Verification suites and their reports.

Each suite draws its own seeded sample, runs one or more checks, and
aggregates per-point defects by max. A check has its own tolerance; the report
states everything in units of the suite's primary tolerance so that
``pass == (max_defect <= tolerance)`` holds at the top level too.
"""

import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import sampling
from .algebra import eig2
from .gwflow import FlowConfig, flow_array, verify_gw_batch
from .maps import (
    FR, LOG_SYM, SYM, adm_spectrum_an, dress, exp_q, fr_map, log_q, sym, sym_inverse,
    sym_matrix,
)
from .spaces import (
    ANPoint, Chart, QStarPoint, gtq_of_qpoint, gtstar_of_rect, hyp_of_rect,
    qpoint_of_gtq, rect_of_gtstar, rect_of_hyp, to_matrix,
)
from .tensors import (
    ENTRY_PAIRS, PI0, PI_ADM, PI_AN, PI_Q, Bivector3, bracket_from_tensor,
    casimir_defect, fd_jacobian, jacobi_defect, multiplicativity_defect, pi_t, pig_bracket,
    pig_tensor, push_matrix, pushforward, tensor_at,
)
from .thompson import linear_sweep, reduced_defect, thompson_defect, thompson_sweep


@dataclass
class Check:
    name: str
    tolerance: float
    max_defect: float
    worst_point: list
    passed: bool

    def to_dict(self):
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


@dataclass
class VerificationReport:
    suite: str
    samples: int
    seed: int
    tolerance: float
    max_defect: float
    worst_point: list
    passed: bool
    wall_time_ms: int
    checks: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "samples": self.samples,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "max_defect": self.max_defect,
            "worst_point": list(self.worst_point),
            "pass": self.passed,
            "wall_time_ms": self.wall_time_ms,
            "checks": [c.to_dict() for c in self.checks],
            "extras": dict(self.extras),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        checks = [Check(c["name"], c["tolerance"], c["max_defect"], c["worst_point"], c["pass"])
                  for c in d.get("checks", [])]
        return cls(d["suite"], d["samples"], d["seed"], d["tolerance"], d["max_defect"],
                   d["worst_point"], d["pass"], d["wall_time_ms"], checks, d.get("extras", {}))


# -- helpers -----------------------------------------------------------------

class _Collector:
    """Accumulates ``(name, tolerance, defects, points)`` for one suite."""

    def __init__(self):
        self.items = []
        self.extras = {}

    def add(self, name, tol, defects, points):
        self.items.append((name, tol, list(defects), list(points)))


def _coords(p):
    if hasattr(p, "as_array"):
        return [float(v) for v in p.as_array()]
    if hasattr(p, "real_coords"):
        return [float(v) for v in p.real_coords()]
    return [float(v) for v in np.ravel(p)]


def _worst(defects, points):
    if not defects:
        return 0.0, []
    arr = np.asarray(defects, dtype=float)
    # NaN means the check could not be evaluated; treat as infinitely bad
    arr = np.where(np.isnan(arr), np.inf, arr)
    i = int(np.argmax(arr))
    return float(arr[i]), _coords(points[i])


def _angle_diff(a, b):
    return abs(math.remainder(a - b, 2 * math.pi))


def _jacobian_periodic(func, q, periodic=()):
    """Richardson Jacobian whose angular output components are differenced mod 2 pi."""
    base = np.asarray(func(q))

    def lifted(p):
        out = np.asarray(func(p), dtype=float).copy()
        for k in periodic:
            out[k] = base[k] + math.remainder(out[k] - base[k], 2 * math.pi)
        return out

    return fd_jacobian(lifted, q)


# -- suites ----------------------------------------------------------------

def _moderate(rng, n):
    return [p.as_array() for p in sampling.admissible_qstar(rng, n, **sampling.MODERATE)]


def _suite_jacobi(n, rng, col):
    specs = [
        ("pi0", PI0, Chart.RECT_QSTAR, sampling.box(rng, n, -3.0, 3.0)),
        ("pi_an", PI_AN, Chart.RECT_AN, sampling.box(rng, n, -2.0, 2.0)),
        ("pi_q", PI_Q, Chart.RECT_Q, [q.as_array() for q in sampling.q_points(rng, n)]),
        ("pi", PI_ADM, Chart.RECT_QSTAR, _moderate(rng, n)),
        ("pi_hyperbolic", PI_ADM, Chart.HYPERBOLIC,
         [hyp_of_rect(QStarPoint(*q)).as_array() for q in _moderate(rng, n)]),
        ("pi_t", pi_t(0.5), Chart.RECT_QSTAR, _moderate(rng, n)),
    ]
    for name, s, chart, pts in specs:
        col.add(name, 1e-12, [jacobi_defect(s, q, chart) for q in pts], pts)


def _suite_casimir(n, rng, col):
    specs = [
        ("pi0", PI0, Chart.RECT_QSTAR, sampling.box(rng, n, -3.0, 3.0)),
        ("pi_an", PI_AN, Chart.RECT_AN, sampling.box(rng, n, -2.0, 2.0)),
        ("pi_q", PI_Q, Chart.RECT_Q,
         [exp_q(QStarPoint(*q)).as_array() for q in _moderate(rng, n)]),
        ("pi", PI_ADM, Chart.RECT_QSTAR, _moderate(rng, n)),
    ]
    for name, s, chart, pts in specs:
        col.add(name, 1e-12, [casimir_defect(s, q, chart) for q in pts], pts)


def _suite_sym(n, rng, col):
    pts = sampling.admissible_an(rng, n)
    col.add("pushforward", 1e-10,
            [pushforward(SYM, PI_AN, p, "analytic").dist(tensor_at(PI_Q, Chart.RECT_Q, sym(p)))
             for p in pts], pts)
    col.add("matrix-oracle", 1e-13,
            [float(np.max(np.abs(sym(p).as_array() - sym_matrix(p).as_array()))) for p in pts], pts)
    col.add("inverse", 1e-11,
            [float(np.max(np.abs(sym_inverse(sym_matrix(p)).as_array() - p.as_array())))
             for p in pts], pts)


def _suite_logsym(n, rng, col):
    pts = sampling.admissible_an(rng, n)
    col.add("pushforward", 1e-6,
            [pushforward(LOG_SYM, PI_AN, p, "fd").dist(
                tensor_at(PI_ADM, Chart.RECT_QSTAR, log_q(sym(p)))) for p in pts], pts)


def _suite_fr(n, rng, col):
    pts = sampling.admissible_qstar(rng, n, **sampling.MODERATE)
    poisson, eig, gt = [], [], []
    for p in pts:
        q = fr_map(p)
        poisson.append(pushforward(FR, PI0, p, "fd").dist(tensor_at(PI_Q, Chart.RECT_Q, q)))
        mu1, mu2 = eig2(to_matrix(q))
        lam = p.lam
        eig.append(max(abs(mu1 - math.exp(lam)), abs(mu2 - math.exp(-lam))))
        g = gtq_of_qpoint(q)
        s = gtstar_of_rect(p)
        err = max(abs(g.w - s.z), abs(g.lam - s.lam))
        if not s.on_axis:
            err = max(err, _angle_diff(g.theta, s.theta))
        gt.append(err)
    col.add("poisson", 1e-6, poisson, pts)
    col.add("eigenvalues", 1e-10, eig, pts)
    col.add("gt-chart", 1e-10, gt, pts)


def _suite_gw(n, rng, col, cfg=FlowConfig()):
    pts = sampling.admissible_qstar(rng, n, lam_range=(0.1, 3.0), s_range=(0.0, 3.0))
    if not pts:
        for name, tol in (("poisson", 1e-3), ("lambda-conservation", 1e-6), ("step-halving", 1e-8)):
            col.add(name, tol, [], [])
        return
    P = np.array([p.as_array() for p in pts])
    defects, images = verify_gw_batch(P, cfg)
    lam0 = np.array([p.lam for p in pts])
    # far-out images can fail the strict cone test in floating point
    r1 = np.hypot(images[:, 0], images[:, 1])
    lam1 = np.sqrt(np.maximum((images[:, 2] - r1) * (images[:, 2] + r1), 0.0))
    fine = flow_array(P, FlowConfig(cfg.t_start, 2 * cfg.steps, cfg.fd_step))
    col.add("poisson", 1e-3, defects, pts)
    col.add("lambda-conservation", 1e-6, np.abs(lam1 - lam0), pts)
    col.add("step-halving", 1e-8, np.max(np.abs(fine - images), axis=1), pts)


def _suite_pig(n, rng, col):
    gs = sampling.group_elements(rng, n)
    g0 = sampling.group_elements(np.random.default_rng(12345), 1)[0]
    kappa = (pig_bracket("u", "v", g0) / bracket_from_tensor(pig_tensor(g0), "u", "v")).real
    col.extras["kappa"] = kappa
    table = []
    for g in gs:
        P4 = pig_tensor(g)
        table.append(max(abs(kappa * bracket_from_tensor(P4, i, j) - pig_bracket(i, j, g))
                         for i, j in ENTRY_PAIRS))
    col.add("table-vs-lambda", 1e-10, table, gs)
    m = max(1, n // 10) if n else 0
    hs = sampling.group_elements(rng, m)
    col.add("multiplicativity", 1e-8,
            [multiplicativity_defect(g, h) for g, h in zip(gs[:m], hs)], gs[:m])


def _suite_dressing(n, rng, col):
    zs = sampling.log_uniform(rng, 0.05, 3.0, size=n)
    gs = sampling.group_elements(rng, n)
    ident, spec, conj = [], [], []
    for z, g in zip(zs, gs):
        z = float(z)
        res = dress(z, g)
        a = np.diag([math.exp(z / 2), math.exp(-z / 2)]).astype(complex)
        G, Gp, Bp = to_matrix(g), to_matrix(res.g_prime), to_matrix(res.b_prime)
        ident.append(float(np.max(np.abs(a @ G - Gp @ Bp))))
        spec.append(abs(adm_spectrum_an(res.b_prime) - z))
        target = to_matrix(g.inverse()) @ (a @ a) @ G
        conj.append(float(np.max(np.abs(to_matrix(sym(res.b_prime)) - target))))
    pts = [np.array([z, *g.real_coords()]) for z, g in zip(zs, gs)]
    col.add("matrix-identity", 1e-12, ident, pts)
    col.add("spectrum-invariance", 1e-11, spec, pts)
    col.add("conjugation", 1e-11, conj, pts)


def _suite_thompson(n, seed, col):
    sw = thompson_sweep(seed, n)
    pts = np.hstack([sw.b1, sw.b2]) if n else []
    col.add("inequality", 1e-9, np.maximum(0.0, -sw.defect), pts)
    col.add("product-admissible", 0.0, np.where(sw.admissible, 0.0, 1.0), pts)
    # diagonal pairs: gamma adds exactly
    diag = [thompson_defect(ANPoint(float(a), 0.0, 0.0), ANPoint(float(b), 0.0, 0.0))
            for a, b in zip(sw.lam1[:1000], sw.lam2[:1000])]
    col.add("diagonal-equality", 1e-12, np.abs(diag), np.column_stack([sw.lam1, sw.lam2])[:1000])
    # gamma(b) never exceeds the diagonal parameter z of b
    col.add("spectrum-below-diagonal", 1e-12, np.maximum(0.0, sw.gamma1 - sw.b1[:, 0]), sw.b1)
    # matrix route vs the reduced closed form with a diagonal second factor
    rng = np.random.default_rng(seed)
    m = min(n, 1000)
    gs = sampling.group_elements(rng, m)
    red = []
    for z1, z2, g in zip(sw.lam1[:m], sw.lam2[:m], gs):
        b1 = dress(float(z1), g).b_prime
        red.append(abs(thompson_defect(b1, ANPoint(float(z2), 0.0, 0.0))
                       - reduced_defect(float(z1), g, float(z2))))
    col.add("reduced-form", 1e-10, red, np.column_stack([sw.lam1, sw.lam2])[:m])


def _suite_linear(n, seed, col):
    m1, m2, d = linear_sweep(seed, n)
    col.add("reversed-triangle", 1e-12, np.maximum(0.0, -d), np.hstack([m1, m2]) if n else [])


def _gtstar_arr(q):
    g = gtstar_of_rect(QStarPoint(*q))
    return np.array([g.z, g.lam, g.theta])


def _gtq_arr(q):
    from .spaces import QPoint
    g = gtq_of_qpoint(QPoint(*q))
    return np.array([g.w, g.lam, g.theta])


def _hyp_arr(q):
    h = hyp_of_rect(QStarPoint(*q))
    return np.array([h.lam, h.phi, h.s])


def _suite_charts(n, rng, col):
    pts = sampling.admissible_qstar(rng, n, s_range=(0.1, 3.0))
    gt_star, gt_q, hyp, trips = [], [], [], []
    const = Bivector3(Chart.GT_STAR, 0.0, -1.0, 0.0)
    for p in pts:
        q = p.as_array()
        J = _jacobian_periodic(_gtstar_arr, q, periodic=(2,))
        P = tensor_at(PI0, Chart.RECT_QSTAR, p).matrix()
        gt_star.append(Bivector3.from_matrix(Chart.GT_STAR, push_matrix(J, P)).dist(const))

        qq = exp_q(p)
        J = _jacobian_periodic(_gtq_arr, qq.as_array(), periodic=(2,))
        P = tensor_at(PI_Q, Chart.RECT_Q, qq).matrix()
        got = Bivector3.from_matrix(Chart.GT_Q, push_matrix(J, P))
        gt_q.append(got.dist(Bivector3(Chart.GT_Q, 0.0, -1.0, 0.0)))

        J = _jacobian_periodic(_hyp_arr, q, periodic=(1,))
        P = tensor_at(PI_ADM, Chart.RECT_QSTAR, p).matrix()
        got = Bivector3.from_matrix(Chart.HYPERBOLIC, push_matrix(J, P))
        hyp.append(got.dist(tensor_at(PI_ADM, Chart.HYPERBOLIC, hyp_of_rect(p))))

        trips.append(max(
            float(np.max(np.abs(rect_of_hyp(hyp_of_rect(p)).as_array() - q))),
            float(np.max(np.abs(rect_of_gtstar(gtstar_of_rect(p)).as_array() - q))),
            float(np.max(np.abs(qpoint_of_gtq(gtq_of_qpoint(qq)).as_array() - qq.as_array())))
            / max(1.0, qq.c),
        ))
    col.add("pi0-gtstar", 1e-8, gt_star, pts)
    col.add("piq-gtq", 1e-8, gt_q, pts)
    col.add("pi-hyperbolic", 1e-8, hyp, pts)
    col.add("round-trips", 1e-12, trips, pts)


@dataclass(frozen=True)
class Suite:
    run: Callable
    default_samples: int
    tolerance: float
    seeded_directly: bool = False


SUITES = {
    "jacobi": Suite(_suite_jacobi, 1000, 1e-12),
    "casimir": Suite(_suite_casimir, 1000, 1e-12),
    "sym-pushforward": Suite(_suite_sym, 1000, 1e-10),
    "logsym-pushforward": Suite(_suite_logsym, 1000, 1e-6),
    "fr-map": Suite(_suite_fr, 1000, 1e-6),
    "gw-flow": Suite(_suite_gw, 100, 1e-3),
    "pig": Suite(_suite_pig, 1000, 1e-10),
    "dressing": Suite(_suite_dressing, 1000, 1e-12),
    "thompson": Suite(_suite_thompson, 100_000, 1e-9, seeded_directly=True),
    "linear-thompson": Suite(_suite_linear, 100_000, 1e-12, seeded_directly=True),
    "charts": Suite(_suite_charts, 1000, 1e-8),
}

SUITE_NAMES = tuple(SUITES) + ("all",)


def run_verify(suite: str, samples=None, seed: int = 0, tol=None) -> VerificationReport:
    """Run one suite. ``samples``/``tol`` default to the suite's own values.

    Check tolerances scale with ``tol / default``; the reported ``max_defect``
    is each check's defect rescaled to the primary tolerance, maximised.
    """
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)}")
    spec = SUITES[suite]
    n = spec.default_samples if samples is None else int(samples)
    tol = spec.tolerance if tol is None else float(tol)
    scale = tol / spec.tolerance
    start = time.perf_counter()
    col = _Collector()
    if spec.seeded_directly:
        spec.run(n, seed, col)
    else:
        spec.run(n, np.random.default_rng(seed), col)
    checks = []
    top, top_point = 0.0, []
    for name, ctol, defects, points in col.items:
        d, wp = _worst(defects, points)
        ctol_scaled = ctol * scale
        checks.append(Check(name, ctol_scaled, d, wp, bool(d <= ctol_scaled)))
        if ctol > 0:
            normalised = d * spec.tolerance / ctol
        else:
            normalised = 0.0 if d == 0 else math.inf
        if normalised > top:
            top, top_point = normalised, wp
    passed = all(c.passed for c in checks) and top <= tol
    wall = int(round(1000 * (time.perf_counter() - start)))
    return VerificationReport(suite, n, seed, tol, top, top_point, passed, wall, checks,
                              col.extras)


def run_all(samples=None, seed: int = 0, tol=None) -> list[VerificationReport]:
    return [run_verify(name, samples, seed, tol) for name in SUITES]
