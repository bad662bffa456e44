"""Weak-sharp-minima verification for convex interval-valued objectives.

A candidate set Sbar inside the feasible box S is a set of weak sharp
minima of F over S with modulus alpha > 0 when

    F(xbar) + alpha * dist(x, Sbar)  is dominated by  F(x)

for every xbar in Sbar and x in S.  Besides this definition, four
equivalent characterizations are implemented: a primal one through
directional derivatives of the feasible restriction against tangent-cone
distances, and three dual ones through the subgradient sets (normal-cone
inclusion, sharpness along tangent-normal directions, and growth along
projection rays).  All five run on one shared seeded grid and direction
set, so agreement between them tests the underlying identities rather
than sampling luck.

Every verdict is a verdict *on the sampled grid*; reports carry sample
counts and the effective grid density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .geometry import BoxSet, cone_ball_support, dist_to_cone
from .intervals import is_finite
from .ivectors import IVector
from .ivf import (
    ENDPOINT_ORDER_TOL,
    Ivf,
    ModelError,
    RestrictedIvf,
    convexity_check,
    lipschitz_estimate,
    restricted,
)
from .subdiff import is_subgradient, subdiff_support
from .support import default_directions

#: Margin at or above -MARGIN_TOL counts as "holds".
MARGIN_TOL = 1e-7
#: Ceiling on the total number of grid points per box.
GRID_CAP = 40_000

CHECKER_NAMES = ("definition", "primal", "dual-b", "dual-e", "dual-f")


class GuardError(ValueError):
    """Structural precondition violated (set containment, bad modulus)."""


@dataclass
class WsmProblem:
    """One verification instance; the objective is declared convex.

    The declared convexity is probed by a sampled guard when the context is
    built; a counterexample does not abort the checkers (grid verdicts are
    still well-defined and useful) but is attached to every report as a
    note, since the equivalence between checkers is only guaranteed for
    convex objectives.
    """

    f: Ivf
    s: BoxSet
    sbar: BoxSet
    alpha: float
    grid: int = 33
    seed: int = 0
    n_dirs: int = 128
    margin_tol: float = MARGIN_TOL
    convexity_samples: int = 200
    _ctx: Optional["_Context"] = field(default=None, repr=False, compare=False)

    def context(self) -> "_Context":
        if self._ctx is None:
            self._ctx = _Context(self)
        return self._ctx


@dataclass(frozen=True)
class WsmReport:
    checker: str
    verdict: str  # 'holds' or 'fails'
    worst_margin: float
    witness: Optional[tuple[np.ndarray, np.ndarray]]
    witness_labels: tuple[str, str]
    samples_evaluated: int
    grid_per_axis: int
    notes: tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"


class _Context:
    """Shared grid, directions and cached endpoint values for one problem."""

    def __init__(self, p: WsmProblem):
        if not p.alpha > 0:
            raise GuardError("alpha must be positive")
        if not p.s.contains_box(p.sbar):
            raise GuardError("Sbar is not contained in S")
        if not p.f.domain.contains_box(p.s):
            raise GuardError("S is not contained in the objective domain")
        self.problem = p
        n_free = max(1, int(np.sum(p.s.hi > p.s.lo)))
        k = p.grid
        notes = []
        if k**n_free > GRID_CAP:
            k = max(2, int(GRID_CAP ** (1.0 / n_free)))
            notes.append(f"grid density reduced to {k} points per axis (cap {GRID_CAP})")
        self.grid_per_axis = k
        self.s_grid = p.s.grid(k)
        self.sbar_grid = p.sbar.grid(k)
        self.dirs = default_directions(p.f.dimension, p.seed, p.n_dirs)
        self.f_o = restricted(p.f, p.s)
        self.flo_s = np.array([p.f.lower(x) for x in self.s_grid])
        self.fhi_s = np.array([p.f.upper(x) for x in self.s_grid])
        self.flo_sbar = np.array([p.f.lower(x) for x in self.sbar_grid])
        self.fhi_sbar = np.array([p.f.upper(x) for x in self.sbar_grid])
        for lo_vals, hi_vals, grid_pts in (
            (self.flo_s, self.fhi_s, self.s_grid),
            (self.flo_sbar, self.fhi_sbar, self.sbar_grid),
        ):
            crossed = lo_vals > hi_vals + ENDPOINT_ORDER_TOL
            if np.any(crossed):
                where = grid_pts[int(np.argmax(crossed))]
                raise ModelError(f"lower exceeds upper at grid point {where}")
        proj = np.clip(self.s_grid, p.sbar.lo, p.sbar.hi)
        self.dists = np.linalg.norm(self.s_grid - proj, axis=1)
        counter = convexity_check(p.f, p.convexity_samples, p.seed)
        if counter is not None:
            notes.append(
                "declared-convex objective failed the sampled convexity guard "
                f"({counter.endpoint} endpoint, violation {counter.violation:.3g} "
                f"at lambda={counter.lam:.3g}); checker equivalences are not "
                "guaranteed and verdicts are grid-sampled evidence only"
            )
        self.notes = tuple(notes)

    def report(self, checker, margin, witness, labels, samples) -> WsmReport:
        tol = self.problem.margin_tol
        verdict = "holds" if margin >= -tol else "fails"
        return WsmReport(
            checker=checker,
            verdict=verdict,
            worst_margin=float(margin),
            witness=witness,
            witness_labels=labels,
            samples_evaluated=samples,
            grid_per_axis=self.grid_per_axis,
            notes=self.notes,
        )


class _Worst:
    """Deterministic running minimum with its witness."""

    def __init__(self):
        self.margin = math.inf
        self.witness = None

    def update(self, margin: float, a: np.ndarray, b: np.ndarray):
        if margin < self.margin:
            self.margin = margin
            self.witness = (np.array(a, dtype=float), np.array(b, dtype=float))


def check_definition(p: WsmProblem) -> WsmReport:
    """Brute-force the defining inequality over the shared grids.

    The pair condition separates per endpoint: with M the endpoint maximum
    over the candidate grid, the worst margin over all pairs is the worst
    over x of g(x) - M - alpha * dist(x, Sbar).
    """
    ctx = p.context()
    j_lo = int(np.argmax(ctx.flo_sbar))
    j_hi = int(np.argmax(ctx.fhi_sbar))
    margin_lo = ctx.flo_s - ctx.flo_sbar[j_lo] - p.alpha * ctx.dists
    margin_hi = ctx.fhi_s - ctx.fhi_sbar[j_hi] - p.alpha * ctx.dists
    margins = np.minimum(margin_lo, margin_hi)
    i = int(np.argmin(margins))
    j = j_lo if margin_lo[i] <= margin_hi[i] else j_hi
    witness = (ctx.sbar_grid[j].copy(), ctx.s_grid[i].copy())
    samples = len(ctx.s_grid) * len(ctx.sbar_grid)
    return ctx.report(
        "definition", float(margins[i]), witness, ("xbar", "x"), samples
    )


def check_primal(p: WsmProblem) -> WsmReport:
    """Tangent-cone distance against the restricted directional derivative.

    At each candidate point and sampled direction, alpha times the distance
    of the direction to the candidate set's tangent cone must be dominated
    by the directional derivative of the restriction; directions leaving
    the feasible set give an infinite derivative and pass automatically.
    """
    ctx = p.context()
    worst = _Worst()
    samples = 0
    for xbar in ctx.sbar_grid:
        t_sbar = p.sbar.tangent_cone(xbar)
        for d in ctx.dirs:
            samples += 1
            deriv = ctx.f_o.dir_deriv(xbar, d)
            if not is_finite(deriv):
                continue
            lhs = p.alpha * dist_to_cone(d, t_sbar)
            worst.update(deriv.lo - lhs, xbar, d)
    return ctx.report("primal", worst.margin, worst.witness, ("x", "d"), samples)


def _cone_ball_points(cone, alpha: float, pool: np.ndarray) -> list[np.ndarray]:
    """Radius-alpha members of the cone-ball intersection: the extreme rays,
    clamped pool directions, and the origin."""
    points = [np.zeros(cone.dimension)]
    points.extend(alpha * r for r in cone.extreme_rays())
    for u in pool:
        z = cone.project(u)
        norm = np.linalg.norm(z)
        if norm > 1e-9:
            points.append(alpha * z / norm)
    return points


def check_dual_normal_cone(p: WsmProblem) -> WsmReport:
    """Normal-cone inclusion, verified along two independent routes.

    Support route: the support value of the alpha-ball/normal-cone
    intersection (closed form through the tangent-cone distance) must be
    dominated by the support value of the subgradient set of the
    restriction, which is its directional derivative.  Point route: sampled
    members of the intersection, embedded as degenerate interval vectors,
    must pass the defining subgradient test against the feasible grid.
    """
    ctx = p.context()
    worst = _Worst()
    samples = 0
    pool = ctx.dirs[: 2 * p.f.dimension + 16]
    for b, xbar in enumerate(ctx.sbar_grid):
        n_cone = p.sbar.normal_cone(xbar)
        oracle = subdiff_support(ctx.f_o, xbar)
        for d in ctx.dirs:
            samples += 1
            rhs = oracle.support(d)
            if not is_finite(rhs):
                continue
            lhs = cone_ball_support(n_cone, p.alpha, d)
            worst.update(rhs.lo - lhs, xbar, d)
        base_lo = ctx.flo_sbar[b]
        base_hi = ctx.fhi_sbar[b]
        diff_lo = np.minimum(ctx.flo_s - base_lo, ctx.fhi_s - base_hi)
        diff_hi = np.maximum(ctx.flo_s - base_lo, ctx.fhi_s - base_hi)
        for z in _cone_ball_points(n_cone, p.alpha, pool):
            samples += 1
            res = is_subgradient(
                ctx.f_o, xbar, IVector.degenerate(z), ctx.s_grid,
                rhs=(diff_lo, diff_hi),
            )
            worst.update(res.margin, xbar, z)
    return ctx.report("dual-b", worst.margin, worst.witness, ("x", "d_or_z"), samples)


def check_dual_e(p: WsmProblem) -> WsmReport:
    """Sharp growth along directions tangent to S and normal to Sbar.

    Over each candidate point, directions are sampled from the closed-form
    intersection of the two cones; the degenerate interval
    alpha*||d|| must be dominated by the directional derivative.  An
    origin-only intersection is a vacuous pass at that point.
    """
    ctx = p.context()
    worst = _Worst()
    samples = 0
    pool = ctx.dirs
    for xbar in ctx.sbar_grid:
        cone = p.s.tangent_cone(xbar).intersect(p.sbar.normal_cone(xbar))
        if cone.is_zero_cone:
            samples += 1
            continue
        seen = cone.extreme_rays()
        for u in pool:
            z = cone.project(u)
            norm = np.linalg.norm(z)
            if norm > 1e-9:
                seen.append(z / norm)
        for d in seen:
            samples += 1
            deriv = p.f.dir_deriv(xbar, d)
            worst.update(deriv.lo - p.alpha * float(np.linalg.norm(d)), xbar, d)
    return ctx.report("dual-e", worst.margin, worst.witness, ("x", "d"), samples)


def check_dual_f(p: WsmProblem) -> WsmReport:
    """Growth along projection rays: for each feasible grid point y with
    projection q onto the candidate set, alpha*dist(y, Sbar) must be
    dominated by the directional derivative at q along y - q."""
    ctx = p.context()
    worst = _Worst()
    samples = 0
    for y in ctx.s_grid:
        samples += 1
        q = p.sbar.project(y)
        gap = float(np.linalg.norm(y - q))
        if gap <= 1e-12:
            continue
        deriv = p.f.dir_deriv(q, y - q)
        worst.update(deriv.lo - p.alpha * gap, y, q)
    return ctx.report("dual-f", worst.margin, worst.witness, ("y", "p"), samples)


_CHECKERS = {
    "definition": check_definition,
    "primal": check_primal,
    "dual-b": check_dual_normal_cone,
    "dual-e": check_dual_e,
    "dual-f": check_dual_f,
}


def run_checker(p: WsmProblem, name: str) -> WsmReport:
    try:
        fn = _CHECKERS[name]
    except KeyError:
        raise ValueError(f"unknown checker {name!r}") from None
    return fn(p)


def check_all(p: WsmProblem) -> dict[str, WsmReport]:
    return {name: _CHECKERS[name](p) for name in CHECKER_NAMES}


def concordant(reports: dict[str, WsmReport]) -> bool:
    verdicts = {r.verdict for r in reports.values()}
    return len(verdicts) == 1


def estimate_modulus(p: WsmProblem) -> float:
    """Largest grid-feasible sharpness modulus, to within 1e-3.

    Bisects the definition predicate over (0, alpha_hi], where alpha_hi
    comes from a Lipschitz-based cap (no modulus can outgrow the slope of
    the endpoints).  Returns 0 when not even a tiny modulus passes.
    """
    ctx = p.context()
    m_lo = float(np.max(ctx.flo_sbar))
    m_hi = float(np.max(ctx.fhi_sbar))
    gap_lo = ctx.flo_s - m_lo
    gap_hi = ctx.fhi_s - m_hi
    tol = p.margin_tol

    def passes(alpha: float) -> bool:
        margins = np.minimum(gap_lo - alpha * ctx.dists, gap_hi - alpha * ctx.dists)
        return bool(margins.min() >= -tol)

    if not passes(1e-6):
        return 0.0
    lip = lipschitz_estimate(p.f, 400, p.seed)
    hi = max(1.25 * lip, 1e-2)
    if passes(hi):
        return hi
    lo = 1e-6
    while hi - lo > 1e-3:
        mid = 0.5 * (lo + hi)
        if passes(mid):
            lo = mid
        else:
            hi = mid
    return lo
