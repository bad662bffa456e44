"""Interval-valued functions given by a pair of endpoint functions.

An objective here maps a point of a box domain to the interval
``[lower(x), upper(x)]``.  Convexity of such a function is equivalent to
convexity of both endpoint functions, which is what the sampled convexity
check probes.  One-sided directional derivatives of the endpoints exist
everywhere for convex endpoints; the interval-valued directional
derivative is the interval spanned by the two endpoint derivatives.

Numeric directional derivatives use three decreasing steps and first-order
extrapolation.  Two successive extrapolations must agree; disagreement is
reported as "nonsmooth-uncertain" rather than guessed through, since it
means a kink sits inside the probe range.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .expr import ExprAst, evaluate, parse
from .geometry import BoxSet
from .intervals import PLUS_INF, ExtInterval, Interval, gh_difference, interval_norm
from .ivectors import IVector

Endpoint = Callable[[np.ndarray], float]

#: Decreasing probe steps for one-sided difference quotients.
STEP_SCHEDULE = (1e-3, 1e-4, 1e-5)
#: Two successive extrapolated estimates must agree this tightly (relative).
AGREEMENT_RTOL = 1e-4
#: One-sided derivatives from both sides must agree this tightly (relative)
#: for a point to count as differentiable.
GRAD_MATCH_RTOL = 1e-5
#: Slack allowed between lower(x) and upper(x) before declaring a model error.
ENDPOINT_ORDER_TOL = 1e-9


class DomainError(ValueError):
    """Evaluation requested outside the declared domain."""


class ModelError(ValueError):
    """The endpoint functions crossed: lower(x) > upper(x)."""


class InfeasibleDirectionError(RuntimeError):
    """x + t*d leaves the domain for every small t > 0."""


class NonsmoothUncertainError(RuntimeError):
    """Difference-quotient extrapolations failed to settle."""


class NotGHDifferentiableError(RuntimeError):
    """One-sided derivatives disagree at the requested point."""


@dataclass
class ConvexityCounterexample:
    x1: np.ndarray
    x2: np.ndarray
    lam: float
    endpoint: str  # 'lower' or 'upper'
    violation: float


@dataclass(frozen=True)
class Ivf:
    """Interval-valued function [lower, upper] over a box domain.

    ``lower``/``upper`` are scalar callables; use :meth:`from_expressions`
    to build them from expression text.  ``analytic_dir_deriv``, when
    supplied, short-circuits the numeric directional derivative.
    """

    dimension: int
    lower: Endpoint
    upper: Endpoint
    domain: BoxSet
    analytic_dir_deriv: Optional[Callable[[np.ndarray, np.ndarray], Interval]] = None
    lower_source: Optional[str] = None
    upper_source: Optional[str] = None

    def __post_init__(self):
        if self.domain.dimension != self.dimension:
            raise ValueError("domain dimension does not match the declared dimension")

    @classmethod
    def from_expressions(
        cls,
        lower_source: str,
        upper_source: str,
        domain: BoxSet,
        analytic_dir_deriv=None,
    ) -> "Ivf":
        n = domain.dimension
        lower_ast = parse(lower_source, n)
        upper_ast = parse(upper_source, n)
        return cls(
            dimension=n,
            lower=lambda x, _ast=lower_ast: evaluate(_ast, x),
            upper=lambda x, _ast=upper_ast: evaluate(_ast, x),
            domain=domain,
            analytic_dir_deriv=analytic_dir_deriv,
            lower_source=lower_source,
            upper_source=upper_source,
        )

    def value(self, x: Sequence[float]) -> Interval:
        return eval_ivf(self, x)

    def dir_deriv(self, x: Sequence[float], d: Sequence[float]) -> Interval:
        return dir_derivative(self, x, d)


@dataclass(frozen=True)
class RestrictedIvf:
    """Feasible-set restriction: the base value inside, plus-infinity outside."""

    base: Ivf
    feasible: BoxSet

    @property
    def dimension(self) -> int:
        return self.base.dimension

    @property
    def domain(self) -> BoxSet:
        return self.base.domain

    def value(self, x: Sequence[float]) -> ExtInterval:
        if not self.feasible.contains(x):
            return PLUS_INF
        return self.base.value(x)

    def dir_deriv(self, x: Sequence[float], d: Sequence[float]) -> ExtInterval:
        """Directional derivative of the restriction at a feasible point.

        Along directions leaving the feasible box the quotient is +infinity
        for every small step, so the result is the PLUS_INF marker; along
        tangent directions the restriction is locally the base function.
        """
        if not self.feasible.contains(x):
            raise DomainError(f"{np.asarray(x)} is outside the feasible set")
        if not self.feasible.tangent_cone(x).contains(d):
            return PLUS_INF
        return self.base.dir_deriv(x, d)


def eval_ivf(f: Ivf, x: Sequence[float]) -> Interval:
    """[lower(x), upper(x)], validating domain membership and endpoint order."""
    x = np.asarray(x, dtype=float)
    if not f.domain.contains(x):
        raise DomainError(f"{x} is outside the domain box")
    lo = float(f.lower(x))
    hi = float(f.upper(x))
    if lo > hi + ENDPOINT_ORDER_TOL:
        raise ModelError(f"lower({x}) = {lo} exceeds upper({x}) = {hi}")
    if lo > hi:  # round-off at coinciding endpoints
        lo = hi = 0.5 * (lo + hi)
    return Interval(lo, hi)


def _exit_step(domain: BoxSet, x: np.ndarray, d: np.ndarray) -> float:
    """Largest t with x + t*d still inside the domain box (may be inf)."""
    t_exit = np.inf
    for xi, di, lo, hi in zip(x, d, domain.lo, domain.hi):
        if di > 0:
            t_exit = min(t_exit, (hi - xi) / di)
        elif di < 0:
            t_exit = min(t_exit, (lo - xi) / di)
    return t_exit


def _richardson(qa: float, qb: float, ta: float, tb: float) -> float:
    return (ta * qb - tb * qa) / (ta - tb)


def one_sided_derivative(
    g: Endpoint, x: Sequence[float], d: Sequence[float], domain: BoxSet
) -> float:
    """Right directional derivative of a scalar function along d at x.

    Evaluates (g(x + t d) - g(x)) / t on three decreasing steps, removes the
    first-order error by extrapolation, and demands the last two
    extrapolations agree.  Steps shrink proportionally when the domain box
    is exited closer than the largest scheduled step.
    """
    x = np.asarray(x, dtype=float)
    d = np.asarray(d, dtype=float)
    t_exit = _exit_step(domain, x, d)
    if t_exit <= 0:
        raise InfeasibleDirectionError(
            "no small-t feasibility: the direction exits the domain immediately"
        )
    scale = min(1.0, 0.5 * t_exit / STEP_SCHEDULE[0])
    steps = [t * scale for t in STEP_SCHEDULE]
    g0 = float(g(x))
    quotients = [(float(g(x + t * d)) - g0) / t for t in steps]
    e1 = _richardson(quotients[0], quotients[1], steps[0], steps[1])
    e2 = _richardson(quotients[1], quotients[2], steps[1], steps[2])
    if abs(e1 - e2) > AGREEMENT_RTOL * max(1.0, abs(e1), abs(e2)):
        raise NonsmoothUncertainError(
            f"nonsmooth-uncertain: extrapolations {e1} and {e2} disagree"
        )
    return e2


def dir_derivative(f: Ivf, x: Sequence[float], d: Sequence[float]) -> Interval:
    """Interval directional derivative: span of the endpoint derivatives."""
    x = np.asarray(x, dtype=float)
    d = np.asarray(d, dtype=float)
    if f.analytic_dir_deriv is not None:
        return f.analytic_dir_deriv(x, d)
    d_lo = one_sided_derivative(f.lower, x, d, f.domain)
    d_hi = one_sided_derivative(f.upper, x, d, f.domain)
    return Interval(min(d_lo, d_hi), max(d_lo, d_hi))


def gh_gradient(f: Ivf, x: Sequence[float]) -> IVector:
    """Componentwise interval gradient at a differentiable point.

    Each axis needs one-sided derivatives from both sides to agree for both
    endpoint functions; component i spans the two partials.
    """
    x = np.asarray(x, dtype=float)
    partial_lo = np.empty(f.dimension)
    partial_hi = np.empty(f.dimension)
    for i in range(f.dimension):
        e = np.zeros(f.dimension)
        e[i] = 1.0
        for g, out in ((f.lower, partial_lo), (f.upper, partial_hi)):
            try:
                d_plus = one_sided_derivative(g, x, e, f.domain)
                d_minus = one_sided_derivative(g, x, -e, f.domain)
            except (InfeasibleDirectionError, NonsmoothUncertainError) as exc:
                raise NotGHDifferentiableError(
                    f"not gH-differentiable here: axis {i + 1}: {exc}"
                ) from exc
            # left derivative is -d_minus; differentiability means it meets
            # the right derivative
            if abs(d_plus + d_minus) > GRAD_MATCH_RTOL * max(
                1.0, abs(d_plus), abs(d_minus)
            ):
                raise NotGHDifferentiableError(
                    f"not gH-differentiable here: axis {i + 1} one-sided "
                    f"derivatives {d_plus} vs {-d_minus}"
                )
            out[i] = 0.5 * (d_plus - d_minus)
    return IVector(
        np.minimum(partial_lo, partial_hi), np.maximum(partial_lo, partial_hi)
    )


def convexity_check(
    f: Ivf, samples: int, seed: int, tol: float = 1e-9
) -> Optional[ConvexityCounterexample]:
    """Sampled convexity of both endpoints; None means no violation found.

    Draws random (x1, x2, lambda) triples from domain x domain x [0, 1] and
    tests the chord inequality for each endpoint function.
    """
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        x1 = rng.uniform(f.domain.lo, f.domain.hi)
        x2 = rng.uniform(f.domain.lo, f.domain.hi)
        lam = float(rng.uniform(0.0, 1.0))
        mid = lam * x1 + (1 - lam) * x2
        for name, g in (("lower", f.lower), ("upper", f.upper)):
            chord = lam * float(g(x1)) + (1 - lam) * float(g(x2))
            gap = float(g(mid)) - chord
            if gap > tol:
                return ConvexityCounterexample(x1, x2, lam, name, gap)
    return None


def restricted(f: Ivf, s: BoxSet) -> RestrictedIvf:
    """Restrict f to a sub-box of its domain (+infinity outside)."""
    if not f.domain.contains_box(s):
        raise ValueError("the feasible set is not contained in the domain")
    return RestrictedIvf(f, s)


def lipschitz_estimate(f: Ivf, samples: int, seed: int) -> float:
    """Max sampled ratio ||F(x) gh- F(y)|| / ||x - y||.

    A lower bound on any valid Lipschitz constant of the function.
    """
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(samples):
        x = rng.uniform(f.domain.lo, f.domain.hi)
        y = rng.uniform(f.domain.lo, f.domain.hi)
        gap = float(np.linalg.norm(x - y))
        if gap < 1e-12:
            continue
        diff = gh_difference(f.value(x), f.value(y))
        best = max(best, interval_norm(diff) / gap)
    return best
