"""Closed bounded intervals and generalized-Hukuhara (gH) arithmetic.

The atom of everything in this package is the closed interval ``[lo, hi]``
with ``lo <= hi``.  Addition and scalar multiplication follow the usual
endpoint rules; subtraction is replaced by the gH difference, which exists
for every pair and satisfies ``gh_difference(a, a) == [0, 0]``.

Intervals are only partially ordered: ``a`` dominates ``b`` when both of
``a``'s endpoints are <= the corresponding endpoints of ``b``.  Two
intervals whose endpoints disagree in direction are incomparable.

``PLUS_INF`` / ``MINUS_INF`` are markers standing in for the two infinite
elements used by proper extended interval-valued functions.  They take part
in dominance tests (every finite interval is strictly below ``PLUS_INF``)
and in positive scalar multiplication, nothing else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

#: Absolute slack used by default when classifying dominance.  Downstream
#: checkers compare quantities assembled from many float operations; the
#: slack keeps round-off from flipping Lt/Equal.  Pass ``slack=0.0`` for
#: exact algebraic work.
DEFAULT_SLACK = 1e-9


class _InfMarker:
    """Marker for one of the two infinite extended intervals."""

    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name


PLUS_INF = _InfMarker("PLUS_INF")
MINUS_INF = _InfMarker("MINUS_INF")

ExtInterval = Union["Interval", _InfMarker]


def is_finite(value: ExtInterval) -> bool:
    return isinstance(value, Interval)


@dataclass(frozen=True)
class Interval:
    """Closed bounded interval [lo, hi].

    The constructor rejects ``lo > hi`` instead of swapping: every formula
    in this package already emits ordered endpoints, so a reversed pair is
    an arithmetic bug we want surfaced, not hidden.
    """

    lo: float
    hi: float

    def __post_init__(self):
        lo = float(self.lo)
        hi = float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"interval endpoints must be finite, got [{lo}, {hi}]")
        if lo > hi:
            raise ValueError(f"interval endpoints out of order: lo={lo} > hi={hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def degenerate(cls, value: float) -> "Interval":
        """The interval [p, p] representing the real number p."""
        return cls(value, value)

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __add__(self, other: "Interval") -> "Interval":
        return add(self, other)

    def __rmul__(self, k: float) -> "Interval":
        return scalar_mul(k, self)

    def __repr__(self) -> str:
        return f"[{self.lo:g}, {self.hi:g}]"


ZERO = Interval(0.0, 0.0)


class Dominance(Enum):
    """Classification of an ordered interval pair under the endpoint order.

    Exactly one of the four values describes any pair (a, b).  ``EQUAL``
    and ``LT`` both entail a dominates b; the ``leq`` / ``geq`` properties
    expose the non-strict relations.
    """

    EQUAL = "equal"
    LT = "lt"
    GT = "gt"
    INCOMPARABLE = "incomparable"

    @property
    def leq(self) -> bool:
        """True when the first interval dominates the second (a "<=" b)."""
        return self in (Dominance.EQUAL, Dominance.LT)

    @property
    def geq(self) -> bool:
        return self in (Dominance.EQUAL, Dominance.GT)


def add(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo + b.lo, a.hi + b.hi)


def scalar_mul(k: float, a: ExtInterval) -> ExtInterval:
    """k * interval.  Infinite markers admit only positive scalars."""
    if isinstance(a, _InfMarker):
        if k > 0:
            return a
        raise ValueError(f"scalar_mul on {a!r} requires a positive scalar, got {k}")
    k = float(k)
    if k >= 0:
        return Interval(k * a.lo, k * a.hi)
    return Interval(k * a.hi, k * a.lo)


def minkowski_sub(a: Interval, b: Interval) -> Interval:
    # Internal: used only by the oracle for the gH defining property.
    return Interval(a.lo - b.hi, a.hi - b.lo)


def gh_difference(a: Interval, b: Interval) -> Interval:
    """Generalized Hukuhara difference of two intervals.

    C = a gh- b is the interval with endpoints
    [min(a.lo - b.lo, a.hi - b.hi), max(a.lo - b.lo, a.hi - b.hi)];
    it satisfies a == b + C or b == a (-) C, where (-) is the endpoint
    (Minkowski) subtraction.
    """
    d_lo = a.lo - b.lo
    d_hi = a.hi - b.hi
    return Interval(min(d_lo, d_hi), max(d_lo, d_hi))


def dominance(a: Interval, b: Interval, slack: float = DEFAULT_SLACK) -> Dominance:
    """Classify the ordered pair (a, b) under the endpoint partial order.

    a dominates b when a.lo <= b.lo and a.hi <= b.hi (within ``slack``).
    With slack > 0, EQUAL means indistinguishable at that resolution.
    """
    le = a.lo <= b.lo + slack and a.hi <= b.hi + slack
    ge = b.lo <= a.lo + slack and b.hi <= a.hi + slack
    if le and ge:
        return Dominance.EQUAL
    if le:
        return Dominance.LT
    if ge:
        return Dominance.GT
    return Dominance.INCOMPARABLE


def leq(a: Interval, b: Interval, slack: float = DEFAULT_SLACK) -> bool:
    """True when a dominates b, i.e. a "<=" b under the endpoint order."""
    return a.lo <= b.lo + slack and a.hi <= b.hi + slack


def ext_leq(a: ExtInterval, b: ExtInterval, slack: float = DEFAULT_SLACK) -> bool:
    """Dominance a "<=" b extended to the infinite markers.

    Everything is below PLUS_INF and above MINUS_INF; the markers compare
    reflexively with themselves.
    """
    if b is PLUS_INF or a is MINUS_INF:
        return True
    if a is PLUS_INF:
        return b is PLUS_INF
    if b is MINUS_INF:
        return a is MINUS_INF
    return leq(a, b, slack)


def interval_norm(a: Interval) -> float:
    """max(|lo|, |hi|); zero exactly for the zero interval."""
    return max(abs(a.lo), abs(a.hi))


def sup_family(family: Sequence[Interval]) -> Interval:
    """Least upper bound of a nonempty family: [max of lows, max of highs]."""
    if len(family) == 0:
        raise ValueError("sup_family of an empty family")
    return Interval(max(a.lo for a in family), max(a.hi for a in family))


def inf_family(family: Sequence[Interval]) -> Interval:
    """Greatest lower bound of a nonempty family: [min of lows, min of highs]."""
    if len(family) == 0:
        raise ValueError("inf_family of an empty family")
    return Interval(min(a.lo for a in family), min(a.hi for a in family))
