"""Problem files: one verification instance as plain ``key: value`` text.

Format (``#`` starts a comment, blank lines ignored, boxes are
space-separated ``lo1 hi1 lo2 hi2 ...``)::

    dimension: 2
    lower: 5 - x1*x2 - x1
    upper: 10 - x1^2*x2 - x2^2*x1
    domain: -1 0 -1 0
    S: -1 0 -1 0
    Sbar: 0 0 -1 0
    alpha: 0.1
    grid: 33      # optional, default 33
    seed: 7       # optional, default 0

Expressions must parse at the declared dimension and the boxes must nest:
Sbar inside S inside domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .expr import ParseError, parse
from .geometry import BoxSet
from .ivf import Ivf
from .wsm import WsmProblem

REQUIRED_KEYS = ("dimension", "lower", "upper", "domain", "S", "Sbar", "alpha")
OPTIONAL_KEYS = ("grid", "seed")


class ProblemFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")
        self.line = line


@dataclass(frozen=True)
class ProblemSpec:
    dimension: int
    lower_source: str
    upper_source: str
    domain: BoxSet
    s: BoxSet
    sbar: BoxSet
    alpha: float
    grid: int = 33
    seed: int = 0


def _parse_box(text: str, dimension: int, line: int) -> BoxSet:
    try:
        values = [float(tok) for tok in text.split()]
    except ValueError:
        raise ProblemFileError(f"box values must be numbers, got {text!r}", line)
    if len(values) != 2 * dimension:
        raise ProblemFileError(
            f"box needs {2 * dimension} values (lo/hi per axis), got {len(values)}", line
        )
    lo = np.array(values[0::2])
    hi = np.array(values[1::2])
    try:
        return BoxSet(lo, hi)
    except ValueError as exc:
        raise ProblemFileError(str(exc), line)


def parse_problem_text(text: str) -> ProblemSpec:
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ProblemFileError(f"expected 'key: value', got {raw!r}", lineno)
        key, value = line.split(":", 1)
        key = key.strip()
        if key not in REQUIRED_KEYS + OPTIONAL_KEYS:
            raise ProblemFileError(f"unknown key {key!r}", lineno)
        if key in entries:
            raise ProblemFileError(f"duplicate key {key!r}", lineno)
        entries[key] = (value.strip(), lineno)
    for key in REQUIRED_KEYS:
        if key not in entries:
            raise ProblemFileError(f"missing required key {key!r}")

    def text_of(key):
        return entries[key][0]

    def line_of(key):
        return entries[key][1]

    try:
        dimension = int(text_of("dimension"))
    except ValueError:
        raise ProblemFileError("dimension must be an integer", line_of("dimension"))
    if dimension < 1:
        raise ProblemFileError("dimension must be >= 1", line_of("dimension"))
    for key in ("lower", "upper"):
        try:
            parse(text_of(key), dimension)
        except ParseError as exc:
            raise ProblemFileError(f"{key} expression: {exc}", line_of(key))
    domain = _parse_box(text_of("domain"), dimension, line_of("domain"))
    s = _parse_box(text_of("S"), dimension, line_of("S"))
    sbar = _parse_box(text_of("Sbar"), dimension, line_of("Sbar"))
    if not s.contains_box(sbar):
        raise ProblemFileError("Sbar must be contained in S", line_of("Sbar"))
    if not domain.contains_box(s):
        raise ProblemFileError("S must be contained in domain", line_of("S"))
    try:
        alpha = float(text_of("alpha"))
    except ValueError:
        raise ProblemFileError("alpha must be a number", line_of("alpha"))
    if not alpha > 0:
        raise ProblemFileError("alpha must be positive", line_of("alpha"))
    grid = 33
    if "grid" in entries:
        try:
            grid = int(text_of("grid"))
        except ValueError:
            raise ProblemFileError("grid must be an integer", line_of("grid"))
        if grid < 2:
            raise ProblemFileError("grid must be >= 2", line_of("grid"))
    seed = 0
    if "seed" in entries:
        try:
            seed = int(text_of("seed"))
        except ValueError:
            raise ProblemFileError("seed must be an integer", line_of("seed"))
    return ProblemSpec(
        dimension=dimension,
        lower_source=text_of("lower"),
        upper_source=text_of("upper"),
        domain=domain,
        s=s,
        sbar=sbar,
        alpha=alpha,
        grid=grid,
        seed=seed,
    )


def load_problem_file(path: str | Path) -> ProblemSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc}")
    return parse_problem_text(text)


def build_problem(
    spec: ProblemSpec,
    alpha: float | None = None,
    grid: int | None = None,
    seed: int | None = None,
    n_dirs: int = 128,
    margin_tol: float | None = None,
) -> WsmProblem:
    f = Ivf.from_expressions(spec.lower_source, spec.upper_source, spec.domain)
    kwargs = {}
    if margin_tol is not None:
        kwargs["margin_tol"] = margin_tol
    return WsmProblem(
        f=f,
        s=spec.s,
        sbar=spec.sbar,
        alpha=spec.alpha if alpha is None else alpha,
        grid=spec.grid if grid is None else grid,
        seed=spec.seed if seed is None else seed,
        n_dirs=n_dirs,
        **kwargs,
    )
