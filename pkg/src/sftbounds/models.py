"""Piecewise-affine expanding Markov maps of the interval or circle: symbolic
coding, cylinder intervals, metric-ball-to-cylinder conversion, and dimension
upper bounds for hole-avoiding orbit sets.

Affine branches keep everything exact: cylinder intervals come from backward
iteration of branch inverses, and the induced subshift carries the measures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .holes import prune_words, survivor_entropy
from .measures import cylinder_measure, parry_measure
from .sft import TransitionMatrix, Word, enumerate_words, is_admissible, transition_matrix
from .spectral import PerronData, perron_eigendata

ENDPOINT_TOL = 1e-12


@dataclass(frozen=True)
class Branch:
    """Affine branch x -> slope * x + intercept on the closed domain [lo, hi]."""

    lo: float
    hi: float
    slope: float
    intercept: float

    def __call__(self, x: float) -> float:
        return self.slope * x + self.intercept

    @property
    def image(self) -> tuple[float, float]:
        a, b = self(self.lo), self(self.hi)
        return (a, b) if a <= b else (b, a)

    def preimage(self, lo: float, hi: float) -> tuple[float, float]:
        a = (lo - self.intercept) / self.slope
        b = (hi - self.intercept) / self.slope
        if a > b:
            a, b = b, a
        return max(a, self.lo), min(b, self.hi)


@dataclass(frozen=True)
class ExpandingModel:
    branches: tuple[Branch, ...]
    transition: TransitionMatrix
    theta0: float
    cap_theta: float
    circle: bool

    @property
    def branch_count(self) -> int:
        return len(self.branches)

    @property
    def partition(self) -> tuple[tuple[float, float], ...]:
        return tuple((b.lo, b.hi) for b in self.branches)


@dataclass(frozen=True)
class CylinderInterval:
    word: Word
    lo: float
    hi: float

    @property
    def length(self) -> float:
        return self.hi - self.lo


def build_model(branch_specs, circle: bool = False) -> ExpandingModel:
    """Construct a model from branch descriptions and derive its transition matrix.

    Each description is a Branch or a dict {"domain": [a, b], "slope": s,
    "intercept": c}. Requirements: domains inside [0, 1] with disjoint interiors,
    every |slope| > 1, images inside [0, 1], and the Markov condition that a
    branch image either contains a partition interval or misses its interior.
    """
    branches = []
    for desc in branch_specs:
        if isinstance(desc, Branch):
            branches.append(desc)
        else:
            lo, hi = (float(x) for x in desc["domain"])
            branches.append(Branch(lo, hi, float(desc["slope"]), float(desc["intercept"])))
    if len(branches) < 2:
        raise InputError("need at least two branches")
    branches.sort(key=lambda b: b.lo)
    for b in branches:
        if not (-ENDPOINT_TOL <= b.lo < b.hi <= 1.0 + ENDPOINT_TOL):
            raise InputError(f"branch domain [{b.lo}, {b.hi}] is not a subinterval of [0, 1]")
        if abs(b.slope) <= 1.0:
            raise InputError(f"branch on [{b.lo}, {b.hi}] has |slope| = {abs(b.slope)} <= 1")
        img = b.image
        if img[0] < -ENDPOINT_TOL or img[1] > 1.0 + ENDPOINT_TOL:
            raise InputError(f"branch image [{img[0]}, {img[1]}] leaves [0, 1]")
    for a, b in zip(branches, branches[1:]):
        if a.hi > b.lo + ENDPOINT_TOL:
            raise InputError(f"branch domains overlap near x = {b.lo}")
    s = len(branches)
    rows = np.zeros((s, s), dtype=int)
    for i, bi in enumerate(branches):
        lo_i, hi_i = bi.image
        for j, bj in enumerate(branches):
            overlap = min(hi_i, bj.hi) - max(lo_i, bj.lo)
            if overlap <= ENDPOINT_TOL:
                continue
            if lo_i > bj.lo + ENDPOINT_TOL or hi_i < bj.hi - ENDPOINT_TOL:
                bad = bj.lo if lo_i > bj.lo + ENDPOINT_TOL else bj.hi
                raise InputError(
                    f"branch {i} image [{lo_i}, {hi_i}] cuts partition interval "
                    f"{j} at endpoint {bad}: the Markov condition fails"
                )
            rows[i, j] = 1
    A = transition_matrix(rows)
    slopes = [abs(b.slope) for b in branches]
    return ExpandingModel(tuple(branches), A, min(slopes), max(slopes), circle)


def model_preset(name: str) -> ExpandingModel:
    """Built-in models: "doubling" (circle, full 2-shift), "triadic" (circle,
    full 3-shift), "golden" (repeller coding the golden-mean shift)."""
    if name == "doubling":
        return build_model(
            [Branch(0.0, 0.5, 2.0, 0.0), Branch(0.5, 1.0, 2.0, -1.0)], circle=True
        )
    if name == "triadic":
        return build_model(
            [
                Branch(0.0, 1 / 3, 3.0, 0.0),
                Branch(1 / 3, 2 / 3, 3.0, -1.0),
                Branch(2 / 3, 1.0, 3.0, -2.0),
            ],
            circle=True,
        )
    if name == "golden":
        # Second branch maps [1/2, 3/4] onto [0, 1/2] = the first domain only.
        return build_model(
            [Branch(0.0, 0.5, 2.0, 0.0), Branch(0.5, 0.75, 2.0, -1.0)], circle=False
        )
    raise InputError(f"unknown model preset {name!r}")


def cylinder_interval(model: ExpandingModel, word) -> CylinderInterval:
    """The interval of points whose first len(word) partition visits follow `word`,
    by backward iteration of branch inverses."""
    w = tuple(word)
    A = model.transition
    if not is_admissible(A, w):
        raise InputError(f"word {w} is not admissible for this model")
    b_last = model.branches[w[-1]]
    lo, hi = b_last.lo, b_last.hi
    for sym in reversed(w[:-1]):
        lo, hi = model.branches[sym].preimage(lo, hi)
        if hi < lo - ENDPOINT_TOL:
            raise InputError(f"empty cylinder interval for word {w}")
    return CylinderInterval(w, lo, hi)


def _ball_segments(model: ExpandingModel, x0: float, delta: float) -> tuple[tuple[float, float], ...]:
    if model.circle:
        lo, hi = x0 - delta, x0 + delta
        if lo < 0.0 and hi > 1.0:
            return ((0.0, 1.0),)
        if lo < 0.0:
            return ((0.0, hi), (lo + 1.0, 1.0))
        if hi > 1.0:
            return ((lo, 1.0), (0.0, hi - 1.0))
        return ((lo, hi),)
    return ((max(0.0, x0 - delta), min(1.0, x0 + delta)),)


@dataclass(frozen=True)
class BallCover:
    """Depth-k cylinder words sandwiching a metric ball: inner words have
    intervals inside the ball, outer words cover it."""

    x0: float
    delta: float
    depth: int
    inner: tuple[Word, ...]
    outer: tuple[Word, ...]

    @property
    def inner_empty(self) -> bool:
        return len(self.inner) == 0


def ball_to_cylinders(model: ExpandingModel, x0: float, delta: float) -> BallCover:
    """Convert a metric ball into inner and outer depth-k cylinder covers,
    k = ceil(log(1/delta) / log(theta0)) + 1."""
    if not 0.0 < delta < 0.5:
        raise InputError(f"delta must lie in (0, 1/2), got {delta}")
    if not 0.0 <= x0 <= 1.0:
        raise InputError(f"x0 must lie in [0, 1], got {x0}")
    ratio = math.log(1.0 / delta) / math.log(model.theta0)
    depth = math.ceil(ratio - 1e-12) + 1
    segments = _ball_segments(model, x0, delta)
    inner = []
    outer = []
    for w in enumerate_words(model.transition, depth):
        ci = cylinder_interval(model, w)
        overlaps = any(
            min(ci.hi, hi) - max(ci.lo, lo) > ENDPOINT_TOL for lo, hi in segments
        )
        contained = any(
            lo - ENDPOINT_TOL <= ci.lo and ci.hi <= hi + ENDPOINT_TOL
            for lo, hi in segments
        )
        if overlaps:
            outer.append(w)
        if contained:
            inner.append(w)
    return BallCover(x0, delta, depth, tuple(inner), tuple(outer))


@dataclass(frozen=True)
class DimensionReport:
    x0: float
    delta: float
    depth: int
    inner: tuple[Word, ...]
    outer: tuple[Word, ...]
    outer_measure: float
    survivor_lambda: float
    h_plus: float
    bound: float
    implied_c: float
    shape_bound: float
    trivial: bool


def exceptional_dimension_bound(model: ExpandingModel, x0: float, delta: float,
                                eig: PerronData | None = None) -> DimensionReport:
    """Upper bound on the Hausdorff dimension of the set of points whose orbit
    avoids the ball B(x0, delta).

    Avoiding the ball forces avoiding every inner cylinder, so pruning the inner
    words bounds the survivor entropy by h_plus and the dimension by
    1 - (log lam - h_plus) / log Theta. The Parry mass of the outer cover stands
    in for the ball measure in the reported c and shape bound. An empty inner
    cover yields the trivial bound 1, flagged.
    """
    cover = ball_to_cylinders(model, x0, delta)
    A = model.transition
    if eig is None:
        eig = perron_eigendata(A)
    m = parry_measure(A, eig)
    outer_measure = float(sum(cylinder_measure(m, w) for w in cover.outer))
    log_lam = float(np.log(eig.lam))
    log_cap = math.log(model.cap_theta)
    if cover.inner_empty:
        return DimensionReport(
            x0, delta, cover.depth, cover.inner, cover.outer, outer_measure,
            survivor_lambda=eig.lam, h_plus=log_lam, bound=1.0,
            implied_c=0.0, shape_bound=1.0, trivial=True,
        )
    ps = prune_words(A, cover.inner, block_length=cover.depth)
    h_plus = survivor_entropy(ps)
    raw = 1.0 - (log_lam - h_plus) / log_cap
    bound = max(raw, 0.0)
    if outer_measure > 0.0 and math.isfinite(h_plus):
        implied_c = (log_lam - h_plus) / (log_cap * delta**2 * outer_measure**2)
    else:
        implied_c = float("inf")
    shape = 1.0 - implied_c * delta**2 * outer_measure**2 if math.isfinite(implied_c) else bound
    return DimensionReport(
        x0, delta, cover.depth, cover.inner, cover.outer, outer_measure,
        ps.survivor_lambda, h_plus, bound, implied_c, shape, trivial=False,
    )
