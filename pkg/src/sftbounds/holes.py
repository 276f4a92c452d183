"""Forbidden-cylinder holes: higher-block pruning, survivor entropy as a spectral
radius, and dimension upper bounds for the set of orbits avoiding the hole.

A cylinder of a depth-k word is exactly the theta-metric ball of radius
theta**-k about any of its points, so symbolic holes are cylinders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import CeilingError, ConvergenceError, InputError
from .measures import cylinder_measure, parry_measure
from .sft import MetricParams, TransitionMatrix, Word, enumerate_words, is_admissible, word_str
from .spectral import PerronData, perron_eigendata

PRUNE_STATE_CEILING = 50_000


@dataclass(frozen=True)
class HoleSpec:
    """A forbidden cylinder: the word, its depth, the symbolic ball radius
    theta**-depth, and its Parry measure."""

    word: Word
    depth: int
    delta: float
    measure: float


def hole_spec(A: TransitionMatrix, eig: PerronData, word, params: MetricParams = MetricParams()) -> HoleSpec:
    w = tuple(word)
    if not is_admissible(A, w):
        raise InputError(f"hole word {w} is not admissible")
    m = parry_measure(A, eig)
    measure = cylinder_measure(m, w)
    if not 0.0 < measure < 1.0:
        raise InputError(f"hole measure {measure} outside (0, 1)")
    return HoleSpec(w, len(w), params.theta ** (-len(w)), measure)


@dataclass(frozen=True)
class PrunedSystem:
    """Higher-block presentation on k-words with the forbidden states removed."""

    block_length: int
    states: tuple[Word, ...]
    matrix: np.ndarray
    survivor_lambda: float
    empty: bool


def _scc_spectral_radius(mat: np.ndarray, tol: float = 1e-15, max_iter: int = 1_000_000) -> float:
    """Spectral radius of a possibly reducible nonnegative matrix: the max of
    power-iteration radii over strongly connected components.

    Each component submatrix is irreducible, so iterating M + I (primitive)
    and subtracting 1 converges regardless of periodicity.
    """
    n = mat.shape[0]
    if n == 0:
        return 0.0
    n_comp, labels = connected_components(csr_matrix(mat), directed=True, connection="strong")
    radius = 0.0
    for comp in range(n_comp):
        idx = np.flatnonzero(labels == comp)
        sub = mat[np.ix_(idx, idx)]
        if len(idx) == 1:
            radius = max(radius, float(sub[0, 0]))
            continue
        shifted = sub.astype(float) + np.eye(len(idx))
        x = np.full(len(idx), 1.0 / len(idx))
        lam_prev = np.inf
        converged = False
        for _ in range(max_iter):
            y = shifted @ x
            lam = float(x @ y) / float(x @ x)
            if abs(lam - lam_prev) < tol:
                radius = max(radius, lam - 1.0)
                converged = True
                break
            lam_prev = lam
            x = y / y.sum()
        if not converged:
            raise ConvergenceError(
                f"spectral radius iteration stalled on a {len(idx)}-state component",
                residual=abs(lam - lam_prev),
            )
    return radius


def prune_words(
    A: TransitionMatrix,
    words,
    block_length: int | None = None,
    ceiling: int = PRUNE_STATE_CEILING,
) -> PrunedSystem:
    """Forbid the cylinders of `words` via the k-block presentation.

    States are admissible k-words minus those starting with a forbidden word;
    a -> b is allowed when the windows overlap in k-1 symbols. With no words
    this is the plain k-block presentation (block_length then required).
    """
    forb = [tuple(w) for w in words]
    for w in forb:
        if not is_admissible(A, w):
            raise InputError(f"forbidden word {w} is not admissible")
    if block_length is None:
        if not forb:
            raise InputError("block_length is required when no words are pruned")
        block_length = max(len(w) for w in forb)
    k = block_length
    if k < 1:
        raise InputError(f"block length must be at least 1, got {k}")
    if any(len(w) > k for w in forb):
        raise InputError("forbidden words longer than the block length")
    all_states = enumerate_words(A, k, ceiling=ceiling)
    states = tuple(
        s for s in all_states if not any(s[: len(w)] == w for w in forb)
    )
    n = len(states)
    if n > ceiling:
        raise CeilingError(f"{n} pruned states exceed the ceiling {ceiling}")
    index = {s: i for i, s in enumerate(states)}
    mat = np.zeros((n, n), dtype=np.int8)
    for a, i in index.items():
        if k == 1:
            for b, j in index.items():
                if A.rows[a[0]][b[0]]:
                    mat[i, j] = 1
        else:
            suffix = a[1:]
            for c in A.successor_sets[a[-1]]:
                b = suffix + (c,)
                j = index.get(b)
                if j is not None:
                    mat[i, j] = 1
    radius = _scc_spectral_radius(mat.astype(float)) if n else 0.0
    mat.setflags(write=False)
    return PrunedSystem(k, states, mat, radius, empty=(radius == 0.0))


def higher_block_prune(A: TransitionMatrix, w) -> PrunedSystem:
    """Remove the single state of `w` from its own block presentation."""
    return prune_words(A, [tuple(w)])


def survivor_entropy(ps: PrunedSystem) -> float:
    """log of the pruned spectral radius; -inf when nothing survives."""
    if ps.empty or ps.survivor_lambda <= 0.0:
        return float("-inf")
    return float(np.log(ps.survivor_lambda))


def pruned_word_count(ps: PrunedSystem, n: int) -> int:
    """Exact number of admissible n-symbol words avoiding the pruned cylinders.

    An n-word corresponds to a path on n - k + 1 block states, so n >= k.
    Integer arithmetic throughout.
    """
    k = ps.block_length
    if n < k:
        raise InputError(f"need n >= block length {k}, got {n}")
    counts = [1] * len(ps.states)
    rows = [list(np.flatnonzero(ps.matrix[i])) for i in range(len(ps.states))]
    for _ in range(n - k):
        counts = [sum(counts[j] for j in rows[i]) for i in range(len(counts))]
    return sum(counts)


def dim_upper_bound(h: float, log_lambda: float, dim_m: float, log_theta_cap: float) -> float:
    """dim_m - (log_lambda - h) / log_theta_cap.

    In pure symbolic mode pass dim_m = log_lambda / log(theta) and
    log_theta_cap = log(theta), which reduces to h / log(theta).
    """
    if log_theta_cap <= 0.0:
        raise InputError(f"log of the expansion cap must be positive, got {log_theta_cap}")
    if h > log_lambda + 1e-12:
        raise InputError(f"survivor entropy {h} exceeds log lambda {log_lambda}")
    return dim_m - (log_lambda - h) / log_theta_cap


def cover_count(n: int, h: float, log_lambda: float, dim_m: float, log_theta_cap: float, a: float) -> float:
    """a * exp(n h - n log_lambda + n dim_m log_theta_cap): the size of a cover
    by balls of radius Theta**-n; its log over n log Theta tends to the
    dimension bound."""
    if n < 1:
        raise InputError(f"n must be at least 1, got {n}")
    if a <= 0.0:
        raise InputError(f"prefactor must be positive, got {a}")
    return a * math.exp(n * (h - log_lambda + dim_m * log_theta_cap))


@dataclass(frozen=True)
class HoleRow:
    word: Word
    depth: int
    delta: float
    measure: float
    survivor_lambda: float
    gap: float
    per_hole_c: float


@dataclass(frozen=True)
class HoleFamilyScan:
    rows: tuple[HoleRow, ...]
    fitted_c: float
    argmin_word: Word
    monotonicity_violations: tuple[tuple[Word, Word], ...]
    log_lambda: float
    theta: float


def hole_family_scan(
    A: TransitionMatrix,
    max_depth: int,
    params: MetricParams = MetricParams(),
    eig: PerronData | None = None,
) -> HoleFamilyScan:
    """Prune every admissible hole word up to max_depth; report per-hole entropy
    gaps, the largest c with gap >= c * delta^2 * measure^2 across the family,
    and any extension-monotonicity violations (none expected: forbidding an
    extension removes less)."""
    if max_depth < 1:
        raise InputError(f"max depth must be at least 1, got {max_depth}")
    if eig is None:
        eig = perron_eigendata(A)
    m = parry_measure(A, eig)
    log_lam = float(np.log(eig.lam))
    rows = []
    radius: dict[Word, float] = {}
    for k in range(1, max_depth + 1):
        for w in enumerate_words(A, k):
            ps = higher_block_prune(A, w)
            radius[w] = ps.survivor_lambda
            h = survivor_entropy(ps)
            gap = log_lam - h  # +inf when the survivor set is empty
            delta = params.theta ** (-k)
            meas = cylinder_measure(m, w)
            rows.append(HoleRow(w, k, delta, meas, ps.survivor_lambda, gap,
                                gap / (delta**2 * meas**2)))
    violations = []
    for w, lam_w in radius.items():
        for c in A.successor_sets[w[-1]]:
            ext = w + (c,)
            if ext in radius and radius[ext] < lam_w - 1e-10:
                violations.append((w, ext))
    fitted_c = min(r.per_hole_c for r in rows)
    argmin = min(rows, key=lambda r: r.per_hole_c).word
    return HoleFamilyScan(tuple(rows), fitted_c, argmin, tuple(violations),
                          log_lam, params.theta)


def describe_hole(A: TransitionMatrix, row: HoleRow) -> dict:
    """Flat dict view of one family-scan row (words rendered as strings)."""
    return {
        "word": word_str(row.word, A.size),
        "depth": row.depth,
        "delta": row.delta,
        "hole_measure": row.measure,
        "survivor_lambda": row.survivor_lambda,
        "gap": row.gap,
        "per_hole_c": row.per_hole_c,
    }
