"""Markov measures on an SFT: the Parry measure, cylinder measures, entropy,
the information coboundary, conditional probability vectors, and a Dirichlet
sampler for test measures.

All integrals of depth-d functions are exact finite sums over admissible d-words.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, InputError
from .sft import (
    TransitionMatrix,
    Word,
    enumerate_words,
    is_admissible,
    parse_word,
    predecessors,
    word_count,
    word_index,
    word_str,
)
from .spectral import PerronData

STATIONARITY_TOL = 1e-12


@dataclass(frozen=True)
class MarkovMeasure:
    """Stationary vector r and stochastic matrix Q supported on a transition matrix."""

    stationary: np.ndarray
    transition: np.ndarray
    support: TransitionMatrix


def markov_measure(stationary, transition, support: TransitionMatrix,
                   tol: float = STATIONARITY_TOL) -> MarkovMeasure:
    """Validate (r, Q) and freeze them into a MarkovMeasure.

    Checks: r >= 0 summing to 1, Q rows summing to 1, Q supported inside the
    0/1 matrix, and stationarity rQ = r, all to `tol`.
    """
    r = np.array(stationary, dtype=float)
    Q = np.array(transition, dtype=float)
    s = support.size
    if r.shape != (s,) or Q.shape != (s, s):
        raise InputError(f"measure dimensions {r.shape}, {Q.shape} do not match alphabet size {s}")
    if float(r.min()) < -tol or float(Q.min()) < -tol:
        raise InputError("negative probabilities")
    r = np.maximum(r, 0.0)
    Q = np.maximum(Q, 0.0)
    if abs(float(r.sum()) - 1.0) > tol:
        raise InputError(f"stationary vector sums to {r.sum()}, not 1")
    row_sums = Q.sum(axis=1)
    if float(np.max(np.abs(row_sums - 1.0))) > tol:
        raise InputError("transition matrix rows must sum to 1")
    off = Q[support.array == 0]
    if off.size and float(np.max(off)) > tol:
        raise InputError("transition probabilities positive outside the allowed support")
    Q[support.array == 0] = 0.0
    drift = float(np.max(np.abs(r @ Q - r)))
    if drift > tol:
        raise InputError(f"vector is not stationary: max |rQ - r| = {drift}")
    r.setflags(write=False)
    Q.setflags(write=False)
    return MarkovMeasure(r, Q, support)


def parry_measure(A: TransitionMatrix, eig: PerronData) -> MarkovMeasure:
    """The measure of maximal entropy: r_i = u_i v_i, Q_ij = a_ij v_j / (lam v_i)."""
    u, v, lam = eig.u, eig.v, eig.lam
    Q = A.array * v[None, :] / (lam * v[:, None])
    return markov_measure(u * v, Q, A)


def stationary_vector(Q: np.ndarray, tol: float = 1e-14, max_iter: int = 1_000_000) -> np.ndarray:
    """Stationary probability vector of a stochastic matrix, by power iteration on Q^T.

    Stops when max |rQ - r| falls to `tol`, or when the update size hits a
    rounding limit cycle while the drift is already far below the stationarity
    tolerance of markov_measure.
    """
    Q = np.asarray(Q, dtype=float)
    n = Q.shape[0]
    x = np.full(n, 1.0 / n)
    inc_prev = np.inf
    drift = np.inf
    for _ in range(max_iter):
        y = x @ Q
        y = y / y.sum()
        drift = float(np.max(np.abs(y @ Q - y)))
        if drift <= tol:
            return y
        inc = float(np.max(np.abs(y - x)))
        if inc >= inc_prev and inc <= 1e-12 and drift <= 1e-12:
            return y
        inc_prev = inc
        x = y
    raise ConvergenceError(
        f"stationary vector iteration did not converge within {max_iter} steps",
        residual=drift,
    )


def sample_markov(A: TransitionMatrix, seed: int, concentration: float = 1.0) -> MarkovMeasure:
    """Random Markov measure on A: each row of Q is a symmetric Dirichlet draw
    over that row's allowed entries. Deterministic in (A, seed, concentration).
    """
    if concentration <= 0:
        raise InputError(f"concentration must be positive, got {concentration}")
    rng = np.random.default_rng(seed)
    s = A.size
    Q = np.zeros((s, s))
    for i in range(s):
        allowed = A.successor_sets[i]
        if len(allowed) == 1:
            Q[i, allowed[0]] = 1.0
        else:
            Q[i, list(allowed)] = rng.dirichlet(np.full(len(allowed), concentration))
    r = stationary_vector(Q)
    return markov_measure(r, Q, A)


def cylinder_measure(mu: MarkovMeasure, word) -> float:
    """Measure of the cylinder set of a word: r[w0] * prod Q[w_t, w_t+1].

    Inadmissible words are rejected rather than mapped to 0, to surface caller bugs.
    """
    if not is_admissible(mu.support, word):
        raise InputError(f"word {tuple(word)} is not admissible")
    p = float(mu.stationary[word[0]])
    for a, b in zip(word, word[1:]):
        p *= float(mu.transition[a, b])
    return p


def entropy(mu: MarkovMeasure) -> float:
    """Kolmogorov-Sinai entropy -sum r_i Q_ij log Q_ij in nats (0 log 0 = 0)."""
    Q = mu.transition
    mask = Q > 0.0
    terms = np.where(mask, Q * np.log(np.where(mask, Q, 1.0)), 0.0)
    return float(-(mu.stationary[:, None] * terms).sum())


@dataclass(frozen=True)
class LocallyConstantFunction:
    """A function depending on the first `depth` coordinates, stored as one value
    per admissible depth-word in lexicographic order."""

    matrix: TransitionMatrix
    depth: int
    values: np.ndarray

    def __post_init__(self):
        if self.depth < 1:
            raise InputError(f"depth must be at least 1, got {self.depth}")
        vals = np.array(self.values, dtype=float)
        expected = word_count(self.matrix, self.depth)
        if vals.shape != (expected,):
            raise InputError(
                f"need {expected} values for depth {self.depth}, got shape {vals.shape}"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def words(self) -> tuple[Word, ...]:
        return enumerate_words(self.matrix, self.depth)

    def value(self, word) -> float:
        idx = word_index(self.matrix, self.depth).get(tuple(word))
        if idx is None:
            raise InputError(f"word {tuple(word)} is not an admissible depth-{self.depth} word")
        return float(self.values[idx])

    def as_dict(self) -> dict[str, float]:
        s = self.matrix.size
        return {word_str(w, s): float(x) for w, x in zip(self.words, self.values)}


def constant_function(A: TransitionMatrix, value: float, depth: int = 1) -> LocallyConstantFunction:
    return LocallyConstantFunction(A, depth, np.full(word_count(A, depth), float(value)))


def indicator(A: TransitionMatrix, word) -> LocallyConstantFunction:
    """Indicator of the cylinder of `word`, as a depth-len(word) function."""
    w = tuple(word)
    if not is_admissible(A, w):
        raise InputError(f"word {w} is not admissible")
    vals = np.zeros(word_count(A, len(w)))
    vals[word_index(A, len(w))[w]] = 1.0
    return LocallyConstantFunction(A, len(w), vals)


def function_from_dict(A: TransitionMatrix, depth: int, mapping: dict) -> LocallyConstantFunction:
    """Build a function from {word string: value}; every admissible word is required."""
    words = enumerate_words(A, depth)
    parsed = {parse_word(str(key), A.size): float(val) for key, val in mapping.items()}
    missing = [w for w in words if w not in parsed]
    if missing:
        raise InputError(
            f"missing value for admissible word {word_str(missing[0], A.size)!r} "
            f"({len(missing)} missing in total)"
        )
    extra = set(parsed) - set(words)
    if extra:
        raise InputError(f"value given for inadmissible word {sorted(extra)[0]}")
    return LocallyConstantFunction(A, depth, np.array([parsed[w] for w in words]))


def random_function(A: TransitionMatrix, depth: int, seed: int, scale: float = 1.0) -> LocallyConstantFunction:
    rng = np.random.default_rng(seed)
    return LocallyConstantFunction(A, depth, scale * rng.standard_normal(word_count(A, depth)))


def cylinder_measure_vector(mu: MarkovMeasure, depth: int) -> np.ndarray:
    """Measures of all admissible depth-words, aligned with enumerate_words order."""
    return np.array([cylinder_measure(mu, w) for w in enumerate_words(mu.support, depth)])


def integrate(f: LocallyConstantFunction, mu: MarkovMeasure) -> float:
    """Exact integral of f: the measure-weighted sum over admissible depth-words."""
    if f.matrix != mu.support:
        raise InputError("function and measure live on different transition matrices")
    return float(f.values @ cylinder_measure_vector(mu, f.depth))


def centered(f: LocallyConstantFunction, mu: MarkovMeasure) -> LocallyConstantFunction:
    """f minus its mu-integral."""
    return LocallyConstantFunction(f.matrix, f.depth, f.values - integrate(f, mu))


@dataclass(frozen=True)
class InformationCoboundary:
    """The information function of the Parry measure, in coboundary form:
    iota(x) = log_lambda + g(x1) - g(x0) with g(y) = log u[y0]."""

    log_lambda: float
    g_values: np.ndarray

    def as_function(self, A: TransitionMatrix) -> LocallyConstantFunction:
        words = enumerate_words(A, 2)
        vals = np.array([
            self.log_lambda + self.g_values[b] - self.g_values[a] for a, b in words
        ])
        return LocallyConstantFunction(A, 2, vals)


def information_coboundary(eig: PerronData) -> InformationCoboundary:
    return InformationCoboundary(float(np.log(eig.lam)), np.log(eig.u))


def information_mean(mu: MarkovMeasure, eig: PerronData) -> float:
    """Integral of the information function against mu.

    Equals log(lam) for every stationary mu: the coboundary part cancels.
    """
    iota = information_coboundary(eig).as_function(mu.support)
    return integrate(iota, mu)


def conditional_vectors(mu: MarkovMeasure, eig: PerronData, j: int):
    """Conditional distributions over the predecessor set S_j of symbol j.

    Returns (p, q): p_i = u_i / (lam u_j) is the Parry conditional, and
    q_i = r_i Q[i, j] / r_j the conditional of mu. Both sum to 1; q needs r_j > 0.
    """
    A = mu.support
    S = predecessors(A, j)
    idx = list(S)
    p = eig.u[idx] / (eig.lam * eig.u[j])
    rj = float(mu.stationary[j])
    if rj <= 0.0:
        raise InputError(f"symbol {j} has zero stationary mass; conditional undefined")
    q = mu.stationary[idx] * mu.transition[idx, j] / rj
    return p, q
