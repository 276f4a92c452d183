"""The transfer operator on locally constant functions, the theta seminorm, and
decay-rate certificates (C, rho) for sup-norm decay of mean-zero iterates.

On depth-d functions the operator is an exact finite matrix with kernel weights
u_i / (lam u_j); it maps depth d to depth max(d-1, 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CeilingError, DegenerateSpectrumError, InputError
from .measures import (
    LocallyConstantFunction,
    cylinder_measure,
    parry_measure,
    random_function,
    integrate,
)
from .sft import MetricParams, TransitionMatrix, enumerate_words, predecessors, word_index
from .spectral import EIG_CEILING, PerronData, subdominant_modulus

DECAY_HORIZON = 50

# Iterate sup-norms at or below DECAY_FLOOR * |g|_theta are rounding residue of an
# exact zero and are treated as 0 in calibration and verification.
DECAY_FLOOR = 1e-13


def supnorm(f: LocallyConstantFunction) -> float:
    return float(np.max(np.abs(f.values)))


def lip_seminorm(f: LocallyConstantFunction, params: MetricParams = MetricParams()) -> float:
    """max over 0 <= n < depth of var_n(f) / theta^n.

    var_n is the largest |f(w) - f(w')| over admissible word pairs agreeing on
    the first n symbols; it vanishes for n >= depth, so the sup is a finite max.
    """
    words = f.words
    vals = f.values
    best = 0.0
    for n in range(f.depth):
        lo: dict = {}
        hi: dict = {}
        for w, x in zip(words, vals):
            key = w[:n]
            if key not in lo:
                lo[key] = x
                hi[key] = x
            else:
                if x < lo[key]:
                    lo[key] = x
                if x > hi[key]:
                    hi[key] = x
        var_n = max(hi[k] - lo[k] for k in lo)
        best = max(best, var_n / params.theta**n)
    return float(best)


def transfer_apply(f: LocallyConstantFunction, eig: PerronData) -> LocallyConstantFunction:
    """Apply the operator once: (Lf)(w) = sum over i -> w0 of u_i/(lam u_w0) f(i.w)."""
    A = f.matrix
    d = f.depth
    out_depth = max(d - 1, 1)
    u, lam = eig.u, eig.lam
    out_words = enumerate_words(A, out_depth)
    out_vals = np.empty(len(out_words))
    for k, w in enumerate(out_words):
        j = w[0]
        prefix = w[: d - 1]
        acc = 0.0
        for i in predecessors(A, j):
            acc += u[i] / (lam * u[j]) * f.value((i,) + prefix)
        out_vals[k] = acc
    return LocallyConstantFunction(A, out_depth, out_vals)


def transfer_matrix(A: TransitionMatrix, eig: PerronData, depth: int):
    """Matrix of the operator on the depth-`depth` word space (with the image
    depth-(d-1) space embedded back into depth d). Returns (matrix, words)."""
    words = enumerate_words(A, depth)
    index = word_index(A, depth)
    n = len(words)
    u, lam = eig.u, eig.lam
    M = np.zeros((n, n))
    for row, w in enumerate(words):
        j = w[0]
        prefix = w[: depth - 1]
        for i in predecessors(A, j):
            M[row, index[(i,) + prefix]] += u[i] / (lam * u[j])
    return M, words


def conditional_expectation_check(f: LocallyConstantFunction, eig: PerronData) -> float:
    """Max discrepancy between (Lf) after one shift and the direct conditional
    expectation sum over predecessors, evaluated on depth-(d+1) words."""
    A = f.matrix
    d = f.depth
    u, lam = eig.u, eig.lam
    lf = transfer_apply(f, eig)
    worst = 0.0
    for x in enumerate_words(A, d + 1):
        j = x[1]
        direct = sum(
            u[i] / (lam * u[j]) * f.value((i,) + x[1:d]) for i in predecessors(A, j)
        )
        shifted = lf.value(x[1 : 1 + lf.depth])
        worst = max(worst, abs(direct - shifted))
    return worst


@dataclass(frozen=True)
class DecayEstimate:
    """Certificate |L^n g|_inf <= C rho^n |g|_theta for mean-zero g of the stated depth."""

    C: float
    rho: float
    source: str  # "spectral" or "fitted"
    depth: int
    theta: float


def mean_zero_probes(A: TransitionMatrix, eig: PerronData, depth: int) -> list[LocallyConstantFunction]:
    """Calibration basis: the indicator of each depth cylinder minus its Parry measure."""
    m = parry_measure(A, eig)
    words = enumerate_words(A, depth)
    probes = []
    for k, w in enumerate(words):
        vals = np.full(len(words), -cylinder_measure(m, w))
        vals[k] += 1.0
        probes.append(LocallyConstantFunction(A, depth, vals))
    return probes


def _calibrate(M: np.ndarray, probes, rho: float, params: MetricParams, horizon: int) -> float:
    big_c = 0.0
    for g in probes:
        sem = lip_seminorm(g, params)
        if sem <= 0.0:
            continue
        vec = g.values.copy()
        for n in range(horizon + 1):
            sup = float(np.max(np.abs(vec)))
            if sup <= DECAY_FLOOR * sem:
                # numerically dead iterate; the exact-arithmetic value is 0
                pass
            elif rho**n * sem == 0.0:
                raise DegenerateSpectrumError(
                    "decay rate is exactly 0 but an iterate is nonzero at step "
                    f"{n}; no geometric certificate exists at this depth "
                    "(retry at depth 1 or with mode='fitted')"
                )
            else:
                ratio = sup / (rho**n * sem)
                if ratio > big_c:
                    big_c = ratio
            vec = M @ vec
    return big_c


def decay_estimate(
    A: TransitionMatrix,
    eig: PerronData,
    depth: int,
    mode: str = "spectral",
    params: MetricParams = MetricParams(),
    horizon: int = DECAY_HORIZON,
    seed: int = 0,
    n_probes: int = 8,
    eig_ceiling: int = EIG_CEILING,
) -> DecayEstimate:
    """Estimate (C, rho) for sup-norm decay of mean-zero depth-`depth` functions.

    mode="spectral": rho is the subdominant modulus of the operator matrix on the
    depth word space and C is calibrated so the bound holds over the probe basis
    for all n up to `horizon` (0/0 steps skipped).

    mode="fitted": rho comes from a pooled log-linear fit of sup-norm decay of
    seeded random mean-zero probes; C is calibrated the same way.
    """
    if depth < 1:
        raise InputError(f"depth must be at least 1, got {depth}")
    M, words = transfer_matrix(A, eig, depth)
    if mode == "spectral":
        if len(words) > eig_ceiling:
            raise CeilingError(
                f"depth-{depth} word space has {len(words)} words, above the "
                f"eigensolver ceiling {eig_ceiling}"
            )
        rho = subdominant_modulus(M, ceiling=eig_ceiling)
        probes = mean_zero_probes(A, eig, depth)
        big_c = _calibrate(M, probes, rho, params, horizon)
        return DecayEstimate(big_c, rho, "spectral", depth, params.theta)
    if mode == "fitted":
        m = parry_measure(A, eig)
        probes = []
        for k in range(n_probes):
            g = random_function(A, depth, seed=(seed, k))
            probes.append(
                LocallyConstantFunction(A, depth, g.values - integrate(g, m))
            )
        pts_n: list[float] = []
        pts_log: list[float] = []
        for g in probes:
            sem = lip_seminorm(g, params)
            vec = g.values.copy()
            for n in range(horizon + 1):
                sup = float(np.max(np.abs(vec)))
                if n >= 1 and sup > 1e-14 * max(sem, 1.0):
                    pts_n.append(float(n))
                    pts_log.append(float(np.log(sup)))
                vec = M @ vec
        if len(set(pts_n)) < 2:
            rho = 0.0
        else:
            slope = float(np.polyfit(pts_n, pts_log, 1)[0])
            rho = min(max(float(np.exp(slope)), 0.0), 1.0 - 1e-9)
        big_c = _calibrate(M, probes, rho, params, horizon)
        return DecayEstimate(big_c, rho, "fitted", depth, params.theta)
    raise InputError(f"unknown decay mode {mode!r}; expected 'spectral' or 'fitted'")
