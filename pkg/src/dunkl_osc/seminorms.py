"""Truncated oscillation seminorm, r-variation seminorm, and the
Carleson-type maximal functions of a partial-sum family.

The outer supremum over all strictly increasing cut sequences is not
computable; callers get the exact value for any fixed cut sequence, a
sampled lower bound over seeded random sequences (counter-based streams,
so results are reproducible and independent of evaluation order), and the
canonical dyadic sequence separately.  The r-variation over the family's
finite t-grid is computed exactly for every r >= 1 by the quadratic
dynamic program over selection endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError
from .funcspace import SampledFn
from .projections import PartialSumFamily, ThresholdSeq, build_family


@dataclass(frozen=True)
class CutSequence:
    """Strictly increasing cuts I_1 < ... < I_{J+1} drawn from a family's
    t-grid; J is the number of oscillation blocks actually used."""

    seq: ThresholdSeq
    J: int

    def __post_init__(self):
        if self.J < 1:
            raise ArgumentError("need at least one oscillation block")
        if len(self.seq) < self.J + 1:
            raise ArgumentError("cut sequence must have length >= J+1")


def _cut_indices(family: PartialSumFamily, cuts: CutSequence) -> np.ndarray:
    tg = family.t_grid.values
    idx = np.searchsorted(tg, cuts.seq.values)
    idx = np.clip(idx, 0, tg.size - 1)
    ok = np.isclose(tg[idx], cuts.seq.values, rtol=1e-12, atol=0.0)
    if not np.all(ok):
        raise ArgumentError("every cut must belong to the family's t-grid")
    return idx


def oscillation(family: PartialSumFamily, cuts: CutSequence) -> SampledFn:
    """O^2_{I,J}: sqrt of the sum over blocks of the squared sup of
    |a_t - a_{I_j}| for t in the family's grid restricted to [I_j, I_{j+1})."""
    idx = _cut_indices(family, cuts)
    vals = family.values
    acc = np.zeros(vals.shape[1])
    for j in range(cuts.J):
        i0, i1 = idx[j], idx[j + 1]
        block = np.abs(vals[i0:i1] - vals[i0]) ** 2
        acc += np.max(block, axis=0)
    return SampledFn(family.base.grid, np.sqrt(acc), family.base.domain_tag)


def _dyadic_indices(t_values: np.ndarray) -> np.ndarray:
    m, _ = np.frexp(t_values)
    return np.nonzero(m == 0.5)[0]


def max_oscillation_over_sampled_sequences(family: PartialSumFamily, J: int,
                                           n_random: int, seed: int) -> SampledFn:
    """Pointwise max of the oscillation over n_random seeded random
    increasing cut sequences plus two canonical ones (the dyadic subsequence
    and the every-other-threshold sequence); a lower bound for the sup over
    all sequences.  Sequences denser than half the grid are pointless (a
    block without interior grid points contributes zero), so the drawn
    length is capped at (T-1)//2 + 1."""
    T = len(family.t_grid)
    if J + 1 > T:
        raise ArgumentError("J+1 exceeds the t-grid length")
    j_eff = min(J, max(1, (T - 1) // 2))
    best = np.zeros(family.base.grid.n)
    tg = family.t_grid.values
    for i in range(n_random):
        rng = np.random.Generator(np.random.Philox(key=[seed, i]))
        pick = np.sort(rng.choice(T, size=j_eff + 1, replace=False))
        cuts = CutSequence(ThresholdSeq(tg[pick]), j_eff)
        best = np.maximum(best, oscillation(family, cuts).values.real)
    for idx in (_dyadic_indices(tg), np.arange(0, T, 2)):
        if idx.size >= 2:
            cuts = CutSequence(ThresholdSeq(tg[idx]), idx.size - 1)
            best = np.maximum(best, oscillation(family, cuts).values.real)
    return SampledFn(family.base.grid, best, family.base.domain_tag)


def variation(family: PartialSumFamily, r: float) -> SampledFn:
    """V^r over the family's t-grid: sup over increasing selections of
    (sum |a_{t_{j+1}} - a_{t_j}|^r)^{1/r}, exact via dynamic programming
    over the selection's last element."""
    if r < 1.0:
        raise ArgumentError("variation exponent must satisfy r >= 1")
    vals = family.values
    T, N = vals.shape
    best = np.zeros((T, N))
    for i in range(1, T):
        # best chain ending at i: max over previous endpoints j < i
        cand = best[:i] + np.abs(vals[i] - vals[:i]) ** r
        best[i] = np.max(cand, axis=0)
    return SampledFn(family.base.grid, np.max(best, axis=0) ** (1.0 / r),
                     family.base.domain_tag)


def carleson_dunkl_max(order: float, f: SampledFn, t_grid: ThresholdSeq,
                       freq_grid=None) -> SampledFn:
    """sup_t |S_t f| over the t-grid (full line)."""
    fam = build_family(order, f, t_grid, freq_grid, kind="dunkl")
    return fam.max_abs()


def carleson_hankel_max(order: float, f: SampledFn, t_grid: ThresholdSeq,
                        freq_grid=None) -> SampledFn:
    """sup_t |S~_t f| over the t-grid (half line)."""
    fam = build_family(order, f, t_grid, freq_grid, kind="hankel")
    return fam.max_abs()
