import numpy as np
import pytest

from dunkl_osc import (ArgumentError, CutSequence, PartialSumFamily,
                       ThresholdSeq, build_family, carleson_dunkl_max,
                       carleson_hankel_max, even_odd_split, make_graded_grid,
                       max_oscillation_over_sampled_sequences, oscillation,
                       sample, variation)


def synthetic_family(rows, grid):
    """Family with prescribed per-threshold rows (for closed-form checks)."""
    t = ThresholdSeq(np.arange(1.0, len(rows) + 1.0))
    base = sample(lambda x: np.zeros_like(np.asarray(x, float)), grid)
    vals = np.stack([np.full(grid.n, complex(r)) for r in rows])
    return PartialSumFamily(base, 0.0, "dunkl", t, vals)


@pytest.fixture(scope="module")
def grid():
    return make_graded_grid(-1.0, 1.0, 4, 8, 1.0)


def test_constant_family_zero(grid):
    fam = synthetic_family([3.0, 3.0, 3.0, 3.0], grid)
    cuts = CutSequence(ThresholdSeq(np.array([1.0, 2.0, 4.0])), 2)
    assert np.max(oscillation(fam, cuts).values.real) == 0.0
    assert np.max(variation(fam, 2.0).values.real) == 0.0


def test_step_family_single_jump(grid):
    # rows 0 below t=3, 1 at and above; cuts straddling the jump see size 1
    fam = synthetic_family([0.0, 0.0, 1.0, 1.0], grid)
    cuts = CutSequence(ThresholdSeq(np.array([1.0, 4.0])), 1)
    assert np.max(np.abs(oscillation(fam, cuts).values.real - 1.0)) < 1e-15


def test_single_block_equals_direct_max(grid):
    rng = np.random.Generator(np.random.Philox(key=42))
    rows = rng.standard_normal(6)
    fam = synthetic_family(list(rows), grid)
    # J=1 with the block [t_1, t_6): sup_t |a_t - a_{t_min}| over the half-open
    # window (the closing edge is a block base only, per the defining formula)
    cuts = CutSequence(ThresholdSeq(np.array([1.0, 6.0])), 1)
    direct = np.max(np.abs(rows[:-1] - rows[0]))
    assert np.max(np.abs(oscillation(fam, cuts).values.real - direct)) < 1e-15


def test_cut_membership_enforced(grid):
    fam = synthetic_family([0.0, 1.0, 2.0], grid)
    with pytest.raises(ArgumentError):
        oscillation(fam, CutSequence(ThresholdSeq(np.array([1.0, 2.5])), 1))


def test_variation_examples(grid):
    fam = synthetic_family([0.0, 1.0, 0.0], grid)
    assert np.max(np.abs(variation(fam, 2.0).values.real - np.sqrt(2.0))) < 1e-15
    mono = synthetic_family([0.0, 0.3, 1.1, 2.0], grid)
    assert np.max(np.abs(variation(mono, 1.0).values.real - 2.0)) < 1e-15
    with pytest.raises(ArgumentError):
        variation(fam, 0.5)


def test_variation_dp_beats_consecutive(grid):
    # skipping middle points increases the r=2 sum for a monotone family
    fam = synthetic_family([0.0, 1.0, 2.0], grid)
    v = variation(fam, 2.0).values.real[0]
    assert v == pytest.approx(2.0, abs=1e-15)  # selection {0, 2}


def test_oscillation_monotone_in_blocks(grid):
    rng = np.random.Generator(np.random.Philox(key=1))
    rows = rng.standard_normal(8)
    fam = synthetic_family(list(rows), grid)
    c2 = CutSequence(ThresholdSeq(np.array([1.0, 4.0, 6.0])), 2)
    c3 = CutSequence(ThresholdSeq(np.array([1.0, 4.0, 6.0, 8.0])), 3)
    assert np.all(oscillation(fam, c3).values.real
                  >= oscillation(fam, c2).values.real - 1e-15)


def test_sampled_sup_properties(space512, freq512, one_bump):
    tg = ThresholdSeq.union(ThresholdSeq.geometric(0.1, 20.0, 24),
                            ThresholdSeq.dyadic(-3, 4))
    fam = build_family(0.0, one_bump, tg, freq512)
    m1 = max_oscillation_over_sampled_sequences(fam, 4, 8, 11)
    m2 = max_oscillation_over_sampled_sequences(fam, 4, 32, 11)
    assert np.all(m2.values.real >= m1.values.real - 1e-15)
    # dominates any fixed member sequence
    pick = ThresholdSeq(tg.values[[0, 9, 19]])
    member = oscillation(fam, CutSequence(pick, 2))
    full = max_oscillation_over_sampled_sequences(fam, 2, 64, 11)
    assert np.all(full.values.real >= member.values.real - 1e-15)


def test_oscillation_bounded_by_variation(space512, freq512, one_bump):
    tg = ThresholdSeq.geometric(0.1, 20.0, 32)
    fam = build_family(0.5, one_bump, tg, freq512)
    v2 = variation(fam, 2.0).values.real
    rng = np.random.Generator(np.random.Philox(key=9))
    for _ in range(25):
        k = int(rng.integers(2, 10))
        pick = np.sort(rng.choice(len(tg), size=k, replace=False))
        cuts = CutSequence(ThresholdSeq(tg.values[pick]), k - 1)
        osc = oscillation(fam, cuts).values.real
        assert np.all(osc <= v2 + 1e-12)


def test_carleson_max_operators(space512, freq512, corpus512):
    m = corpus512[1]
    tg = ThresholdSeq.union(ThresholdSeq.geometric(0.1, 50.0, 32),
                            ThresholdSeq.dyadic(-3, 5))
    cd = carleson_dunkl_max(0.5, m.sampled, tg, freq512)
    fam = build_family(0.5, m.sampled, tg, freq512)
    for i in (0, 10, 20):
        assert np.all(cd.values.real >= np.abs(fam.values[i]) - 1e-14)
    # at the band limit the rows approach f, so the max nearly dominates |f|
    assert np.all(cd.values.real >= np.abs(m.sampled.values) - 1e-3)
    # parity-decomposition bound for the maximal operator
    fe, fo = even_odd_split(m.sampled)
    foy = fo.with_values(fo.values / fo.grid.points)
    he = carleson_hankel_max(0.5, fe, tg, freq512.positive_half())
    ho = carleson_hankel_max(1.5, foy, tg, freq512.positive_half())
    half_pts = fe.grid.points
    bound = np.concatenate([(he.values.real + half_pts * ho.values.real)[::-1],
                            he.values.real + half_pts * ho.values.real])
    assert np.all(cd.values.real <= bound + 1e-8)


def test_zero_function_all_zero(space512, freq512):
    z = sample(lambda x: np.zeros_like(np.asarray(x, float)), space512)
    tg = ThresholdSeq.dyadic(-2, 3)
    fam = build_family(0.0, z, tg, freq512)
    assert np.max(max_oscillation_over_sampled_sequences(fam, 2, 4, 3).values.real) == 0.0
    assert np.max(variation(fam, 2.0).values.real) == 0.0
    assert np.max(carleson_dunkl_max(0.0, z, tg, freq512).values.real) == 0.0


def test_sampled_sup_j_guard(grid):
    fam = synthetic_family([0.0, 1.0, 2.0], grid)
    with pytest.raises(ArgumentError):
        max_oscillation_over_sampled_sequences(fam, 5, 4, 1)
