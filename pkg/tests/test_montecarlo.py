import math
from itertools import combinations

import numpy as np
import pytest

from oracles import unambiguous_fraction_by_weight
from rmcap.bounds import optimality_ratio, threshold
from rmcap.capability import ErrorClass, classify_error
from rmcap.errors import ParameterError
from rmcap.gf2core import Word, weight
from rmcap.montecarlo import (
    DEFAULT_SEED,
    McEstimate,
    ball_conditioned_fraction,
    capability_threshold_mc,
    estimate_correctable_fraction,
    sample_word_of_weight,
    splitmix64,
    substream_seed,
    threshold_sweep,
    trial_rng,
    wilson_interval,
)
from rmcap.rmcode import build_rm


def test_splitmix_reference_value():
    # first output of SplitMix64 from state 0
    assert substream_seed(0, 0) == 0xE220A8397B1DCDAF
    assert splitmix64(0) == 0
    assert len({substream_seed(DEFAULT_SEED, i) for i in range(1000)}) == 1000


def test_sample_extremes():
    rng = np.random.default_rng(1)
    for _ in range(5):
        assert sample_word_of_weight(8, 0, rng) == Word.zero(3)
        assert sample_word_of_weight(8, 8, rng) == Word.ones(3)
    with pytest.raises(ParameterError):
        sample_word_of_weight(8, 9, rng)


@pytest.mark.parametrize("t", [3, 13, 50])
def test_sample_weight_exact(t):
    rng = np.random.default_rng(t)
    for _ in range(20):
        assert weight(sample_word_of_weight(64, t, rng)) == t


def test_sample_uniform_chi_square():
    rng = np.random.default_rng(2024)
    samples = 100_000
    counts = {}
    for _ in range(samples):
        w = sample_word_of_weight(8, 2, rng).bits
        counts[w] = counts.get(w, 0) + 1
    assert len(counts) == 28
    p = 1 / 28
    sigma = math.sqrt(samples * p * (1 - p))
    assert all(abs(c - samples * p) <= 3 * sigma for c in counts.values())
    chi2 = sum((c - samples * p) ** 2 / (samples * p) for c in counts.values())
    # 99.9% quantile of chi-square with 27 degrees of freedom
    assert chi2 < 55.48


def test_complement_branch_uniform():
    rng = np.random.default_rng(5)
    counts = {}
    for _ in range(28_000):
        w = sample_word_of_weight(8, 6, rng).bits
        counts[w] = counts.get(w, 0) + 1
    assert len(counts) == 28
    assert all(abs(c - 1000) <= 3 * math.sqrt(1000) for c in counts.values())


def test_wilson_interval():
    lo, hi = wilson_interval(0, 200)
    z2 = 1.959963984540054**2
    assert lo == 0 and hi == pytest.approx(z2 / (200 + z2))
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi and lo + hi == pytest.approx(1.0)


def test_guaranteed_region_is_one():
    code = build_rm(6, 1)
    est = estimate_correctable_fraction(code, (code.d_min - 1) // 2, 300)
    assert est.fraction == 1.0 and est.successes == 300
    code = build_rm(4, 2)
    assert estimate_correctable_fraction(code, 1, 200).fraction == 1.0


def test_balanced_errors_never_unambiguous():
    code = build_rm(10, 1)
    assert estimate_correctable_fraction(code, 512, 300).successes == 0


def test_rm13_weight_two_exhaustive():
    code = build_rm(3, 1)
    words = [Word.from_positions(3, pos) for pos in combinations(range(8), 2)]
    hits = sum(classify_error(e, code) is ErrorClass.UNAMBIGUOUS_LEADER for e in words)
    assert (hits, len(words)) == (0, 28)
    assert estimate_correctable_fraction(code, 2, 500).successes == 0


@pytest.mark.parametrize("n", [3, 4])
def test_converges_to_exhaustive_fraction(n):
    code = build_rm(n, 1)
    exact = unambiguous_fraction_by_weight(code)
    covered = total = 0
    for seed in (1, 2, 3):
        for t, (good, words) in enumerate(exact):
            est = estimate_correctable_fraction(code, t, 2000, seed)
            covered += est.ci_low <= good / words <= est.ci_high
            total += 1
    assert covered >= 0.95 * total


def test_generic_path_matches_exhaustive():
    # a second-order code goes through codeword enumeration
    code = build_rm(4, 2)
    exact = unambiguous_fraction_by_weight(code)
    for t in (1, 2, 3):
        est = estimate_correctable_fraction(code, t, 400, 9)
        assert est.ci_low <= exact[t][0] / exact[t][1] <= est.ci_high


def test_determinism_across_workers():
    code = build_rm(8, 1)
    t = threshold(1.0, 8, 1).t_c
    runs = [estimate_correctable_fraction(code, t, 301, 77, workers=w) for w in (1, 3, 4)]
    assert runs[0] == runs[1] == runs[2]
    assert 0 < runs[0].successes < 301


def test_seed_changes_result():
    code = build_rm(8, 1)
    t = threshold(1.0, 8, 1).t_c
    a = estimate_correctable_fraction(code, t, 400, 1)
    b = estimate_correctable_fraction(code, t, 400, 2)
    assert a.successes != b.successes


def test_trial_stream_is_counter_based():
    a = trial_rng(5, 10).integers(0, 1 << 62, 4)
    b = trial_rng(5, 10).integers(0, 1 << 62, 4)
    c = trial_rng(5, 11).integers(0, 1 << 62, 4)
    assert a.tolist() == b.tolist() != c.tolist()


def test_monotone_trend_in_t():
    code = build_rm(10, 1)
    ests = [estimate_correctable_fraction(code, t, 400, 3) for t in range(420, 500, 10)]
    for a, b in zip(ests, ests[1:]):
        # later (heavier) shells never significantly exceed earlier ones
        assert b.ci_low <= a.ci_high


def test_sweep_ordering_rm14():
    code = build_rm(14, 1)
    rows = threshold_sweep(code, [0.5, 1.0, 1.5], 1000)
    assert [r.c for r in rows] == [1.5, 1.0, 0.5]
    assert [r.t for r in rows] == sorted(r.t for r in rows)
    assert rows[0].fraction > rows[2].fraction


def test_sweep_guarantee_region_and_rejects():
    code = build_rm(6, 1)
    rows = threshold_sweep(code, [5.0], 100)
    assert rows[0].t < code.d_min / 2 and rows[0].fraction == 1.0
    with pytest.raises(ParameterError):
        threshold_sweep(code, [1.0], 0)
    with pytest.raises(ParameterError):
        threshold_sweep(code, [], 10)


def test_ball_conditioned_fraction():
    ests = [
        McEstimate(4, 1, None, 3, 10, 10, 1.0, 0.7, 1.0, 0),
        McEstimate(4, 1, None, 4, 10, 0, 0.0, 0.0, 0.3, 0),
    ]
    assert ball_conditioned_fraction(ests) == pytest.approx(560 / (560 + 1820))


@pytest.mark.slow
def test_optimality_ratio_approaches_one():
    ratios = []
    for n in (10, 12, 14):
        t = capability_threshold_mc(build_rm(n, 1), 0.5, 200, seed=11)
        ratios.append(optimality_ratio(n, n + 1, t))
    gaps = [abs(1 - x) for x in ratios]
    assert gaps == sorted(gaps, reverse=True)
    assert all(0.8 < x < 1.0 for x in ratios)
