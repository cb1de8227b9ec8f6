import random
from fractions import Fraction
from itertools import combinations

import pytest

from oracles import canonical_census, classify_by_scan, codeword_ints, nearest_codeword_census
from rmcap.bounds import ball_volume_exact
from rmcap.capability import (
    CapabilityProfile,
    ErrorClass,
    check_monotonicity,
    classify_error,
    coset_leaders,
    epsilon_upper_bound,
    exact_capability_profile,
)
from rmcap.errors import ParameterError, ResourceError
from rmcap.gf2core import Word
from rmcap.rmcode import build_rm

CODES = [(3, 1), (4, 1), (3, 2), (4, 2), (4, 3), (5, 4)]


@pytest.fixture(scope="module")
def profiles():
    return {nr: exact_capability_profile(build_rm(*nr)) for nr in CODES + [(2, 2), (5, 3), (5, 2)]}


def test_zero_word_is_unambiguous():
    for n, r in [(3, 1), (4, 2), (2, 2), (5, 3)]:
        code = build_rm(n, r)
        assert classify_error(Word.zero(n), code, "generic") is ErrorClass.UNAMBIGUOUS_LEADER


def test_rm31_weight_one_unambiguous():
    code = build_rm(3, 1)
    for p in range(8):
        e = Word.from_positions(3, [p])
        assert classify_error(e, code, "generic") is ErrorClass.UNAMBIGUOUS_LEADER
        assert classify_error(e, code, "walsh") is ErrorClass.UNAMBIGUOUS_LEADER


def test_rm31_weight_two_ambiguous():
    code = build_rm(3, 1)
    e = Word.from_string("11000000")
    cws = codeword_ints(code)
    coset = [e.bits ^ g for g in cws]
    assert sum(1 for v in coset if v.bit_count() == 2) == 4
    assert classify_by_scan(e.bits, code, cws) == "ambiguous"
    assert classify_error(e, code) is ErrorClass.AMBIGUOUS_LEADER
    assert classify_error(e, code, "generic") is ErrorClass.AMBIGUOUS_LEADER


def test_not_leader():
    code = build_rm(3, 1)
    e = Word.from_string("11110001")
    assert classify_error(e, code, "generic") is ErrorClass.NOT_LEADER
    assert classify_error(e, code, "walsh") is ErrorClass.NOT_LEADER


def test_whole_space_code_has_only_zero_leader():
    code = build_rm(2, 2)
    assert classify_error(Word.from_string("0100"), code) is ErrorClass.NOT_LEADER


def test_walsh_path_requires_first_order():
    with pytest.raises(ParameterError):
        classify_error(Word.zero(3), build_rm(3, 2), "walsh")
    with pytest.raises(ParameterError):
        classify_error(Word.zero(3), build_rm(3, 2), "bogus")


@pytest.mark.parametrize("n, r", [(4, 1), (3, 2)])
def test_generic_agrees_with_scan(n, r):
    code = build_rm(n, r)
    cws = codeword_ints(code)
    rng = random.Random(n * 10 + r)
    for _ in range(1000):
        bits = rng.getrandbits(code.length)
        got = classify_error(Word(n, bits), code, "generic")
        assert got.value == classify_by_scan(bits, code, cws)


def test_walsh_agrees_with_generic_exhaustive_rm13():
    code = build_rm(3, 1)
    for bits in range(256):
        e = Word(3, bits)
        assert classify_error(e, code, "walsh") is classify_error(e, code, "generic")


def test_rm31_profile(profiles):
    p = profiles[(3, 1)]
    assert p.epsilons[:4] == [1, 1, Fraction(7, 28), 0]
    assert all(x == 0 for x in p.epsilons[3:])
    assert p.covering_radius == 2
    assert p.t_C == 1
    assert p.leader_weight_census == {0: 1, 1: 8, 2: 7} == nearest_codeword_census(build_rm(3, 1))


def test_rm22_profile(profiles):
    p = profiles[(2, 2)]
    assert p.epsilons == [1, 0, 0, 0, 0]
    assert p.covering_radius == 0


@pytest.mark.parametrize(
    "nr, census",
    [
        # frozen from oracles.canonical_census (full-space scan)
        ((4, 1), {0: 1, 1: 16, 2: 120, 3: 560, 4: 875, 5: 448, 6: 28}),
        ((4, 2), {0: 1, 1: 16, 2: 15}),
        ((3, 2), {0: 1, 1: 1}),
        ((4, 3), {0: 1, 1: 1}),
    ],
)
def test_census_against_full_space_oracle(profiles, nr, census):
    assert profiles[nr].leader_weight_census == census
    assert canonical_census(build_rm(*nr)) == census


def test_rm54_leaders_are_parity_classes():
    code = build_rm(5, 4)
    leaders, weights = coset_leaders(code)
    # even-weight code: odd coset leader is the last position, truth table 0...01
    assert sorted(leaders.tolist()) == [0, 1]
    assert sorted(weights.tolist()) == [0, 1]


def test_leaders_lie_in_their_coset():
    code = build_rm(4, 2)
    leaders, weights = coset_leaders(code)
    for s, (v, w) in enumerate(zip(leaders.tolist(), weights.tolist())):
        word = Word(4, v)
        assert code.syndrome(word) == s
        assert word.bits.bit_count() == w


@pytest.mark.parametrize("nr", CODES + [(5, 3), (5, 2)])
def test_profile_invariants(profiles, nr):
    p = profiles[nr]
    code = build_rm(*nr)
    assert sum(p.correctable) == 1 << (code.length - code.k)
    assert all(p.epsilon(t) == 1 for t in range(((1 << (nr[0] - nr[1])) - 1) // 2 + 1))
    assert all(p.epsilon(t) == 0 for t in range(p.covering_radius + 1, code.length + 1))
    for t in range(code.length + 1):
        assert p.epsilon(t) <= epsilon_upper_bound(code, t)
        assert epsilon_upper_bound(code, t) * ball_volume_exact(code.length, t) == 1 << (code.length - code.k)
    assert check_monotonicity(p).passed


def test_rm41_epsilon_values(profiles):
    p = profiles[(4, 1)]
    assert p.epsilons[:8] == [1, 1, 1, 1, Fraction(25, 52), Fraction(4, 39), Fraction(1, 286), 0]


def test_monotonicity_rejects_flat_profile():
    flat = CapabilityProfile(
        n=2, r=1, k=3, d_min=2, correctable=(1, 4, 6, 4, 1), covering_radius=2
    )
    report = check_monotonicity(flat)
    assert not report.passed
    assert report.first_violation == 0


def test_monotonicity_rejects_increase():
    bumpy = CapabilityProfile(n=2, r=1, k=3, d_min=4, correctable=(1, 1, 3, 0, 0), covering_radius=2)
    report = check_monotonicity(bumpy)
    assert not report.passed and report.first_violation == 1


def test_epsilon_upper_bound_examples():
    code = build_rm(3, 1)
    assert epsilon_upper_bound(code, 2) == Fraction(16, 37)
    assert epsilon_upper_bound(code, 0) == 16
    assert Fraction(1, 4) <= epsilon_upper_bound(code, 2)
    with pytest.raises(ParameterError):
        epsilon_upper_bound(code, 9)


def test_profile_guards():
    with pytest.raises(ResourceError):
        exact_capability_profile(build_rm(6, 5))
    with pytest.raises(ResourceError):
        exact_capability_profile(build_rm(5, 1))


def test_profile_rows_and_summary(profiles):
    p = profiles[(3, 1)]
    row = p.rows()[2]
    assert row == {"t": 2, "total_words": 28, "correctable": 7, "epsilon_num": 7, "epsilon_den": 28}
    assert p.summary()["leader_weight_census"] == {"0": 1, "1": 8, "2": 7}


def test_lexicographic_choice_for_weight_two_cosets():
    # in RM(3,1) each weight-2 coset holds four weight-2 words; the leader is the
    # smallest truth table among them
    code = build_rm(3, 1)
    leaders, _ = coset_leaders(code)
    cws = codeword_ints(code)
    for pos in combinations(range(8), 2):
        e = Word.from_positions(3, pos)
        members = [e.bits ^ g for g in cws if (e.bits ^ g).bit_count() == 2]
        assert leaders[code.syndrome(e)] == min(members)
