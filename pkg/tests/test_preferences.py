import random
from fractions import Fraction as F

import pytest

from allotment.preferences import (
    INF,
    Comparison,
    SinglePeaked,
    SinglePlateaued,
    disutility,
    prefers,
    worst,
)
from helpers import brute_force_worst

STEEP_RIGHT = SinglePeaked(F(1, 3), F(1), F(3))


def test_disutility_at_peak_is_zero():
    assert disutility(STEEP_RIGHT, F(1, 3)) == 0


def test_disutility_realizes_zero_over_half_comparison():
    # peak 1/3 with right slope 3: zero consumption beats 1/2
    assert disutility(STEEP_RIGHT, 0) == F(1, 3)
    assert disutility(STEEP_RIGHT, F(1, 2)) == F(1, 2)
    assert prefers(STEEP_RIGHT, 0, F(1, 2)) is Comparison.STRICT


def test_symmetric_slopes_give_equidistant_indifference():
    pref = SinglePeaked(F(2), F(5), F(5))
    assert disutility(pref, 1) == disutility(pref, 3) == 5
    assert prefers(pref, 1, 3) is Comparison.INDIFFERENT


def test_prefers_half_over_two_thirds():
    assert prefers(STEEP_RIGHT, F(1, 2), F(2, 3)) is Comparison.STRICT
    assert disutility(STEEP_RIGHT, F(2, 3)) == 1


def test_prefers_reflexive_indifference():
    for pref in (STEEP_RIGHT, SinglePeaked(F(5), F(2), F(7))):
        assert prefers(pref, F(3, 7), F(3, 7)) is Comparison.INDIFFERENT


def test_infinite_peak_more_is_better():
    pref = SinglePeaked(INF)
    assert prefers(pref, 5, 3) is Comparison.STRICT
    # cross-check against the d(x) = -x oracle
    rng = random.Random(7)
    for _ in range(200):
        x = F(rng.randint(0, 600), rng.randint(1, 60))
        assert pref.disutility(x) == -x


def test_worst_picks_maximal_disutility():
    assert worst(STEEP_RIGHT, [F(0), F(1, 2), F(2, 3)]) == F(2, 3)


def test_worst_singleton():
    assert worst(STEEP_RIGHT, [F(7, 5)]) == F(7, 5)


def test_worst_tie_breaks_to_smaller_amount():
    pref = SinglePeaked(F(1), F(1), F(1))
    assert worst(pref, [F(0), F(2)]) == 0


def test_worst_matches_brute_force_on_random_sets():
    rng = random.Random(11)
    for _ in range(300):
        pref = SinglePeaked(
            F(rng.randint(0, 120), rng.randint(1, 60)),
            F(rng.randint(1, 10)),
            F(rng.randint(1, 10)),
        )
        amounts = {
            F(rng.randint(0, 120), rng.randint(1, 60))
            for _ in range(rng.randint(1, 8))
        }
        assert worst(pref, amounts) == brute_force_worst(pref, amounts)


def test_single_peakedness_on_random_triples():
    # closer to the peak from either side is strictly better
    rng = random.Random(3)
    for _ in range(1000):
        peak = F(rng.randint(0, 120), rng.randint(1, 60))
        pref = SinglePeaked(peak, F(rng.randint(1, 10)), F(rng.randint(1, 10)))
        below = sorted(
            F(rng.randint(0, peak.numerator * 60), peak.denominator * 60)
            for _ in range(2)
        )
        if below[0] < below[1] <= peak:
            assert prefers(pref, below[1], below[0]) is Comparison.STRICT
        above = sorted(peak + F(rng.randint(0, 120), 60) for _ in range(2))
        if peak <= above[0] < above[1]:
            assert prefers(pref, above[0], above[1]) is Comparison.STRICT


def test_degenerate_plateau_equals_single_peaked():
    rng = random.Random(5)
    for _ in range(100):
        peak = F(rng.randint(0, 120), rng.randint(1, 60))
        left, right = F(rng.randint(1, 9)), F(rng.randint(1, 9))
        plateau = SinglePlateaued(peak, peak, left, right)
        spiked = SinglePeaked(peak, left, right)
        for _ in range(10):
            x = F(rng.randint(0, 240), rng.randint(1, 60))
            assert plateau.disutility(x) == spiked.disutility(x)


def test_plateau_disutility_shape():
    pref = SinglePlateaued(F(1), F(2), F(2), F(3))
    assert pref.disutility(F(3, 2)) == 0
    assert pref.disutility(F(1, 2)) == 1
    assert pref.disutility(F(3)) == 3


def test_negative_consumption_rejected():
    with pytest.raises(ValueError):
        disutility(STEEP_RIGHT, F(-1, 2))


def test_empty_worst_rejected():
    with pytest.raises(ValueError):
        worst(STEEP_RIGHT, [])


def test_invalid_preferences_rejected():
    with pytest.raises(ValueError):
        SinglePeaked(F(-1))
    with pytest.raises(ValueError):
        SinglePeaked(F(1), F(0), F(1))
    with pytest.raises(ValueError):
        SinglePlateaued(F(2), F(1))
