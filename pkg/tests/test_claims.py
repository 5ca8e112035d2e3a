import random
from fractions import Fraction as F

import pytest

from allotment.claims import (
    Awards,
    ClaimsProblem,
    cea,
    cel,
    check_claims_rule_properties,
    pro,
)
from allotment.levels import solve_loss_level, solve_min_level
from allotment.sampling import random_claims_problem
from helpers import bisect_decreasing, bisect_increasing

KERNEL = ClaimsProblem((F(1), F(2), F(3)), F(3))


def test_cea_kernel():
    assert tuple(cea(KERNEL)) == (F(1), F(1), F(1))


def test_cel_kernel():
    assert tuple(cel(KERNEL)) == (F(0), F(1), F(2))


def test_pro_kernel():
    assert tuple(pro(KERNEL)) == (F(1, 2), F(1), F(3, 2))


def test_full_endowment_returns_claims():
    cp = ClaimsProblem((F(1), F(2), F(3)), F(6))
    for rule in (cea, cel, pro):
        assert tuple(rule(cp)) == cp.claims


def test_zero_endowment_returns_zeros():
    cp = ClaimsProblem((F(1), F(2), F(3)), F(0))
    for rule in (cea, cel, pro):
        assert tuple(rule(cp)) == (0, 0, 0)


def test_cel_two_claim_example():
    # the equal-losses step inside the worked three-agent simple-rule example
    cp = ClaimsProblem((F(1, 2), F(3, 2)), F(1, 2))
    assert tuple(cel(cp)) == (F(0), F(1, 2))


def test_pro_two_claim_example():
    cp = ClaimsProblem((F(1, 2), F(3, 2)), F(1, 2))
    assert tuple(pro(cp)) == (F(1, 8), F(3, 8))


def test_all_zero_claims():
    cp = ClaimsProblem((F(0), F(0)), F(0))
    for rule in (cea, cel, pro):
        assert tuple(rule(cp)) == (0, 0)


def test_awards_bounded_and_exhaustive_on_random_problems():
    rng = random.Random(17)
    for _ in range(1000):
        cp = random_claims_problem(rng)
        for rule in (cea, cel, pro):
            awards = rule(cp)
            assert sum(awards) == cp.endowment
            for award, claim in zip(awards, cp.claims):
                assert 0 <= award <= claim


def test_cea_cel_duality():
    # classical identity: cea(c, E) = c - cel(c, sum(c) - E)
    rng = random.Random(19)
    for _ in range(500):
        cp = random_claims_problem(rng)
        dual = ClaimsProblem(cp.claims, cp.total - cp.endowment)
        direct = tuple(cea(cp))
        via_dual = tuple(c - nu for c, nu in zip(cp.claims, cel(dual)))
        assert direct == via_dual


def test_scan_levels_match_bisection_oracle():
    rng = random.Random(31)
    for _ in range(1000):
        cp = random_claims_problem(rng)
        if not cp.claims or cp.total == 0:
            continue
        top = max(cp.claims)
        lam_cea = solve_min_level(cp.claims, cp.endowment)
        lo, hi = bisect_increasing(
            lambda lam: sum(min(c, lam) for c in cp.claims),
            cp.endowment,
            0,
            top,
        )
        assert lo <= lam_cea <= hi
        # awards implied by the bracket agree with the scanner's awards:
        # claims at or below the bracket are fully served
        for c, award in zip(cp.claims, cea(cp)):
            if c <= lo:
                assert award == c

        lam_cel = solve_loss_level(cp.claims, cp.endowment)
        lo, hi = bisect_decreasing(
            lambda lam: sum(max(F(0), c - lam) for c in cp.claims),
            cp.endowment,
            0,
            top,
        )
        assert lo <= lam_cel <= hi
        # claims at or below the bracket lose everything under equal losses
        for c, award in zip(cp.claims, cel(cp)):
            if c <= lo:
                assert award == 0


def test_properties_of_the_three_rules():
    rng = random.Random(37)
    problems = [random_claims_problem(rng) for _ in range(1000)]
    for rule in (cea, cel, pro):
        report = check_claims_rule_properties(rule, problems)
        assert report.symmetric
        assert report.responsive


def priority_first(cp: ClaimsProblem) -> Awards:
    # serves claimants in index order until the endowment runs out
    remaining = cp.endowment
    out = []
    for claim in cp.claims:
        award = min(claim, remaining)
        out.append(award)
        remaining -= award
    return Awards(tuple(out))


def test_priority_rule_flagged_asymmetric():
    problems = [ClaimsProblem((F(1), F(1)), F(1))]
    report = check_claims_rule_properties(priority_first, problems)
    assert not report.symmetric
    assert report.symmetry_witness is not None
    cp, i, j = report.symmetry_witness
    assert cp.claims[i] == cp.claims[j]
    awards = priority_first(cp)
    assert awards[i] != awards[j]


def test_invalid_problems_rejected():
    with pytest.raises(ValueError):
        ClaimsProblem((F(1),), F(2))
    with pytest.raises(ValueError):
        ClaimsProblem((F(-1), F(2)), F(1))
