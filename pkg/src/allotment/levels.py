"""Exact solvers for the piecewise-linear level equations behind the rules.

Every rule in the library reduces to finding the level at which a sum of
clamped linear pieces hits a target. Each solver sorts the breakpoints and
scans prefix sums, so the returned level is an exact rational; no floating
bisection is ever used in the allocation path (bisection appears only as a
test oracle).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def solve_min_level(caps: Sequence[Fraction], target: Fraction) -> Fraction:
    """Level lam with sum_i min(cap_i, lam) = target, 0 <= target <= sum(caps).

    The water-filling level for constrained-equal-awards-type rules.
    """
    caps = [Fraction(c) for c in caps]
    target = Fraction(target)
    if target < 0 or target > sum(caps):
        raise ValueError("target outside [0, sum of caps]")
    if not caps:
        return Fraction(0)
    ordered = sorted(caps)
    k = len(ordered)
    consumed = Fraction(0)  # total of caps already fully served
    for j, cap in enumerate(ordered):
        if consumed + (k - j) * cap >= target:
            return (target - consumed) / (k - j)
        consumed += cap
    return ordered[-1]


def solve_loss_level(claims: Sequence[Fraction], target: Fraction) -> Fraction:
    """Level lam with sum_i max(0, claim_i - lam) = target, 0 <= target <= sum.

    The dual water level for constrained-equal-losses-type rules.
    """
    claims = [Fraction(c) for c in claims]
    target = Fraction(target)
    total = sum(claims)
    if target < 0 or target > total:
        raise ValueError("target outside [0, sum of claims]")
    if not claims:
        return Fraction(0)
    ordered = sorted(claims)
    k = len(ordered)
    removed = Fraction(0)
    for j, claim in enumerate(ordered):
        # remaining loss at lam = claim: everything below is already at zero
        if total - removed - (k - j) * claim <= target:
            return (total - removed - target) / (k - j)
        removed += claim
    return ordered[-1]


def solve_max_level(floors: Sequence[Fraction], target: Fraction) -> Fraction:
    """Level lam with sum_i max(floor_i, lam) = target, target >= sum(floors)."""
    floors = [Fraction(f) for f in floors]
    target = Fraction(target)
    if target < sum(floors):
        raise ValueError("target below the sum of floors")
    ordered = sorted(floors)
    k = len(ordered)
    total = sum(ordered)
    prefix = Fraction(0)  # total of floors already lifted to lam
    for j in range(1, k + 1):
        prefix += ordered[j - 1]
        # lam in [ordered[j-1], ordered[j]]: sum = (total - prefix) + j*lam
        lam = (target - (total - prefix)) / j
        if lam >= ordered[j - 1] and (j == k or lam <= ordered[j]):
            return lam
    raise AssertionError("unreachable: max-level scan must bracket the target")


def solve_clamp_level(
    lows: Sequence[Fraction], highs: Sequence[Fraction], target: Fraction
) -> Fraction:
    """Level lam with sum_i clamp(lam, low_i, high_i) = target.

    Requires sum(lows) <= target <= sum(highs). When the sum is flat at the
    target over an interval of levels, the smallest such level is returned
    (the clamped amounts are identical either way).
    """
    lows = [Fraction(x) for x in lows]
    highs = [Fraction(x) for x in highs]
    target = Fraction(target)
    if len(lows) != len(highs):
        raise ValueError("lows and highs must have the same length")
    if any(h < l for l, h in zip(lows, highs)):
        raise ValueError("each interval needs low <= high")
    if not (sum(lows) <= target <= sum(highs)):
        raise ValueError("target outside [sum of lows, sum of highs]")

    def total_at(lam: Fraction) -> Fraction:
        return sum(min(h, max(l, lam)) for l, h in zip(lows, highs))

    points = sorted(set(lows) | set(highs))
    previous = points[0]
    if total_at(previous) >= target:
        return previous
    for point in points[1:]:
        value = total_at(point)
        if value >= target:
            # slope over (previous, point) is the number of active intervals
            active = sum(1 for l, h in zip(lows, highs) if l <= previous and h >= point)
            if active == 0:
                return point
            return previous + (target - total_at(previous)) / active
        previous = point
    return points[-1]
