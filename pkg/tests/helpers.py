"""Shared test oracles, independent of the library's solver paths."""

from fractions import Fraction


def bisect_increasing(func, target, lo, hi, iterations=60):
    """Bracket the level where an increasing func crosses target.

    Exact Fraction halving; returns (lo, hi) with func(lo) <= target <= func(hi)
    and width (hi - lo) / 2**iterations of the initial bracket.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    assert func(lo) <= target <= func(hi)
    for _ in range(iterations):
        mid = (lo + hi) / 2
        if func(mid) < target:
            lo = mid
        else:
            hi = mid
    return lo, hi


def bisect_decreasing(func, target, lo, hi, iterations=60):
    """Bracket the level where a decreasing func crosses target."""
    lo, hi = Fraction(lo), Fraction(hi)
    assert func(lo) >= target >= func(hi)
    for _ in range(iterations):
        mid = (lo + hi) / 2
        if func(mid) > target:
            lo = mid
        else:
            hi = mid
    return lo, hi


def brute_force_worst(pref, amounts):
    """Reference worst: scan all disutilities, ties to the smaller amount."""
    best = None
    best_d = None
    for a in sorted(Fraction(x) for x in amounts):
        d = pref.disutility(a)
        if best_d is None or d > best_d:
            best, best_d = a, d
    return best
