"""Economies, allotments, and the excess-demand bookkeeping behind simple rules.

An economy is a profile of preferences plus a social endowment omega
(optionally split into individual endowments summing to omega exactly).
The partition machinery classifies agents as simple/non-simple relative to
equal division and computes the residual that the second-step claims
problem divides.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .claims import ClaimsProblem
from .preferences import Preference, SinglePeaked, SinglePlateaued


@dataclass(frozen=True)
class Economy:
    """A profile of n >= 2 preferences and a positive social endowment.

    Endowments, when present, must sum to omega exactly. INF peaks are
    rejected here so no rule can ever receive one.
    """

    prefs: Tuple[Preference, ...]
    omega: Fraction
    endowments: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "prefs", tuple(self.prefs))
        object.__setattr__(self, "omega", Fraction(self.omega))
        if len(self.prefs) < 2:
            raise ValueError("an economy needs at least two agents")
        if self.omega <= 0:
            raise ValueError("the social endowment must be positive")
        for pref in self.prefs:
            if pref.is_infinite:
                raise ValueError("INF peaks are not allowed inside economies")
        if self.endowments is not None:
            endowments = tuple(Fraction(w) for w in self.endowments)
            object.__setattr__(self, "endowments", endowments)
            if len(endowments) != len(self.prefs):
                raise ValueError("one endowment per agent required")
            if any(w < 0 for w in endowments):
                raise ValueError("endowments must be nonnegative")
            if sum(endowments) != self.omega:
                raise ValueError("endowments must sum to omega exactly")

    @property
    def n(self) -> int:
        return len(self.prefs)

    @property
    def equal_share(self) -> Fraction:
        return self.omega / self.n

    @property
    def is_single_peaked(self) -> bool:
        return all(isinstance(p, SinglePeaked) for p in self.prefs)

    @property
    def is_single_plateaued(self) -> bool:
        return all(isinstance(p, SinglePlateaued) for p in self.prefs)

    def peaks(self) -> Tuple[Fraction, ...]:
        if not self.is_single_peaked:
            raise ValueError("peaks() requires single-peaked preferences")
        return tuple(p.peak for p in self.prefs)

    def replace_pref(self, agent: int, pref: Preference) -> "Economy":
        prefs = list(self.prefs)
        prefs[agent] = pref
        return Economy(tuple(prefs), self.omega, self.endowments)


@dataclass(frozen=True)
class Allotment:
    """Nonnegative amounts summing to omega exactly."""

    amounts: Tuple[Fraction, ...]
    omega: Fraction

    def __post_init__(self):
        amounts = tuple(Fraction(a) for a in self.amounts)
        object.__setattr__(self, "amounts", amounts)
        object.__setattr__(self, "omega", Fraction(self.omega))
        if any(a < 0 for a in amounts):
            raise ValueError("allotments must be nonnegative")
        if sum(amounts) != self.omega:
            raise ValueError(
                f"infeasible allotment: sum {sum(amounts)} != omega {self.omega}"
            )

    def __getitem__(self, i: int) -> Fraction:
        return self.amounts[i]

    def __iter__(self):
        return iter(self.amounts)

    def __len__(self) -> int:
        return len(self.amounts)


@dataclass(frozen=True)
class SimplePartition:
    """Simple/non-simple split of an economy plus the second-step residual.

    plus holds the simple agents (served their peak), minus the rest; z is
    the excess demand and E the amount the claims problem must distribute.
    """

    plus: frozenset
    minus: frozenset
    z: Fraction
    E: Fraction


def excess(econ: Economy) -> Fraction:
    """Excess demand z = sum of peaks - omega (>= 0 counts as excess demand)."""
    return sum(econ.peaks()) - econ.omega


def partition(econ: Economy) -> SimplePartition:
    """Classify agents as simple (plus) or non-simple (minus).

    Under excess demand (z >= 0, the balanced case included) the simple
    agents are those demanding strictly less than equal division; under
    excess supply those demanding strictly more.
    """
    peaks = econ.peaks()
    share = econ.equal_share
    z = sum(peaks) - econ.omega
    if z >= 0:
        plus = frozenset(i for i, p in enumerate(peaks) if p < share)
    else:
        plus = frozenset(i for i, p in enumerate(peaks) if p > share)
    minus = frozenset(range(econ.n)) - plus
    residual = abs(
        econ.omega - (sum(peaks[i] for i in plus) + len(minus) * share)
    )
    return SimplePartition(plus=plus, minus=minus, z=z, E=residual)


def claims_of_minus(part: SimplePartition, econ: Economy) -> ClaimsProblem:
    """The claims problem the non-simple agents solve.

    Claims are |peak - omega/n| taken over minus agents in increasing index
    order (the same order the rules module uses to map awards back).
    """
    peaks = econ.peaks()
    share = econ.equal_share
    claims = tuple(abs(peaks[i] - share) for i in sorted(part.minus))
    return ClaimsProblem(claims=claims, endowment=part.E)


def endowment_partition(econ: Economy) -> SimplePartition:
    """Simple/non-simple split with individual endowments as the benchmark.

    Replaces omega/n by each agent's own endowment: under z >= 0 the simple
    agents demand strictly less than they own, under z < 0 strictly more.
    """
    if econ.endowments is None:
        raise ValueError("this economy carries no individual endowments")
    peaks = econ.peaks()
    z = sum(peaks) - econ.omega
    if z >= 0:
        plus = frozenset(
            i for i, p in enumerate(peaks) if p < econ.endowments[i]
        )
    else:
        plus = frozenset(
            i for i, p in enumerate(peaks) if p > econ.endowments[i]
        )
    minus = frozenset(range(econ.n)) - plus
    residual = abs(
        econ.omega
        - (
            sum(peaks[i] for i in plus)
            + sum(econ.endowments[i] for i in minus)
        )
    )
    return SimplePartition(plus=plus, minus=minus, z=z, E=residual)


def claims_of_minus_endowments(
    part: SimplePartition, econ: Economy
) -> ClaimsProblem:
    """Claims |peak - endowment| over minus agents, increasing index order."""
    if econ.endowments is None:
        raise ValueError("this economy carries no individual endowments")
    peaks = econ.peaks()
    claims = tuple(
        abs(peaks[i] - econ.endowments[i]) for i in sorted(part.minus)
    )
    return ClaimsProblem(claims=claims, endowment=part.E)


def make_allotment(econ: Economy, amounts: Sequence) -> Allotment:
    return Allotment(tuple(Fraction(a) for a in amounts), econ.omega)
