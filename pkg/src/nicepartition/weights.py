"""Exact scaled weights.

Every weight in the structure is a nonnegative rational whose denominator
divides ``beta ** (L + 1)``.  We store only the integer numerator over that
fixed denominator, so every threshold comparison is decided exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

THRESHOLDS = ("f_beta", "one_minus_2_over_beta", "one_minus_1_over_beta", "one")


def ceil_log(base: int, n: int) -> int:
    """Smallest ``k >= 0`` with ``base ** k >= n``."""
    k, power = 0, 1
    while power < n:
        power *= base
        k += 1
    return k


@dataclass(frozen=True)
class Config:
    """Structure parameters.

    L is derived as ``max(ceil(log_beta n), K + 1)`` so that small
    desk-scale instances still have at least two levels.
    """

    n: int
    beta: int = 5
    K: int = 20
    L: int = field(init=False)
    denom: int = field(init=False, repr=False)

    def __post_init__(self):
        if self.beta < 5:
            raise ValueError(f"beta must be >= 5, got {self.beta}")
        if self.K < 0:
            raise ValueError(f"K must be >= 0, got {self.K}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        object.__setattr__(self, "L", max(ceil_log(self.beta, self.n), self.K + 1))
        object.__setattr__(self, "denom", self.beta ** (self.L + 1))

    @property
    def epsilon_equiv(self) -> Fraction:
        return Fraction(6, self.beta - 3)

    @property
    def f_beta(self) -> Fraction:
        return 1 - Fraction(3, self.beta)

    @property
    def levels(self) -> range:
        """Node levels K..L."""
        return range(self.K, self.L + 1)

    @property
    def edge_levels(self) -> range:
        """Edge levels K..L+1 (a level-L node may up-mark)."""
        return range(self.K, self.L + 2)

    def weight_of_level(self, i: int) -> int:
        if not self.K <= i <= self.L + 1:
            raise AssertionError(f"edge level {i} outside [{self.K}, {self.L + 1}]")
        return self.beta ** (self.L + 1 - i)

    def threshold(self, name: str) -> int:
        d, b = self.denom, self.beta
        if name == "f_beta":
            return d - 3 * (d // b)
        if name == "one_minus_2_over_beta":
            return d - 2 * (d // b)
        if name == "one_minus_1_over_beta":
            return d - d // b
        if name == "one":
            return d
        raise KeyError(name)

    def as_fraction(self, numerator: int) -> Fraction:
        return Fraction(numerator, self.denom)


def add(a: int, b: int) -> int:
    return a + b


def sub(a: int, b: int) -> int:
    if a < b:
        raise AssertionError(f"weight underflow: {a} - {b}")
    return a - b
