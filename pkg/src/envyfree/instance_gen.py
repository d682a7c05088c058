"""Seeded instance generators.

Randomness comes from SplitMix64 (Steele, Lea & Flood 2014; constants
0x9E3779B97F4A7C15, 0xBF58476D1CE4E5B9, 0x94D049BB133111EB) so the integer
families reproduce bit-for-bit on any platform or language. Budgets are
drawn first, then qualities, each from the same stream.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .market_core import Instance, MarketError, validate_instance

DISTRIBUTIONS = ("uniform_real", "uniform_int", "tie_heavy", "near_degenerate")

_MASK = (1 << 64) - 1


class InvalidSpec(MarketError):
    pass


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def integer(self, lo: int, hi: int) -> int:
        """Unbiased integer in [lo, hi] by rejection."""
        span = hi - lo + 1
        limit = (1 << 64) - (1 << 64) % span
        while True:
            x = self.next_u64()
            if x < limit:
                return lo + x % span


@dataclass(frozen=True)
class GenSpec:
    n: int
    distribution: str = "uniform_int"
    low: float = 1
    high: float = 100
    seed: int = 0
    distinct_values: int = 2

    def __post_init__(self):
        if self.distribution not in DISTRIBUTIONS:
            raise InvalidSpec(f"unknown distribution {self.distribution!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidSpec(f"n must be a positive integer, got {self.n!r}")
        if not (math.isfinite(self.low) and math.isfinite(self.high)):
            raise InvalidSpec("low and high must be finite")
        if self.low <= 0 or self.high < self.low:
            raise InvalidSpec(f"need 0 < low <= high, got low={self.low}, high={self.high}")
        if self.distinct_values < 1:
            raise InvalidSpec("distinct_values must be >= 1")
        if not 0 <= self.seed <= _MASK:
            raise InvalidSpec("seed must fit in 64 unsigned bits")
        if self.distribution == "uniform_int" and math.ceil(self.low) > math.floor(self.high):
            raise InvalidSpec(f"no integer in [{self.low}, {self.high}]")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "GenSpec":
        return cls(**d)


def _draw(rng: SplitMix64, spec: GenSpec) -> list[float]:
    n, lo, hi = spec.n, spec.low, spec.high
    if spec.distribution == "uniform_real":
        return [lo + (hi - lo) * rng.uniform() for _ in range(n)]
    if spec.distribution == "uniform_int":
        a, b = math.ceil(lo), math.floor(hi)
        return [float(rng.integer(a, b)) for _ in range(n)]
    if spec.distribution == "tie_heavy":
        d = spec.distinct_values
        if d == 1:
            levels = [float(lo)]
        else:
            levels = [lo + k * (hi - lo) / (d - 1) for k in range(d)]
        return [levels[rng.integer(0, d - 1)] for _ in range(n)]
    # near_degenerate
    values = [float(lo)] * n
    values[rng.integer(0, n - 1)] = float(hi)
    return values


def generate(spec: GenSpec) -> Instance:
    rng = SplitMix64(spec.seed)
    budgets = _draw(rng, spec)
    qualities = _draw(rng, spec)
    return validate_instance(budgets, qualities)


def spec_suite(count: int, n_min: int = 2, n_max: int = 64, seed: int = 0,
               families=DISTRIBUTIONS) -> list[GenSpec]:
    """Deterministic mix of generator families for sweeps and property runs.

    Families rotate in order; every family except uniform_real yields
    integer-valued instances.
    """
    rng = SplitMix64(seed)
    specs = []
    for i in range(count):
        dist = families[i % len(families)]
        n = rng.integer(n_min, n_max)
        sub_seed = rng.next_u64()
        if dist == "uniform_real":
            specs.append(GenSpec(n, dist, 0.5, 100.0, sub_seed))
        elif dist == "uniform_int":
            specs.append(GenSpec(n, dist, 1, 1000, sub_seed))
        elif dist == "tie_heavy":
            # 12 is divisible by every level count - 1, so levels stay integral
            d = rng.integer(1, 5)
            specs.append(GenSpec(n, dist, 1, 13, sub_seed, d))
        else:
            low = rng.integer(1, 50)
            specs.append(GenSpec(n, dist, low, low + rng.integer(1, 50), sub_seed))
    return specs
