"""Data model and correctness checks for the rank-1 envy-free matching market.

A market has ``n`` buyers with budgets and ``n`` items with qualities; buyer
``b`` values item ``j`` at ``budgets[b] * qualities[j]``. Everything here is
0-based and prices are always reported in the original item indexing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


class MarketError(ValueError):
    """Base class for malformed market data."""


class LengthMismatch(MarketError):
    pass


class EmptyInstance(MarketError):
    pass


class NonPositiveValue(MarketError):
    pass


class NonFiniteValue(MarketError):
    pass


class NonSquareMatrix(MarketError):
    pass


class IndexOutOfRange(MarketError, IndexError):
    pass


@dataclass(frozen=True)
class Instance:
    budgets: tuple[float, ...]
    qualities: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.budgets)

    def budget_array(self) -> np.ndarray:
        return np.asarray(self.budgets, dtype=np.float64)

    def quality_array(self) -> np.ndarray:
        return np.asarray(self.qualities, dtype=np.float64)

    @property
    def max_valuation(self) -> float:
        return max(self.budgets) * max(self.qualities)

    def is_integral(self) -> bool:
        return all(float(x).is_integer() for x in self.budgets + self.qualities)


@dataclass(frozen=True)
class Assignment:
    """``item_of[b]`` is the item sold to buyer ``b``."""

    item_of: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.item_of)

    def is_permutation(self) -> bool:
        return sorted(self.item_of) == list(range(len(self.item_of)))

    def buyer_of(self) -> list[int]:
        owners = [-1] * len(self.item_of)
        for b, j in enumerate(self.item_of):
            owners[j] = b
        return owners


PriceVector = tuple  # tuple[float, ...] indexed by original item index


@dataclass(frozen=True)
class Outcome:
    assignment: Assignment
    prices: tuple[float, ...]
    revenue: float
    surpluses: tuple[float, ...]


@dataclass(frozen=True)
class AuditReport:
    envy_free: bool
    individually_rational: bool
    perfect: bool
    revenue_consistent: bool
    worst_violation: float
    violating_pairs: list[tuple[int, int]] = field(default_factory=list)
    irrational_buyers: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.envy_free and self.individually_rational
                and self.perfect and self.revenue_consistent)

    def to_dict(self) -> dict:
        return {
            "envy_free": self.envy_free,
            "individually_rational": self.individually_rational,
            "perfect": self.perfect,
            "revenue_consistent": self.revenue_consistent,
            "worst_violation": self.worst_violation,
            "violating_pairs": [list(p) for p in self.violating_pairs],
            "irrational_buyers": list(self.irrational_buyers),
        }


@dataclass(frozen=True)
class SortedView:
    """Buyers by descending budget and items by descending quality.

    Ties keep ascending original index.
    """

    buyer_order: tuple[int, ...]
    item_order: tuple[int, ...]


def validate_instance(budgets: Sequence[float], qualities: Sequence[float]) -> Instance:
    budgets = [float(x) for x in budgets]
    qualities = [float(x) for x in qualities]
    if len(budgets) != len(qualities):
        raise LengthMismatch(
            f"{len(budgets)} budgets but {len(qualities)} qualities")
    if not budgets:
        raise EmptyInstance("market needs at least one buyer and one item")
    for name, values in (("budget", budgets), ("quality", qualities)):
        for i, x in enumerate(values):
            if not math.isfinite(x):
                raise NonFiniteValue(f"{name}[{i}] = {x!r} is not finite")
            if x <= 0:
                raise NonPositiveValue(f"{name}[{i}] = {x!r} must be > 0")
    return Instance(tuple(budgets), tuple(qualities))


def default_tol(inst: Instance) -> float:
    return 1e-9 * (1.0 + inst.max_valuation)


def valuation(inst: Instance, buyer: int, item: int) -> float:
    n = inst.n
    if not (0 <= buyer < n and 0 <= item < n):
        raise IndexOutOfRange(f"(buyer={buyer}, item={item}) outside 0..{n - 1}")
    return inst.budgets[buyer] * inst.qualities[item]


def sorted_view(inst: Instance) -> SortedView:
    # stable sort on negated keys keeps equal keys in ascending index order
    buyers = np.argsort(-inst.budget_array(), kind="stable")
    items = np.argsort(-inst.quality_array(), kind="stable")
    return SortedView(tuple(int(i) for i in buyers), tuple(int(j) for j in items))


def materialize_matrix(inst: Instance, view: SortedView) -> np.ndarray:
    b = inst.budget_array()[list(view.buyer_order)]
    q = inst.quality_array()[list(view.item_order)]
    return np.outer(b, q)


def valuation_matrix(inst: Instance) -> np.ndarray:
    """Full matrix in original indexing (rows buyers, columns items)."""
    return np.outer(inst.budget_array(), inst.quality_array())


def as_square_matrix(M) -> np.ndarray:
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NonSquareMatrix(f"expected a square matrix, got shape {M.shape}")
    return M


def is_inverse_monge(M, tol: float = 0.0) -> bool:
    """Check ``M[i][k] + M[j][l] >= M[i][l] + M[j][k] - tol`` for i<j, k<l.

    Only adjacent 2x2 submatrices are inspected; they imply the rest.
    """
    M = as_square_matrix(M)
    if M.shape[0] < 2:
        return True
    lhs = M[:-1, :-1] + M[1:, 1:]
    rhs = M[:-1, 1:] + M[1:, :-1]
    return bool(np.all(lhs >= rhs - tol))


def social_welfare(inst: Instance, a: Assignment) -> float:
    return math.fsum(valuation(inst, b, j) for b, j in enumerate(a.item_of))


def build_outcome(inst: Instance, a: Assignment, prices: Sequence[float]) -> Outcome:
    prices = tuple(float(p) for p in prices)
    surpluses = tuple(valuation(inst, b, j) - prices[j] for b, j in enumerate(a.item_of))
    return Outcome(a, prices, math.fsum(prices), surpluses)


def audit_envy_free(inst: Instance, out: Outcome, tol: float | None = None) -> AuditReport:
    """Check every buyer/item slack of an outcome.

    ``worst_violation`` is the most negative envy or rationality slack
    (0 when none is negative).
    """
    n = inst.n
    item_of = list(out.assignment.item_of)
    if len(item_of) != n or len(out.prices) != n:
        raise LengthMismatch(
            f"outcome has {len(item_of)} assignments and {len(out.prices)} prices for n={n}")
    if any(not 0 <= j < n for j in item_of):
        raise IndexOutOfRange(f"assignment {item_of} references items outside 0..{n - 1}")
    if tol is None:
        tol = default_tol(inst)

    b = inst.budget_array()
    q = inst.quality_array()
    p = np.asarray(out.prices, dtype=np.float64)
    own = b * q[item_of] - p[item_of]
    # slack[b, k] = surplus on own item minus surplus on item k
    slack = own[:, None] - (np.outer(b, q) - p[None, :])
    envy_mask = slack < -tol
    pairs = [(int(i), int(k)) for i, k in zip(*np.nonzero(envy_mask))]
    irrational = [int(i) for i in np.nonzero(own < -tol)[0]]
    worst = min(0.0, float(slack.min()), float(own.min()))

    return AuditReport(
        envy_free=not pairs,
        individually_rational=not irrational,
        perfect=out.assignment.is_permutation(),
        revenue_consistent=abs(out.revenue - math.fsum(out.prices)) <= tol * n,
        worst_violation=worst,
        violating_pairs=pairs,
        irrational_buyers=irrational,
    )
