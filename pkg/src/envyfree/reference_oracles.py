"""General-purpose solvers used to cross-check the Monge solver.

None of these rely on the rank-1 structure: they take an arbitrary square
valuation matrix. Allocation comes from a Kuhn-Munkres (Hungarian) maximum
weight perfect matching, prices from a difference-constraint system solved
by Bellman-Ford, and ``brute_force_solve`` tries every allocation.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .market_core import (
    Assignment,
    Instance,
    LengthMismatch,
    MarketError,
    Outcome,
    as_square_matrix,
    build_outcome,
    materialize_matrix,
    sorted_view,
    valuation_matrix,
)

BRUTE_FORCE_MAX_N = 8


class InstanceTooLarge(MarketError):
    pass


class Infeasible(Exception):
    """No envy-free prices sell every item under the given allocation.

    ``cycle`` lists item nodes in edge order (the last one links back to the
    first); ``weight`` is the cycle's total weight, always negative.
    """

    def __init__(self, cycle: list[int], weight: float):
        self.cycle = cycle
        self.weight = weight
        super().__init__(f"negative cycle {cycle} with weight {weight}")


@dataclass(frozen=True)
class DifferenceConstraintGraph:
    """Items ``0..n-1`` plus a virtual source at node ``n``.

    ``source_weights[j]`` is the edge source -> j (the owner's valuation of
    item j), ``item_weights[k, j]`` the edge k -> j. The diagonal is a zero
    self-loop and carries no constraint.
    """

    source_weights: np.ndarray
    item_weights: np.ndarray

    @property
    def node_count(self) -> int:
        return len(self.source_weights) + 1

    @property
    def source(self) -> int:
        return len(self.source_weights)

    def edges(self) -> Iterator[tuple[int, int, float]]:
        n = len(self.source_weights)
        for j in range(n):
            yield n, j, float(self.source_weights[j])
        for k in range(n):
            for j in range(n):
                if j != k:
                    yield k, j, float(self.item_weights[k, j])


def _relax_eps(M: np.ndarray) -> float:
    # exact arithmetic on integer data; otherwise ignore rounding-level gains
    if np.all(M == np.round(M)):
        return 0.0
    return 1e-12 * (1.0 + float(np.abs(M).max()))


def max_weight_perfect_matching(M) -> tuple[Assignment, float]:
    """Hungarian algorithm with potentials, O(n^3).

    Maximizes by minimizing ``max(M) - M``. Rows are inserted in index order
    and ties go to the lowest column, so the result is deterministic.
    """
    M = as_square_matrix(M)
    n = M.shape[0]
    cost = M.max() - M
    INF = np.inf
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    row_of = np.zeros(n + 1, dtype=np.int64)  # 1-based; column 0 is a dummy
    way = np.zeros(n + 1, dtype=np.int64)

    for i in range(1, n + 1):
        row_of[0] = i
        j0 = 0
        minv = np.full(n + 1, INF)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = row_of[j0]
            cur = cost[i0 - 1] - u[i0] - v[1:]
            free = ~used[1:]
            better = free & (cur < minv[1:])
            minv[1:][better] = cur[better]
            way[1:][better] = j0
            masked = np.where(free, minv[1:], INF)
            j1 = int(np.argmin(masked)) + 1
            delta = masked[j1 - 1]
            u[row_of[used]] += delta
            v[used] -= delta
            minv[~used] -= delta
            j0 = j1
            if row_of[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            row_of[j0] = row_of[j1]
            j0 = j1

    item_of = [0] * n
    for j in range(1, n + 1):
        item_of[row_of[j] - 1] = j - 1
    welfare = math.fsum(M[i, j] for i, j in enumerate(item_of))
    return Assignment(tuple(item_of)), welfare


def build_constraint_graph(M, a: Assignment) -> DifferenceConstraintGraph:
    M = as_square_matrix(M)
    n = M.shape[0]
    if a.n != n:
        raise LengthMismatch(f"assignment of length {a.n} for a {n}x{n} matrix")
    if not a.is_permutation():
        raise MarketError(f"assignment {a.item_of} is not a permutation")
    # owner_rows[j] = valuations of the buyer who holds item j
    owner_rows = M[a.buyer_of()]
    own = np.diag(owner_rows).copy()
    # p_j - p_k <= own_j - owner_rows[j, k]  ->  edge k -> j
    item_weights = (own[:, None] - owner_rows).T
    return DifferenceConstraintGraph(own, item_weights)


def _parent_cycle(pred: np.ndarray, source: int) -> list[int]:
    n = len(pred)
    state = [0] * n  # 0 unseen, 1 on current walk, 2 done
    for start in range(n):
        walk = []
        x = start
        while x != source and state[x] == 0:
            state[x] = 1
            walk.append(x)
            x = int(pred[x])
        if x != source and state[x] == 1:
            cycle = walk[walk.index(x):]
            cycle.reverse()  # predecessor order -> edge order
            return cycle
        for y in walk:
            state[y] = 2
    raise AssertionError("no cycle in predecessor graph")


def bellman_ford(graph: DifferenceConstraintGraph, eps: float = 0.0) -> np.ndarray:
    """Distances from the virtual source; raises Infeasible on a negative cycle.

    Every round relaxes all item edges at once and stops early when nothing
    improves. A relaxation counts only if it gains more than ``eps``.
    """
    W = graph.item_weights
    n = len(graph.source_weights)
    source = graph.source
    dist = graph.source_weights.astype(np.float64).copy()
    pred = np.full(n, source, dtype=np.int64)
    cols = np.arange(n)
    for _ in range(n):
        cand = dist[:, None] + W
        best_from = np.argmin(cand, axis=0)
        best = cand[best_from, cols]
        improved = best < dist - eps
        if not improved.any():
            return dist
        dist[improved] = best[improved]
        pred[improved] = best_from[improved]
    cycle = _parent_cycle(pred, source)
    weight = math.fsum(W[cycle[i - 1], cycle[i]] for i in range(len(cycle)))
    raise Infeasible(cycle, weight)


def price_by_difference_constraints(M, a: Assignment) -> tuple[float, ...]:
    """Largest envy-free prices that sell item ``a.item_of[b]`` to each buyer ``b``.

    Raises Infeasible when no such prices exist.
    """
    M = as_square_matrix(M)
    graph = build_constraint_graph(M, a)
    return tuple(bellman_ford(graph, _relax_eps(M)).tolist())


def solve_hungarian(inst: Instance) -> Outcome:
    """Cubic baseline on the sorted matrix, translated back to original indexing."""
    view = sorted_view(inst)
    M = materialize_matrix(inst, view)
    sorted_assignment, _ = max_weight_perfect_matching(M)
    sorted_prices = price_by_difference_constraints(M, sorted_assignment)
    item_of = [0] * inst.n
    for r, c in enumerate(sorted_assignment.item_of):
        item_of[view.buyer_order[r]] = view.item_order[c]
    prices = [0.0] * inst.n
    for c, p in enumerate(sorted_prices):
        prices[view.item_order[c]] = p
    return build_outcome(inst, Assignment(tuple(item_of)), prices)


def brute_force_solve(inst: Instance) -> Outcome:
    """Best revenue over all n! allocations; ties keep the lexicographically first."""
    n = inst.n
    if n > BRUTE_FORCE_MAX_N:
        raise InstanceTooLarge(f"brute force is capped at n={BRUTE_FORCE_MAX_N}, got n={n}")
    M = valuation_matrix(inst)
    eps = _relax_eps(M)
    best = None
    best_revenue = -math.inf
    for perm in itertools.permutations(range(n)):
        a = Assignment(perm)
        try:
            prices = price_by_difference_constraints(M, a)
        except Infeasible:
            continue
        revenue = math.fsum(prices)
        if revenue > best_revenue + eps:
            best, best_revenue = (a, prices), revenue
    # the welfare-maximizing allocation is always feasible
    assert best is not None
    return build_outcome(inst, *best)
