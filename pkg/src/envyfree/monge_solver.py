"""Quadratic-time solver for rank-1 envy-free perfect matching.

Sorting buyers by budget and items by quality makes the valuation matrix
inverse Monge, so the diagonal (rank-a buyer gets rank-a item) is a
welfare-maximizing allocation. Prices then follow from a backward scan:
the worst item goes to the poorest buyer at that buyer's full valuation,
and every richer buyer is charged their own valuation minus the best
surplus they could get from any cheaper item.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .market_core import (
    Assignment,
    Instance,
    Outcome,
    SortedView,
    build_outcome,
    sorted_view,
)


@dataclass(frozen=True)
class SortedPrices:
    """Prices by sorted item position (position 0 is the best item).

    ``maximizers[a]`` is the smallest sorted index attaining the maximum
    surplus when pricing position ``a``; ``scan_max[a]`` is that maximum.
    Both are -1 / 0.0 for the last position. Diagnostics only.
    """

    p_sorted: tuple[float, ...]
    maximizers: tuple[int, ...]
    scan_max: tuple[float, ...]


def _sorted_arrays(inst: Instance, view: SortedView) -> tuple[np.ndarray, np.ndarray]:
    bs = inst.budget_array()[list(view.buyer_order)]
    qs = inst.quality_array()[list(view.item_order)]
    return bs, qs


def assortative_allocate(view: SortedView) -> Assignment:
    item_of = [0] * len(view.buyer_order)
    for buyer, item in zip(view.buyer_order, view.item_order):
        item_of[buyer] = item
    return Assignment(tuple(item_of))


def compute_prices_paper(inst: Instance, view: SortedView) -> SortedPrices:
    """Full backward scan; each step maximizes over every cheaper item."""
    bs, qs = _sorted_arrays(inst, view)
    n = len(bs)
    p = np.empty(n)
    p[-1] = bs[-1] * qs[-1]
    maximizers = [-1] * n
    scan_max = [0.0] * n
    for a in range(n - 2, -1, -1):
        # surplus of sorted buyer a on each cheaper item a+1..n-1
        row = bs[a] * qs[a + 1:] - p[a + 1:]
        k = int(np.argmax(row))
        maximizers[a] = a + 1 + k
        scan_max[a] = float(row[k])
        p[a] = bs[a] * qs[a] - row[k]
    return SortedPrices(tuple(p.tolist()), tuple(maximizers), tuple(scan_max))


def compute_prices_adjacent(inst: Instance, view: SortedView) -> SortedPrices:
    """O(n) variant: only the next cheaper item is compared."""
    bs, qs = _sorted_arrays(inst, view)
    n = len(bs)
    p = [0.0] * n
    p[-1] = float(bs[-1] * qs[-1])
    maximizers = [-1] * n
    scan_max = [0.0] * n
    for a in range(n - 2, -1, -1):
        s = float(bs[a] * qs[a + 1]) - p[a + 1]
        maximizers[a] = a + 1
        scan_max[a] = s
        p[a] = float(bs[a] * qs[a]) - s
    return SortedPrices(tuple(p), tuple(maximizers), tuple(scan_max))


def unsort_prices(view: SortedView, sp: SortedPrices) -> tuple[float, ...]:
    prices = [0.0] * len(view.item_order)
    for pos, item in enumerate(view.item_order):
        prices[item] = sp.p_sorted[pos]
    return tuple(prices)


def solve_monge(inst: Instance, pricing: str = "paper") -> Outcome:
    """Allocate assortatively and price by the backward scan.

    ``pricing="adjacent"`` switches to the O(n) pricing shortcut.
    """
    if pricing == "paper":
        price_fn = compute_prices_paper
    elif pricing == "adjacent":
        price_fn = compute_prices_adjacent
    else:
        raise ValueError(f"unknown pricing {pricing!r}")
    view = sorted_view(inst)
    assignment = assortative_allocate(view)
    prices = unsort_prices(view, price_fn(inst, view))
    return build_outcome(inst, assignment, prices)
