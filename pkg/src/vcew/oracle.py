"""Exhaustive-search baseline: ground truth for every other solver.

Enumeration is over the free (not pre-weighted) edges, by ascending count of
weight-1 edges with lexicographic tie-breaking over the canonical edge order,
so witnesses are deterministic.  The inner loop lives in a compiled extension
when available (vcew._search); a pure-Python twin is selected otherwise or
when VCEW_PURE_PYTHON=1 is set.
"""

from __future__ import annotations

import math
import os
from typing import Mapping, Sequence

from vcew import _search_py
from vcew.errors import CapacityError
from vcew.graph import (
    Graph,
    PartialWeightAssignment,
    WeightAssignment,
    validate_partial,
)

DEFAULT_CUTOFF = 30

if os.environ.get("VCEW_PURE_PYTHON") == "1":
    _kernel = _search_py
    _BACKEND = "python"
else:
    try:
        from vcew import _search as _kernel  # type: ignore[no-redef]

        _BACKEND = "compiled"
    except ImportError:
        _kernel = _search_py
        _BACKEND = "python"

NO_BOUND = _search_py.NO_BOUND


def backend() -> str:
    """Which search kernel is active: 'compiled' or 'python'."""
    return _BACKEND


class SearchStats:
    """Counters from the last oracle call on this problem instance."""

    def __init__(self) -> None:
        self.nodes = 0


def _prepare(g: Graph, pre: PartialWeightAssignment, bounds):
    validate_partial(g, pre)
    n = g.vertex_count
    m = len(g.edges)
    eu = [e[0] for e in g.edges]
    ev = [e[1] for e in g.edges]
    colors = [0] * n
    free: list[int] = []
    for i, e in enumerate(g.edges):
        value = pre.get(e)
        if value is None:
            free.append(i)
        elif value:
            colors[e[0]] += 1
            colors[e[1]] += 1
    fu = [eu[i] for i in free]
    fv = [ev[i] for i in free]
    vmax = [-1] * n
    for p in range(len(free)):
        vmax[fu[p]] = p
        vmax[fv[p]] = p
    skey = [max(vmax[eu[j]], vmax[ev[j]]) for j in range(m)]
    sorder = sorted(range(m), key=lambda j: (skey[j], j))
    if bounds is None:
        blist = [NO_BOUND] * n
    elif isinstance(bounds, int):
        blist = [bounds] * n
    elif isinstance(bounds, Mapping):
        blist = [bounds.get(v, NO_BOUND) for v in range(n)]
    elif isinstance(bounds, Sequence):
        if len(bounds) != n:
            raise ValueError(f"bound sequence has length {len(bounds)}, expected {n}")
        blist = list(bounds)
    else:
        raise TypeError(f"unsupported bound type {type(bounds)!r}")
    return n, m, eu, ev, fu, fv, sorder, skey, colors, blist, free


def _check_capacity(free_count: int, budget: int | None, cutoff: int) -> None:
    if budget is None:
        if free_count > cutoff:
            raise CapacityError(
                f"{free_count} free edges exceed the unbudgeted cutoff of {cutoff}; "
                "pass a budget or raise the cutoff"
            )
        return
    top = min(budget, free_count)
    work = sum(math.comb(free_count, c) for c in range(top + 1))
    if work > (1 << cutoff):
        raise CapacityError(
            f"budgeted search would visit about {work} candidates, above the "
            f"2^{cutoff} ceiling; narrow the budget or raise the cutoff"
        )


def solve_exhaustive(
    g: Graph,
    pre: PartialWeightAssignment | None = None,
    budget: int | None = None,
    *,
    cutoff: int = DEFAULT_CUTOFF,
    stats: SearchStats | None = None,
) -> WeightAssignment | None:
    """A proper assignment extending pre using at most `budget` weight-1 free
    edges, or None.  The first hit in enumeration order is returned."""
    pre = pre or {}
    if budget is not None and budget < 0:
        raise ValueError("budget must be nonnegative")
    n, m, eu, ev, fu, fv, sorder, skey, colors, blist, free = _prepare(g, pre, None)
    _check_capacity(len(free), budget, cutoff)
    maxc = len(free) if budget is None else budget
    chosen, nodes = _kernel.solve_ones(n, m, eu, ev, fu, fv, sorder, skey, colors, blist, maxc)
    if stats is not None:
        stats.nodes = nodes
    if chosen is None:
        return None
    ones = {free[p] for p in chosen}
    w: WeightAssignment = dict(pre)
    for i in free:
        w[g.edges[i]] = 1 if i in ones else 0
    return w


def count_proper(
    g: Graph,
    pre: PartialWeightAssignment | None = None,
    *,
    cutoff: int = DEFAULT_CUTOFF,
    stats: SearchStats | None = None,
) -> int:
    """Number of proper total assignments extending pre."""
    pre = pre or {}
    n, m, eu, ev, fu, fv, sorder, skey, colors, blist, free = _prepare(g, pre, None)
    _check_capacity(len(free), None, cutoff)
    count, nodes = _kernel.count_all(n, m, eu, ev, fu, fv, sorder, skey, colors, blist)
    if stats is not None:
        stats.nodes = nodes
    return count


def exists_with_color_bound(
    g: Graph,
    pre: PartialWeightAssignment | None,
    bound,
    *,
    cutoff: int = DEFAULT_CUTOFF,
    stats: SearchStats | None = None,
) -> bool:
    """Whether some proper extension keeps colors(v) <= bound(v) everywhere.

    `bound` is a scalar, a vertex->bound mapping, or a per-vertex sequence.
    """
    pre = pre or {}
    n, m, eu, ev, fu, fv, sorder, skey, colors, blist, free = _prepare(g, pre, bound)
    _check_capacity(len(free), None, cutoff)
    found, nodes = _kernel.exists_proper(n, m, eu, ev, fu, fv, sorder, skey, colors, blist)
    if stats is not None:
        stats.nodes = nodes
    return found
