"""Vertex-cover pipeline: matching-based cover, twin-class kernelization,
budgeted search on the kernel, and lifting kernel witnesses back.

For cover size k, every yes-instance admits a proper weighting whose colors
stay at or below 8k^2 + 8k.  That bound caps both the twin-class size kept
by the kernel (2k(8k^2+8k)+1 members per class, counted with the matching
endpoint set of size at most 2k) and the number of weight-1 edges the
budgeted search has to consider (k(8k^2+8k)).
"""

from __future__ import annotations

from dataclasses import dataclass

from vcew import oracle
from vcew.errors import ContractViolationError
from vcew.graph import (
    Edge,
    Graph,
    WeightAssignment,
    edge_key,
    is_proper,
)


def color_budget(k: int) -> int:
    """Color ceiling 8k^2 + 8k for cover size k."""
    return 8 * k * k + 8 * k


def class_cap(k_matching: int) -> int:
    """Per-class member cap 2k(8k^2+8k) + 1 used by the reduction rule."""
    return 2 * k_matching * color_budget(k_matching) + 1


def edge_budget(k: int) -> int:
    """Weight-1 edge budget k(8k^2+8k) for the kernel search."""
    return k * color_budget(k)


def maximal_matching_cover(g: Graph) -> tuple[int, ...]:
    """Endpoints of a greedy maximal matching: a cover within factor 2."""
    used = [False] * g.vertex_count
    cover: list[int] = []
    for u, v in g.edges:
        if not used[u] and not used[v]:
            used[u] = used[v] = True
            cover.extend((u, v))
    return tuple(sorted(cover))


def exact_vertex_cover(g: Graph, k: int) -> frozenset[int] | None:
    """A cover of size at most k via branch-on-an-edge, or None."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    taken: set[int] = set()

    def uncovered_edge() -> Edge | None:
        for u, v in g.edges:
            if u not in taken and v not in taken:
                return (u, v)
        return None

    def branch(budget: int) -> bool:
        e = uncovered_edge()
        if e is None:
            return True
        if budget == 0:
            return False
        for pick in e:
            taken.add(pick)
            if branch(budget - 1):
                return True
            taken.remove(pick)
        return False

    if branch(k):
        return frozenset(taken)
    return None


def minimum_vertex_cover(g: Graph, k_max: int = 12) -> tuple[frozenset[int], int]:
    """Smallest cover by iterative deepening up to k_max."""
    for k in range(k_max + 1):
        cover = exact_vertex_cover(g, k)
        if cover is not None:
            return cover, len(cover)
    raise ValueError(f"no vertex cover of size <= {k_max} found")


@dataclass(frozen=True)
class Kernel:
    """Reduced instance with the bookkeeping needed to lift solutions back."""

    graph: Graph  # H, on dense new ids
    kept: tuple[int, ...]  # H id -> original id
    cover: tuple[int, ...]  # matching endpoint set S, original ids
    k_matching: int  # matching size; |S| <= 2 * k_matching
    cap: int  # class size cap applied
    class_sizes_before: tuple[int, ...]
    class_sizes_after: tuple[int, ...]
    removed: tuple[int, ...]  # original ids deleted by the reduction rule

    @property
    def identity(self) -> bool:
        return not self.removed


def kernelize(g: Graph) -> Kernel:
    """Truncate every neighborhood twin class of the independent set to the
    cap; the decision is preserved and removed vertices lift back with all
    incident weights 0."""
    cover = maximal_matching_cover(g)
    k_matching = len(cover) // 2
    cap = class_cap(k_matching)
    in_cover = set(cover)
    classes: dict[frozenset[int], list[int]] = {}
    for v in range(g.vertex_count):
        if v not in in_cover:
            classes.setdefault(frozenset(g.neighbors(v)), []).append(v)
    keys = sorted(classes, key=sorted)
    removed: list[int] = []
    for key in keys:
        members = classes[key]
        if len(members) > cap:
            removed.extend(members[cap:])  # members are ascending: keep smallest ids
    removed_set = set(removed)
    kept = [v for v in range(g.vertex_count) if v not in removed_set]
    relabel = {old: new for new, old in enumerate(kept)}
    edges = [
        (relabel[u], relabel[v])
        for u, v in g.edges
        if u not in removed_set and v not in removed_set
    ]
    kernel_graph = Graph.build(len(kept), edges)
    sizes_before = tuple(len(classes[key]) for key in keys)
    sizes_after = tuple(min(len(classes[key]), cap) for key in keys)
    kernel = Kernel(
        graph=kernel_graph,
        kept=tuple(kept),
        cover=cover,
        k_matching=k_matching,
        cap=cap,
        class_sizes_before=sizes_before,
        class_sizes_after=sizes_after,
        removed=tuple(sorted(removed)),
    )
    _assert_kernel_bounds(kernel)
    return kernel


def _assert_kernel_bounds(kernel: Kernel) -> None:
    k = kernel.k_matching
    if any(size > kernel.cap for size in kernel.class_sizes_after):
        raise AssertionError("kernel class size exceeds the cap")
    limit = 2 * k + (4**k) * kernel.cap
    if kernel.graph.vertex_count > limit:
        raise AssertionError(f"kernel has {kernel.graph.vertex_count} vertices, above the bound {limit}")


def solve_kernel(
    kernel: Kernel,
    k: int,
    budget_override: int | None = None,
    *,
    cutoff: int = oracle.DEFAULT_CUTOFF,
) -> WeightAssignment | None:
    """Budgeted exhaustive search on the kernel graph.

    k must be (an upper bound on) the true vertex cover number; a bounded
    witness is then guaranteed to exist whenever any witness does.
    """
    budget = edge_budget(k)
    if budget_override is not None:
        budget = min(budget, budget_override)
    return oracle.solve_exhaustive(kernel.graph, {}, budget=budget, cutoff=cutoff)


def lift(g: Graph, kernel: Kernel, w_kernel: WeightAssignment) -> WeightAssignment:
    """Extend a proper kernel assignment to the original graph: kernel edges
    keep their weights, edges at removed vertices weigh 0."""
    if not is_proper(kernel.graph, w_kernel):
        raise ContractViolationError("kernel assignment is not proper")
    back = {new: old for new, old in enumerate(kernel.kept)}
    w: WeightAssignment = {e: 0 for e in g.edges}
    for (u, v), value in w_kernel.items():
        w[edge_key(back[u], back[v])] = value
    if not is_proper(g, w):
        raise ContractViolationError("lifted assignment failed re-verification")
    return w


def solve_vc(
    g: Graph,
    k: int | None = None,
    budget_override: int | None = None,
    *,
    k_max: int = 12,
    cutoff: int = oracle.DEFAULT_CUTOFF,
) -> WeightAssignment | None:
    """Full pipeline: kernelize, search the kernel, lift any witness back.

    A supplied k is verified against an exact cover computation before the
    budget formula trusts it; otherwise the minimum is found by iterative
    deepening on the kernel.
    """
    kernel = kernelize(g)
    if k is not None:
        if k < 0:
            raise ValueError("k must be nonnegative")
        if exact_vertex_cover(g, k) is None:
            raise ValueError(f"graph has no vertex cover of size <= {k}")
    else:
        _, k = minimum_vertex_cover(kernel.graph, k_max=k_max)
    w_kernel = solve_kernel(kernel, k, budget_override, cutoff=cutoff)
    if w_kernel is None:
        return None
    return lift(g, kernel, w_kernel)


def export_kernel_mapping(kernel: Kernel) -> str:
    """Sidecar text mapping kernel ids to original ids, 1-indexed."""
    return "".join(f"{new + 1} {old + 1}\n" for new, old in enumerate(kernel.kept))
