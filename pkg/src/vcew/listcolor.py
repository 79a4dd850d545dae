"""List-coloring instances: the source problem of the gadget reduction.

Colors on the wire and in lists are positive integers; after normalization
they lie in {2, ..., n^2 + 1} and every list has at most n entries.
"""

from __future__ import annotations

from dataclasses import dataclass

from vcew.errors import ValidationError
from vcew.graph import Graph


@dataclass(frozen=True)
class ListColoringInstance:
    graph: Graph
    lists: tuple[tuple[int, ...], ...]  # per vertex, sorted ascending

    def __post_init__(self):
        if len(self.lists) != self.graph.vertex_count:
            raise ValidationError("one color list required per vertex")
        for v, colors in enumerate(self.lists):
            if not colors:
                raise ValidationError(f"vertex {v} has an empty color list")

    @staticmethod
    def build(graph: Graph, lists) -> "ListColoringInstance":
        return ListColoringInstance(graph, tuple(tuple(sorted(set(c))) for c in lists))

    def max_color(self) -> int:
        return max(max(colors) for colors in self.lists)


@dataclass(frozen=True)
class NormalizedInstance:
    instance: ListColoringInstance
    removed_vertices: tuple[int, ...]  # original vertex ids, removal order
    vertex_map: tuple[int, ...]  # new id -> original id


def normalize_instance(inst: ListColoringInstance) -> NormalizedInstance:
    """Drop vertices whose list is larger than the (current) vertex count,
    then validate that all colors lie in {2, ..., n^2 + 1}.

    A vertex with more admissible colors than it has potential neighbors can
    always be colored last, so removing it preserves the decision.  Removal
    shrinks n, so the rule is applied to a fixed point.  Colors outside the
    range after removal are an error, not silently relabeled.
    """
    alive = list(range(inst.graph.vertex_count))
    lists = {v: inst.lists[v] for v in alive}
    edges = set(inst.graph.edges)
    removed: list[int] = []
    while True:
        n = len(alive)
        victim = next((v for v in alive if len(lists[v]) > n), None)
        if victim is None:
            break
        removed.append(victim)
        alive.remove(victim)
        edges = {e for e in edges if victim not in e}
    n = len(alive)
    relabel = {old: new for new, old in enumerate(alive)}
    for v in alive:
        for c in lists[v]:
            if c <= 1 or c > n * n + 1:
                raise ValidationError(
                    f"color {c} at vertex {v} outside {{2, ..., {n * n + 1}}} after normalization"
                )
    graph = Graph.build(n, [(relabel[u], relabel[v]) for u, v in sorted(edges)])
    normalized = ListColoringInstance.build(graph, [lists[v] for v in alive])
    return NormalizedInstance(normalized, tuple(removed), tuple(alive))


def brute_force_list_coloring(inst: ListColoringInstance) -> list[int] | None:
    """Exhaustive proper list coloring, or None.  Test oracle for the reduction."""
    g = inst.graph
    coloring = [0] * g.vertex_count

    def assign(v: int) -> bool:
        if v == g.vertex_count:
            return True
        for c in inst.lists[v]:
            if all(coloring[u] != c for u in g.neighbors(v) if u < v):
                coloring[v] = c
                if assign(v + 1):
                    return True
        coloring[v] = 0
        return False

    return coloring if assign(0) else None


def is_proper_list_coloring(inst: ListColoringInstance, coloring) -> bool:
    g = inst.graph
    if len(coloring) != g.vertex_count:
        return False
    if any(coloring[v] not in inst.lists[v] for v in range(g.vertex_count)):
        return False
    return all(coloring[u] != coloring[v] for u, v in g.edges)
