"""Seeded instance generators for the test corpus and the gen command."""

from __future__ import annotations

import random
from dataclasses import dataclass

from vcew.graph import Edge, Graph, GraphBuilder, PartialWeightAssignment, edge_key
from vcew.reduction import TypeBRecord, add_suspended_path, add_type_a, add_type_b


def random_graph(
    n: int,
    p: float,
    seed: int,
    *,
    pre_fraction: float = 0.0,
    pre_ones_only: bool = False,
) -> tuple[Graph, PartialWeightAssignment]:
    """Erdos-Renyi style G(n, p) with optional random pre-weights."""
    rng = random.Random(seed)
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]
    g = Graph.build(n, edges)
    pre: PartialWeightAssignment = {}
    for e in g.edges:
        if rng.random() < pre_fraction:
            pre[e] = 1 if pre_ones_only else rng.randint(0, 1)
    return g, pre


def planted_twin_graph(
    k: int,
    class_sizes: list[int],
    seed: int,
    *,
    cover_edge_p: float = 0.0,
    max_edges: int | None = None,
    full_sig: bool = False,
) -> Graph:
    """Cover of k vertices plus twin classes with random neighborhood
    signatures (or the full cover as signature when full_sig is set).
    Classes share signatures when the seeded draw repeats."""
    rng = random.Random(seed)
    b = GraphBuilder(k)
    edges = 0
    for i in range(k):
        for j in range(i + 1, k):
            if rng.random() < cover_edge_p:
                b.add_edge(i, j)
                edges += 1
    for size in class_sizes:
        if full_sig:
            sig = list(range(k))
        else:
            sig = sorted({v for v in range(k) if rng.random() < 0.75} or {rng.randrange(k)})
        for _ in range(size):
            if max_edges is not None and edges + len(sig) > max_edges:
                break
            m = b.add_vertex()
            for s in sig:
                b.add_edge(s, m)
            edges += len(sig)
    return b.build()


def suspended_host(paths: int) -> Graph:
    """A single host vertex carrying the given number of suspended paths."""
    b = GraphBuilder(1)
    for _ in range(paths):
        add_suspended_path(b, 0)
    return b.build()


def type_a_host(k: int, headroom: int = 0) -> Graph:
    """A type-A gadget at a fresh anchor, optionally with extra pendant
    edges so the anchor can reach color k at all."""
    b = GraphBuilder(1)
    add_type_a(b, 0, k)
    for _ in range(headroom):
        p = b.add_vertex()
        b.add_edge(0, p)
    return b.build()


@dataclass(frozen=True)
class PinnedChainHost:
    """Type-B chain in a minimal host with z's color pinned to N.

    z carries N pendant edges pre-weighted 1 and a companion vertex r with
    N+1 such pendants (edge zr pre-weighted 0), so color(z) = N exactly:
    one more weight-1 edge at z would tie it with r.  Suspended-path outer
    edges are pre-weighted 0; the chain edges, the owner edge, and the
    suspended inner edges stay free.
    """

    graph: Graph
    pre: PartialWeightAssignment
    owner: int  # v
    chain: TypeBRecord
    z: int
    k: int
    big_n: int

    @property
    def first_edge(self) -> Edge:
        return edge_key(self.owner, self.chain.vertices[0])

    def first_vertex_free_edges(self) -> tuple[Edge, Edge, tuple[Edge, ...]]:
        """(owner edge, next chain edge, inner path edges) at x_1."""
        x1 = self.chain.vertices[0]
        nxt = self.chain.vertices[1] if len(self.chain.vertices) > 1 else self.z
        inners = tuple(p.inner for p in self.chain.paths[0])
        return self.first_edge, edge_key(x1, nxt), inners


def pinned_chain_host(k: int, big_n: int) -> PinnedChainHost:
    b = GraphBuilder(1)
    z = b.add_vertex()
    pre: PartialWeightAssignment = {}
    for _ in range(big_n):
        p = b.add_vertex()
        pre[b.add_edge(z, p)] = 1
    r = b.add_vertex()
    pre[b.add_edge(z, r)] = 0
    for _ in range(big_n + 1):
        p = b.add_vertex()
        pre[b.add_edge(r, p)] = 1
    chain = add_type_b(b, 0, k, z, big_n)
    for per_vertex in chain.paths:
        for rec in per_vertex:
            pre[rec.outer] = 0
    return PinnedChainHost(graph=b.build(), pre=pre, owner=0, chain=chain, z=z, k=k, big_n=big_n)
