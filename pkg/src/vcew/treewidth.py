"""Dynamic programming over nice tree decompositions.

The solver works on the solution-subgraph view: a weighting is proper exactly
when adjacent vertices have distinct degrees in the subgraph of weight-1
edges.  Per bag vertex the DP tracks a feasible pair (fd, cd): the intended
final degree in the solution subgraph and the current degree in the partial
solution built so far.  Pre-weighted edges restrict the introduce-edge
transition: a pre-weight of 1 removes the keep-it-out branch, a pre-weight
of 0 removes the add-it branch.

States are flat tuples (fd_0, cd_0, fd_1, cd_1, ...) over the sorted bag.
Stored partial solutions are persistent cons cells so that extending or
joining them is O(1); they decode to edge-id sets at the root.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from vcew.errors import ValidationError
from vcew.graph import (
    Edge,
    Graph,
    PartialWeightAssignment,
    WeightAssignment,
    edge_key,
    from_subgraph,
    validate_partial,
)

LEAF = "leaf"
INTRODUCE_VERTEX = "introduce_vertex"
INTRODUCE_EDGE = "introduce_edge"
FORGET = "forget"
JOIN = "join"


@dataclass(frozen=True)
class TreeDecomposition:
    """Rooted tree of bags; validity is checked by validate_decomposition."""

    bags: tuple[frozenset[int], ...]
    parent: tuple[int, ...]  # -1 at the root
    root: int

    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def children(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.bags]
        for node, p in enumerate(self.parent):
            if p >= 0:
                out[p].append(node)
        return out


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: tuple[int, ...]  # sorted
    children: tuple[int, ...]
    vertex: int = -1  # introduce-vertex / forget payload
    edge: Edge | None = None  # introduce-edge payload


@dataclass(frozen=True)
class NiceTreeDecomposition:
    nodes: tuple[NiceNode, ...]
    root: int
    width: int


@dataclass
class DPRun:
    """Outcome of one DP execution, with the counters tests assert on."""

    solution_edge_ids: frozenset[int] | None
    state_counts: list[int]

    @property
    def max_states(self) -> int:
        return max(self.state_counts, default=0)

    @property
    def states_stored(self) -> int:
        return sum(self.state_counts)


def validate_decomposition(g: Graph, td: TreeDecomposition) -> bool:
    """All three decomposition conditions: edges covered, occurrences form a
    nonempty connected subtree per vertex, bags cover the vertex set."""
    n = g.vertex_count
    count = len(td.bags)
    if len(td.parent) != count or not (0 <= td.root < count):
        return False
    if td.parent[td.root] != -1:
        return False
    # every node must reach the root without cycles
    unseen, visiting = -1, -2
    state = [unseen] * count
    state[td.root] = 0
    for node in range(count):
        trail = []
        cur = node
        while state[cur] == unseen:
            state[cur] = visiting
            trail.append(cur)
            p = td.parent[cur]
            if not (0 <= p < count):
                return False  # only the root may point at -1
            cur = p
        if state[cur] == visiting:
            return False  # cycle
        base = state[cur]
        for i, t in enumerate(reversed(trail), start=1):
            state[t] = base + i
    if any(v < 0 or v >= n for bag in td.bags for v in bag):
        return False
    covered = set()
    for bag in td.bags:
        covered.update(bag)
    if covered != set(range(n)):
        return False
    for u, v in g.edges:
        if not any(u in bag and v in bag for bag in td.bags):
            return False
    # Occurrences of v are connected iff exactly one occurrence node has no
    # occurrence parent.
    tops = [0] * n
    for node, bag in enumerate(td.bags):
        p = td.parent[node]
        for v in bag:
            if p < 0 or v not in td.bags[p]:
                tops[v] += 1
    return all(tops[v] == 1 for v in covered)


def compute_decomposition(g: Graph) -> TreeDecomposition:
    """Min-fill elimination heuristic.  Valid for every input; the width can
    exceed the true treewidth."""
    n = g.vertex_count
    if n == 0:
        return TreeDecomposition(bags=(frozenset(),), parent=(-1,), root=0)
    work: dict[int, set[int]] = {v: set(g.neighbors(v)) for v in range(n)}
    elim_order: list[int] = []
    snapshots: list[set[int]] = []
    while work:
        best_v = -1
        best_fill = None
        for v in sorted(work):
            nbrs = sorted(work[v])
            fill = 0
            for i in range(len(nbrs)):
                for j in range(i + 1, len(nbrs)):
                    if nbrs[j] not in work[nbrs[i]]:
                        fill += 1
            if best_fill is None or fill < best_fill:
                best_fill = fill
                best_v = v
            if fill == 0:
                break
        nbrs = set(work[best_v])
        elim_order.append(best_v)
        snapshots.append(nbrs)
        for a in nbrs:
            for b in nbrs:
                if a != b:
                    work[a].add(b)
        for a in nbrs:
            work[a].discard(best_v)
        del work[best_v]
    position = {v: i for i, v in enumerate(elim_order)}
    bags = [frozenset({v} | nbrs) for v, nbrs in zip(elim_order, snapshots)]
    parent = [-1] * n
    roots = []
    for i, nbrs in enumerate(snapshots):
        if nbrs:
            parent[i] = min(position[x] for x in nbrs)
        else:
            roots.append(i)
    root = roots[-1]  # last eliminated vertex ends a component
    for r in roots[:-1]:
        parent[r] = root
    return TreeDecomposition(bags=tuple(bags), parent=tuple(parent), root=root)


def make_nice(td: TreeDecomposition, g: Graph) -> NiceTreeDecomposition:
    """Rebuild td as a nice decomposition of the same width.

    Root and leaf bags are empty; every graph edge is introduced exactly
    once, immediately above the introduce-vertex node where its later
    endpoint joins a bag already holding the other one.
    """
    if not validate_decomposition(g, td):
        raise ValidationError("invalid tree decomposition")
    nodes: list[NiceNode] = []
    introduced: set[Edge] = set()

    def add(kind: str, bag: Iterable[int], children: tuple[int, ...], vertex: int = -1, edge: Edge | None = None) -> int:
        nodes.append(NiceNode(kind, tuple(sorted(bag)), children, vertex, edge))
        return len(nodes) - 1

    def raise_chain(top: int, from_bag: frozenset[int], to_bag: frozenset[int]) -> int:
        cur = top
        bag = set(from_bag)
        for v in sorted(from_bag - to_bag):
            bag.remove(v)
            cur = add(FORGET, bag, (cur,), vertex=v)
        for v in sorted(to_bag - from_bag):
            bag.add(v)
            cur = add(INTRODUCE_VERTEX, bag, (cur,), vertex=v)
            for u in sorted(bag):
                e = edge_key(u, v)
                if u != v and g.has_edge(u, v) and e not in introduced:
                    introduced.add(e)
                    cur = add(INTRODUCE_EDGE, bag, (cur,), edge=e)
        return cur

    children = td.children()
    # Iterative post-order over the rooted input tree.
    tops: dict[int, int] = {}
    stack: list[tuple[int, bool]] = [(td.root, False)]
    while stack:
        t, expanded = stack.pop()
        if not expanded:
            stack.append((t, True))
            for c in children[t]:
                stack.append((c, False))
            continue
        kids = [raise_chain(tops[c], td.bags[c], td.bags[t]) for c in children[t]]
        if not kids:
            leaf = add(LEAF, (), ())
            tops[t] = raise_chain(leaf, frozenset(), td.bags[t])
        else:
            cur = kids[0]
            for other in kids[1:]:
                cur = add(JOIN, td.bags[t], (cur, other))
            tops[t] = cur
    root = raise_chain(tops[td.root], td.bags[td.root], frozenset())
    width = max(len(node.bag) for node in nodes) - 1
    return NiceTreeDecomposition(nodes=tuple(nodes), root=root, width=width)


def validate_nice(g: Graph, ntd: NiceTreeDecomposition) -> None:
    """Raise ValidationError unless ntd is a well-formed nice decomposition of g."""
    nodes = ntd.nodes
    if not nodes or not (0 <= ntd.root < len(nodes)):
        raise ValidationError("bad root")
    seen_parent = [0] * len(nodes)
    for node in nodes:
        for c in node.children:
            if not (0 <= c < len(nodes)):
                raise ValidationError("child index out of range")
            seen_parent[c] += 1
    if seen_parent[ntd.root] != 0 or any(count != 1 for i, count in enumerate(seen_parent) if i != ntd.root):
        raise ValidationError("nodes do not form a tree rooted at the root")
    if nodes[ntd.root].bag:
        raise ValidationError("root bag must be empty")
    introduced: dict[Edge, int] = {}
    vertices_seen: set[int] = set()
    for i, node in enumerate(nodes):
        bag = set(node.bag)
        vertices_seen |= bag
        if node.kind == LEAF:
            if node.children or node.bag:
                raise ValidationError("leaf nodes have no children and empty bags")
        elif node.kind == INTRODUCE_VERTEX:
            (c,) = node.children
            child = set(nodes[c].bag)
            if node.vertex in child or bag != child | {node.vertex}:
                raise ValidationError(f"bad introduce-vertex node {i}")
        elif node.kind == INTRODUCE_EDGE:
            (c,) = node.children
            if node.edge is None or node.edge not in g.edge_index:
                raise ValidationError(f"introduce-edge node {i} names no graph edge")
            if set(nodes[c].bag) != bag or not set(node.edge) <= bag:
                raise ValidationError(f"bad introduce-edge node {i}")
            introduced[node.edge] = introduced.get(node.edge, 0) + 1
        elif node.kind == FORGET:
            (c,) = node.children
            child = set(nodes[c].bag)
            if node.vertex not in child or bag != child - {node.vertex}:
                raise ValidationError(f"bad forget node {i}")
        elif node.kind == JOIN:
            if len(node.children) != 2:
                raise ValidationError(f"join node {i} needs two children")
            if any(set(nodes[c].bag) != bag for c in node.children):
                raise ValidationError(f"join node {i} has mismatched child bags")
        else:
            raise ValidationError(f"unknown node kind {node.kind!r}")
    if vertices_seen != set(range(g.vertex_count)):
        raise ValidationError("bags do not cover the vertex set")
    for e in g.edges:
        if introduced.get(e, 0) != 1:
            raise ValidationError(f"edge {e} introduced {introduced.get(e, 0)} times")
    # Occurrence connectivity: each vertex has exactly one top occurrence.
    parent = [-1] * len(nodes)
    for i, node in enumerate(nodes):
        for c in node.children:
            parent[c] = i
    tops = {v: 0 for v in vertices_seen}
    for i, node in enumerate(nodes):
        for v in node.bag:
            if parent[i] < 0 or v not in nodes[parent[i]].bag:
                tops[v] += 1
    if any(count != 1 for count in tops.values()):
        raise ValidationError("vertex occurrences are not connected")


def postorder(ntd: NiceTreeDecomposition) -> list[int]:
    order: list[int] = []
    stack: list[tuple[int, bool]] = [(ntd.root, False)]
    while stack:
        t, expanded = stack.pop()
        if expanded:
            order.append(t)
        else:
            stack.append((t, True))
            for c in ntd.nodes[t].children:
                stack.append((c, False))
    return order


def subtree_vertex_sets(ntd: NiceTreeDecomposition) -> list[frozenset[int]]:
    out: list[frozenset[int] | None] = [None] * len(ntd.nodes)
    for t in postorder(ntd):
        node = ntd.nodes[t]
        acc = set(node.bag)
        for c in node.children:
            acc |= out[c]
        out[t] = frozenset(acc)
    return out  # type: ignore[return-value]


def subtree_edge_sets(ntd: NiceTreeDecomposition) -> list[frozenset[Edge]]:
    out: list[frozenset[Edge] | None] = [None] * len(ntd.nodes)
    for t in postorder(ntd):
        node = ntd.nodes[t]
        acc: set[Edge] = set()
        for c in node.children:
            acc |= out[c]
        if node.kind == INTRODUCE_EDGE:
            acc.add(node.edge)
        out[t] = frozenset(acc)
    return out  # type: ignore[return-value]


def _decode(payload) -> frozenset[int]:
    ids: set[int] = set()
    stack = [payload]
    while stack:
        p = stack.pop()
        if p is None:
            continue
        if p[0] == "e":
            ids.add(p[1])
            stack.append(p[2])
        else:
            stack.append(p[1])
            stack.append(p[2])
    return frozenset(ids)


def run_dp(
    g: Graph,
    ntd: NiceTreeDecomposition,
    pre: PartialWeightAssignment | None = None,
    *,
    fd_ceiling: str = "degree",
    check_invariants: bool = False,
) -> DPRun:
    """Execute the table computation bottom-up and return the root entry
    plus per-node stored-state counts.

    On top of the five transitions, states that cannot survive any later
    forget are dropped eagerly: once fd(v) - cd(v) exceeds the number of
    v-incident edges not yet introduced in the subtree, no extension can
    close the gap.  Dead states only ever produce dead states, so the live
    tables, the decision, and the reconstructed witness are unchanged.
    """
    pre = pre or {}
    validate_nice(g, ntd)
    validate_partial(g, pre)
    if fd_ceiling not in ("degree", "max_degree"):
        raise ValueError("fd_ceiling must be 'degree' or 'max_degree'")
    delta = g.max_degree()
    nodes = ntd.nodes
    tables: dict[int, dict] = {}
    intro_deg: dict[int, dict[int, int]] = {}  # node -> bag vertex -> introduced incident edges
    state_counts = [0] * len(nodes)
    for t in postorder(ntd):
        node = nodes[t]
        if node.kind == LEAF:
            table = {(): None}
            ideg: dict[int, int] = {}
        elif node.kind == INTRODUCE_VERTEX:
            child = tables.pop(node.children[0])
            ideg = intro_deg.pop(node.children[0])
            ideg[node.vertex] = 0
            pos = node.bag.index(node.vertex)
            cap = g.degree(node.vertex) if fd_ceiling == "degree" else delta
            table = {}
            for s, h in child.items():
                head, tail = s[: 2 * pos], s[2 * pos :]
                for fd in range(cap + 1):
                    table[head + (fd, 0) + tail] = h
        elif node.kind == INTRODUCE_EDGE:
            child = tables.pop(node.children[0])
            ideg = intro_deg.pop(node.children[0])
            u, v = node.edge
            ideg[u] += 1
            ideg[v] += 1
            iu, iv = 2 * node.bag.index(u), 2 * node.bag.index(v)
            rem_u = g.degree(u) - ideg[u]
            rem_v = g.degree(v) - ideg[v]
            eid = g.edge_index[node.edge]
            pw = pre.get(node.edge)
            table = {}
            # Weight-0 entries overwrite and weight-1 entries setdefault, so
            # on a key collision the weight-0 derivation always wins, exactly
            # as if the weight-0 branch ran in a first pass of its own.
            allow0 = pw != 1
            allow1 = pw != 0
            setdefault = table.setdefault
            for s, h in child.items():
                fd_u = s[iu]
                fd_v = s[iv]
                if fd_u == fd_v:
                    continue
                cd_u = s[iu + 1]
                cd_v = s[iv + 1]
                if allow1 and cd_u < fd_u and cd_v < fd_v and fd_u - cd_u - 1 <= rem_u and fd_v - cd_v - 1 <= rem_v:
                    lst = list(s)
                    lst[iu + 1] = cd_u + 1
                    lst[iv + 1] = cd_v + 1
                    setdefault(tuple(lst), ("e", eid, h))
                if allow0 and fd_u - cd_u <= rem_u and fd_v - cd_v <= rem_v:
                    table[s] = h
        elif node.kind == FORGET:
            child = tables.pop(node.children[0])
            ideg = intro_deg.pop(node.children[0])
            del ideg[node.vertex]
            child_bag = nodes[node.children[0]].bag
            pos = child_bag.index(node.vertex)
            table = {}
            for s, h in child.items():
                # A forgotten vertex gains no further incident edges, so
                # only cd == fd states survive.
                if s[2 * pos] != s[2 * pos + 1]:
                    continue
                s2 = s[: 2 * pos] + s[2 * pos + 2 :]
                if s2 not in table:
                    table[s2] = h
        else:  # JOIN
            c1, c2 = node.children
            t1, t2 = tables.pop(c1), tables.pop(c2)
            d1, d2 = intro_deg.pop(c1), intro_deg.pop(c2)
            ideg = {v: d1[v] + d2[v] for v in node.bag}
            rem = tuple(g.degree(v) - ideg[v] for v in node.bag)
            by_fd: dict[tuple, list] = {}
            for s, h in t2.items():
                by_fd.setdefault(s[0::2], []).append((s, h))
            table = {}
            size = len(node.bag)
            for s1, h1 in t1.items():
                group = by_fd.get(s1[0::2])
                if not group:
                    continue
                for s2, h2 in group:
                    merged = list(s1)
                    ok = True
                    for i in range(size):
                        fd = s1[2 * i]
                        cd = s1[2 * i + 1] + s2[2 * i + 1]
                        if cd > fd or fd - cd > rem[i]:
                            ok = False
                            break
                        merged[2 * i + 1] = cd
                    if ok:
                        sm = tuple(merged)
                        if sm not in table:
                            table[sm] = ("j", h1, h2)
        state_counts[t] = len(table)
        if check_invariants:
            for s, payload in table.items():
                edges = frozenset(g.edges[i] for i in _decode(payload))
                if not check_partial_solution(g, ntd, t, s, edges):
                    raise AssertionError(f"stored entry violates the partial-solution conditions at node {t}")
        tables[t] = table
        intro_deg[t] = ideg
    root_table = tables[ntd.root]
    if () in root_table:
        return DPRun(_decode(root_table[()]), state_counts)
    return DPRun(None, state_counts)


def dp_solve(
    g: Graph,
    ntd: NiceTreeDecomposition,
    pre: PartialWeightAssignment | None = None,
    *,
    fd_ceiling: str = "degree",
    check_invariants: bool = False,
) -> WeightAssignment | None:
    """A proper assignment extending pre, reconstructed from the root entry."""
    run = run_dp(g, ntd, pre, fd_ceiling=fd_ceiling, check_invariants=check_invariants)
    if run.solution_edge_ids is None:
        return None
    return from_subgraph(g, (g.edges[i] for i in run.solution_edge_ids))


def check_partial_solution(g: Graph, ntd: NiceTreeDecomposition, node_id: int, state: tuple, h_edges) -> bool:
    """Independent checker for the two partial-solution conditions.

    `state` is the flat (fd, cd) tuple over the node's sorted bag; `h_edges`
    is an edge set within the node's subtree graph.
    """
    node = ntd.nodes[node_id]
    bag = node.bag
    if len(state) != 2 * len(bag):
        return False
    e_t = subtree_edge_sets(ntd)[node_id]
    h = {edge_key(*e) for e in h_edges}
    if not h <= e_t:
        return False
    deg: dict[int, int] = {}
    for u, v in h:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    fd = {v: state[2 * i] for i, v in enumerate(bag)}
    cd = {v: state[2 * i + 1] for i, v in enumerate(bag)}
    for v in bag:
        if not (0 <= cd[v] <= fd[v] <= g.degree(v)):
            return False
        if deg.get(v, 0) != cd[v]:
            return False
    for u, v in e_t:
        if u in fd and v in fd:
            if fd[u] == fd[v]:
                return False
        elif u in fd:
            if deg.get(v, 0) == fd[u]:
                return False
        elif v in fd:
            if deg.get(u, 0) == fd[v]:
                return False
        else:
            if deg.get(u, 0) == deg.get(v, 0):
                return False
    return True
