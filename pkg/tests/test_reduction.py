import itertools
import random

import pytest

from vcew import oracle
from vcew.errors import ContractViolationError, ValidationError
from vcew.generators import pinned_chain_host
from vcew.graph import Graph, GraphBuilder, edge_key, induced_colors, is_proper
from vcew.listcolor import (
    ListColoringInstance,
    brute_force_list_coloring,
    is_proper_list_coloring,
    normalize_instance,
)
from vcew.reduction import (
    add_suspended_path,
    add_type_a,
    add_type_b,
    build_reduction,
    default_chain_scale,
    emit_roles,
    extract_coloring,
    small_chain_scale,
    solve_reduced,
    to_dot,
    verify_fvs_bound,
    witness_weighting,
)


def make_inst(n, edges, lists):
    return ListColoringInstance.build(Graph.build(n, edges), lists)


# ---------- normalization ----------


def test_normalize_identity():
    inst = make_inst(2, [(0, 1)], [[2], [3]])
    norm = normalize_instance(inst)
    assert norm.instance == inst and norm.removed_vertices == ()


def test_normalize_removes_oversized_lists():
    # one vertex with more colors than vertices: removable without changing the decision
    inst = make_inst(3, [(0, 1), (1, 2)], [[2, 3, 4, 5], [2], [3]])
    norm = normalize_instance(inst)
    assert norm.removed_vertices == (0,)
    assert norm.instance.graph.vertex_count == 2
    before = brute_force_list_coloring(inst) is not None
    after = brute_force_list_coloring(norm.instance) is not None
    assert before == after


def test_normalize_decision_preserved_random():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 4)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        lists = [sorted(rng.sample(range(2, 8), rng.randint(1, min(5, n + 1)))) for _ in range(n)]
        inst = make_inst(n, edges, lists)
        try:
            norm = normalize_instance(inst)
        except ValidationError:
            continue  # colors drifted out of range after removal; rejected by contract
        assert (brute_force_list_coloring(inst) is not None) == (
            brute_force_list_coloring(norm.instance) is not None
        )


def test_normalize_rejects_color_one():
    inst = make_inst(1, [], [[1]])
    with pytest.raises(ValidationError):
        normalize_instance(inst)


# ---------- gadget builders ----------


def test_suspended_path_forces_inner_one():
    for q in range(1, 5):
        b = GraphBuilder(1)
        recs = [add_suspended_path(b, 0) for _ in range(q)]
        g = b.build()
        assert oracle.count_proper(g) >= 1
        for rec in recs:
            assert oracle.count_proper(g, {rec.inner: 0}) == 0


def test_suspended_path_zero_is_unconstrained():
    g = Graph.build(1, [])
    assert oracle.count_proper(g) == 1


def test_type_a_counts_and_forcing():
    for k in (2, 3, 4):
        b = GraphBuilder(1)
        rec = add_type_a(b, 0, k)
        g = b.build()
        assert g.vertex_count == 1 + 2 + 4 * (k - 1)
        au, av = edge_key(0, rec.u), edge_key(0, rec.v)
        assert oracle.count_proper(g, {au: 0, av: 0}) == 0
        assert oracle.count_proper(g, {au: 1, av: 1}) == 0
        assert oracle.count_proper(g) >= 1


def test_type_a_disallows_color_k_with_headroom():
    for k in (2, 3, 4):
        b = GraphBuilder(1)
        add_type_a(b, 0, k)
        for _ in range(k):
            p = b.add_vertex()
            b.add_edge(0, p)
        g = b.build()
        anchor_edges = [e for e in g.edges if 0 in e]
        for ones in itertools.combinations(anchor_edges, k):
            pre = {e: (1 if e in ones else 0) for e in anchor_edges}
            assert oracle.count_proper(g, pre) == 0


def test_type_a_rejects_small_k():
    with pytest.raises(ValueError):
        add_type_a(GraphBuilder(1), 0, 1)


def test_type_b_counts():
    big_n = 6
    for k in (2, 5):
        b = GraphBuilder(2)
        rec = add_type_b(b, 0, k, 1, big_n)
        assert len(rec.vertices) == big_n - k
        path_vertices = 2 * sum(range(k, big_n))
        assert b.build().vertex_count == 2 + (big_n - k) + path_vertices
    with pytest.raises(ValueError):
        add_type_b(GraphBuilder(2), 0, 6, 1, 6)


def test_type_b_chains_share_only_endpoints():
    b = GraphBuilder(2)
    rec1 = add_type_b(b, 0, 2, 1, 5)
    rec2 = add_type_b(b, 0, 3, 1, 5)
    assert not (set(rec1.vertices) & set(rec2.vertices))


def test_type_b_cascade_forcing():
    for big_n in (5, 6, 7):
        for k in range(2, big_n):
            host = pinned_chain_host(k, big_n)
            total = oracle.count_proper(host.graph, host.pre)
            assert total >= 1
            first, nxt, inners = host.first_vertex_free_edges()
            assert oracle.count_proper(host.graph, {**host.pre, first: 1}) == 0
            assert oracle.count_proper(host.graph, {**host.pre, nxt: 1}) == 0
            for e in inners:
                assert oracle.count_proper(host.graph, {**host.pre, e: 0}) == 0


# ---------- construction ----------


def test_default_scale_n3():
    assert default_chain_scale(3) == 33


def test_single_vertex_reduction():
    inst = make_inst(1, [], [[2]])
    red = build_reduction(inst)
    assert red.z is None
    assert red.graph.vertex_count == 5  # v plus two suspended paths
    assert len(red.graph.edges) == 4
    w = solve_reduced(red)
    assert w is not None
    assert induced_colors(red.graph, w)[0] == 2


def test_disallowed_sets_definition():
    inst = make_inst(2, [(0, 1)], [[2, 4], [3]])
    red = build_reduction(inst, small_chain_scale(inst))
    t = 4
    span = set(range(2, t + 2 - 1 + 1))  # colors 2..t+n-1
    assert set(red.disallowed(0)) == span - {2, 4}
    assert set(red.disallowed(1)) == span - {3}


def test_structural_counts():
    inst = make_inst(2, [(0, 1)], [[2], [3]])
    red = build_reduction(inst, small_chain_scale(inst))
    t = red.t
    for v in range(2):
        assert len(red.pendants[v]) == t - 2
        assert len(red.suspended[v]) == 2
    chains = len(red.chains)
    assert red.graph.degree(red.z) == 2 * red.big_n + chains
    assert verify_fvs_bound(red)


def test_bad_overrides_rejected():
    inst = make_inst(2, [(0, 1)], [[2], [3]])
    with pytest.raises(ValueError):
        build_reduction(inst, 2)  # not above every disallowed color
    with pytest.raises(ValueError):
        build_reduction(inst, small_chain_scale(inst) - 4)


def test_build_rejects_color_below_two():
    inst = make_inst(1, [], [[1, 2]])
    with pytest.raises(ValidationError):
        build_reduction(inst)


def test_build_accepts_wide_lists_with_override():
    # |L| > n is fine for the construction itself; only the default scale
    # analysis assumes normalization
    inst = make_inst(1, [], [[2, 3]])
    red = build_reduction(inst, small_chain_scale(inst))
    w = solve_reduced(red)
    assert w is not None
    assert induced_colors(red.graph, w)[0] in (2, 3)


# ---------- witness and extraction ----------


def test_witness_round_trip_k2():
    inst = make_inst(2, [(0, 1)], [[2], [3]])
    red = build_reduction(inst, small_chain_scale(inst))
    coloring = brute_force_list_coloring(inst)
    w = witness_weighting(red, coloring)
    assert is_proper(red.graph, w)
    colors = induced_colors(red.graph, w)
    assert colors[red.z] == red.big_n
    assert extract_coloring(red, w) == coloring


def test_witness_rejects_bad_coloring():
    inst = make_inst(2, [(0, 1)], [[2], [3]])
    red = build_reduction(inst, small_chain_scale(inst))
    with pytest.raises(ContractViolationError):
        witness_weighting(red, [2, 2])  # not list-respecting
    with pytest.raises(ContractViolationError):
        witness_weighting(red, [3, 3])


def test_extract_requires_proper():
    inst = make_inst(1, [], [[2]])
    red = build_reduction(inst)
    with pytest.raises(ContractViolationError):
        extract_coloring(red, {e: 0 for e in red.graph.edges})


# ---------- solver and fvs ----------


def test_solve_reduced_biconditional_k2():
    yes = make_inst(2, [(0, 1)], [[2], [3]])
    no = make_inst(2, [(0, 1)], [[2], [2]])
    for inst, expect in ((yes, True), (no, False)):
        red = build_reduction(inst, small_chain_scale(inst))
        w = solve_reduced(red)
        assert (w is not None) == expect
        assert (brute_force_list_coloring(inst) is not None) == expect
        if w is not None:
            c = extract_coloring(red, w)
            assert is_proper_list_coloring(inst, c)
        assert verify_fvs_bound(red)


def test_fvs_bound_without_z():
    inst = make_inst(1, [], [[2]])
    red = build_reduction(inst)
    assert red.z is None
    assert verify_fvs_bound(red)


def test_roles_sidecar_and_dot():
    inst = make_inst(2, [(0, 1)], [[2], [3]])
    red = build_reduction(inst, small_chain_scale(inst))
    text = emit_roles(red)
    lines = text.splitlines()
    assert len(lines) == red.graph.vertex_count + len(red.graph.edges)
    assert lines[0] == "v 1 original 1"
    assert any(line.startswith("e 1 2 graph") for line in lines)
    dot = to_dot(red)
    assert dot.startswith("graph reduction {") and dot.rstrip().endswith("}")


def test_fvs_needs_the_instance_cover_too():
    # removing only z leaves the instance's own cycles intact
    inst = make_inst(3, [(0, 1), (1, 2), (0, 2)], [[2], [3], [4]])
    red = build_reduction(inst, small_chain_scale(inst))
    keep = [e for e in red.graph.edges if red.z not in e]
    parent = list(range(red.graph.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cyclic = False
    for u, v in keep:
        ru, rv = find(u), find(v)
        if ru == rv:
            cyclic = True
            break
        parent[ru] = rv
    assert cyclic
    assert verify_fvs_bound(red)


def test_solve_reduced_agrees_with_unrestricted_dp():
    # independent route: decide whole reductions with the treewidth DP and
    # no forced pre-weights at all (the instance cover plus z keeps the
    # width tiny even though H has hundreds of vertices)
    from vcew.treewidth import compute_decomposition, make_nice, run_dp

    cases = [
        make_inst(2, [(0, 1)], [[2], [3]]),
        make_inst(2, [(0, 1)], [[2], [2]]),
        make_inst(2, [], [[2], [2]]),
        make_inst(1, [], [[3]]),
        make_inst(2, [(0, 1)], [[2, 3], [2, 3]]),
    ]
    for inst in cases:
        red = build_reduction(inst, small_chain_scale(inst))
        ntd = make_nice(compute_decomposition(red.graph), red.graph)
        unrestricted = run_dp(red.graph, ntd).solution_edge_ids is not None
        forced = solve_reduced(red) is not None
        assert unrestricted == forced
        assert forced == (brute_force_list_coloring(inst) is not None)
