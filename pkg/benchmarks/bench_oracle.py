#!/usr/bin/env python3
"""Benchmark the compiled search kernel against the pure-Python fallback.

Run after installing the package:  python3 benchmarks/bench_oracle.py
"""

from __future__ import annotations

import itertools
import time

from vcew import oracle
from vcew.generators import pinned_chain_host, random_graph
from vcew.graph import Graph


def _cases():
    k7 = Graph.build(7, list(itertools.combinations(range(7), 2)))
    yield "K7 (no-instance, full enumeration)", k7, {}
    g, pre = random_graph(12, 0.35, seed=4)
    yield "random n=12 p=0.35", g, pre
    host = pinned_chain_host(3, 7)
    yield "pinned type-B chain N=7 k=3", host.graph, host.pre


def _run(kernel, g: Graph, pre) -> tuple[float, int]:
    args = oracle._prepare(g, pre, None)
    n, m, eu, ev, fu, fv, sorder, skey, colors, bounds, free = args
    start = time.perf_counter()
    count, nodes = kernel.count_all(n, m, eu, ev, fu, fv, sorder, skey, list(colors), bounds)
    return time.perf_counter() - start, count


def main() -> int:
    from vcew import _search_py

    try:
        from vcew import _search
    except ImportError:
        print("compiled kernel not built; only the pure-Python timings follow")
        _search = None

    print(f"{'case':<40} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, g, pre in _cases():
        py_time, py_count = _run(_search_py, g, pre)
        if _search is not None:
            c_time, c_count = _run(_search, g, pre)
            assert c_count == py_count, (name, c_count, py_count)
            print(f"{name:<40} {py_time:>9.3f}s {c_time:>9.3f}s {py_time / c_time:>7.1f}x")
        else:
            print(f"{name:<40} {py_time:>9.3f}s {'-':>10} {'-':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
