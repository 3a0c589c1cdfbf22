#!/usr/bin/env python3
"""Benchmark the compiled search kernels against the pure-Python fallback.

Runs the same workloads in two subprocesses (one with TREEBED_PURE=1) so each
exercises the import-time backend selection, then prints a comparison table
and asserts the numeric results agree exactly.

Usage: python benchmarks/bench_kernels.py
"""

import json
import os
import subprocess
import sys
import time


def workload() -> dict:
    from treebed import kernel
    from treebed.embed import brute_force_embed
    from treebed.generators import (
        gen_random_connected_graph,
        gen_random_tree,
        gen_three_branch_tree,
        gen_two_cliques_apex,
    )
    from treebed.graph import cut_density

    out = {"backend": kernel.BACKEND, "cases": {}}

    t0 = time.perf_counter()
    nodes = 0
    for k in (6, 9, 12):
        res = brute_force_embed(gen_two_cliques_apex(k), gen_three_branch_tree(k))
        assert res.status == "not_found"
        nodes += res.nodes_explored
    out["cases"]["extremal avoidance k=6,9,12"] = {
        "seconds": time.perf_counter() - t0,
        "result": nodes,
    }

    t0 = time.perf_counter()
    found = 0
    nodes = 0
    for seed in range(120):
        g = gen_random_connected_graph(12 + seed % 4, 18 + seed % 9, seed)
        t = gen_random_tree(9 + seed % 3, 4, seed + 1)
        res = brute_force_embed(g, t, budget=200_000)
        found += res.status == "found"
        nodes += res.nodes_explored
    out["cases"]["random embedding batch (120)"] = {
        "seconds": time.perf_counter() - t0,
        "result": (found, nodes),
    }

    t0 = time.perf_counter()
    dens = []
    for seed, n in ((0, 14), (1, 16), (2, 18)):
        g = gen_random_connected_graph(n, 2 * n, seed)
        w = cut_density(g).witness
        dens.append((w.crossing_edges, len(w.side_a)))
    out["cases"]["exact min cut n=14,16,18"] = {
        "seconds": time.perf_counter() - t0,
        "result": dens,
    }
    return out


def main() -> int:
    if "--worker" in sys.argv:
        print(json.dumps(workload()))
        return 0

    here = os.path.abspath(__file__)
    results = {}
    for label, env_extra in (("compiled", {}), ("pure", {"TREEBED_PURE": "1"})):
        env = dict(os.environ, **env_extra)
        proc = subprocess.run(
            [sys.executable, here, "--worker"],
            capture_output=True,
            text=True,
            env=env,
            check=True,
        )
        results[label] = json.loads(proc.stdout.strip().splitlines()[-1])

    comp, pure = results["compiled"], results["pure"]
    if comp["backend"] == "python":
        print("note: compiled kernel unavailable, comparing pure against itself")
    print(f"{'case':<36} {'pure':>10} {'compiled':>10} {'speedup':>9}")
    for case in comp["cases"]:
        a = pure["cases"][case]
        b = comp["cases"][case]
        if a["result"] != b["result"]:
            print(f"MISMATCH in {case}: {a['result']} vs {b['result']}")
            return 1
        ratio = a["seconds"] / b["seconds"] if b["seconds"] > 0 else float("inf")
        print(f"{case:<36} {a['seconds']:>9.3f}s {b['seconds']:>9.3f}s {ratio:>8.1f}x")
    print("results identical across backends")
    return 0


if __name__ == "__main__":
    sys.exit(main())
