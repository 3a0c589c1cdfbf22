"""Oracle soundness against a deliberately naive reference embedder.

The production oracle prunes by degree and child counts and cuts symmetric
sibling branches; this reference does none of that, so verdict agreement
over the complete small corpus independently certifies those cuts.
"""

import pytest

from treebed.corpus import all_trees_up_to, connected_hosts_up_to_5, sampled_hosts_6_to_8
from treebed.embed import Embedding, brute_force_embed
from treebed.graph import Graph
from treebed.trees import Tree


def _naive_embeds(g: Graph, t: Tree, pins: dict | None = None) -> bool:
    """Plain backtracking: BFS order by vertex id, every unused neighbour tried."""
    pins = pins or {}
    if t.n > g.n:
        return False
    root = min(pins) if pins else 0
    rv = t.rooted(root)
    order = list(rv.order)
    parent = [None if v == root else rv.parent[v] for v in order]

    img: dict[int, int] = {}
    used = set()

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        if parent[i] is None:
            cands = range(g.n)
        else:
            cands = g.neighbors(img[parent[i]])
        for h in cands:
            if h in used:
                continue
            if v in pins and pins[v] != h:
                continue
            img[v] = h
            used.add(h)
            if place(i + 1):
                return True
            used.discard(h)
            del img[v]
        return False

    return place(0)


def test_oracle_agrees_with_naive_reference():
    hosts = [g for g in connected_hosts_up_to_5()]
    hosts += [g for g in sampled_hosts_6_to_8(seed=2024) if g.n <= 7][:40]
    trees = [t for t in all_trees_up_to(7)]
    pairs = 0
    for g in hosts:
        for t in trees:
            if t.n > g.n:
                continue
            pairs += 1
            out = brute_force_embed(g, t)
            want = _naive_embeds(g, t)
            assert out.status in ("found", "not_found")
            got = out.status == "found"
            assert got == want, (
                f"oracle {'found' if got else 'not_found'} but reference says "
                f"{'embeddable' if want else 'impossible'} "
                f"(host n={g.n} m={g.edge_count}, tree n={t.n})"
            )
    assert pairs > 700


def test_oracle_agrees_with_naive_reference_under_pins():
    hosts = [g for g in connected_hosts_up_to_5() if g.n >= 3]
    trees = [t for t in all_trees_up_to(5) if t.n >= 2]
    checked = 0
    for g in hosts:
        for t in trees:
            if t.n > g.n:
                continue
            for tv in range(t.n):
                for hv in range(g.n):
                    pins = {tv: hv}
                    out = brute_force_embed(g, t, pins=Embedding.from_dict(pins))
                    want = _naive_embeds(g, t, pins)
                    assert (out.status == "found") == want, (
                        f"pin {tv}->{hv} disagreement on host n={g.n} m={g.edge_count}, "
                        f"tree n={t.n}"
                    )
                    checked += 1
    assert checked > 2000
