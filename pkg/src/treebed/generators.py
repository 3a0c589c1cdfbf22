"""Generators: extremal host families, named tree families, and seeded random corpora.

Every asserted degree profile is recomputed from the built adjacency rather
than trusted from the construction; identical (family, params, seed) always
yields an identical object.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import Infeasible, InternalInvariantError, PreconditionViolated
from .graph import Graph
from .trees import Tree


@dataclass(frozen=True)
class FamilySpec:
    """A reproducible recipe: family id plus its parameters (and seed if random)."""

    family: str
    params: dict = field(default_factory=dict)
    seed: Optional[int] = None

    def key(self) -> tuple:
        return (self.family, tuple(sorted(self.params.items())), self.seed)


def _assert_profile(g: Graph, min_deg: int, max_deg: int) -> None:
    if g.min_degree() != min_deg or g.max_degree() != max_deg:
        raise InternalInvariantError(
            f"degree profile drifted: got ({g.min_degree()},{g.max_degree()}),"
            f" wanted ({min_deg},{max_deg})"
        )


# ---------------------------------------------------------------------------
# Extremal hosts


def gen_two_cliques_apex(k: int) -> Graph:
    """Two disjoint cliques on 2k/3 - 1 vertices plus one universal vertex.

    The tight host for the 2k/3 minimum-degree threshold: min degree lands on
    2k/3 - 1, max degree on 4k/3 - 2 (both re-counted).
    """
    if k < 3 or k % 3:
        raise PreconditionViolated("k must be a positive multiple of 3")
    size = 2 * k // 3 - 1
    edges = []
    for base in (0, size):
        for i in range(size):
            for j in range(i + 1, size):
                edges.append((base + i, base + j))
    apex = 2 * size
    edges.extend((v, apex) for v in range(2 * size))
    g = Graph(2 * size + 1, edges)
    _assert_profile(g, 2 * k // 3 - 1, 4 * k // 3 - 2)
    return g


def gen_two_cliques_apex_grown(k: int) -> Graph:
    """The same host with one extra vertex in each clique, lifting min degree
    to exactly floor(2k/3); the threshold's other side."""
    if k < 3 or k % 3:
        raise PreconditionViolated("k must be a positive multiple of 3")
    size = 2 * k // 3
    edges = []
    for base in (0, size):
        for i in range(size):
            for j in range(i + 1, size):
                edges.append((base + i, base + j))
    apex = 2 * size
    edges.extend((v, apex) for v in range(2 * size))
    g = Graph(2 * size + 1, edges)
    _assert_profile(g, 2 * k // 3, 4 * k // 3)
    return g


def gen_three_branch_tree(k: int) -> Tree:
    """A degree-3 center with three path branches of k/3 vertices each."""
    if k < 3 or k % 3:
        raise PreconditionViolated("k must be a positive multiple of 3")
    b = k // 3
    edges = []
    nxt = 1
    for _ in range(3):
        prev = 0
        for _ in range(b):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    t = Tree(k + 1, edges, root=0)
    if t.degree(0) != 3 or t.max_degree() != 3:
        raise InternalInvariantError("three-branch tree degree profile drifted")
    return t


def gen_spider(k: int, ell: int) -> Tree:
    """Depth-2 spider: a root with ell children, each having k/ell children.

    Carries ell + k edges in total (the root-to-child edges come on top of
    the k grandchild edges); the constructor reports the true count rather
    than reinterpreting k.
    """
    if ell < 1 or k < 1 or k % ell:
        raise PreconditionViolated("need ell >= 1 dividing k")
    per = k // ell
    edges = []
    nxt = 1
    for _ in range(ell):
        mid = nxt
        nxt += 1
        edges.append((0, mid))
        for _ in range(per):
            edges.append((mid, nxt))
            nxt += 1
    t = Tree(1 + ell + k, edges, root=0)
    want = max(ell, per + 1)
    if t.max_degree() != want or t.k != ell + k:
        raise InternalInvariantError("spider shape drifted")
    return t


def gen_bps_alpha_host(k: int, alpha: Fraction, seed: int = 0) -> tuple[Graph, int]:
    """Two complete bipartite blocks plus an apex seeing both larger classes.

    Block parts have ceil((1+alpha)k/2) and ceil((1-alpha)k) vertices (the
    second is the larger one for alpha < 1/3); the apex is adjacent to every
    vertex of both larger classes.  Returns (graph, apex id).
    """
    alpha = Fraction(alpha)
    if not (0 < alpha < Fraction(1, 3)):
        raise PreconditionViolated("alpha must lie strictly between 0 and 1/3")
    small = -(-((1 + alpha) * k) // 2)
    big = -(-((1 - alpha) * k) // 1)
    small, big = int(small), int(big)
    edges = []
    offset = 0
    big_classes = []
    for _ in range(2):
        smalls = list(range(offset, offset + small))
        bigs = list(range(offset + small, offset + small + big))
        big_classes.extend(bigs)
        edges.extend((s, b) for s in smalls for b in bigs)
        offset += small + big
    apex = offset
    edges.extend((v, apex) for v in big_classes)
    g = Graph(offset + 1, edges)
    if g.degree(apex) != 2 * big:
        raise InternalInvariantError("apex degree drifted")
    # small-class vertices see the whole big class; big-class ones add the apex
    if g.min_degree() != min(big, small + 1) or g.max_degree() != 2 * big:
        raise InternalInvariantError("block degree profile drifted")
    return g, apex


def gen_clique_chain_apex(k: int, d: int) -> Graph:
    """d disjoint cliques on floor(k/2)-1 vertices, plus an apex with exactly
    one neighbour per clique.  Long paths cannot thread through it."""
    if k < 4 or d < 1:
        raise PreconditionViolated("need k >= 4 and d >= 1")
    size = k // 2 - 1
    edges = []
    for c in range(d):
        base = c * size
        for i in range(size):
            for j in range(i + 1, size):
                edges.append((base + i, base + j))
    apex = d * size
    edges.extend((c * size, apex) for c in range(d))
    g = Graph(d * size + 1, edges)
    if g.degree(apex) != d:
        raise InternalInvariantError("apex degree drifted")
    return g


def gen_complete_bipartite(m: int, n: int) -> Graph:
    if m < 1 or n < 1:
        raise PreconditionViolated("both sides must be nonempty")
    return Graph(m + n, ((i, m + j) for i in range(m) for j in range(n)))


def gen_path(n: int) -> Tree:
    if n < 1:
        raise PreconditionViolated("need n >= 1")
    return Tree(n, ((i, i + 1) for i in range(n - 1)), root=0)


# ---------------------------------------------------------------------------
# Seeded random corpora


def gen_random_tree(n: int, max_deg: int, seed: int, _rejection_rounds: int = 300) -> Tree:
    """Seeded random tree with max degree <= max_deg.

    Rejection-samples uniform trees via random parent codes; if the degree
    bound keeps rejecting (tight bounds on large n), falls back to drawing
    each code symbol only from vertices with remaining degree headroom.
    """
    if n < 1:
        raise PreconditionViolated("need n >= 1")
    if n >= 3 and max_deg < 2:
        raise Infeasible("a tree on 3+ vertices needs max degree >= 2")
    if n == 2 and max_deg < 1:
        raise Infeasible("an edge needs degree 1")
    rng = random.Random(repr(("tree", n, max_deg, seed)))
    if n == 1:
        return Tree(1, (), root=0)
    if n == 2:
        return Tree(2, ((0, 1),), root=0)

    def decode(code: list[int]) -> Tree:
        degree = [1] * n
        for v in code:
            degree[v] += 1
        leaves = sorted(v for v in range(n) if degree[v] == 1)
        import heapq

        heap = list(leaves)
        heapq.heapify(heap)
        edges = []
        for v in code:
            leaf = heapq.heappop(heap)
            edges.append((leaf, v))
            degree[v] -= 1
            if degree[v] == 1:
                heapq.heappush(heap, v)
        u = heapq.heappop(heap)
        w = heapq.heappop(heap)
        edges.append((u, w))
        return Tree(n, edges, root=0)

    for _ in range(_rejection_rounds):
        code = [rng.randrange(n) for _ in range(n - 2)]
        counts = [0] * n
        ok = True
        for v in code:
            counts[v] += 1
            if counts[v] > max_deg - 1:
                ok = False
                break
        if ok:
            t = decode(code)
            if t.max_degree() > max_deg:
                raise InternalInvariantError("degree bound slipped through decoding")
            return t
    # constrained draw: symbols only from vertices with headroom left
    counts = [0] * n
    code = []
    for _ in range(n - 2):
        pool = [v for v in range(n) if counts[v] < max_deg - 1]
        if not pool:
            raise Infeasible("no degree headroom left during constrained draw")
        v = pool[rng.randrange(len(pool))]
        counts[v] += 1
        code.append(v)
    t = decode(code)
    if t.max_degree() > max_deg:
        raise InternalInvariantError("constrained draw exceeded the degree bound")
    return t


def gen_caterpillar(spine: int, legs: int, seed: int) -> Tree:
    """A path of `spine` vertices with `legs` extra leaves attached at random
    (seeded) spine positions."""
    if spine < 1 or legs < 0:
        raise PreconditionViolated("need spine >= 1 and legs >= 0")
    rng = random.Random(repr(("caterpillar", spine, legs, seed)))
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for _ in range(legs):
        at = rng.randrange(spine)
        edges.append((at, nxt))
        nxt += 1
    return Tree(spine + legs, edges, root=0)


def gen_random_graph_min_degree(
    n: int, delta: int, seed: int, p: Optional[float] = None
) -> Graph:
    """Erdos-Renyi base repaired up to minimum degree delta (seeded).

    While some vertex sits below delta, it gets joined to a uniformly random
    non-neighbour.  The resulting minimum degree is re-counted and asserted.
    """
    if delta < 0 or n < 1:
        raise PreconditionViolated("need n >= 1 and delta >= 0")
    if delta >= n:
        raise Infeasible("min degree must be below n")
    rng = random.Random(repr(("graph", n, delta, seed)))
    if p is None:
        p = min(1.0, (delta + 1) / max(n - 1, 1) * 1.1)
    adj = [set() for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                adj[u].add(v)
                adj[v].add(u)
    for v in range(n):
        while len(adj[v]) < delta:
            cands = [w for w in range(n) if w != v and w not in adj[v]]
            w = cands[rng.randrange(len(cands))]
            adj[v].add(w)
            adj[w].add(v)
    g = Graph(n, ((u, v) for u in range(n) for v in adj[u] if u < v))
    if g.min_degree() < delta:
        raise InternalInvariantError("degree repair fell short")
    return g


def gen_random_connected_graph(n: int, extra_edges: int, seed: int) -> Graph:
    """Random tree skeleton plus `extra_edges` uniformly random chords (seeded)."""
    if n < 1:
        raise PreconditionViolated("need n >= 1")
    rng = random.Random(repr(("connected", n, extra_edges, seed)))
    skeleton = gen_random_tree(n, max(n - 1, 1), seed)
    adj = [set(skeleton.neighbors(v)) for v in range(n)]
    non_edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if v not in adj[u]
    ]
    rng.shuffle(non_edges)
    for u, v in non_edges[:extra_edges]:
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, ((u, v) for u in range(n) for v in adj[u] if u < v))


# ---------------------------------------------------------------------------
# FamilySpec dispatch (CLI entry point)

_GRAPH_FAMILIES = {
    "two_cliques_apex": lambda p, s: gen_two_cliques_apex(p["k"]),
    "two_cliques_apex_grown": lambda p, s: gen_two_cliques_apex_grown(p["k"]),
    "bps_alpha_host": lambda p, s: gen_bps_alpha_host(
        p["k"], Fraction(p["alpha"]), s or 0
    )[0],
    "clique_chain_apex": lambda p, s: gen_clique_chain_apex(p["k"], p["d"]),
    "complete_bipartite": lambda p, s: gen_complete_bipartite(p["m"], p["n"]),
    "complete": lambda p, s: Graph.complete(p["n"]),
    "random_min_degree": lambda p, s: gen_random_graph_min_degree(
        p["n"], p["delta"], s or 0
    ),
    "random_connected": lambda p, s: gen_random_connected_graph(
        p["n"], p.get("extra_edges", 0), s or 0
    ),
}

_TREE_FAMILIES = {
    "three_branch": lambda p, s: gen_three_branch_tree(p["k"]),
    "spider": lambda p, s: gen_spider(p["k"], p["ell"]),
    "path": lambda p, s: gen_path(p["n"]),
    "caterpillar": lambda p, s: gen_caterpillar(p["spine"], p["legs"], s or 0),
    "random_tree": lambda p, s: gen_random_tree(p["n"], p["max_deg"], s or 0),
}


def build_graph(spec: FamilySpec) -> Graph:
    if spec.family not in _GRAPH_FAMILIES:
        raise PreconditionViolated(f"unknown graph family {spec.family!r}")
    return _GRAPH_FAMILIES[spec.family](spec.params, spec.seed)


def build_tree(spec: FamilySpec) -> Tree:
    if spec.family not in _TREE_FAMILIES:
        raise PreconditionViolated(f"unknown tree family {spec.family!r}")
    return _TREE_FAMILIES[spec.family](spec.params, spec.seed)


GRAPH_FAMILY_NAMES = tuple(sorted(_GRAPH_FAMILIES))
TREE_FAMILY_NAMES = tuple(sorted(_TREE_FAMILIES))
