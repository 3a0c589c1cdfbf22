"""Tree-into-graph embedding: constructive procedures and the exhaustive oracle.

Every procedure that reports "found" validates its embedding before
returning, so a found outcome is self-certifying.  Only the oracle's
exhaustive `not_found` is a proof of non-containment; the constructive
procedures raise EmbedNotFound instead when they get stuck.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable, Optional

from . import kernel
from .errors import EmbedNotFound, PreconditionViolated
from .graph import Graph, as_vertex_set, path_in_range
from .trees import (
    Tree,
    balanced_separator_vertex,
    even_odd_split,
    msf_decomposition,
    split_three_forests,
    split_two_forests,
)

DEFAULT_ORACLE_BUDGET = 10**8


@dataclass(frozen=True)
class Embedding:
    """Injective partial map from tree vertices to host vertices."""

    mapping: tuple[tuple[int, int], ...]

    def __post_init__(self):
        tvs = [tv for tv, _ in self.mapping]
        hvs = [hv for _, hv in self.mapping]
        if len(set(tvs)) != len(tvs):
            raise PreconditionViolated("a tree vertex is mapped twice")
        if len(set(hvs)) != len(hvs):
            raise PreconditionViolated("embedding is not injective")
        if list(self.mapping) != sorted(self.mapping):
            raise PreconditionViolated("mapping pairs must be sorted")

    @classmethod
    def from_dict(cls, d: dict) -> "Embedding":
        return cls(tuple(sorted((int(k), int(v)) for k, v in d.items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.mapping)

    def image(self) -> frozenset:
        return frozenset(hv for _, hv in self.mapping)

    def __len__(self) -> int:
        return len(self.mapping)

    def is_total_for(self, t: Tree) -> bool:
        return len(self.mapping) == t.n and all(0 <= tv < t.n for tv, _ in self.mapping)


@dataclass(frozen=True)
class EmbedOutcome:
    """Result of an embedding attempt.

    status "not_found" only ever comes from the oracle after exhausting the
    search space; budgeted interruptions report "budget_exhausted".
    """

    status: str  # found | not_found | budget_exhausted
    embedding: Optional[Embedding]
    nodes_explored: int

    def __post_init__(self):
        if self.status not in ("found", "not_found", "budget_exhausted"):
            raise PreconditionViolated(f"bad status {self.status!r}")
        if (self.status == "found") != (self.embedding is not None):
            raise PreconditionViolated("embedding present iff status is found")


def validate(g: Graph, t: Tree, e: Embedding) -> tuple[bool, Optional[str]]:
    """Check a total embedding: injectivity and edge preservation.

    Returns (True, None) or (False, first violation).  Totality is a
    precondition; partial maps are rejected outright.
    """
    if not e.is_total_for(t):
        raise PreconditionViolated("validate requires a total embedding")
    phi = e.as_dict()
    for tv, hv in e.mapping:
        if not (0 <= hv < g.n):
            return False, f"tree vertex {tv} mapped outside the host ({hv})"
    for u, v in t.edges:
        if not g.has_edge(phi[u], phi[v]):
            return False, f"tree edge ({u},{v}) maps to non-edge ({phi[u]},{phi[v]})"
    return True, None


def _certify_found(g: Graph, t: Tree, phi: dict, nodes: int) -> EmbedOutcome:
    emb = Embedding.from_dict(phi)
    ok, why = validate(g, t, emb)
    if not ok:
        raise AssertionError(f"internal: produced embedding fails validation: {why}")
    return EmbedOutcome("found", emb, nodes)


# ---------------------------------------------------------------------------
# Exhaustive oracle


def _ahu_codes(t: Tree, rv) -> list[int]:
    """Canonical rooted-subtree codes (equal code <=> isomorphic rooted subtree)."""
    intern: dict[tuple, int] = {}
    code = [0] * t.n
    for v in reversed(rv.order):
        key = tuple(sorted(code[c] for c in rv.children[v]))
        code[v] = intern.setdefault(key, len(intern))
    return code


def brute_force_embed(
    g: Graph,
    t: Tree,
    pins: Optional[Embedding] = None,
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> EmbedOutcome:
    """Ground-truth backtracking search for a copy of t in g.

    Tree vertices are placed in BFS order from a deterministic root (a pinned
    vertex when pins exist, else a maximum-degree vertex); candidates follow
    host-degree order with degree and child-count pruning.  Isomorphic sibling
    subtrees without pins are explored in increasing root-image order only,
    which preserves exhaustiveness.  "not_found" is a proof; budget overruns
    report "budget_exhausted" instead.
    """
    pin_map = pins.as_dict() if pins is not None else {}
    for tv, hv in pin_map.items():
        if not (0 <= tv < t.n and 0 <= hv < g.n):
            raise PreconditionViolated(f"pin ({tv},{hv}) out of range")
    for u, v in t.edges:
        if u in pin_map and v in pin_map and not g.has_edge(pin_map[u], pin_map[v]):
            raise PreconditionViolated("pins violate edge preservation")
    if t.n == 0:
        return EmbedOutcome("found", Embedding(()), 0)
    if t.n > g.n or t.max_degree() > g.max_degree():
        return EmbedOutcome("not_found", None, 0)

    root = min(pin_map) if pin_map else max(range(t.n), key=lambda v: (t.degree(v), -v))
    rv = t.rooted(root)
    code = _ahu_codes(t, rv)
    contains_pin = [False] * t.n
    for v in reversed(rv.order):
        contains_pin[v] = v in pin_map or any(contains_pin[c] for c in rv.children[v])

    full = (1 << g.n) - 1
    order_t = [root]
    pos_of = {root: 0}
    parent_pos = [-1]
    symprev = [-1]
    qhead = 0
    while qhead < len(order_t):
        v = order_t[qhead]
        qhead += 1
        kids = sorted(rv.children[v], key=lambda c: (code[c], c))
        prev_free: dict[int, int] = {}
        for c in kids:
            pos = len(order_t)
            order_t.append(c)
            pos_of[c] = pos
            parent_pos.append(pos_of[v])
            if contains_pin[c]:
                symprev.append(-1)
            else:
                symprev.append(prev_free.get(code[c], -1))
                prev_free[code[c]] = pos
    allowed = [
        (1 << pin_map[v]) if v in pin_map else full
        for v in order_t
    ]
    tdeg = [t.degree(v) for v in order_t]
    nchild = [len(rv.children[v]) for v in order_t]
    host_deg = g.degrees()
    host_order = sorted(range(g.n), key=lambda h: (-host_deg[h], h))

    status, imgs, nodes = kernel.solve_embed(
        g.masks(), host_deg, host_order, parent_pos, allowed, tdeg, nchild, symprev, budget
    )
    if status == kernel.FOUND:
        phi = {order_t[i]: imgs[i] for i in range(t.n)}
        return _certify_found(g, t, phi, nodes)
    if status == kernel.BUDGET:
        return EmbedOutcome("budget_exhausted", None, nodes)
    return EmbedOutcome("not_found", None, nodes)


# ---------------------------------------------------------------------------
# Greedy machinery shared by the constructive procedures


def _greedy_subtree(
    g: Graph,
    t: Tree,
    members: frozenset,
    root_t: int,
    phi: dict,
    used: set,
    pool_for: Callable[[int], frozenset],
    stage: str,
) -> int:
    """Extend phi over `members` BFS-out from root_t (already placed).

    Each vertex lands on the smallest unused neighbour of its parent's image
    inside its own pool.  Returns the number of placements; raises
    EmbedNotFound on a dead end.
    """
    placed = 0
    queue = [root_t]
    qhead = 0
    while qhead < len(queue):
        v = queue[qhead]
        qhead += 1
        for w in t.neighbors(v):
            if w not in members or w in phi:
                continue
            pool = pool_for(w)
            img = next(
                (h for h in g.neighbors(phi[v]) if h not in used and h in pool),
                None,
            )
            if img is None:
                raise EmbedNotFound(stage, f"no host available for tree vertex {w}")
            phi[w] = img
            used.add(img)
            placed += 1
            queue.append(w)
    return placed


def _min_degree_without(g: Graph, x: int) -> int:
    """Minimum degree of g - x."""
    if g.n <= 1:
        return 0
    return min(
        g.degree(v) - (1 if g.has_edge(v, x) else 0) for v in range(g.n) if v != x
    )


def greedy_embed(g: Graph, t: Tree, x: int, root: Optional[int] = None) -> EmbedOutcome:
    """Embed a rooted tree with its root at x by plain BFS greed.

    Requires min degree of g - x at least the tree's edge count and
    deg(x) >= max_degree(t); under those the greedy placement never sticks.
    """
    r = root if root is not None else t.root
    if r is None:
        raise PreconditionViolated("tree must carry a root (or pass root=...)")
    if not (0 <= x < g.n):
        raise PreconditionViolated("x out of range")
    k = t.k
    if _min_degree_without(g, x) < k:
        raise PreconditionViolated(f"need min degree {k} in g - x")
    if g.degree(x) < t.max_degree():
        raise PreconditionViolated("apex degree below the tree's max degree")
    phi = {r: x}
    used = {x}
    everything = frozenset(range(g.n))
    placed = _greedy_subtree(
        g, t, frozenset(range(t.n)), r, phi, used, lambda _: everything, "greedy"
    )
    return _certify_found(g, t, phi, placed + 1)


def apex_split_embed(g: Graph, x: int, c1, c2, t: Tree) -> EmbedOutcome:
    """Root the tree at a balanced separator placed on x, then push the two
    forest halves into the two candidate vertex pools."""
    s1 = as_vertex_set(c1, g.n)
    s2 = as_vertex_set(c2, g.n)
    if s1.as_set() & s2.as_set() or x in s1 or x in s2:
        raise PreconditionViolated("pools must be disjoint and avoid x")
    k, dmax = t.k, t.max_degree()
    floor = (2 * k) // 3 - 1
    for s in (s1, s2):
        if g.min_degree_within(s.members) < floor:
            raise PreconditionViolated(f"pool min degree below floor(2k/3)-1 = {floor}")
        if sum(1 for h in g.neighbors(x) if h in s) < dmax:
            raise PreconditionViolated("x lacks max_degree(t) neighbours in a pool")
    split = split_two_forests(t)
    r = split.pivot
    phi = {r: x}
    used = {x}
    placed = 1
    for forest, pool in ((split.f1, s1), (split.f2, s2)):
        pf = pool.as_set()
        placed += _greedy_subtree(
            g,
            t,
            forest.as_set() | {r},
            r,
            phi,
            used,
            lambda _: pf,
            "apex_split",
        )
    return _certify_found(g, t, phi, placed)


def apex_three_split_embed(g: Graph, x: int, c1, c2, c3, t: Tree) -> EmbedOutcome:
    """Three-pool variant: two forest parts rooted at x, the third (a single
    component) enters its pool through a neighbour of x."""
    pools = [as_vertex_set(c, g.n) for c in (c1, c2, c3)]
    for i in range(3):
        for j in range(i + 1, 3):
            if pools[i].as_set() & pools[j].as_set():
                raise PreconditionViolated("pools overlap")
        if x in pools[i]:
            raise PreconditionViolated("pools must avoid x")
    k, dmax = t.k, t.max_degree()
    need = -(-k // 2) + 2
    for p in pools:
        sub = p.as_set() - {x}
        if g.min_degree_within(sub) < need:
            raise PreconditionViolated(f"pool min degree below ceil(k/2)+2 = {need}")
    for p in pools[:2]:
        if sum(1 for h in g.neighbors(x) if h in p) < dmax:
            raise PreconditionViolated("x lacks max_degree(t) neighbours in a main pool")
    if not any(h in pools[2] for h in g.neighbors(x)):
        raise PreconditionViolated("x has no neighbour in the third pool")
    split = split_three_forests(t)
    r = split.pivot
    phi = {r: x}
    used = {x}
    placed = 1
    for forest, pool in ((split.f1, pools[0]), (split.f2, pools[1])):
        pf = pool.as_set()
        placed += _greedy_subtree(
            g, t, forest.as_set() | {r}, r, phi, used, lambda _: pf, "apex_three"
        )
    f3 = split.f3.as_set()
    if f3:
        u = next(w for w in t.neighbors(r) if w in f3)
        y = next(h for h in g.neighbors(x) if h in pools[2] and h not in used)
        pf3 = pools[2].as_set() - {x}
        phi[u] = y
        used.add(y)
        placed += 1 + _greedy_subtree(g, t, f3, u, phi, used, lambda _: pf3, "apex_three_f3")
    return _certify_found(g, t, phi, placed)


def bipartite_apex_embed(g: Graph, x: int, y1, y2, t: Tree) -> EmbedOutcome:
    """Embed into a bipartite host plus apex by alternating the even/odd class
    split between the two sides."""
    s1 = as_vertex_set(y1, g.n)
    s2 = as_vertex_set(y2, g.n)
    if s1.as_set() & s2.as_set() or x in s1 or x in s2:
        raise PreconditionViolated("sides must be disjoint and avoid x")
    if s1.as_set() | s2.as_set() != frozenset(range(g.n)) - {x}:
        raise PreconditionViolated("sides must cover g - x")
    for u, v in g.edges():
        if x in (u, v):
            continue
        if (u in s1) == (v in s1):
            raise PreconditionViolated(f"edge ({u},{v}) does not cross the bipartition")
    k, dmax = t.k, t.max_degree()
    if k <= 6 * dmax:
        raise PreconditionViolated("needs k > 6*max_degree(t)")
    threshold = (Fraction(2, 3) - Fraction(1, 6 * dmax)) * k
    if _min_degree_without(g, x) < threshold:
        raise PreconditionViolated("min degree of g - x below (2/3 - 1/(6*max_degree))k")
    for s in (s1, s2):
        if sum(1 for h in g.neighbors(x) if h in s) < dmax:
            raise PreconditionViolated("x lacks max_degree(t) neighbours in a side")
    eo = even_odd_split(t)
    r = eo.root
    rv = t.rooted(r)
    side_sets = {1: s1.as_set(), 2: s2.as_set()}
    class_of: dict[int, int] = {}
    for idx in eo.class1:
        class_of[idx] = 1
    for idx in eo.class2:
        class_of[idx] = 2
    comp_of_vertex: dict[int, int] = {}
    for ci, comp in enumerate(eo.components):
        for v in comp:
            comp_of_vertex[v] = ci

    def pool_for(w: int) -> frozenset:
        j = class_of[comp_of_vertex[w]]
        if rv.depth[w] % 2 == 1:
            return side_sets[j]
        return side_sets[3 - j]

    phi = {r: x}
    used = {x}
    placed = 1 + _greedy_subtree(
        g, t, frozenset(range(t.n)), r, phi, used, pool_for, "bipartite_apex"
    )
    # class discipline is structural; re-check it rather than trusting the pools
    for w in range(t.n):
        if w == r:
            continue
        j = class_of[comp_of_vertex[w]]
        want = side_sets[j] if rv.depth[w] % 2 == 1 else side_sets[3 - j]
        if phi[w] not in want:
            raise AssertionError("internal: parity discipline violated")
    return _certify_found(g, t, phi, placed)


# ---------------------------------------------------------------------------
# Embedding via an escape path


def embed_via_path(
    g: Graph,
    x: int,
    a_set,
    b1_set,
    b2_set,
    a: int,
    b: int,
    t: Tree,
    slack: int = 64,
    eps: Fraction = Fraction(1, 48),
    path_seed: int = 0,
) -> EmbedOutcome:
    """Embed by routing the heavy branch along a path through pool A and
    escaping over the bridge edge ab into pool B2.

    When the components of T - separator can be regrouped into two directly
    embeddable forests the procedure short-circuits to the two-pool apex
    split.  Otherwise it walks the heavy path, reserves connector vertices,
    requests a path of admissible length inside A, and embeds branch by
    branch.  Raises EmbedNotFound with the failing stage; that is never a
    proof of non-containment.
    """
    A = as_vertex_set(a_set, g.n)
    B1 = as_vertex_set(b1_set, g.n)
    B2 = as_vertex_set(b2_set, g.n)
    k, dmax = t.k, t.max_degree()
    if A.as_set() & B1.as_set() or A.as_set() & B2.as_set():
        raise PreconditionViolated("A must be disjoint from B1 and B2")
    if x in A or x in B1 or x in B2 or x in (a, b):
        raise PreconditionViolated("x must avoid the pools and the bridge")
    if not g.has_edge(a, b):
        raise PreconditionViolated("bridge ab must be an edge")
    threshold = (Fraction(2, 3) - eps) * k
    for s in (A, B1, B2):
        if g.min_degree_within(s.members) < threshold:
            raise PreconditionViolated("pool min degree below (2/3 - eps)k")
    if sum(1 for h in g.neighbors(x) if h in A) < dmax:
        raise PreconditionViolated("x lacks neighbours in A")
    if sum(1 for h in g.neighbors(x) if h in B1) < dmax:
        raise PreconditionViolated("x lacks neighbours in B1")
    if g.deg_within(a, A.as_set()) < 2 * dmax:
        raise PreconditionViolated("a is not in the 2*max_degree periphery of A")
    if g.deg_within(b, B2.as_set()) < 2 * dmax:
        raise PreconditionViolated("b is not in the 2*max_degree periphery of B2")

    r = balanced_separator_vertex(t)
    comps = sorted(
        ( _comp_vertices(t, r, w) for w in t.neighbors(r) ),
        key=lambda c: (-len(c), c),
    )

    # splittable short-circuit: direct degree feasibility of a two-pool split
    degA = g.min_degree_within(A.members)
    degB1 = g.min_degree_within(B1.members)
    sizes = [len(c) for c in comps]
    pick = _subset_in_window(sizes, k - degB1, degA)
    if pick is not None:
        f1 = frozenset(v for i in pick for v in comps[i]) | {r}
        f2 = (frozenset(range(t.n)) - f1) | {r}
        phi = {r: x}
        used = {x}
        placed = 1
        pa, pb = A.as_set(), B1.as_set()
        placed += _greedy_subtree(g, t, f1, r, phi, used, lambda _: pa, "split_A")
        placed += _greedy_subtree(g, t, f2, r, phi, used, lambda _: pb, "split_B1")
        return _certify_found(g, t, phi, placed)

    if len(comps) < 2:
        raise EmbedNotFound("structure", "separator left a single component")
    s1 = comps[0]

    # heavy path: always descend into the largest remaining subtree
    rv = t.rooted(r)
    p_path = [r]
    nxt = next(w for w in t.neighbors(r) if w in set(s1))
    p_path.append(nxt)
    while rv.children[p_path[-1]]:
        p_path.append(
            max(rv.children[p_path[-1]], key=lambda c: (rv.subtree_size[c], -c))
        )
    sub_sz = [rv.subtree_size[v] for v in p_path]
    deep = [i for i in range(1, len(p_path)) if 6 * sub_sz[i] > k]
    if not deep:
        raise EmbedNotFound("structure", "heavy branch never exceeds k/6")
    ell = max(deep)

    # reserved connector vertices
    nx_a = [h for h in g.neighbors(x) if h in A and h != a]
    if len(nx_a) < 2:
        raise EmbedNotFound("reserve", "x needs two spare neighbours in A")
    y, y_prime = nx_a[0], nx_a[1]
    y_b = [h for h in g.neighbors(x) if h in B1 and h != b][:dmax]
    z_a = [h for h in g.neighbors(a) if h in A and h not in (y, y_prime)][: dmax + 1]
    z_b = [h for h in g.neighbors(b) if h in B2 and h not in y_b][:dmax]
    if len(y_b) < dmax or len(z_a) < dmax + 1 or len(z_b) < dmax:
        raise EmbedNotFound("reserve", "not enough connector vertices")
    a_prime = z_a[0]
    a_pool = (A.as_set() - set(z_a) - {a, y}) | {a_prime, y_prime}

    hi_len = min(ell + slack, len(p_path) - 1 - 3)
    if hi_len < ell + 1:
        raise EmbedNotFound("tree_path", "heavy path too short for the length window")
    sub_a, map_a = g.induced(a_pool)
    inv_a = {ov: i for i, ov in enumerate(map_a)}
    found_path = path_in_range(
        sub_a, inv_a[y_prime], inv_a[a_prime], ell, hi_len - ell, seed=path_seed
    )
    if found_path.path is None:
        raise EmbedNotFound("host_path", "no admissible path inside A")
    host_path = [map_a[i] for i in found_path.path]
    L = len(host_path) - 1

    # the proof's running-room invariant: what S1 sends into A stays small
    if Fraction(len(s1) - sub_sz[L + 3]) > (Fraction(1, 3) - 3 * eps) * k:
        raise EmbedNotFound(
            "budget",
            "heavy-branch load into A exceeds (1/3 - 3*eps)k",
        )

    phi = {r: x}
    used = {x}
    placed = 1
    for i, hv in enumerate(host_path, start=1):
        phi[p_path[i]] = hv
        used.add(hv)
        placed += 1
    phi[p_path[L + 2]] = a
    phi[p_path[L + 3]] = b
    used.update((a, b))
    placed += 2

    path_set = set(host_path)
    pool_a_inner = a_pool - path_set
    for i in range(1, L + 2):
        branch = _branch_vertices(rv, p_path[i], p_path[i + 1])
        placed += _greedy_subtree(
            g, t, branch, p_path[i], phi, used, lambda _: pool_a_inner, "branches_A"
        )
    branch = _branch_vertices(rv, p_path[L + 2], p_path[L + 3])
    all_a = A.as_set()
    a_minus_y = all_a - {y}  # y stays reserved as the entry point for S2
    placed += _greedy_subtree(
        g, t, branch, p_path[L + 2], phi, used, lambda _: a_minus_y, "branch_a"
    )

    tail = frozenset(rv.subtree_vertices(p_path[L + 3]))
    pool_b2 = (B2.as_set() - set(y_b)) | {b}
    placed += _greedy_subtree(g, t, tail, p_path[L + 3], phi, used, lambda _: pool_b2, "tail_B2")

    s2 = comps[1]
    u2 = next(w for w in t.neighbors(r) if w in set(s2))
    if y in used:
        raise EmbedNotFound("s2", "reserved neighbour y was consumed")
    phi[u2] = y
    used.add(y)
    placed += 1 + _greedy_subtree(
        g, t, frozenset(s2), u2, phi, used, lambda _: all_a, "s2_A"
    )
    rest = frozenset(range(t.n)) - frozenset(phi)
    if rest:
        all_b1 = B1.as_set()
        placed += _greedy_subtree(
            g, t, rest | {r}, r, phi, used, lambda _: all_b1, "rest_B1"
        )
    return _certify_found(g, t, phi, placed)


def _comp_vertices(t: Tree, removed: int, seed: int) -> tuple[int, ...]:
    """Vertices of the component of t - removed containing seed."""
    out = []
    stack = [seed]
    seen = {removed, seed}
    while stack:
        v = stack.pop()
        out.append(v)
        for w in t.neighbors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return tuple(sorted(out))


def _branch_vertices(rv, p_i: int, p_next: int) -> frozenset:
    """Subtree of p_i minus the subtree of its heavy child p_next."""
    keep = set(rv.subtree_vertices(p_i)) - set(rv.subtree_vertices(p_next))
    return frozenset(keep)


def _subset_in_window(sizes: list[int], lo, hi) -> Optional[tuple[int, ...]]:
    """Indices whose sizes sum into [lo, hi], preferring few/early components."""
    if hi < max(lo, 0):
        return None
    n = len(sizes)
    best = None
    for mask in range(1 << n):
        total = sum(sizes[i] for i in range(n) if mask >> i & 1)
        if lo <= total <= hi:
            cand = tuple(i for i in range(n) if mask >> i & 1)
            if best is None or (len(cand), cand) < (len(best), best):
                best = cand
    return best


# ---------------------------------------------------------------------------
# Matching-forest embedding


def matching_forest_embed(
    g: Graph,
    host_core,
    portals: list,
    t: Tree,
    budget: int = 2_000_000,
    reserve: int = 0,
) -> EmbedOutcome:
    """Embed via a matching/tree/forest edge partition of t.

    The central tree lands in the core with its matched endpoints pinned onto
    portal core-endpoints (backtracking over the portal assignment, each
    placement delegated to the pinned oracle); matching edges map onto portal
    edges; each forest component is greedily grown inside its own external
    pool from the portal's far endpoint.

    portals: list of ((core_vertex, far_vertex), external_pool) entries where
    the pair is a host edge and far_vertex lies in the pool.
    """
    core = as_vertex_set(host_core, g.n)
    k = t.k
    need_out = -(-k // 2)
    parsed = []
    seen_pool: set = set()
    for (u, w), pool in portals:
        pv = as_vertex_set(pool, g.n)
        if u not in core or w in core:
            raise PreconditionViolated("portal must run from the core outward")
        if not g.has_edge(u, w):
            raise PreconditionViolated(f"portal ({u},{w}) is not an edge")
        if w not in pv:
            raise PreconditionViolated("portal far endpoint must lie in its pool")
        if pv.as_set() & core.as_set():
            raise PreconditionViolated("external pool intersects the core")
        if pv.as_set() & seen_pool:
            raise PreconditionViolated("external pools overlap")
        seen_pool |= pv.as_set()
        if g.min_degree_within(pv.members) < need_out:
            raise PreconditionViolated("external pool min degree below ceil(k/2)")
        parsed.append(((u, w), pv))
    if g.min_degree_within(core.members) < need_out + reserve:
        raise PreconditionViolated("core min degree below ceil(k/2) + reserve")
    msf = msf_decomposition(t)
    mu = len(msf.matching)
    if len(parsed) < mu:
        raise PreconditionViolated(f"need at least {mu} portals, got {len(parsed)}")

    core_graph, core_map = g.induced(core.members)
    core_inv = {ov: i for i, ov in enumerate(core_map)}
    s_verts = list(msf.s_vertices)
    s_idx = {v: i for i, v in enumerate(s_verts)}
    s_edges = [
        (s_idx[u], s_idx[v]) for u, v in t.edges if u in s_idx and v in s_idx
    ]
    s_tree = Tree(len(s_verts), s_edges)
    matched = sorted(msf.matching)

    nodes_total = 0
    for assignment in permutations(range(len(parsed)), mu):
        pins = Embedding.from_dict(
            {
                s_idx[matched[q][0]]: core_inv[parsed[assignment[q]][0][0]]
                for q in range(mu)
            }
        )
        out = brute_force_embed(core_graph, s_tree, pins, budget=budget - nodes_total)
        nodes_total += out.nodes_explored
        if out.status == "budget_exhausted" or nodes_total >= budget:
            raise EmbedNotFound("s_placement", "portal-assignment backtracking budget spent")
        if out.status != "found":
            continue
        phi = {s_verts[i]: core_map[h] for i, h in out.embedding.mapping}
        used = set(phi.values())
        placed = len(phi)
        ok = True
        for q in range(mu):
            (u, w), pv = parsed[assignment[q]]
            f_end = matched[q][1]
            phi[f_end] = w
            used.add(w)
            placed += 1
            comp = next(c for c in msf.f_components if f_end in c)
            pool = pv.as_set()
            try:
                placed += _greedy_subtree(
                    g, t, frozenset(comp), f_end, phi, used, lambda _: pool, "forest"
                )
            except EmbedNotFound:
                ok = False
                break
        if ok and len(phi) == t.n:
            return _certify_found(g, t, phi, nodes_total + placed)
    raise EmbedNotFound("s_placement", "no portal assignment admits the central tree")
