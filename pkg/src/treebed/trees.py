"""Trees and the splitting procedures used to break them into embeddable pieces.

Every decomposition returns a record that re-checks its certified bounds on
construction, so a successful return *is* the certificate.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import log
from typing import Iterable, Optional

from .errors import InternalInvariantError, PreconditionViolated
from .graph import VertexSet


class Tree:
    """Connected acyclic graph on vertices 0..n-1, optionally rooted."""

    __slots__ = ("n", "edges", "root", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], root: Optional[int] = None):
        self.n = n
        es = sorted(tuple(sorted((int(u), int(v)))) for u, v in edges)
        if len(es) != max(n - 1, 0):
            raise PreconditionViolated(f"tree on {n} vertices needs {n - 1} edges, got {len(es)}")
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in es:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise PreconditionViolated(f"bad tree edge ({u},{v})")
            adj[u].append(v)
            adj[v].append(u)
        self.edges: tuple[tuple[int, int], ...] = tuple(es)
        self._adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        if n > 0:
            seen = [False] * n
            dq = deque([0])
            seen[0] = True
            cnt = 1
            while dq:
                v = dq.popleft()
                for w in self._adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        cnt += 1
                        dq.append(w)
            if cnt != n:
                raise PreconditionViolated("edge list is not connected (not a tree)")
        if root is not None and not (0 <= root < n):
            raise PreconditionViolated(f"root {root} out of range")
        self.root = root

    # -- accessors -----------------------------------------------------------

    @property
    def k(self) -> int:
        """Edge count; trees are conventionally sized by it."""
        return max(self.n - 1, 0)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def rooted(self, r: int) -> "RootedView":
        return RootedView(self, r)

    def with_root(self, r: Optional[int]) -> "Tree":
        return Tree(self.n, self.edges, root=r)

    def __eq__(self, other) -> bool:
        return isinstance(other, Tree) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Tree(n={self.n}, root={self.root})"

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> str:
        """Canonical JSON: sorted edge list, compact separators."""
        payload = {
            "n": self.n,
            "edges": [list(e) for e in self.edges],
            "root": self.root,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Tree":
        data = json.loads(text)
        return cls(int(data["n"]), [tuple(e) for e in data["edges"]], data.get("root"))


class RootedView:
    """Parent/children/subtree bookkeeping of a tree rooted at a chosen vertex."""

    __slots__ = ("tree", "root", "parent", "children", "subtree_size", "depth", "order")

    def __init__(self, tree: Tree, root: int):
        if not (0 <= root < tree.n):
            raise PreconditionViolated(f"root {root} out of range")
        self.tree = tree
        self.root = root
        n = tree.n
        parent = [-1] * n
        depth = [0] * n
        order = []
        dq = deque([root])
        seen = [False] * n
        seen[root] = True
        while dq:
            v = dq.popleft()
            order.append(v)
            for w in tree.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    depth[w] = depth[v] + 1
                    dq.append(w)
        children: list[list[int]] = [[] for _ in range(n)]
        for v in order[1:]:
            children[parent[v]].append(v)
        size = [1] * n
        for v in reversed(order):
            if parent[v] >= 0:
                size[parent[v]] += size[v]
        self.parent = tuple(parent)
        self.children = tuple(tuple(c) for c in children)
        self.subtree_size = tuple(size)
        self.depth = tuple(depth)
        self.order = tuple(order)
        if size[root] != n:
            raise InternalInvariantError("subtree sizes inconsistent")

    def subtree_vertices(self, v: int) -> tuple[int, ...]:
        out = []
        stack = [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(self.children[u])
        return tuple(sorted(out))


# ---------------------------------------------------------------------------
# Small helpers


def _component_vertices(t: Tree, removed: int) -> list[tuple[int, ...]]:
    """Connected components of T - removed, each sorted, ordered by least vertex."""
    seen = [False] * t.n
    seen[removed] = True
    comps = []
    for s in range(t.n):
        if seen[s]:
            continue
        comp = []
        dq = deque([s])
        seen[s] = True
        while dq:
            v = dq.popleft()
            comp.append(v)
            for w in t.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    dq.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def even_odd_sets(t: Tree, v: int) -> tuple[VertexSet, VertexSet]:
    """Vertices at even (excluding v) and odd distance from v."""
    if not (0 <= v < t.n):
        raise PreconditionViolated("vertex out of range")
    rv = t.rooted(v)
    even = [u for u in range(t.n) if u != v and rv.depth[u] % 2 == 0]
    odd = [u for u in range(t.n) if rv.depth[u] % 2 == 1]
    return VertexSet(even, t.n), VertexSet(odd, t.n)


def bipartition_classes(t: Tree) -> tuple[VertexSet, VertexSet]:
    """The unique 2-colouring; both classes hold at least k/max_degree vertices."""
    if t.n == 0:
        return VertexSet((), 0), VertexSet((), 0)
    rv = t.rooted(0)
    c0 = [v for v in range(t.n) if rv.depth[v] % 2 == 0]
    c1 = [v for v in range(t.n) if rv.depth[v] % 2 == 1]
    dmax = t.max_degree()
    if dmax:
        floor = Fraction(t.k, dmax)
        if len(c0) < floor or len(c1) < floor:
            raise InternalInvariantError("bipartition class fell below k/max_degree")
    return VertexSet(c0, t.n), VertexSet(c1, t.n)


def balanced_separator_vertex(t: Tree) -> int:
    """A vertex whose removal leaves components of at most n/2 vertices.

    Found by walking from vertex 0 toward the heaviest component; ties break
    toward the smaller id so results are reproducible.
    """
    if t.n < 1:
        raise PreconditionViolated("empty tree")
    if t.n == 1:
        return 0
    rv = t.rooted(0)
    v = 0
    while True:
        heaviest = None
        for c in rv.children[v]:
            if 2 * rv.subtree_size[c] > t.n and (
                heaviest is None or rv.subtree_size[c] > rv.subtree_size[heaviest]
            ):
                heaviest = c
        if heaviest is None:
            # parent-side component is fine too: its size is n - subtree_size(v)
            if v != 0 and 2 * (t.n - rv.subtree_size[v]) > t.n:
                raise InternalInvariantError("separator walk overshot")
            return v
        v = heaviest


# ---------------------------------------------------------------------------
# Sum partitions


def _check_sum_partition_input(a: list[int], ell: int) -> None:
    if ell < 1:
        raise PreconditionViolated("ell must be positive")
    if any(x < 0 for x in a):
        raise PreconditionViolated("sequence entries must be nonnegative")
    half = -(-ell // 2)
    if any(x > half for x in a):
        raise PreconditionViolated(f"entry exceeds ceil(ell/2) = {half}")
    if sum(a) > ell:
        raise PreconditionViolated(f"sum {sum(a)} exceeds ell = {ell}")


def sum_partition_two(a: list[int], ell: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Index partition {J1, J2} with sum(J2) <= sum(J1) <= floor(2*ell/3).

    Entries may be zero (they land in J2).  Needs ell >= 2 whenever the
    sequence sums to something positive: with ell = 1 the only admissible
    nonzero sequence is [1], and no split can keep the larger side at
    floor(2/3) = 0.  Deterministic: big items first, exhaustive backtrack for
    m <= 20 if the greedy certificate fails.
    """
    a = [int(x) for x in a]
    _check_sum_partition_input(a, ell)
    total = sum(a)
    if total > 0 and ell < 2:
        raise PreconditionViolated("ell must be at least 2 for a nonzero sequence")
    cap = (2 * ell) // 3

    def finish(j1: list[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        s1 = set(j1)
        j2 = [i for i in range(len(a)) if i not in s1]
        sum1, sum2 = sum(a[i] for i in j1), sum(a[i] for i in j2)
        if sum2 > sum1:
            j1, j2 = j2, j1
            sum1, sum2 = sum2, sum1
        if not (sum2 <= sum1 <= cap):
            raise InternalInvariantError("two-part split certificate failed")
        return tuple(sorted(j1)), tuple(sorted(j2))

    order = sorted(range(len(a)), key=lambda i: (-a[i], i))
    # big item alone if it already reaches the lower window edge
    lo = total - cap
    if order and a[order[0]] >= lo:
        return finish([order[0]])
    j1: list[int] = []
    s = 0
    for i in order:
        if s >= lo:
            break
        j1.append(i)
        s += a[i]
    try:
        return finish(j1)
    except InternalInvariantError:
        pass
    if len(a) <= 20:
        for pick in product((0, 1), repeat=len(a)):
            j1 = [i for i in range(len(a)) if pick[i]]
            sum1 = sum(a[i] for i in j1)
            sum2 = total - sum1
            if max(sum1, sum2) <= cap:
                return finish(j1)
        raise PreconditionViolated("no admissible two-part split exists")
    raise InternalInvariantError("greedy two-part split failed beyond the exhaustive cap")


def sum_partition_three(
    a: list[int], ell: int
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Index partition {I1, I2, I3} with sums descending, all <= ceil(ell/2), |I3| <= 1."""
    a = [int(x) for x in a]
    _check_sum_partition_input(a, ell)
    cap = -(-ell // 2)
    m = len(a)

    def finish(i1, i2, i3):
        parts = [sorted(i1), sorted(i2), sorted(i3)]
        sums = [sum(a[i] for i in p) for p in parts]
        # sums descending; on ties park the smallest-cardinality part last
        paired = sorted(zip(sums, parts), key=lambda t: (-t[0], -len(t[1]), t[1]))
        sums = [p[0] for p in paired]
        parts = [p[1] for p in paired]
        if len(parts[2]) > 1 or sums[0] > cap:
            raise InternalInvariantError("three-part split certificate failed")
        return tuple(parts[0]), tuple(parts[1]), tuple(parts[2])

    order = sorted(range(m), key=lambda i: (-a[i], i))
    # try plain two-bin greedy with I3 empty, then with each item parked alone
    candidates: list[tuple[list[int], list[int], list[int]]] = []
    b1: list[int] = []
    b2: list[int] = []
    s1 = s2 = 0
    for i in order:
        if s1 <= s2:
            b1.append(i)
            s1 += a[i]
        else:
            b2.append(i)
            s2 += a[i]
    candidates.append((b1, b2, []))
    for solo in order:
        b1, b2 = [], []
        s1 = s2 = 0
        for i in order:
            if i == solo:
                continue
            if s1 <= s2:
                b1.append(i)
                s1 += a[i]
            else:
                b2.append(i)
                s2 += a[i]
        if a[solo] <= min(s1, s2):
            candidates.append((b1, b2, [solo]))
    for cand in candidates:
        try:
            return finish(*cand)
        except InternalInvariantError:
            continue
    if m <= 13:
        for assign in product((0, 1, 2), repeat=m):
            parts = [[i for i in range(m) if assign[i] == j] for j in range(3)]
            if len(parts[2]) > 1:
                continue
            try:
                return finish(*parts)
            except InternalInvariantError:
                continue
        raise PreconditionViolated("no admissible three-part split exists")
    raise InternalInvariantError("greedy three-part split failed beyond the exhaustive cap")


# ---------------------------------------------------------------------------
# Forest splits around a separator vertex


def _whole_component_check(t: Tree, pivot: int, part: frozenset) -> bool:
    comps = _component_vertices(t, pivot)
    for comp in comps:
        inside = sum(1 for v in comp if v in part)
        if inside not in (0, len(comp)):
            return False
    return True


@dataclass(frozen=True)
class TwoForestSplit:
    """T - pivot grouped into two forests with k/2 <= |f1| <= floor(2k/3)."""

    tree: Tree
    pivot: int
    f1: VertexSet
    f2: VertexSet

    def __post_init__(self):
        t, k = self.tree, self.tree.k
        a, b = self.f1.as_set(), self.f2.as_set()
        if a & b or len(a) + len(b) != t.n - 1 or self.pivot in a | b:
            raise InternalInvariantError("forests do not partition T - pivot")
        if not (_whole_component_check(t, self.pivot, a) and _whole_component_check(t, self.pivot, b)):
            raise InternalInvariantError("forest breaks a component of T - pivot")
        if not (Fraction(k, 2) <= len(a) <= (2 * k) // 3):
            raise InternalInvariantError(f"|f1| = {len(a)} outside [k/2, floor(2k/3)]")


@dataclass(frozen=True)
class ThreeForestSplit:
    """T - pivot grouped into three forests, each <= ceil(k/2), third a single component."""

    tree: Tree
    pivot: int
    f1: VertexSet
    f2: VertexSet
    f3: VertexSet

    def __post_init__(self):
        t, k = self.tree, self.tree.k
        sets = [self.f1.as_set(), self.f2.as_set(), self.f3.as_set()]
        union = set()
        for s in sets:
            if union & s:
                raise InternalInvariantError("three-forest parts overlap")
            union |= s
        if len(union) != t.n - 1 or self.pivot in union:
            raise InternalInvariantError("three-forest parts do not partition T - pivot")
        cap = -(-k // 2)
        if any(len(s) > cap for s in sets):
            raise InternalInvariantError("a three-forest part exceeds ceil(k/2)")
        for s in sets:
            if not _whole_component_check(t, self.pivot, s):
                raise InternalInvariantError("three-forest part breaks a component")
        comps = [c for c in _component_vertices(t, self.pivot) if set(c) <= sets[2]]
        if len(sets[2]) > 0 and len(comps) != 1:
            raise InternalInvariantError("f3 must be empty or a single component")


def split_two_forests(t: Tree) -> TwoForestSplit:
    """Group the components of T - separator into two forests of balanced size.

    Needs n >= 3: a single-edge tree leaves one orphan vertex that cannot
    satisfy |f1| <= floor(2/3).
    """
    if t.n < 3:
        raise PreconditionViolated("two-forest split needs at least 3 vertices")
    pivot = balanced_separator_vertex(t)
    comps = _component_vertices(t, pivot)
    sizes = [len(c) for c in comps]
    j1, j2 = sum_partition_two(sizes, t.k)
    f1 = [v for i in j1 for v in comps[i]]
    f2 = [v for i in j2 for v in comps[i]]
    return TwoForestSplit(t, pivot, VertexSet(f1, t.n), VertexSet(f2, t.n))


def split_three_forests(t: Tree) -> ThreeForestSplit:
    """Group the components of T - separator into three small forests."""
    if t.n < 2:
        raise PreconditionViolated("need at least 2 vertices")
    pivot = balanced_separator_vertex(t)
    comps = _component_vertices(t, pivot)
    sizes = [len(c) for c in comps]
    i1, i2, i3 = sum_partition_three(sizes, t.k)
    fs = [
        VertexSet([v for i in idx for v in comps[i]], t.n)
        for idx in (i1, i2, i3)
    ]
    return ThreeForestSplit(t, pivot, fs[0], fs[1], fs[2])


# ---------------------------------------------------------------------------
# Subtree splitting at a threshold, and the chain decomposition built on it


@dataclass(frozen=True)
class SubtreePiece:
    """A subtree given by its vertices and edges (kept separate so single-vertex
    pieces remain representable)."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.vertices)


def _piece_from(vs: Iterable[int], t: Tree) -> SubtreePiece:
    vset = frozenset(vs)
    es = tuple(e for e in t.edges if e[0] in vset and e[1] in vset)
    return SubtreePiece(tuple(sorted(vset)), es)


def _shave(t: Tree, rooted: RootedView, lo: int) -> tuple[frozenset, int]:
    """Split-off subtree: descend to a deepest vertex whose weight first drops
    below `lo` in all children, then absorb child subtrees until the total
    (with the shared vertex) reaches lo.  Returns (vertices incl. shared, shared).
    """
    u = rooted.root
    while True:
        nxt = None
        for c in rooted.children[u]:
            if rooted.subtree_size[c] >= lo:
                nxt = c
                break
        if nxt is None:
            break
        u = nxt
    if rooted.subtree_size[u] < lo:
        raise InternalInvariantError("shave threshold exceeds the whole tree")
    verts = {u}
    total = 1
    for c in rooted.children[u]:
        if total >= lo:
            break
        verts.update(rooted.subtree_vertices(c))
        total += rooted.subtree_size[c]
    if total < lo:
        raise InternalInvariantError("absorbing all children missed the threshold")
    return frozenset(verts), u


def subtree_split(t: Tree, v: int, m: int) -> tuple[SubtreePiece, SubtreePiece]:
    """Two subtrees sharing one vertex: S1 containing v, and S2 with m..3m vertices."""
    if m < 1:
        raise PreconditionViolated("m must be positive")
    if 3 * m > t.n:
        raise PreconditionViolated("need m <= n/3")
    if not (0 <= v < t.n):
        raise PreconditionViolated("v out of range")
    rooted = t.rooted(v)
    s2_verts, shared = _shave(t, rooted, m)
    if not (m <= len(s2_verts) <= 3 * m):
        raise InternalInvariantError("shaved subtree missed [m, 3m]")
    s2 = _piece_from(s2_verts, t)
    s1_verts = (set(range(t.n)) - s2_verts) | {shared}
    s1 = _piece_from(s1_verts, t)
    if v not in s1.vertices:
        raise InternalInvariantError("v escaped the kept side")
    if set(s1.edges) & set(s2.edges) or len(s1.edges) + len(s2.edges) != t.k:
        raise InternalInvariantError("edge sets fail to partition E(T)")
    if len(set(s1.vertices) & set(s2.vertices)) != 1:
        raise InternalInvariantError("pieces share more than one vertex")
    return s1, s2


@dataclass(frozen=True)
class ChainSplit:
    """A core subtree of exact size m plus at most log_{3/2} n hanging subtrees,
    each meeting the core in exactly one vertex."""

    tree: Tree
    s0: SubtreePiece
    others: tuple[SubtreePiece, ...]
    attach_points: tuple[int, ...]

    def __post_init__(self):
        t = self.tree
        all_edges = sorted(self.s0.edges + tuple(e for p in self.others for e in p.edges))
        if tuple(all_edges) != t.edges:
            raise InternalInvariantError("chain pieces fail to partition E(T)")
        if len(self.others) != len(self.attach_points):
            raise InternalInvariantError("attach point per hanging subtree required")
        s0v = set(self.s0.vertices)
        for piece, ap in zip(self.others, self.attach_points):
            inter = s0v & set(piece.vertices)
            if inter != {ap}:
                raise InternalInvariantError("hanging subtree must meet the core exactly once")
        if t.n >= 2 and len(self.others) > log(t.n) / log(1.5):
            raise InternalInvariantError("hanging subtree count exceeded log_{3/2} n")


def chain_split(t: Tree, m: int) -> ChainSplit:
    """Carve T down to a core of exactly m vertices by repeatedly shaving off
    subtrees, then merge the shavings into connected hanging pieces."""
    if not (1 <= m <= t.n):
        raise PreconditionViolated("need 1 <= m <= n")
    core = frozenset(range(t.n))
    shaved_edges: list[tuple[int, int]] = []
    rounds = 0
    while len(core) > m:
        rounds += 1
        if rounds > 4 * t.n:
            raise InternalInvariantError("chain split failed to converge")
        d = len(core) - m
        lo = max(2, d // 2 + 1)
        sub_edges = [e for e in t.edges if e[0] in core and e[1] in core]
        relabel = {v: i for i, v in enumerate(sorted(core))}
        back = {i: v for v, i in relabel.items()}
        sub = Tree(len(core), [(relabel[u], relabel[v]) for u, v in sub_edges])
        rooted = sub.rooted(0)
        piece, shared = _shave(sub, rooted, lo)
        piece_orig = {back[i] for i in piece}
        shared_orig = back[shared]
        for u, v in sub_edges:
            if u in piece_orig and v in piece_orig:
                shaved_edges.append((u, v))
        core = core - frozenset(piece_orig - {shared_orig})
    # group shaved edges into connected pieces
    s0 = _piece_from(core, t)
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    for u, v in shaved_edges:
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[int, list[tuple[int, int]]] = {}
    for e in shaved_edges:
        groups.setdefault(find(e[0]), []).append(e)
    pieces = []
    attach = []
    for key in sorted(groups, key=lambda r: min(min(e) for e in groups[r])):
        es = tuple(sorted(groups[key]))
        vs = tuple(sorted({v for e in es for v in e}))
        pieces.append(SubtreePiece(vs, es))
        inter = set(vs) & set(core)
        if len(inter) != 1:
            raise InternalInvariantError("shaved piece meets the core more than once")
        attach.append(inter.pop())
    if len(s0) != m:
        raise InternalInvariantError("core size drifted from m")
    return ChainSplit(t, s0, tuple(pieces), tuple(attach))


# ---------------------------------------------------------------------------
# Even/odd component classes


@dataclass(frozen=True)
class EvenOddSplit:
    """Components of T - root split into two classes balancing even/odd counts.

    For each class j the quantity
        sum over components in the class of |even-distance vertices|
      + sum over the other components of |odd-distance vertices|
    stays at most (2/3 - 1/(3*max_degree)) * n + 1/2.
    """

    tree: Tree
    root: int
    components: tuple[tuple[int, ...], ...]
    class1: tuple[int, ...]
    class2: tuple[int, ...]
    even_counts: tuple[int, ...]
    odd_counts: tuple[int, ...]

    def bound(self) -> Fraction:
        d = self.tree.max_degree()
        return (Fraction(2, 3) - Fraction(1, 3 * d)) * self.tree.n + Fraction(1, 2)

    def class_load(self, j: int) -> int:
        inside = set(self.class1 if j == 1 else self.class2)
        load = 0
        for i in range(len(self.components)):
            load += self.even_counts[i] if i in inside else self.odd_counts[i]
        return load

    def __post_init__(self):
        t = self.tree
        if set(self.class1) | set(self.class2) != set(range(len(self.components))) or set(
            self.class1
        ) & set(self.class2):
            raise InternalInvariantError("classes do not partition the components")
        expected = _component_vertices(t, self.root)
        if tuple(expected) != self.components:
            raise InternalInvariantError("component list mismatch")
        rv = t.rooted(self.root)
        for i, comp in enumerate(self.components):
            ev = sum(1 for v in comp if rv.depth[v] % 2 == 0)
            od = sum(1 for v in comp if rv.depth[v] % 2 == 1)
            if ev != self.even_counts[i] or od != self.odd_counts[i]:
                raise InternalInvariantError("even/odd counts drifted")
        b = self.bound()
        for j in (1, 2):
            if self.class_load(j) > b:
                raise InternalInvariantError(f"class {j} load exceeds the certified bound")


def even_odd_split(t: Tree) -> EvenOddSplit:
    """Pick a root and class assignment balancing even/odd vertex counts.

    The root comes from a fixed-point walk: repeatedly step to the neighbour
    whose hanging component has the largest even/odd imbalance (ties toward
    the smaller id) until the walk bounces between two vertices, then keep
    the endpoint whose own edge imbalance is the smaller of the pair.
    The imbalance sequence over the root's neighbours is split two ways and
    the lighter halves are assigned per class.
    """
    if t.n < 2:
        raise PreconditionViolated("need at least 2 vertices")

    rv_cache: dict[int, RootedView] = {}

    def rooted(u: int) -> RootedView:
        if u not in rv_cache:
            rv_cache[u] = t.rooted(u)
        return rv_cache[u]

    def imbalance(u: int, w: int) -> int:
        """|even - odd| counted from u over the component of T-u holding w."""
        rv = rooted(u)
        diff = 0
        stack = [w]
        while stack:
            x = stack.pop()
            diff += 1 if rv.depth[x] % 2 == 0 else -1
            stack.extend(rv.children[x])
        return abs(diff)

    def best_neighbor(u: int) -> int:
        return max(t.neighbors(u), key=lambda w: (imbalance(u, w), -w))

    v_prev = 0
    v_cur = best_neighbor(v_prev)
    for _ in range(2 * t.n + 2):
        v_next = best_neighbor(v_cur)
        if v_next == v_prev:
            break
        v_prev, v_cur = v_cur, v_next
    else:
        raise InternalInvariantError("fixed-point walk failed to converge")
    u, v = v_prev, v_cur
    if imbalance(u, v) > imbalance(v, u):
        u, v = v, u
    root = u

    comps = _component_vertices(t, root)
    rv = rooted(root)
    even_counts = []
    odd_counts = []
    diffs = []
    bigger_even = []
    for comp in comps:
        ev = sum(1 for x in comp if rv.depth[x] % 2 == 0)
        od = len(comp) - ev
        even_counts.append(ev)
        odd_counts.append(od)
        diffs.append(abs(ev - od))
        bigger_even.append(ev >= od)
    ell = 1 + sum(diffs)
    d1, d2 = sum_partition_two(diffs, ell)
    in_d1 = set(d1)
    class1 = tuple(sorted(i for i in range(len(comps)) if (i in in_d1) == bigger_even[i]))
    class2 = tuple(sorted(set(range(len(comps))) - set(class1)))
    return EvenOddSplit(
        t,
        root,
        tuple(comps),
        class1,
        class2,
        tuple(even_counts),
        tuple(odd_counts),
    )


# ---------------------------------------------------------------------------
# Matching / subtree / forest decomposition


@dataclass(frozen=True)
class MSFDecomposition:
    """Edge partition of T into a matching, a central tree S, and an outer forest F.

    Always certified: S/F disjoint (P1), matching crosses S to F (P2), matched
    S-endpoints share a bipartition class (P5), their spanning subtree in S is
    small (P6), F-components stay under ceil(k/2), and the three edge sets
    partition E(T).  The |S| <= ceil(k/2) half of P3 is asymptotic and only
    asserted above `s_bound_min_k`; below it the measured size is recorded.
    """

    tree: Tree
    root: int
    matching: tuple[tuple[int, int], ...]  # (s_end, f_end) pairs
    s_vertices: tuple[int, ...]
    f_components: tuple[tuple[int, ...], ...]
    escape: tuple[tuple[int, int], ...]  # matched s-vertex -> its escape child
    s_bound_min_k: int
    s_size: int = field(init=False, default=0)
    s_bound_checked: bool = field(init=False, default=False)

    def __post_init__(self):
        t, k = self.tree, self.tree.k
        sset = set(self.s_vertices)
        fset = {v for comp in self.f_components for v in comp}
        if sset & fset:
            raise InternalInvariantError("P1: S and F overlap")
        if sset | fset != set(range(t.n)):
            raise InternalInvariantError("S and F vertices must cover T")
        tree_edges = set(t.edges)
        for s_end, f_end in self.matching:
            if s_end not in sset or f_end not in fset:
                raise InternalInvariantError("P2: matching edge endpoints misplaced")
            if (min(s_end, f_end), max(s_end, f_end)) not in tree_edges:
                raise InternalInvariantError("matching pair is not a tree edge")
        seen = set()
        for e in self.matching:
            for v in e:
                if v in seen:
                    raise InternalInvariantError("matching repeats a vertex")
                seen.add(v)
        cap = -(-k // 2)
        for comp in self.f_components:
            if len(comp) > cap:
                raise InternalInvariantError("P3: an F-component exceeds ceil(k/2)")
        rv = t.rooted(self.root)
        matched_s = [e[0] for e in self.matching]
        parities = {rv.depth[v] % 2 for v in matched_s}
        if len(parities) > 1:
            raise InternalInvariantError("P5: matched S-endpoints span both classes")
        dmax = t.max_degree()
        if matched_s:
            span = _steiner_size(t, sset, matched_s)
            if span > dmax ** (4 * dmax + 1):
                raise InternalInvariantError("P6: spanning subtree of matched points too large")
        m_edges = {tuple(sorted(e)) for e in self.matching}
        s_edges = {e for e in t.edges if e[0] in sset and e[1] in sset}
        f_edges = {e for e in t.edges if e[0] in fset and e[1] in fset}
        if m_edges | s_edges | f_edges != set(t.edges) or (
            len(m_edges) + len(s_edges) + len(f_edges) != t.k
        ):
            raise InternalInvariantError("edge sets fail to partition E(T)")
        object.__setattr__(self, "s_size", len(sset))
        if k >= self.s_bound_min_k:
            if len(sset) > cap:
                raise InternalInvariantError("P3: |S| exceeds ceil(k/2) above the size threshold")
            object.__setattr__(self, "s_bound_checked", True)


def _steiner_size(t: Tree, allowed: set[int], terminals: list[int]) -> int:
    """Size of the minimal subtree of t[allowed] containing the terminals."""
    term = set(terminals)
    if not term:
        return 0
    sub_adj = {v: [w for w in t.neighbors(v) if w in allowed] for v in allowed}
    deg = {v: len(ws) for v, ws in sub_adj.items()}
    alive = set(allowed)
    leaves = deque(v for v in alive if deg[v] <= 1 and v not in term)
    while leaves:
        v = leaves.popleft()
        if v not in alive:
            continue
        alive.discard(v)
        for w in sub_adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] <= 1 and w not in term:
                    leaves.append(w)
    return len(alive)


def msf_decomposition(t: Tree, s_bound_min_k: Optional[int] = None) -> MSFDecomposition:
    """Partition E(T) into matching + central tree + outer forest.

    Root at a balanced separator; on even depth layers 2..4*max_degree pick,
    for every non-leaf vertex not already swallowed by an earlier pick, its
    escape child (largest subtree, ties to the smaller id), and cut the edge
    to it.  The cut subtrees form F, the cut edges the matching, the rest S.
    """
    if t.n < 2:
        raise PreconditionViolated("need at least 2 vertices")
    dmax = t.max_degree()
    if s_bound_min_k is None:
        s_bound_min_k = 8 * dmax ** (4 * dmax + 1)
    r = balanced_separator_vertex(t)
    rv = t.rooted(r)
    escape = {}
    for v in range(t.n):
        if rv.children[v]:
            escape[v] = max(rv.children[v], key=lambda c: (rv.subtree_size[c], -c))
    b_layer = [v for v in range(t.n) if rv.depth[v] % 2 == 0 and 2 <= rv.depth[v] <= 4 * dmax]
    shadow: set[int] = set()
    for v in b_layer:
        if v in escape:
            shadow.update(rv.subtree_vertices(escape[v]))
    x_set = [v for v in b_layer if v not in shadow]
    matched = [v for v in x_set if v in escape]
    f_comps = []
    f_all: set[int] = set()
    matching = []
    esc_pairs = []
    for v in sorted(matched):
        ev = escape[v]
        comp = rv.subtree_vertices(ev)
        f_comps.append(comp)
        f_all.update(comp)
        matching.append((v, ev))
        esc_pairs.append((v, ev))
    s_vertices = tuple(sorted(set(range(t.n)) - f_all))
    return MSFDecomposition(
        t,
        r,
        tuple(matching),
        s_vertices,
        tuple(f_comps),
        tuple(esc_pairs),
        s_bound_min_k,
    )
