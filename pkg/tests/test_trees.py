"""Tree-toolkit tests: splitting procedures and their certified records."""

from fractions import Fraction
from math import log

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treebed.errors import PreconditionViolated
from treebed.generators import gen_path, gen_random_tree, gen_spider, gen_three_branch_tree
from treebed.trees import (
    Tree,
    balanced_separator_vertex,
    bipartition_classes,
    chain_split,
    even_odd_sets,
    even_odd_split,
    msf_decomposition,
    split_three_forests,
    split_two_forests,
    subtree_split,
    sum_partition_three,
    sum_partition_two,
)

STAR4 = Tree(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
STAR6 = Tree(7, [(0, i) for i in range(1, 7)])
FIG1 = gen_three_branch_tree(6)


def test_tree_validation():
    with pytest.raises(PreconditionViolated):
        Tree(3, [(0, 1)])  # too few edges
    with pytest.raises(PreconditionViolated):
        Tree(4, [(0, 1), (0, 1), (2, 3)])  # duplicate edge leaves it disconnected
    with pytest.raises(PreconditionViolated):
        Tree(3, [(0, 1), (0, 1)])


def test_tree_json_roundtrip():
    t = gen_spider(6, 3)
    assert Tree.from_json(t.to_json()) == t
    assert Tree.from_json(t.to_json()).root == t.root


def test_even_odd_sets_examples():
    ev, od = even_odd_sets(STAR4, 0)
    assert ev.members == () and od.members == (1, 2, 3, 4)
    p5 = gen_path(5)
    ev, od = even_odd_sets(p5, 0)
    assert ev.members == (2, 4) and od.members == (1, 3)
    assert even_odd_sets(Tree(1, []), 0) == (ev.__class__([], 1), ev.__class__([], 1))


def test_bipartition_classes_examples():
    c0, c1 = bipartition_classes(Tree(4, [(0, 1), (0, 2), (0, 3)]))
    assert sorted((len(c0), len(c1))) == [1, 3]  # 1 >= k/max_degree = 1
    c0, c1 = bipartition_classes(gen_path(7))
    assert sorted((len(c0), len(c1))) == [3, 4]
    spider = gen_spider(6, 3)  # center + 3 mids + 6 leaves: classes 7 and 3
    c0, c1 = bipartition_classes(spider)
    assert min(len(c0), len(c1)) >= Fraction(spider.k, spider.max_degree())


def test_separator_examples():
    assert balanced_separator_vertex(gen_path(5)) == 2
    assert balanced_separator_vertex(STAR6) == 0
    assert balanced_separator_vertex(FIG1) == 0  # the degree-3 center
    assert balanced_separator_vertex(Tree(1, [])) == 0


def test_sum_partition_two_examples():
    j1, j2 = sum_partition_two([3, 3], 6)
    assert {len(j1), len(j2)} == {1}
    j1, j2 = sum_partition_two([2, 2, 2], 6)
    assert sum(2 for _ in j1) == 4 and sum(2 for _ in j2) == 2
    j1, j2 = sum_partition_two([3, 2, 1], 6)
    s1 = sum([3, 2, 1][i] for i in j1)
    assert 3 <= s1 <= 4
    with pytest.raises(PreconditionViolated):
        sum_partition_two([4, 1], 6)  # entry above ceil(ell/2)
    with pytest.raises(PreconditionViolated):
        sum_partition_two([1], 1)  # the infeasible nonzero corner needs ell >= 2


def test_sum_partition_three_examples():
    i1, i2, i3 = sum_partition_three([2, 2, 2], 6)
    assert [sum([2, 2, 2][i] for i in p) for p in (i1, i2, i3)] == [2, 2, 2]
    i1, i2, i3 = sum_partition_three([3, 3], 6)
    assert len(i3) == 0 and sum(len(p) for p in (i1, i2, i3)) == 2
    i1, i2, i3 = sum_partition_three([3, 2, 1], 6)
    sums = [sum([3, 2, 1][i] for i in p) for p in (i1, i2, i3)]
    assert sums[2] <= sums[1] <= sums[0] <= 3 and len(i3) <= 1
    assert sum_partition_three([1], 1) == ((0,), (), ())


def test_split_two_forests_examples():
    s = split_two_forests(FIG1)
    assert s.pivot == 0 and (len(s.f1), len(s.f2)) == (4, 2)
    s = split_two_forests(gen_path(7))
    assert (len(s.f1), len(s.f2)) == (3, 3)
    s = split_two_forests(STAR6)
    assert (len(s.f1), len(s.f2)) == (4, 2)
    with pytest.raises(PreconditionViolated):
        split_two_forests(Tree(2, [(0, 1)]))


def test_split_three_forests_examples():
    s = split_three_forests(FIG1)
    assert sorted(map(len, (s.f1, s.f2, s.f3))) == [2, 2, 2]
    s = split_three_forests(gen_path(7))
    assert sorted(map(len, (s.f1, s.f2, s.f3))) == [0, 3, 3]
    # the star admits several feasible groupings; the record certifies the
    # bounds (parts within ceil(k/2), f3 empty or one whole component)
    s = split_three_forests(STAR6)
    assert len(s.f1) + len(s.f2) + len(s.f3) == 6
    assert max(map(len, (s.f1, s.f2, s.f3))) <= 3


def test_subtree_split_examples():
    p9 = gen_path(9)
    s1, s2 = subtree_split(p9, 0, 3)
    assert 3 <= len(s2) <= 9
    assert 0 in s1.vertices
    assert len(set(s1.vertices) & set(s2.vertices)) == 1
    assert sorted(s1.edges + s2.edges) == list(p9.edges)
    star8 = Tree(9, [(0, i) for i in range(1, 9)])
    s1, s2 = subtree_split(star8, 0, 3)
    assert 0 in s2.vertices  # the split-off part keeps the shared center
    assert 3 <= len(s2) <= 9
    s1, s2 = subtree_split(p9, 0, 3)  # m = floor(n/3) boundary
    assert 3 <= len(s2) <= 9
    with pytest.raises(PreconditionViolated):
        subtree_split(p9, 0, 4)


def test_chain_split_examples():
    p9 = gen_path(9)
    cs = chain_split(p9, 3)
    assert len(cs.s0) == 3 and len(cs.others) <= log(9) / log(1.5)
    cs = chain_split(p9, 9)
    assert len(cs.s0) == 9 and not cs.others
    spider = gen_three_branch_tree(6)
    cs = chain_split(spider, 4)
    assert len(cs.s0) == 4
    for piece, ap in zip(cs.others, cs.attach_points):
        assert set(piece.vertices) & set(cs.s0.vertices) == {ap}


def test_even_odd_split_examples():
    eo = even_odd_split(Tree(2, [(0, 1)]))
    assert eo.bound() == Fraction(7, 6)
    assert max(eo.class_load(1), eo.class_load(2)) <= eo.bound()
    eo = even_odd_split(STAR6)
    assert eo.root == 0
    assert max(eo.class_load(1), eo.class_load(2)) <= (Fraction(2, 3) - Fraction(1, 18)) * 7 + Fraction(1, 2)
    # exhaustive cross-check on P5: the returned pair is feasible
    eo = even_odd_split(gen_path(5))
    assert max(eo.class_load(1), eo.class_load(2)) <= eo.bound()


def test_msf_examples():
    d = msf_decomposition(FIG1)
    assert d.matching == () and d.f_components == () and len(d.s_vertices) == 7
    pn = gen_path(41)
    d = msf_decomposition(pn)
    assert d.matching
    rooted = pn.rooted(d.root)
    for s_end, _ in d.matching:
        assert rooted.depth[s_end] == 2
    full = Tree(2**6 - 1, [((i - 1) // 2, i) for i in range(1, 2**6 - 1)])
    d = msf_decomposition(full)
    assert d.matching  # complete binary tree yields a nonempty matching


def test_msf_s_bound_threshold():
    t = gen_path(5000)
    d = msf_decomposition(t)
    assert d.s_bound_checked and d.s_size <= -(-t.k // 2)
    t2 = gen_path(30)
    d2 = msf_decomposition(t2)
    assert not d2.s_bound_checked  # below the large-k threshold: measured only


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 60), st.integers(2, 5))
def test_split_records_certify(seed, n, dmax):
    t = gen_random_tree(n, dmax, seed)
    split_two_forests(t)
    split_three_forests(t)
    even_odd_split(t)
    msf_decomposition(t)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 40))
def test_chain_split_property(seed, n):
    t = gen_random_tree(n, 5, seed)
    m = seed % n + 1
    cs = chain_split(t, m)
    assert len(cs.s0) == m
    edge_multiset = sorted(cs.s0.edges + tuple(e for p in cs.others for e in p.edges))
    assert tuple(edge_multiset) == t.edges
