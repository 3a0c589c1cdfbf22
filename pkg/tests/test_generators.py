"""Generator tests: degree profiles recomputed, determinism, family dispatch."""

from fractions import Fraction

import pytest

from treebed.embed import brute_force_embed
from treebed.errors import Infeasible, PreconditionViolated
from treebed.generators import (
    FamilySpec,
    build_graph,
    build_tree,
    gen_bps_alpha_host,
    gen_caterpillar,
    gen_clique_chain_apex,
    gen_complete_bipartite,
    gen_path,
    gen_random_graph_min_degree,
    gen_random_tree,
    gen_spider,
    gen_three_branch_tree,
    gen_two_cliques_apex,
    gen_two_cliques_apex_grown,
)


def test_two_cliques_apex_profiles():
    g = gen_two_cliques_apex(6)
    assert g.n == 7 and g.min_degree() == 3 and g.max_degree() == 6
    g = gen_two_cliques_apex(9)
    assert g.n == 11 and g.min_degree() == 5 and g.max_degree() == 10
    g = gen_two_cliques_apex(3)  # boundary: two K1 plus apex is a path
    assert g.n == 3 and g.min_degree() == 1 and g.max_degree() == 2
    with pytest.raises(PreconditionViolated):
        gen_two_cliques_apex(7)
    grown = gen_two_cliques_apex_grown(6)
    assert grown.min_degree() == 4  # floor(2k/3)


def test_three_branch_tree():
    t = gen_three_branch_tree(6)
    assert t.n == 7 and t.degree(0) == 3
    t = gen_three_branch_tree(9)
    assert t.n == 10
    t = gen_three_branch_tree(3)
    assert t.n == 4 and t.max_degree() == 3  # the claw
    with pytest.raises(PreconditionViolated):
        gen_three_branch_tree(8)


def test_spider():
    t = gen_spider(10, 5)
    assert t.n == 16 and t.k == 15  # root + 5 mids + 10 leaves
    t = gen_spider(6, 3)
    assert t.n == 10
    t = gen_spider(6, 1)  # a broom
    assert t.degree(1) == 7
    with pytest.raises(PreconditionViolated):
        gen_spider(10, 4)


def test_bps_alpha_host():
    g, apex = gen_bps_alpha_host(10, Fraction(1, 5))
    assert g.degree(apex) == 16  # parts 6 and 8 per block
    g, apex = gen_bps_alpha_host(15, Fraction(1, 5))
    assert g.degree(apex) == 24  # parts 9 and 12
    with pytest.raises(PreconditionViolated):
        gen_bps_alpha_host(10, Fraction(1, 3))


def test_clique_chain_apex():
    g = gen_clique_chain_apex(6, 3)
    assert g.n == 7 and g.degree(6) == 3  # three K2 blocks + apex
    g = gen_clique_chain_apex(8, 2)
    assert g.n == 7  # two K3 blocks + apex
    g = gen_clique_chain_apex(6, 1)
    assert g.degree(g.n - 1) == 1
    # companion check: the long path never fits, no matter how many blocks
    g = gen_clique_chain_apex(6, 3)
    out = brute_force_embed(g, gen_path(7))
    assert out.status == "not_found"


def test_complete_bipartite():
    g = gen_complete_bipartite(2, 5)
    assert g.n == 7 and g.edge_count == 10
    assert gen_complete_bipartite(3, 3).edge_count == 9
    assert gen_complete_bipartite(1, 4).max_degree() == 4


def test_random_generators_deterministic():
    assert gen_path(5).edges == ((0, 1), (1, 2), (2, 3), (3, 4))
    t1 = gen_random_tree(50, 3, seed=1)
    t2 = gen_random_tree(50, 3, seed=1)
    assert t1.edges == t2.edges and t1.max_degree() <= 3
    g1 = gen_random_graph_min_degree(20, 8, seed=7)
    g2 = gen_random_graph_min_degree(20, 8, seed=7)
    assert g1 == g2
    assert min(len(g1.neighbors(v)) for v in range(20)) >= 8  # recounted
    c1 = gen_caterpillar(6, 4, seed=3)
    assert c1.edges == gen_caterpillar(6, 4, seed=3).edges


def test_random_tree_degree_bound_tight():
    # tight bound on a large tree exercises the constrained-draw fallback
    t = gen_random_tree(200, 3, seed=11)
    assert t.n == 200 and t.max_degree() <= 3
    with pytest.raises(Infeasible):
        gen_random_tree(10, 1, seed=0)


def test_family_dispatch():
    g = build_graph(FamilySpec("two_cliques_apex", {"k": 6}))
    assert g == gen_two_cliques_apex(6)
    t = build_tree(FamilySpec("spider", {"k": 6, "ell": 3}))
    assert t == gen_spider(6, 3)
    with pytest.raises(PreconditionViolated):
        build_graph(FamilySpec("nope", {}))
