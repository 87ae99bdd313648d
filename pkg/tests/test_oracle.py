from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spcolor.errors import BudgetExceeded, NoneFound, PreconditionViolated
from spcolor.multigraph import Multigraph, induced, is_series_parallel, underlying_simple
from spcolor.oracle import (
    Budget,
    chi_exact,
    config_holds,
    find_coloring_exact,
    find_config_bruteforce,
    gamma_exact,
    gen_sp,
    is_k_colorable_exact,
    lower_bound,
)
from spcolor.colorer import verify_coloring
from support import complete, cycle, petersen, random_graph, triangle


def test_petersen_exceeds_the_bound():
    g = petersen()
    assert chi_exact(g) == 4
    assert lower_bound(g) == 3


def test_petersen_minus_vertex_exceeds_the_bound():
    g = induced(petersen(), range(1, 10))
    assert chi_exact(g) == 4
    assert lower_bound(g) == 3


@pytest.mark.parametrize("g, chi", [(triangle(1, 1, 1), 3), (triangle(2, 1, 1), 4), (cycle(5, 3), 8), (complete(4), 3)])
def test_chi_exact_examples(g, chi):
    assert chi_exact(g) == chi


def test_find_coloring_is_proper():
    g = cycle(5, 3)
    assert find_coloring_exact(g, 7) is None
    col = find_coloring_exact(g, 8)
    assert col is not None and verify_coloring(g, 8, col)


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        chi_exact(Multigraph(11))
    with pytest.raises(BudgetExceeded):
        is_k_colorable_exact(Multigraph(2, [(0, 1, 40)]), 40)
    assert is_k_colorable_exact(Multigraph(2, [(0, 1, 40)]), 40, Budget(2, 40))


def test_gamma_triangle():
    report = gamma_exact(triangle(2, 1, 1))
    assert report.density == 4 and report.U == (0, 1, 2) and report.edges_inside == 4


def test_gamma_cycle_of_triples():
    report = gamma_exact(cycle(5, 3))
    assert report.density == Fraction(15, 2)
    assert report.U == (0, 1, 2, 3, 4)


def test_gamma_of_tiny_graph_is_zero():
    assert gamma_exact(Multigraph(2, [(0, 1, 3)])).density == 0
    assert lower_bound(Multigraph(2, [(0, 1, 3)])) == 3


def test_gamma_pruned_skips_pendant_sets():
    g = Multigraph(3, [(0, 1, 5), (1, 2, 1)])
    assert gamma_exact(g).density == 6
    assert gamma_exact(g, pruned=True).density == 0


def test_find_config_cycle():
    g = cycle(5)
    conf = find_config_bruteforce(g)
    assert config_holds(g, conf)


def test_find_config_star():
    star = Multigraph(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
    conf = find_config_bruteforce(star)
    assert config_holds(star, conf)
    assert conf.x == 0


def test_find_config_k4():
    with pytest.raises(NoneFound):
        find_config_bruteforce(complete(4))


def test_find_config_needs_simple_graph():
    with pytest.raises(PreconditionViolated):
        find_config_bruteforce(triangle(2, 1, 1))


def test_gen_sp_smallest():
    for seed in range(10):
        g = gen_sp(2, 5, seed)
        assert g.vertex_count == 2
        ((u, v, m),) = g.classes
        assert {u, v} == {0, 1} and 1 <= m <= 5


def test_gen_sp_fixed_seed():
    g = gen_sp(8, 4, 42)
    assert is_series_parallel(g)
    assert g.class_map() == {
        (0, 2): 3, (0, 3): 1, (1, 4): 2, (1, 6): 4, (1, 7): 3,
        (2, 5): 3, (3, 6): 2, (4, 7): 2, (5, 7): 3, (6, 7): 1,
    }  # fmt: skip


def test_gen_sp_is_deterministic():
    assert gen_sp(30, 3, 7) == gen_sp(30, 3, 7)
    assert gen_sp(30, 3, 7) != gen_sp(30, 3, 8)


def test_gen_sp_rejects_bad_arguments():
    with pytest.raises(ValueError):
        gen_sp(1, 1, 0)
    with pytest.raises(ValueError):
        gen_sp(5, 0, 0)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 40), st.integers(1, 5), st.integers(0, 2**31))
def test_gen_sp_shape(n, max_mult, seed):
    g = gen_sp(n, max_mult, seed)
    assert g.vertex_count == n
    assert is_series_parallel(g)
    assert all(1 <= m <= max_mult for _, _, m in g.classes)
    assert all(g.degree(v) > 0 for v in range(n))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31))
def test_lower_bound_holds_for_general_graphs(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(2, 6), 0.6, 3)
    assert chi_exact(g, Budget(6, 60)) >= lower_bound(g)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31))
def test_find_config_on_simple_series_parallel_graphs(seed):
    rng = random.Random(seed)
    g = underlying_simple(gen_sp(rng.randint(2, 12), 1, rng.randrange(2**32)))
    keep = [c for c in g.classes if rng.random() < 0.9]
    g = Multigraph(g.vertex_count, keep)
    assert config_holds(g, find_config_bruteforce(g))
