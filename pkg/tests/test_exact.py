import pytest

import oracles
from conftest import make_batch
from steinertree import (
    Instance,
    LimitExceededError,
    enumerate_full_components,
    metric_closure,
    minimum_spanning_tree,
    optimal_k_restricted,
    optimal_steiner_tree,
    restricted_ratio_bound,
)


def _opt(inst, limit=10):
    closure = metric_closure(inst)
    return optimal_steiner_tree(closure, sorted(inst.terminals), limit)


# ------------------------------
# Exact optimum
# ------------------------------

def test_opt_star3(star3):
    res = _opt(star3)
    assert res.cost == 3
    assert sorted(res.tree.edges) == [(1, 4, 1), (2, 4, 1), (3, 4, 1)]


def test_opt_two_terminals():
    inst = Instance.build(3, [(1, 2, 4), (2, 3, 4), (1, 3, 9)], [1, 3])
    assert _opt(inst).cost == 8


def test_opt_unit_path():
    inst = Instance.build(3, [(1, 2, 1), (2, 3, 1)], [1, 2, 3])
    res = _opt(inst)
    assert res.cost == 2
    assert sorted(res.tree.edges) == [(1, 2, 1), (2, 3, 1)]


def test_opt_limit():
    inst = Instance.build(4, [(1, 2, 1), (2, 3, 1), (3, 4, 1)], [1, 2, 3, 4])
    with pytest.raises(LimitExceededError):
        _opt(inst, limit=3)


def test_opt_matches_bruteforce():
    for inst in make_batch(40, seed0=2000, max_vertices=9, max_terminals=5):
        want = oracles.steiner_cost_bruteforce(
            inst.vertex_count, inst.edges, inst.terminals
        )
        res = _opt(inst)
        assert res.cost == want, inst.name
        assert res.tree.total_cost == res.cost
        assert set(inst.terminals) <= set(res.tree.nodes)


def test_opt_tree_uses_real_edges():
    for inst in make_batch(10, seed0=2100, max_vertices=9, max_terminals=5):
        res = _opt(inst)
        weights = {}
        for u, v, w in inst.edges:
            key = (min(u, v), max(u, v))
            weights[key] = min(w, weights.get(key, w))
        for u, v, w in res.tree.edges:
            assert weights[(min(u, v), max(u, v))] == w


def test_opt_deterministic():
    inst = make_batch(1, seed0=2200, max_vertices=10, max_terminals=6)[0]
    a = _opt(inst)
    b = _opt(inst)
    assert a.tree.edges == b.tree.edges


# ------------------------------
# Restricted optimum
# ------------------------------

def _optk(inst, k):
    closure = metric_closure(inst)
    terms = sorted(inst.terminals)
    cands = enumerate_full_components(inst, closure, k)
    return optimal_k_restricted(terms, cands, k)


def test_optk_star3(star3):
    assert _optk(star3, 3).cost == 3
    assert _optk(star3, 3).restricted_k == 3


def test_optk_2_is_terminal_mst():
    for inst in make_batch(15, seed0=2300, max_vertices=10, max_terminals=6):
        closure = metric_closure(inst)
        terms = sorted(inst.terminals)
        mst = minimum_spanning_tree(terms, closure.distance)
        assert _optk(inst, 2).cost == mst.total_cost


def test_optk_nonincreasing_in_k():
    for inst in make_batch(12, seed0=2400, max_vertices=10, max_terminals=6):
        costs = [_optk(inst, k).cost for k in (2, 3, 4, 5)]
        assert all(a >= b for a, b in zip(costs, costs[1:]))


def test_optk_matches_subset_search():
    for inst in make_batch(25, seed0=2500, max_vertices=9, max_terminals=5):
        closure = metric_closure(inst)
        terms = sorted(inst.terminals)
        for k in (2, 3):
            cands = enumerate_full_components(inst, closure, k)
            got = optimal_k_restricted(terms, cands, k)
            want = oracles.restricted_opt_bruteforce(
                terms, [(c.terminals, c.cost) for c in cands]
            )
            assert got.cost == want, (inst.name, k)
            assert got.tree.total_cost == got.cost


def test_optk_at_full_k_equals_opt():
    for inst in make_batch(20, seed0=2600, max_vertices=9, max_terminals=6):
        opt = _opt(inst).cost
        optk = _optk(inst, len(inst.terminals)).cost
        assert optk == opt, inst.name


def test_optk_within_proven_factor_of_opt():
    for inst in make_batch(20, seed0=2700, max_vertices=10, max_terminals=6):
        opt = _opt(inst).cost
        for k in (3, 4):
            optk = _optk(inst, k).cost
            assert opt <= optk
            rho = restricted_ratio_bound(k)
            assert optk * rho.denominator <= opt * rho.numerator, (inst.name, k)


def test_optk_limit():
    inst = Instance.build(4, [(1, 2, 1), (2, 3, 1), (3, 4, 1)], [1, 2, 3, 4])
    closure = metric_closure(inst)
    cands = enumerate_full_components(inst, closure, 3)
    with pytest.raises(LimitExceededError):
        optimal_k_restricted([1, 2, 3, 4], cands, 3, limit=3)
