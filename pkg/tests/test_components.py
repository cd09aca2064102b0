import random

import pytest

import oracles
from conftest import make_batch
from steinertree import (
    CandidatePool,
    FullComponent,
    Instance,
    compute_loss,
    enumerate_full_components,
    gain,
    load,
    loss_contract,
    metric_closure,
    minimum_spanning_tree,
    reduce_to_basic,
    saving_difference,
)
from steinertree.core import ContractedTree
from steinertree.errors import InternalInvariantError, KRestrictionError


def _star_component():
    # Terminals 1,2,3 around interior node 5 (a copy of graph vertex 4).
    return FullComponent([1, 2, 3], [(1, 5, 1), (2, 5, 1), (3, 5, 1)], {5: 4})


def _closure_view(inst):
    c = metric_closure(inst)
    t = minimum_spanning_tree(sorted(inst.terminals), c.distance)
    return c, ContractedTree.from_tree(t)


# ------------------------------
# Component shape validation
# ------------------------------

def test_component_rejects_internal_terminal():
    with pytest.raises(InternalInvariantError):
        FullComponent([1, 2, 3], [(1, 2, 1), (2, 3, 1)])  # terminal 2 interior


def test_component_rejects_non_tree():
    with pytest.raises(InternalInvariantError):
        FullComponent([1, 2], [(1, 5, 1), (2, 5, 1), (1, 2, 1)], {5: 5})


def test_component_rejects_missing_origin():
    with pytest.raises(InternalInvariantError):
        FullComponent([1, 2], [(1, 5, 1), (2, 5, 1)])  # node 5 has no origin


# ------------------------------
# Loss
# ------------------------------

def test_loss_star():
    comp = _star_component()
    forest, cost = compute_loss(comp)
    assert cost == 1
    # Tie among three unit spokes resolves to the smallest endpoint pair.
    assert forest == ((1, 5, 1),)


def test_loss_pair_is_zero():
    comp = FullComponent([1, 2], [(1, 2, 7)])
    assert comp.loss == 0
    assert comp.loss_forest_indices == ()


def test_loss_matches_bruteforce_on_enumerated_components():
    checked = 0
    for inst in make_batch(20, seed0=900, max_vertices=10, max_terminals=6):
        closure = metric_closure(inst)
        for comp in enumerate_full_components(inst, closure, 4):
            nodes = set(comp.terminals) | set(comp.steiner_ids)
            if len(nodes) > 6:
                continue
            want = oracles.loss_cost_bruteforce(comp.terminals, comp.edges)
            assert comp.loss == want, comp
            checked += 1
    assert checked > 50


def test_loss_at_most_half_cost():
    for inst in make_batch(20, seed0=1000, max_vertices=11, max_terminals=7):
        closure = metric_closure(inst)
        for comp in enumerate_full_components(inst, closure, 4):
            assert 2 * comp.loss <= comp.cost, comp


# ------------------------------
# Loss contraction
# ------------------------------

def test_contract_star():
    comp = _star_component()
    con = loss_contract(comp)
    assert con.cost == 2 == comp.cost - comp.loss
    assert con.terminals == (1, 2, 3)
    # The {1,5} loss part is represented by terminal 1.
    ends = sorted((e.u, e.v) for e in con.edges)
    assert ends == [(1, 2), (1, 3)]
    assert all(e.w == 1 for e in con.edges)


def test_contract_pair_is_identity():
    comp = FullComponent([1, 2], [(1, 2, 7)])
    con = loss_contract(comp)
    assert con.cost == 7
    assert [(e.u, e.v, e.w) for e in con.edges] == [(1, 2, 7)]


def test_contract_cost_identity_everywhere():
    for inst in make_batch(15, seed0=1100, max_vertices=11, max_terminals=7):
        closure = metric_closure(inst)
        for comp in enumerate_full_components(inst, closure, 4):
            con = comp.contraction
            assert con.cost == comp.cost - comp.loss
            assert len(con.edges) == len(con.terminals) - 1
            assert con.terminals == comp.terminals


# ------------------------------
# Gain, load, saving difference
# ------------------------------

def test_gain_examples(star3):
    closure, view = _closure_view(star3)
    star = _star_component()
    assert gain(view, star) == 4 - 0 - 3 == 1
    # A single closure edge of the tree itself: zero gain.
    pair = FullComponent([1, 2], [(1, 2, 2)])
    assert gain(view, pair) == 0
    # After phase 1 absorbs the star, the working tree is the contracted
    # component itself (cost 2); re-adding the star can only hurt.
    base = ContractedTree.from_tree(
        minimum_spanning_tree([1, 2, 3], lambda u, v: 1 if 1 in (u, v) else 2)
    )
    assert base.cost == 2
    assert gain(base, star) == 2 - 0 - 3 == -1
    assert load(base, star) == 1


def test_load_negates_gain():
    rng = random.Random(3)
    for inst in make_batch(10, seed0=1200, max_vertices=10, max_terminals=6):
        closure, view = _closure_view(inst)
        pool = enumerate_full_components(inst, closure, 3)
        for comp in rng.sample(pool, min(5, len(pool))):
            assert gain(view, comp) + load(view, comp) == 0


def test_saving_difference_examples(star3):
    closure, origin_view = _closure_view(star3)
    base_view = ContractedTree.from_tree(
        minimum_spanning_tree([1, 2, 3], lambda u, v: 1 if 1 in (u, v) else 2)
    )
    star = _star_component()
    assert saving_difference(origin_view, origin_view, star) == 0
    # Contracting the star saves 4 in the spanning tree but only 2 in the
    # phase-1 tree, so its differential saving is 2.
    assert saving_difference(origin_view, base_view, star) == 2


# ------------------------------
# Candidate enumeration
# ------------------------------

def test_enumerate_star3(star3):
    closure = metric_closure(star3)
    pool = enumerate_full_components(star3, closure, 3)
    by_terms = {c.terminals: c for c in pool}
    assert set(by_terms) == {(1, 2), (1, 3), (2, 3), (1, 2, 3)}
    assert by_terms[(1, 2)].cost == 2
    assert by_terms[(1, 2, 3)].cost == 3
    # Fresh interior ids start above the graph's vertices and map back.
    star = by_terms[(1, 2, 3)]
    assert star.steiner_ids == (5,)
    assert star.steiner_origin == {5: 4}


def test_enumerate_k2_is_pairs_only(star3):
    closure = metric_closure(star3)
    pool = enumerate_full_components(star3, closure, 2)
    assert sorted(c.terminals for c in pool) == [(1, 2), (1, 3), (2, 3)]
    assert all(not c.steiner_ids for c in pool)


def test_enumerate_rejects_k1(star3):
    closure = metric_closure(star3)
    with pytest.raises(KRestrictionError):
        enumerate_full_components(star3, closure, 1)


def test_enumerate_unit_path_keeps_pairs_only():
    # Optimal trees over 3+ terminals of a path have internal terminals,
    # so the all-leaves filter drops them.
    inst = Instance.build(4, [(1, 2, 1), (2, 3, 1), (3, 4, 1)], [1, 2, 3, 4])
    closure = metric_closure(inst)
    pool = enumerate_full_components(inst, closure, 4)
    assert all(len(c.terminals) == 2 for c in pool)
    assert len(pool) == 6


def test_enumerate_caps_k_at_terminal_count(star3):
    closure = metric_closure(star3)
    a = enumerate_full_components(star3, closure, 3)
    b = enumerate_full_components(star3, closure, 9)
    assert [(c.terminals, c.cost) for c in a] == [(c.terminals, c.cost) for c in b]


def test_enumerated_interior_ids_do_not_collide():
    for inst in make_batch(10, seed0=1300, max_vertices=10, max_terminals=6):
        closure = metric_closure(inst)
        for comp in enumerate_full_components(inst, closure, 4):
            for s in comp.steiner_ids:
                assert s > inst.vertex_count
                assert 1 <= comp.steiner_origin[s] <= inst.vertex_count


# ------------------------------
# Basic (two-edge) reduction
# ------------------------------

def test_reduce_to_basic_star():
    basic = reduce_to_basic(_star_component())
    assert basic is not None
    assert basic.terminals == (1, 2)
    assert sorted((u, v, w) for u, v, w in basic.edges) == [(1, 5, 1), (2, 5, 1)]
    assert basic.steiner_origin == {5: 4}
    assert basic.loss == 1


def test_reduce_to_basic_pair_is_none():
    assert reduce_to_basic(FullComponent([1, 2], [(1, 2, 7)])) is None


# ------------------------------
# Pool batch evaluation
# ------------------------------

def test_pool_savings_match_single_route():
    rng = random.Random(5)
    for inst in make_batch(12, seed0=1400, max_vertices=11, max_terminals=7):
        closure, view = _closure_view(inst)
        pool = CandidatePool(enumerate_full_components(inst, closure, 4))
        # Check on the fresh view and once more after a random contraction.
        views = [view]
        terms = sorted(inst.terminals)
        if len(terms) >= 3:
            views.append(view.contract_zero_set(rng.sample(terms, 2)))
        for v in views:
            batch = pool.savings_for(v)
            for i, comp in enumerate(pool.candidates):
                assert batch[i] == v.cost - v.mst_with_zero_set(comp.terminals)


def test_pool_min_cost_index():
    for inst in make_batch(6, seed0=1500, max_vertices=9, max_terminals=5):
        closure = metric_closure(inst)
        cands = enumerate_full_components(inst, closure, 3)
        pool = CandidatePool(cands)
        for key, idx in pool.by_terminals.items():
            same = [c.cost for c in cands if frozenset(c.terminals) == key]
            assert pool.candidates[idx].cost == min(same)
