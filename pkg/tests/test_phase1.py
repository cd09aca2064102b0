import random

from conftest import make_batch
from steinertree import (
    CandidatePool,
    Instance,
    enumerate_full_components,
    metric_closure,
    minimum_spanning_tree,
    optimal_k_restricted,
    random_instance,
)
from steinertree.phase1 import run_phase1


def _run(inst, k):
    closure = metric_closure(inst)
    pool = CandidatePool(enumerate_full_components(inst, closure, k))
    return run_phase1(inst, closure, pool), pool, closure


def _event_instances():
    """Seeded instances whose runs displace earlier components, triggering
    the replacement and two-edge reduction rules."""
    out = []
    for seed in (58, 95, 240, 322, 340):
        rng = random.Random(seed)
        nv = rng.randint(6, 12)
        nt = rng.randint(3, min(8, nv))
        out.append(random_instance(seed, nv, nt, extra_edges=rng.randint(0, nv),
                                   max_weight=20, name=f"s{seed}"))
    return out


# ------------------------------
# Golden runs
# ------------------------------

def test_star3_run(star3):
    p1, pool, _ = _run(star3, 3)
    assert p1.mst_cost == 4
    assert p1.base_tree.total_cost == 2
    assert p1.solution.total_cost == 3
    assert p1.solution_cost_unpruned == 3
    assert len(p1.chosen) == 1
    assert p1.chosen[0].comp.terminals == (1, 2, 3)
    rows = p1.trace["iterations"]
    assert len(rows) == 1
    assert rows[0]["gain"] == 1 and rows[0]["loss"] == 1
    assert rows[0]["ratio"] == [1, 1]
    assert rows[0]["merge_cost_unpruned"] == 3
    # The chosen component's interior node is a copy of the hub.
    assert set(p1.steiner_origin.values()) == {4}


def test_no_steiner_instance_keeps_mst():
    inst = Instance.build(4, [(1, 2, 1), (2, 3, 1), (3, 4, 1)], [1, 2, 3, 4])
    p1, _, _ = _run(inst, 4)
    assert p1.trace["iterations"] == []
    assert p1.base_tree.total_cost == p1.mst_cost == 3
    assert p1.solution.total_cost == 3


def test_two_terminal_instance():
    inst = Instance.build(3, [(1, 2, 4), (2, 3, 4), (1, 3, 9)], [1, 3])
    p1, _, _ = _run(inst, 2)
    assert p1.solution.total_cost == 8
    assert p1.base_tree.total_cost == 8


def test_k2_never_improves_on_mst():
    for inst in make_batch(10, seed0=3000):
        p1, _, _ = _run(inst, 2)
        assert p1.base_tree.total_cost == p1.mst_cost


# ------------------------------
# Invariants across a random corpus
# ------------------------------

def test_phase1_invariants_batch():
    for inst in make_batch(30, seed0=3100):
        for k in (3, 4):
            p1, pool, closure = _run(inst, k)
            terms = sorted(inst.terminals)

            assert p1.base_tree.total_cost <= p1.mst_cost
            # Half bound against the unpruned merge.
            assert 2 * p1.base_tree.total_cost >= p1.solution_cost_unpruned

            prev = p1.mst_cost
            for row in p1.trace["iterations"]:
                assert row["gain"] > 0
                assert row["tree_cost"] <= prev
                prev = row["tree_cost"]
                # Merge cost always equals the working tree plus all losses.
                assert row["merge_cost_unpruned"] == row["tree_cost"] + row["loss_total"]

            # Exit condition: no candidate improves the base tree any more.
            from steinertree.core import ContractedTree

            view = ContractedTree.from_tree(p1.base_tree)
            residual = pool.savings_for(view) - pool.costs
            assert residual.max(initial=0) <= 0

            # Pruned output is a real tree over the terminals.
            leaves = {}
            for u, v, _ in p1.solution.edges:
                leaves[u] = leaves.get(u, 0) + 1
                leaves[v] = leaves.get(v, 0) + 1
            for node, deg in leaves.items():
                if deg == 1:
                    assert node in inst.terminals
            assert set(terms) <= set(p1.solution.nodes)


def test_base_never_beats_restricted_opt():
    for inst in make_batch(25, seed0=3200, max_terminals=6):
        for k in (3, 4):
            closure = metric_closure(inst)
            cands = enumerate_full_components(inst, closure, k)
            p1 = run_phase1(inst, closure, CandidatePool(cands))
            optk = optimal_k_restricted(sorted(inst.terminals), cands, k)
            assert p1.base_tree.total_cost <= optk.cost, (inst.name, k)


def test_replacement_and_reduction_paths():
    # These seeds displace chosen components mid-run; the identity and the
    # half bound must survive the replacement and two-edge reduction rules.
    saw_replacement = saw_basic = False
    for inst in _event_instances():
        for k in (3, 4):
            p1, _, _ = _run(inst, k)
            for row in p1.trace["iterations"]:
                saw_replacement = saw_replacement or bool(row["replacements"])
                saw_basic = saw_basic or bool(row["basic_events"])
                assert row["merge_cost_unpruned"] == row["tree_cost"] + row["loss_total"]
            assert 2 * p1.base_tree.total_cost >= p1.solution_cost_unpruned
    assert saw_replacement and saw_basic


def test_phase1_deterministic():
    inst = make_batch(1, seed0=3300)[0]
    a, _, _ = _run(inst, 3)
    b, _, _ = _run(inst, 3)
    assert a.trace == b.trace
    assert a.solution.edges == b.solution.edges


def test_phase1_solution_at_most_terminal_mst():
    for inst in make_batch(20, seed0=3400):
        p1, _, closure = _run(inst, 3)
        mst = minimum_spanning_tree(sorted(inst.terminals), closure.distance)
        assert p1.solution.total_cost <= mst.total_cost
