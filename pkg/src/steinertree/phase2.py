"""Second greedy phase.

Runs two contracted trees side by side: one starting from the terminal MST,
one from the phase-1 base tree. Each step picks the candidate minimizing
load divided by the difference of the savings it produces in the two trees,
then contracts its terminals in both. The gap between the tree costs shrinks
by exactly that difference, so the loop ends when the costs meet. A scan
with no positive difference while the gap is still open is a stall; it is
recorded and the merge built so far is returned.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .components import CandidatePool
from .core import (
    ContractedTree,
    Instance,
    MetricClosure,
    Tree,
    kruskal_indices,
    minimum_spanning_tree,
    prune_leaves,
)
from .errors import InternalInvariantError
from .phase1 import ChosenEntry

log = logging.getLogger(__name__)


@dataclass
class Phase2Result:
    solution: Tree
    solution_cost_unpruned: int
    chosen: list[ChosenEntry]
    stalled: bool
    steiner_origin: dict[int, int]
    trace: dict


def select_candidate(t_origin: ContractedTree, t_base: ContractedTree,
                     pool: CandidatePool) -> tuple[int, int, int] | None:
    """(index, load, saving difference) of the candidate minimizing
    load / difference among positive differences; ties fall to the earliest
    candidate. None when no candidate has a positive difference."""
    sav_origin = pool.savings_for(t_origin)
    sav_base = pool.savings_for(t_base)
    diffs = sav_origin - sav_base
    loads = pool.costs - sav_base
    eligible = np.flatnonzero(diffs > 0)
    if eligible.size == 0:
        return None
    best = None  # (index, load, diff)
    for i in eligible.tolist():
        l, d = int(loads[i]), int(diffs[i])
        if best is None or l * best[2] < best[1] * d:
            best = (i, l, d)
    return best


def run_phase2(instance: Instance, closure: MetricClosure, pool: CandidatePool,
               base_tree: Tree) -> Phase2Result:
    terms = sorted(instance.terminals)
    t0 = minimum_spanning_tree(terms, closure.distance)
    t_origin = ContractedTree.from_tree(t0)
    t_base = ContractedTree.from_tree(base_tree)
    initial_gap = t_origin.cost - t_base.cost
    if initial_gap < 0:
        raise InternalInvariantError("base tree costs more than the MST")
    chosen: list[ChosenEntry] = []
    uid = 0
    alloc = max(instance.vertex_count, pool.max_steiner_id) + 1
    rows: list[dict] = []
    stalled = False

    while t_origin.cost != t_base.cost:
        if t_origin.cost < t_base.cost:
            raise InternalInvariantError("origin tree fell below the base tree")
        if len(rows) >= len(terms):
            raise InternalInvariantError("phase 2 ran past the terminal count")
        pick = select_candidate(t_origin, t_base, pool)
        if pick is None:
            stalled = True
            log.debug("phase2 stalled with gap %d", t_origin.cost - t_base.cost)
            break
        i, load_value, diff_value = pick
        sel = pool[i]
        comp, alloc = sel.reassign_steiner(alloc)
        uid += 1
        chosen.append(ChosenEntry(uid, comp))
        t_origin = t_origin.contract_zero_set(comp.terminals)
        t_base = t_base.contract_zero_set(comp.terminals)
        f = Fraction(load_value, diff_value)
        log.debug("phase2 pick %s load=%d diff=%d", sel.terminals, load_value, diff_value)
        rows.append({
            "iteration": len(rows) + 1,
            "candidate_index": i,
            "uid": uid,
            "terminals": list(sel.terminals),
            "candidate_cost": sel.cost,
            "load": load_value,
            "saving_diff": diff_value,
            "f": [f.numerator, f.denominator],
            "origin_cost": t_origin.cost,
            "base_cost": t_base.cost,
        })

    if not stalled:
        diff_total = sum(r["saving_diff"] for r in rows)
        if diff_total != initial_gap:
            raise InternalInvariantError(
                f"differences sum to {diff_total}, gap was {initial_gap}"
            )

    edges = list(t0.edges)
    nodes = set(t0.nodes)
    for e in chosen:
        edges.extend(e.comp.edges)
        nodes.update(e.comp.steiner_ids)
        nodes.update(e.comp.terminals)
    kept = kruskal_indices(nodes, edges)
    kept_edges = [edges[i] for i in kept]
    unpruned = sum(e[2] for e in kept_edges)
    solution = Tree.from_edges(prune_leaves(kept_edges, terms), terms)
    origin: dict[int, int] = {}
    for e in chosen:
        origin.update(e.comp.steiner_origin)
    trace = {
        "initial_gap": initial_gap,
        "iterations": rows,
        "stalled": stalled,
        "merge_cost_unpruned": unpruned,
        "solution_cost": solution.total_cost,
        "chosen": [
            {"uid": e.uid, "terminals": list(e.comp.terminals), "cost": e.comp.cost}
            for e in chosen
        ],
    }
    return Phase2Result(
        solution=solution,
        solution_cost_unpruned=unpruned,
        chosen=chosen,
        stalled=stalled,
        steiner_origin=origin,
        trace=trace,
    )
