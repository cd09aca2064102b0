"""Exact Steiner tree solvers for small instances.

Two oracles:

* optimal_steiner_tree: textbook dynamic program over terminal subsets and
  attachment vertices, run on the metric closure. Exponential in the number
  of terminals, so gated by a limit.
* optimal_k_restricted: cheapest way to connect all terminals using only
  candidate components with at most k terminals each. DP over terminal
  bitmasks seeded and relaxed with whole candidates; components glue only
  at terminals because candidate Steiner copies are private.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .core import MetricClosure, Tree, kruskal_indices, prune_leaves
from .errors import InternalInvariantError, LimitExceededError, UnknownNodeError

if TYPE_CHECKING:
    from .components import FullComponent

INF = np.int64(2**61)


@dataclass(frozen=True)
class ExactResult:
    tree: Tree
    cost: int
    restricted_k: int | None = None


def dw_closure_tree(D: np.ndarray, term_idx: Sequence[int]) -> tuple[int, list[tuple[int, int]]]:
    """Optimal Steiner tree over closure indices.

    Returns (cost, closure edges as index pairs). Tables are keyed by
    subsets of all terminals but the last; masks are processed in
    increasing numeric order and all argmins take the first index, which
    pins the reconstruction.
    """
    m = len(term_idx)
    if m == 1:
        return 0, []
    if m == 2:
        a, b = term_idx
        return int(D[a, b]), [(a, b)]
    q = term_idx[-1]
    base = list(term_idx[:-1])
    mu = len(base)
    nv = D.shape[0]
    full = (1 << mu) - 1
    W: dict[int, np.ndarray] = {}
    relax: dict[int, np.ndarray] = {}
    split: dict[int, np.ndarray] = {}
    for i, t in enumerate(base):
        W[1 << i] = D[t].astype(np.int64, copy=True)
    for mask in range(1, full + 1):
        if mask & (mask - 1) == 0:
            continue
        low = mask & (-mask)
        merged = np.full(nv, INF, dtype=np.int64)
        choice = np.zeros(nv, dtype=np.int64)
        sub = (mask - 1) & mask
        while sub:
            if sub & low:
                cand = W[sub] + W[mask ^ sub]
                better = cand < merged
                merged = np.where(better, cand, merged)
                choice = np.where(better, sub, choice)
            sub = (sub - 1) & mask
        total = merged[:, None] + D
        W[mask] = total.min(axis=0)
        relax[mask] = total.argmin(axis=0)
        split[mask] = choice
    cost = int(W[full][q])

    edges: list[tuple[int, int]] = []

    def build(mask: int, v: int) -> None:
        if mask & (mask - 1) == 0:
            t = base[mask.bit_length() - 1]
            if t != v:
                edges.append((t, v))
            return
        u = int(relax[mask][v])
        if u != v:
            edges.append((u, v))
        s = int(split[mask][u])
        build(s, u)
        build(mask ^ s, u)

    build(full, q)
    return cost, edges


def optimal_steiner_tree(closure: MetricClosure, terminals: Sequence[int],
                         limit: int = 10) -> ExactResult:
    """Globally optimal tree spanning `terminals`, expanded back into
    original-graph edges. Raises LimitExceededError above `limit` terminals.
    """
    terms = sorted(set(terminals))
    for t in terms:
        if t not in closure.index:
            raise UnknownNodeError(f"terminal {t} not in closure")
    if len(terms) > limit:
        raise LimitExceededError(
            f"{len(terms)} terminals exceeds exact-solver limit {limit}"
        )
    if len(terms) == 1:
        return ExactResult(Tree(frozenset(terms), (), 0), 0)
    tidx = [closure.index[t] for t in terms]
    cost, closure_edges = dw_closure_tree(closure.dist, tidx)
    assembled: dict[tuple[int, int], int] = {}
    for i, j in closure_edges:
        u, v = closure.vertices[i], closure.vertices[j]
        for a, b, w in closure.path_edges(u, v):
            assembled[(a, b)] = w
    edges = [(a, b, w) for (a, b), w in sorted(assembled.items())]
    nodes = {x for e in edges for x in e[:2]} | set(terms)
    kept = kruskal_indices(nodes, edges)
    pruned = prune_leaves([edges[i] for i in kept], terms)
    tree = Tree.from_edges(pruned, terms)
    if tree.total_cost != cost:
        raise InternalInvariantError(
            f"expanded optimum {tree.total_cost} != table optimum {cost}"
        )
    return ExactResult(tree, cost)


def optimal_k_restricted(terminals: Sequence[int], candidates: Sequence[FullComponent],
                         k: int, limit: int = 8) -> ExactResult:
    """Cheapest union of candidate components (each spanning at most k
    terminals) whose terminal sets chain together to cover all terminals.

    Equivalent to exhaustive search over candidate subsets: any connected
    union can be ordered so every prefix stays connected, which is exactly
    the relaxation order the bitmask DP explores. The returned tree keeps
    closure-level component edges; `cost` is the authoritative value.
    """
    terms = sorted(set(terminals))
    if len(terms) > limit:
        raise LimitExceededError(
            f"{len(terms)} terminals exceeds restricted-solver limit {limit}"
        )
    bit = {t: 1 << i for i, t in enumerate(terms)}
    full = (1 << len(terms)) - 1
    pool = [c for c in candidates if len(c.terminals) <= k]
    masks = []
    for c in pool:
        m = 0
        for t in c.terminals:
            if t not in bit:
                raise UnknownNodeError(f"candidate terminal {t} not in terminal set")
            m |= bit[t]
        masks.append(m)
    best: dict[int, int] = {}
    choice: dict[int, tuple[int, int]] = {}
    for i, c in enumerate(pool):
        m = masks[i]
        if m not in best or c.cost < best[m]:
            best[m] = c.cost
            choice[m] = (0, i)
    for mask in range(1, full + 1):
        if mask not in best:
            continue
        cur = best[mask]
        for i, c in enumerate(pool):
            cm = masks[i]
            if cm & mask and (cm | mask) != mask:
                nm = cm | mask
                nc = cur + c.cost
                if nm not in best or nc < best[nm]:
                    best[nm] = nc
                    choice[nm] = (mask, i)
    if full not in best:
        raise InternalInvariantError("candidate pool cannot connect the terminals")
    picked: list[int] = []
    mask = full
    while mask:
        prev, i = choice[mask]
        picked.append(i)
        mask = prev
    picked.reverse()
    edges: list[tuple[int, int, int]] = []
    nodes = set(terms)
    for i in picked:
        edges.extend(pool[i].edges)
        nodes.update(pool[i].steiner_ids)
        nodes.update(pool[i].terminals)
    kept = kruskal_indices(nodes, edges)
    tree = Tree.from_edges([edges[j] for j in kept], nodes)
    if tree.total_cost != best[full]:
        raise InternalInvariantError(
            f"realized restricted optimum {tree.total_cost} != table value {best[full]}"
        )
    return ExactResult(tree, best[full], k)
