"""Weighted-graph primitives: instances, metric closure, spanning trees,
and trees with contracted (zero-distance) node groups.

All weights are exact nonnegative integers. Rational inputs are scaled to a
common denominator once, at Instance construction, and every quantity the
solver compares afterwards is an integer. Ties are broken everywhere by the
same global edge order: (weight, smaller endpoint, larger endpoint), then
construction order for exact duplicates.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DisconnectedInputError,
    DisconnectedTerminalsError,
    InternalInvariantError,
    InvalidInstanceError,
    UnknownNodeError,
)

Edge = tuple[int, int, int]


def edge_key(u: int, v: int, w: int) -> tuple[int, int, int]:
    """Global deterministic edge order used by every MST in the package."""
    return (w, u, v) if u <= v else (w, v, u)


class UnionFind:
    __slots__ = ("parent", "rank", "groups")

    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in self.parent}
        self.groups = len(self.parent)

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        self.groups -= 1
        return True


# ---------------------------------------------------------------------------
# Instances


@dataclass(frozen=True)
class Instance:
    """An undirected graph with terminals. Weights are scaled integers;
    `scale` is the common denominator they were multiplied by, so the
    original weight of edge (u, v, w) is Fraction(w, scale).
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    terminals: frozenset[int]
    name: str = ""
    scale: int = 1

    @classmethod
    def build(
        cls,
        vertex_count: int,
        edges: Sequence[tuple[int, int, object]],
        terminals: Iterable[int],
        name: str = "",
    ) -> "Instance":
        """Validate and normalize. Weights may be int, Fraction, Decimal, or
        numeric strings; floats are rejected to keep arithmetic exact.
        """
        if vertex_count < 1:
            raise InvalidInstanceError("vertex count must be positive")
        terms = frozenset(int(t) for t in terminals)
        if len(terms) < 2:
            raise InvalidInstanceError("need at least 2 terminals")
        fractions = []
        for u, v, w in edges:
            if isinstance(w, float):
                raise InvalidInstanceError(
                    f"edge ({u},{v}) has float weight {w!r}; pass str or Fraction"
                )
            fw = Fraction(w)
            if fw < 0:
                raise InvalidInstanceError(f"edge ({u},{v}) has negative weight {w}")
            if u == v:
                raise InvalidInstanceError(f"self loop at vertex {u}")
            for x in (u, v):
                if not 1 <= x <= vertex_count:
                    raise InvalidInstanceError(f"edge endpoint {x} out of range")
            fractions.append(fw)
        for t in terms:
            if not 1 <= t <= vertex_count:
                raise InvalidInstanceError(f"terminal {t} out of range")
        scale = 1
        for fw in fractions:
            scale = scale * fw.denominator // _gcd(scale, fw.denominator)
        scaled = tuple(
            (int(u), int(v), int(fw * scale))
            for (u, v, _), fw in zip(edges, fractions)
        )
        inst = cls(vertex_count, scaled, terms, name, scale)
        # Terminal connectivity is part of validity.
        reach = inst.reachable_from(min(terms))
        missing = terms - reach
        if missing:
            raise DisconnectedTerminalsError(
                f"terminals {sorted(missing)} unreachable from terminal {min(terms)}"
            )
        return inst

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        """Neighbor lists (vertex, weight), sorted, parallel edges collapsed
        to their minimum weight."""
        best: dict[tuple[int, int], int] = {}
        for u, v, w in self.edges:
            a, b = (u, v) if u < v else (v, u)
            if (a, b) not in best or w < best[(a, b)]:
                best[(a, b)] = w
        adj: dict[int, list[tuple[int, int]]] = {x: [] for x in range(1, self.vertex_count + 1)}
        for (a, b), w in sorted(best.items()):
            adj[a].append((b, w))
            adj[b].append((a, w))
        return adj

    def reachable_from(self, start: int) -> set[int]:
        adj = self.adjacency()
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y, _ in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def display_cost(self, cost: int) -> str:
        return format_cost(cost, self.scale)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def format_cost(cost: int, scale: int) -> str:
    """Exact human-readable rendering of a scaled integer cost."""
    f = Fraction(cost, scale)
    if f.denominator == 1:
        return str(f.numerator)
    den = f.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den == 1:
        digits = max(twos, fives)
        scaled = f.numerator * 10**digits // f.denominator
        text = f"{scaled:0{digits + 1}d}"
        return f"{text[:-digits]}.{text[-digits:]}"
    return f"{f.numerator}/{f.denominator}"


# ---------------------------------------------------------------------------
# Metric closure


class MetricClosure:
    """All-pairs shortest paths over the component containing the terminals.

    Vertices outside that component are excluded. `dist` is a dense int64
    matrix over `vertices` (sorted ids); `index` maps vertex id to row.
    Predecessor trees allow expanding any closure edge back into a shortest
    path of original edges.
    """

    def __init__(self, vertices: Sequence[int], dist: np.ndarray, pred: np.ndarray,
                 edge_weight: Mapping[tuple[int, int], int]):
        self.vertices = tuple(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.dist = dist
        self._pred = pred
        self._edge_weight = dict(edge_weight)

    def distance(self, u: int, v: int) -> int:
        try:
            return int(self.dist[self.index[u], self.index[v]])
        except KeyError as exc:
            raise UnknownNodeError(f"vertex {exc.args[0]} not in closure") from None

    def path_edges(self, u: int, v: int) -> list[Edge]:
        """Original-graph edges of one shortest u-v path (deterministic)."""
        iu, iv = self.index[u], self.index[v]
        out: list[Edge] = []
        cur = iv
        while cur != iu:
            prev = int(self._pred[iu, cur])
            a, b = self.vertices[prev], self.vertices[cur]
            key = (a, b) if a < b else (b, a)
            out.append((key[0], key[1], self._edge_weight[key]))
            cur = prev
        out.reverse()
        return out


def metric_closure(instance: Instance) -> MetricClosure:
    """Dijkstra from every vertex of the terminal component, exact integer
    distances, deterministic predecessor choice (heap ties pop the smaller
    vertex; relaxations are strict)."""
    adj = instance.adjacency()
    terms = sorted(instance.terminals)
    component = instance.reachable_from(terms[0])
    missing = set(terms) - component
    if missing:
        raise DisconnectedTerminalsError(
            f"terminals {sorted(missing)} unreachable from terminal {terms[0]}"
        )
    vertices = sorted(component)
    index = {v: i for i, v in enumerate(vertices)}
    n = len(vertices)
    dist = np.zeros((n, n), dtype=np.int64)
    pred = np.full((n, n), -1, dtype=np.int32)
    for src in vertices:
        si = index[src]
        d = {src: 0}
        done = set()
        heap = [(0, src)]
        while heap:
            du, u = heapq.heappop(heap)
            if u in done:
                continue
            done.add(u)
            for v, w in adj[u]:
                if v not in component:
                    continue
                nd = du + w
                if v not in d or nd < d[v]:
                    d[v] = nd
                    pred[si, index[v]] = index[u]
                    heapq.heappush(heap, (nd, v))
        row = dist[si]
        for v, dv in d.items():
            row[index[v]] = dv
    edge_weight: dict[tuple[int, int], int] = {}
    for u, nbrs in adj.items():
        for v, w in nbrs:
            if u < v:
                edge_weight[(u, v)] = w
    return MetricClosure(vertices, dist, pred, edge_weight)


# ---------------------------------------------------------------------------
# Trees


@dataclass(frozen=True)
class Tree:
    """An undirected tree. `nodes` includes isolated context only when the
    tree is a single vertex; otherwise it is exactly the edge endpoints."""

    nodes: frozenset[int]
    edges: tuple[Edge, ...]
    total_cost: int

    @classmethod
    def from_edges(cls, edges: Sequence[Edge], nodes: Iterable[int] | None = None) -> "Tree":
        node_set = set(nodes) if nodes is not None else set()
        for u, v, _ in edges:
            node_set.add(u)
            node_set.add(v)
        if not node_set:
            raise InvalidInstanceError("empty tree")
        if len(edges) != len(node_set) - 1:
            raise InvalidInstanceError(
                f"{len(edges)} edges cannot form a tree on {len(node_set)} nodes"
            )
        uf = UnionFind(node_set)
        for u, v, _ in edges:
            if not uf.union(u, v):
                raise InvalidInstanceError(f"cycle through edge ({u},{v})")
        return cls(frozenset(node_set), tuple(edges), sum(w for _, _, w in edges))


def kruskal_indices(
    nodes: Iterable[int],
    edges: Sequence[Sequence[int]],
    merged_groups: Iterable[Iterable[int]] = (),
) -> list[int]:
    """Indices of the edges an MST keeps, over a multigraph given as
    (u, v, w, ...) rows. `merged_groups` are node sets treated as already
    connected (zero-cost cliques). Raises if the result does not connect
    all nodes. Sort is stable, so exact duplicates keep input order.
    """
    node_list = list(nodes)
    uf = UnionFind(node_list)
    for group in merged_groups:
        members = list(group)
        for other in members[1:]:
            uf.union(members[0], other)
    order = sorted(range(len(edges)), key=lambda i: edge_key(edges[i][0], edges[i][1], edges[i][2]))
    kept = []
    for i in order:
        u, v = edges[i][0], edges[i][1]
        if u == v:
            continue
        if uf.union(u, v):
            kept.append(i)
    if uf.groups != 1:
        raise DisconnectedInputError("edge set does not connect the node set")
    kept.sort()
    return kept


def minimum_spanning_tree(nodes: Iterable[int], weight_of: Callable[[int, int], int]) -> Tree:
    """MST of the complete graph on `nodes` under a symmetric weight oracle."""
    node_list = sorted(set(nodes))
    if not node_list:
        raise InvalidInstanceError("empty node set")
    if len(node_list) == 1:
        return Tree(frozenset(node_list), (), 0)
    edges = [(u, v, weight_of(u, v)) for u, v in itertools.combinations(node_list, 2)]
    kept = kruskal_indices(node_list, edges)
    return Tree.from_edges([edges[i] for i in kept], node_list)


def bottleneck_edge(tree: Tree, u: int, v: int) -> Edge:
    """Heaviest edge on the unique u-v path. Among equal-weight maxima the
    one latest in global edge order is returned, because that is the edge a
    Kruskal run displaces when u and v are merged. u must differ from v.
    """
    if u == v:
        raise ValueError("bottleneck_edge needs two distinct nodes")
    for x in (u, v):
        if x not in tree.nodes:
            raise UnknownNodeError(f"node {x} not in tree")
    adj: dict[int, list[tuple[int, Edge]]] = {x: [] for x in tree.nodes}
    for e in tree.edges:
        adj[e[0]].append((e[1], e))
        adj[e[1]].append((e[0], e))
    parent_edge: dict[int, Edge] = {}
    parent: dict[int, int] = {u: u}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == v:
            break
        for y, e in adj[x]:
            if y not in parent:
                parent[y] = x
                parent_edge[y] = e
                stack.append(y)
    path = []
    cur = v
    while cur != u:
        path.append(parent_edge[cur])
        cur = parent[cur]
    return max(path, key=lambda e: edge_key(*e))


def prune_leaves(edges: Sequence[Edge], keep: Iterable[int]) -> list[Edge]:
    """Iteratively drop degree-1 nodes not in `keep`, with their edges."""
    keep_set = set(keep)
    current = list(edges)
    while True:
        degree: dict[int, int] = {}
        for u, v, _ in current:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        doomed = {x for x, d in degree.items() if d == 1 and x not in keep_set}
        if not doomed:
            return current
        current = [e for e in current if e[0] not in doomed and e[1] not in doomed]


# ---------------------------------------------------------------------------
# Trees with contracted node groups


class ContractedTree:
    """A tree over representative nodes, remembering which original nodes
    each representative stands for. Contracting a node set means treating
    it as mutually zero-distance: the MST then drops the heaviest edge of
    every cycle the merge closes.

    Instances are treated as immutable; contraction returns a new object.
    """

    def __init__(self, rep_of: Mapping[int, int], edges: Sequence[Edge]):
        self.rep_of = dict(rep_of)
        self.edges = tuple(edges)
        self.cost = sum(w for _, _, w in self.edges)
        reps = sorted(set(self.rep_of.values()))
        self.reps = tuple(reps)
        self.rep_index = {r: i for i, r in enumerate(reps)}

    @classmethod
    def from_tree(cls, tree: Tree) -> "ContractedTree":
        return cls({x: x for x in tree.nodes}, tree.edges)

    @property
    def bottleneck_matrix(self) -> np.ndarray:
        """Dense path-maximum weights between representatives (int64)."""
        cached = getattr(self, "_bottleneck", None)
        if cached is not None:
            return cached
        n = len(self.reps)
        mat = np.zeros((n, n), dtype=np.int64)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for u, v, w in self.edges:
            iu, iv = self.rep_index[u], self.rep_index[v]
            adj[iu].append((iv, w))
            adj[iv].append((iu, w))
        for root in range(n):
            row = mat[root]
            seen = [False] * n
            seen[root] = True
            stack = [(root, 0)]
            while stack:
                x, mx = stack.pop()
                for y, w in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        best = mx if mx > w else w
                        row[y] = best
                        stack.append((y, best))
        self._bottleneck = mat
        return mat

    @property
    def rep_lookup(self) -> np.ndarray:
        """node id -> representative row index, -1 for unknown ids."""
        cached = getattr(self, "_rep_lookup", None)
        if cached is not None:
            return cached
        size = max(self.rep_of) + 1
        arr = np.full(size, -1, dtype=np.int64)
        for node, rep in self.rep_of.items():
            arr[node] = self.rep_index[rep]
        self._rep_lookup = arr
        return arr

    def _group_reps(self, group: Iterable[int]) -> list[int]:
        reps = []
        for node in group:
            rep = self.rep_of.get(node)
            if rep is None:
                raise UnknownNodeError(f"node {node} not in contracted tree")
            reps.append(self.rep_index[rep])
        return sorted(set(reps))

    def saving(self, group: Iterable[int]) -> int:
        """cost drop of treating `group` as mutually zero-distance:
        cost(self) - mst(self with the group's zero clique added). Equals
        the MST of the group's representatives under bottleneck weights;
        the from-scratch Kruskal route is mst_with_zero_set."""
        reps = self._group_reps(group)
        if len(reps) <= 1:
            return 0
        mat = self.bottleneck_matrix
        best = {r: int(mat[reps[0], r]) for r in reps[1:]}
        total = 0
        while best:
            r = min(best, key=lambda x: (best[x], x))
            total += best[r]
            del best[r]
            for other in list(best):
                cand = int(mat[r, other])
                if cand < best[other]:
                    best[other] = cand
        return total

    def mst_with_zero_set(self, group: Iterable[int]) -> int:
        """cost of MST(self u zero clique on group), computed from scratch."""
        group_reps = set()
        for node in group:
            rep = self.rep_of.get(node)
            if rep is None:
                raise UnknownNodeError(f"node {node} not in contracted tree")
            group_reps.add(rep)
        if len(group_reps) <= 1:
            return self.cost
        kept = kruskal_indices(self.reps, self.edges, merged_groups=[group_reps])
        return sum(self.edges[i][2] for i in kept)

    def contract_zero_set(self, group: Iterable[int]) -> "ContractedTree":
        """Merge the groups touched by `group` and re-run the MST over the
        surviving edges. The merged representative is the smallest member."""
        group_reps = set()
        for node in group:
            rep = self.rep_of.get(node)
            if rep is None:
                raise UnknownNodeError(f"node {node} not in contracted tree")
            group_reps.add(rep)
        if len(group_reps) <= 1:
            return self
        merged_members = [n for n, r in self.rep_of.items() if r in group_reps]
        new_rep = min(merged_members)
        remap = {r: (new_rep if r in group_reps else r) for r in self.reps}
        new_rep_of = {n: remap[r] for n, r in self.rep_of.items()}
        mapped = [(remap[u], remap[v], w) for u, v, w in self.edges]
        kept = kruskal_indices(sorted(set(remap.values())), mapped)
        result = ContractedTree(new_rep_of, [mapped[i] for i in kept])
        expected = self.mst_with_zero_set(group)
        if result.cost != expected:
            raise InternalInvariantError(
                f"contraction cost {result.cost} != zero-set MST {expected}"
            )
        return result
