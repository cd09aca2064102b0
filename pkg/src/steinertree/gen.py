"""Simple instance generators for tests, demos, and benchmarks."""
from __future__ import annotations

import random

from .core import Instance


def random_instance(seed: int, vertices: int, terminals: int,
                    extra_edges: int = 0, max_weight: int = 20,
                    name: str = "") -> Instance:
    """Connected random instance: a random spanning tree plus extra random
    edges, integer weights in [1, max_weight]. Deterministic in the seed."""
    if terminals > vertices:
        raise ValueError("more terminals than vertices")
    rng = random.Random(seed)
    edges: list[tuple[int, int, int]] = []
    used = set()
    for v in range(2, vertices + 1):
        u = rng.randint(1, v - 1)
        edges.append((u, v, rng.randint(1, max_weight)))
        used.add((u, v))
    candidates = [
        (u, v) for u in range(1, vertices + 1) for v in range(u + 1, vertices + 1)
        if (u, v) not in used
    ]
    rng.shuffle(candidates)
    for u, v in candidates[:extra_edges]:
        edges.append((u, v, rng.randint(1, max_weight)))
    terms = rng.sample(range(1, vertices + 1), terminals)
    return Instance.build(vertices, edges, terms,
                          name=name or f"rand-s{seed}-v{vertices}-t{terminals}")


def grid_instance(rows: int, cols: int, max_weight: int = 9, seed: int = 0,
                  terminal_stride: int = 3, name: str = "") -> Instance:
    """Grid graph with random weights; every terminal_stride-th vertex in
    row-major order is a terminal (corners always included)."""
    rng = random.Random(seed)

    def vid(r: int, c: int) -> int:
        return r * cols + c + 1

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1), rng.randint(1, max_weight)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c), rng.randint(1, max_weight)))
    n = rows * cols
    terms = sorted({1, n} | set(range(1, n + 1, terminal_stride)))
    return Instance.build(n, edges, terms,
                          name=name or f"grid-{rows}x{cols}-s{seed}")
