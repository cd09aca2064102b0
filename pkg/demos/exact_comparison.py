"""Heuristic against the exact oracles on a batch of random instances.

Every instance is small enough for the exact optimum (subset dynamic
program over the metric closure) and the restricted optimum (same idea over
candidate components). The heuristic's ratio to the optimum lands far below
its worst-case guarantee in practice; this prints the distribution.
"""
from steinertree import RunConfig, guarantee_ratio, random_instance, solve


def main():
    k = 3
    ratios = []
    worst = (1.0, None)
    for seed in range(60):
        inst = random_instance(seed, vertices=8 + seed % 5,
                               terminals=3 + seed % 5, extra_edges=8,
                               max_weight=20, name=f"cmp-{seed}")
        res = solve(inst, RunConfig(k=k))
        ratio = res.solution_cost / res.opt_cost
        ratios.append(ratio)
        if ratio > worst[0]:
            worst = (ratio, res)

    exact_hits = sum(1 for r in ratios if r == 1.0)
    print(f"instances solved : {len(ratios)}")
    print(f"found optimum    : {exact_hits} ({100 * exact_hits / len(ratios):.0f}%)")
    print(f"mean ratio       : {sum(ratios) / len(ratios):.4f}")
    print(f"max ratio        : {max(ratios):.4f}")
    print(f"proven worst case: {guarantee_ratio(k):.4f}")

    if worst[1] is not None:
        res = worst[1]
        print(f"\nhardest instance: {res.instance_name}")
        print(f"  mst {res.mst_cost}, solution {res.solution_cost}, "
              f"opt {res.opt_cost}, restricted opt {res.restricted_opt_cost}")


if __name__ == "__main__":
    main()
