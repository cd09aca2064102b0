"""Smallest possible tour: build an instance, solve it, read the result.

The graph is a 3x4 grid with terminals sprinkled on it; the solver returns
the cheapest tree it can assemble from shortest paths and improving
components, along with the exact optimum (the instance is small enough for
the oracle) and a report of every bound check that ran.
"""
from steinertree import RunConfig, grid_instance, solve


def main():
    inst = grid_instance(3, 4, max_weight=9, seed=7, name="grid-3x4")
    print(f"instance {inst.name}: |V|={inst.vertex_count} "
          f"|E|={len(inst.edges)} terminals={sorted(inst.terminals)}")

    res = solve(inst, RunConfig(k=3, mode="full"))

    print(f"\nterminal-spanning MST : {res.mst_cost}")
    print(f"phase-1 base tree     : {res.base_cost}")
    print(f"phase-1 merge         : {res.phase1_cost}")
    print(f"phase-2 merge         : {res.phase2_cost}")
    print(f"returned solution     : {res.solution_cost}")
    print(f"exact optimum         : {res.opt_cost}")
    print(f"restricted optimum    : {res.restricted_opt_cost}")

    print(f"\nsolution edges ({len(res.solution_edges)}):")
    for u, v, w in res.solution_edges:
        print(f"  {u:>3} -- {v:<3} weight {w}")

    print(f"\nall bound checks passed: {res.report.ok}")
    if res.opt_cost:
        print(f"ratio vs optimum: {res.solution_cost / res.opt_cost:.4f}")


if __name__ == "__main__":
    main()
