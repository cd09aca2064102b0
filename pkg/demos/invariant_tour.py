"""Every bound check the solver verifies on a run, shown one by one.

The checks mirror the algorithm's correctness argument: the base tree sits
between half the merge cost and the restricted optimum, the phase-2
differences telescope to the initial gap exactly, chosen components overlap
in at most one terminal, and the final cost respects both the logarithmic
merge bound and the end-to-end ratio guarantee.
"""
from steinertree import RunConfig, random_instance, solve


def main():
    inst = random_instance(9, vertices=11, terminals=7, extra_edges=9,
                           max_weight=20, name="tour")
    res = solve(inst, RunConfig(k=4))

    print(f"instance {res.instance_name}: mst {res.mst_cost}, "
          f"base {res.base_cost}, solution {res.solution_cost}, "
          f"opt {res.opt_cost}\n")

    width = max(len(name) for name in res.report.checks)
    for name, check in res.report.checks.items():
        status = {True: "ok", False: "FAIL", None: "skipped"}[check["ok"]]
        print(f"  {name:<{width}}  {status:<8} {check['detail']}")

    print(f"\nalpha (base / restricted opt) = {res.report.alpha}")
    print(f"log merge bound               = {res.report.log_bound:.4f}")
    print(f"end-to-end ratio guarantee    = {res.report.ratio_bound:.4f}")
    print(f"\neverything holds: {res.report.ok}")


if __name__ == "__main__":
    main()
