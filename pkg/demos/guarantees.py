"""The worst-case machinery, evaluated numerically.

Two curves bound the solver's approximation ratio as a function of
alpha = base / restricted-opt: a logarithmic merge bound that falls as
alpha grows, and a doubling bound 2*alpha that rises. The guarantee is
their crossing point, about 1.4295, reached near alpha 0.7147. Restricting
components to k terminals multiplies in a penalty of 1 + 1/floor(log2 k).
"""
from steinertree import (
    crossover_alpha,
    guarantee_ratio,
    ratio_curves,
    restricted_ratio_bound,
    solution_cost_bound,
)


def main():
    print("alpha   merge-bound   doubling   binding")
    for i in range(0, 11):
        alpha = i / 10
        merge_curve, double_curve = ratio_curves(alpha)
        binding = "merge" if merge_curve >= double_curve else "double"
        print(f" {alpha:.2f}   {merge_curve:10.6f} {double_curve:10.6f}   {binding}")

    alpha, ratio = crossover_alpha(tol=1e-10)
    print(f"\ncurves cross at alpha = {alpha:.8f}, ratio = {ratio:.8f}")

    print("\nper-k worst case (restriction penalty times crossover ratio):")
    print("  k   penalty      guarantee")
    for k in (2, 3, 4, 7, 8, 16, 1024):
        rho = restricted_ratio_bound(k)
        print(f"  {k:<5}{rho.numerator}/{rho.denominator:<9}"
              f"{guarantee_ratio(k):.6f}")

    # The same bound applied to one concrete run's numbers.
    mst, base, ropt = 10, 6, 8
    bound = solution_cost_bound(mst, base, ropt)
    print(f"\nexample run with mst={mst}, base={base}, restricted opt={ropt}:")
    print(f"  phase-2 merge is provably at most {bound:.4f}")


if __name__ == "__main__":
    main()
