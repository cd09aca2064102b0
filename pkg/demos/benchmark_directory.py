"""Write a small corpus of .stp files and run the benchmark over it.

Shows the standard file format round trip and the CSV the bench command
produces: one row per instance plus a summary row with max and mean ratios.
"""
import os
import tempfile

from steinertree import RunConfig, grid_instance, random_instance, run_benchmark, save_stp


def main():
    with tempfile.TemporaryDirectory() as workdir:
        for seed in range(6):
            inst = random_instance(seed, vertices=9 + seed, terminals=4 + seed % 3,
                                   extra_edges=6, max_weight=15,
                                   name=f"random-{seed}")
            save_stp(inst, os.path.join(workdir, f"{inst.name}.stp"))
        grid = grid_instance(3, 5, seed=1, name="grid-3x5")
        save_stp(grid, os.path.join(workdir, "grid-3x5.stp"))

        print(f"wrote {len(os.listdir(workdir))} instance files to {workdir}\n")
        _, csv_text = run_benchmark(workdir, RunConfig(k=3, mode="full"))
        print(csv_text)


if __name__ == "__main__":
    main()
