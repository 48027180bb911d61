"""Convergence study of best-response iteration on random entropy games.

Samples depth-1 games at a range of potential scales and records how many
iterations the best-response map needs and what certificate it earns.
Writes a CSV; smaller scales sit deeper in the contraction regime.

Run:  python scripts/thermo_convergence_sweep.py [--games 50] [--out sweep.csv]
"""

import argparse
import csv

import numpy as np

from ergame import GameSpec, JointCylinderFunction, ShiftSpec, br_iteration


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--games", type=int, default=50)
    parser.add_argument("--scales", type=float, nargs="+", default=[0.1, 0.5, 1.0, 2.0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="thermo_sweep.csv")
    args = parser.parse_args()

    spec = ShiftSpec(2)
    rng = np.random.default_rng(args.seed)
    rows = []
    for scale in args.scales:
        converged = 0
        for idx in range(args.games):
            A1 = JointCylinderFunction.from_matrix(
                spec, spec, 1, 1, rng.normal(size=(2, 2)) * scale
            )
            A2 = JointCylinderFunction.from_matrix(
                spec, spec, 1, 1, rng.normal(size=(2, 2)) * scale
            )
            game = GameSpec(spec, spec, A1, A2, "thermodynamic")
            report = br_iteration(game)
            converged += report.converged
            rows.append(
                {
                    "scale": scale,
                    "game": idx,
                    "iterations": len(report.iterations),
                    "converged": int(report.converged),
                    "eps": max(report.eps1, report.eps2),
                }
            )
        print(f"scale {scale}: {converged}/{args.games} converged")

    with open(args.out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["scale", "game", "iterations", "converged", "eps"])
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
