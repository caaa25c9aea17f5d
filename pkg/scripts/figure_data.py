"""Write the CSV series behind each success-probability and gap plot.

    python3 scripts/figure_data.py --out data/
"""

import argparse
import csv
import math
from pathlib import Path

import numpy as np

from walksearch import analytics, qw_continuous, qw_discrete, rw_continuous, rw_discrete
from walksearch.model import CompleteGraphInstance


def write(path: Path, header, rows):
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([format(float(x), ".12g") for x in row])
    print(f"wrote {path} ({len(rows)} rows)")


def random_walks(out: Path, n: int):
    g = CompleteGraphInstance(n)
    disc = rw_discrete.evolve_full(g, 10 * n)
    write(out / f"rw_discrete_n{n}.csv", ["t", "success"], list(zip(disc.t, disc.success)))
    cont = rw_continuous.evolve_full(g, 10.0 * n)
    write(out / f"rw_continuous_n{n}.csv", ["t", "success"], list(zip(cont.t, cont.success)))


def coined(out: Path, n: int):
    g = CompleteGraphInstance(n)
    steps = 4 * int(math.sqrt(n))
    rec = qw_discrete.evolve_full(g, steps)
    ba = [qw_discrete.ba_probability_closed_form(n, t) for t in range(steps + 1)]
    write(out / f"qw_discrete_n{n}.csv", ["t", "success", "ba"], list(zip(rec.t, rec.success, ba)))


def hamiltonian(out: Path, n: int):
    g = CompleteGraphInstance(n)
    rec = qw_continuous.evolve_full(g, 2 * math.pi * math.sqrt(n))
    write(out / f"qw_continuous_n{n}.csv", ["t", "success"], list(zip(rec.t, rec.success)))


def gap_curves(out: Path, ns):
    for n in ns:
        times = np.linspace(0, 10 * n, 1001)
        write(out / f"delta_n{n}.csv", ["t", "delta"], [(t, analytics.delta(n, t)) for t in times])
    write(out / "delta_max.csv", ["n", "t_star", "delta_max", "asymptote"],
          [(n, r.t_star, r.delta_max, r.asymptote)
           for n in range(3, 201) for r in [analytics.delta_max(n)]])


def quantum_large_n(out: Path, n: int):
    times = np.linspace(0, 2 * math.pi * math.sqrt(n), 1001)
    write(out / f"quantum_asymptotic_n{n}.csv", ["t", "discrete", "continuous"],
          [(t, *analytics.quantum_asymptotic_comparison(n, t)) for t in times])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("data"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    random_walks(args.out, 256)
    coined(args.out, 1024)
    hamiltonian(args.out, 1024)
    gap_curves(args.out, (4, 20, 40))
    quantum_large_n(args.out, 10**6)


if __name__ == "__main__":
    main()
