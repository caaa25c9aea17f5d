"""Print the N=4 coined-walk trace (Q, CQ, S CQ per step) as exact rationals.

Amplitudes are shown in units of 1/sqrt(3), arcs ordered (1,2), (1,3), ...,
(4,3), with vertex 2 marked.

    python3 scripts/table2_trace.py --steps 3
"""

import argparse
from fractions import Fraction

import numpy as np

from walksearch.model import arc_at
from walksearch.qw_discrete import CoinedOperators


def rows(steps: int):
    ops = CoinedOperators(4, 1)
    x = np.array([Fraction(1, 2)] * 12, dtype=object)
    yield "psi(0)", x
    for t in range(steps):
        q = ops.oracle(x)
        cq = ops.coin(q)
        x = ops.shift(cq)
        yield f"Q psi({t})", q
        yield f"CQ psi({t})", cq
        yield f"psi({t + 1})", x


def main():
    ap = argparse.ArgumentParser(description="exact N=4 coined-walk trace")
    ap.add_argument("--steps", type=int, default=3)
    args = ap.parse_args()
    arcs = [f"{i}{j}" for i, j in (arc_at(4, k) for k in range(12))]
    print(",".join(["row"] + arcs + ["p_marked"]))
    for name, amps in rows(args.steps):
        p = sum(v * v for v in amps[3:6]) / 3
        print(",".join([name] + [str(v) for v in amps] + [str(p)]))


if __name__ == "__main__":
    main()
