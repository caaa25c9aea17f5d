"""Command-line front end.

    walksearch simulate --walk qw-discrete --n 4 --marked 2 --t-max 3
    walksearch runtime  --walk rw-discrete --n 4 --epsilon 0.1
    walksearch table    --n 4 --epsilon 0.1 --format json
    walksearch delta    --n 4 --n 20 --n 40
    walksearch sample   --walk qw-continuous --n 16 --t-max 6.28 --seed 7 --shots 10
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import analytics, qw_continuous, qw_discrete, rw_continuous, rw_discrete
from .errors import WalkSearchError
from .model import CompleteGraphInstance, sample_vertices

WALKS = analytics.WALKS
MODES = ("full", "subspace", "closed")
SIG_DIGITS = 12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    walk: str | None = None
    n: int | None = None
    marked: int = 1
    mode: str = "full"
    t_max: float | None = None
    dt: float | None = None
    epsilon: float | None = None
    gamma: float | None = None
    format: str = "csv"
    seed: int | None = None
    shots: int = 1
    output: str | None = None


def _num(x):
    """Round to 12 significant digits; keep integers and None as they are."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    x = float(x)
    if not math.isfinite(x):
        return x
    return float(format(x, f".{SIG_DIGITS}g"))


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, float):
        return format(x, f".{SIG_DIGITS}g")
    return str(x)


def _deep_num(obj):
    if isinstance(obj, dict):
        return {k: _deep_num(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_deep_num(v) for v in obj]
    return _num(obj)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(_num(v)) for v in r])
    return buf.getvalue()


def _json(payload) -> str:
    return json.dumps(_deep_num(payload), indent=2, sort_keys=False) + "\n"


def _config_dict(cfg: RunConfig) -> dict:
    d = asdict(cfg)
    d.pop("output")
    d.pop("format")
    return d


def _steps(t_max) -> int:
    if t_max is None:
        raise UsageError("--t-max is required")
    if t_max < 0 or float(t_max) != int(t_max):
        raise UsageError(f"--t-max must be a nonnegative integer for discrete walks, got {t_max}")
    return int(t_max)


def _need_t(t_max) -> float:
    if t_max is None:
        raise UsageError("--t-max is required")
    if t_max < 0:
        raise UsageError("--t-max must be >= 0")
    return float(t_max)


def _single_n(ns) -> int:
    if not ns:
        raise UsageError("--n is required")
    if len(ns) != 1:
        raise UsageError("this command takes exactly one --n")
    return ns[0]


def _simulate_rows(cfg: RunConfig, g: CompleteGraphInstance):
    walk, mode, n = cfg.walk, cfg.mode, g.n
    if walk == "rw-discrete":
        t = _steps(cfg.t_max)
        if mode == "full":
            return rw_discrete.evolve_full(g, t).rows()
        if mode == "subspace":
            return [(k, s.c_a, s.c_a + s.c_b) for k, s in enumerate(rw_discrete.evolve_subspace(g, t))]
        rows = []
        for k in range(t + 1):
            c_a = rw_discrete.success_closed_form(n, k)
            c_b = (n - 1) / n * ((n - 2) / (n - 1)) ** k
            rows.append((k, c_a, c_a + c_b))
        return rows
    if walk == "rw-continuous":
        t_max = _need_t(cfg.t_max)
        dt = cfg.dt if cfg.dt is not None else rw_continuous.default_dt(n)
        if mode == "full":
            return rw_continuous.evolve_full(g, t_max, dt).rows()
        if mode == "subspace":
            times, sub = rw_continuous.evolve_subspace_series(g, t_max, dt)
            return [(t, s.c_a, s.c_a + s.c_b) for t, s in zip(times, sub)]
        rows = []
        for t in rw_continuous.sample_times(t_max, dt):
            c_a = rw_continuous.success_closed_form(n, t)
            c_b = (n - 1) / n * math.exp(-t / n)
            rows.append((t, c_a, c_a + c_b))
        return rows
    if walk == "qw-discrete":
        g.require_coined()
        t = _steps(cfg.t_max)
        if mode == "full":
            return qw_discrete.evolve_full(g, t).rows()
        if mode == "subspace":
            return [(k, s.success, sum(c * c for c in s.coeffs))
                    for k, s in enumerate(qw_discrete.evolve_subspace(g, t))]
        rows = []
        for k in range(t + 1):
            coeffs = qw_discrete.subspace_closed_form(n, k)
            rows.append((k, qw_discrete.success_closed_form(n, k), sum(c * c for c in coeffs)))
        return rows
    # qw-continuous
    t_max = _need_t(cfg.t_max)
    dt = cfg.dt if cfg.dt is not None else qw_continuous.default_dt(n)
    if mode == "full":
        return qw_continuous.evolve_full(g, t_max, dt, cfg.gamma).rows()
    times = rw_continuous.sample_times(t_max, dt)
    if mode == "subspace":
        sub = qw_continuous.evolve_subspace_series(g, times, cfg.gamma)
        return [(t, s.success, abs(s.c_a) ** 2 + abs(s.c_b) ** 2) for t, s in zip(times, sub)]
    if cfg.gamma is not None and not math.isclose(cfg.gamma, 1.0 / n, rel_tol=1e-12):
        raise UsageError("--mode closed requires the critical gamma 1/n")
    rows = []
    for t in times:
        c_a, c_b = qw_continuous.subspace_closed_form(n, t)
        rows.append((t, qw_continuous.success_closed_form(n, t), abs(c_a) ** 2 + abs(c_b) ** 2))
    return rows


def cmd_simulate(cfg: RunConfig) -> str:
    g = CompleteGraphInstance(cfg.n, cfg.marked)
    rows = _simulate_rows(cfg, g)
    if cfg.walk == "qw-continuous" and cfg.gamma is not None:
        crit = math.isclose(cfg.gamma, 1.0 / g.n, rel_tol=1e-12)
        if not crit:
            print(
                f"note: gamma={cfg.gamma} is not the critical value 1/n; "
                "closed forms do not apply",
                file=sys.stderr,
            )
    if cfg.format == "json":
        config = _config_dict(cfg)
        if cfg.walk == "qw-continuous":
            gamma = qw_continuous.critical_gamma(g.n) if cfg.gamma is None else cfg.gamma
            config["gamma_critical"] = math.isclose(gamma, 1.0 / g.n, rel_tol=1e-12)
        return _json({"config": config, "samples": [list(r) for r in rows]})
    return _csv(("t", "success", "conserved"), rows)


def _runtime_record(cfg: RunConfig, n: int) -> dict:
    eps = cfg.epsilon
    walk = cfg.walk
    if walk in ("rw-discrete", "rw-continuous") and eps is None:
        raise UsageError(f"--epsilon is required for {walk}")
    if walk == "rw-discrete":
        t = rw_discrete.runtime_for_epsilon(n, eps)
        steps = rw_discrete.runtime_steps(n, eps)
        return {
            "n": n, "epsilon": eps, "t": t,
            "success": rw_discrete.success_closed_form(n, t),
            "steps": steps,
            "success_at_steps": rw_discrete.success_closed_form(n, steps),
            "asymptotic_t": rw_discrete.asymptotic_runtime(n, eps),
        }
    if walk == "rw-continuous":
        t = rw_continuous.runtime_for_epsilon(n, eps)
        return {
            "n": n, "epsilon": eps, "t": t,
            "success": rw_continuous.success_closed_form(n, t),
            "asymptotic_t": rw_continuous.asymptotic_runtime(n, eps),
        }
    if walk == "qw-discrete":
        CompleteGraphInstance(n).require_coined()
        steps = qw_discrete.optimal_steps(n)
        rec = {
            "n": n, "epsilon": eps, "t": steps,
            "success": qw_discrete.success_at_optimum(n),
            "exact_success": qw_discrete.success_closed_form(n, steps),
            "asymptotic_t": qw_discrete.asymptotic_steps(n),
        }
        if eps is not None:
            runs, total = qw_discrete.repetition_plan(n, eps)
            rec.update(runs=runs, total_steps=total)
        return rec
    t = qw_continuous.runtime(n)
    return {"n": n, "epsilon": eps, "t": t, "success": qw_continuous.success_closed_form(n, t)}


def _records_out(cfg: RunConfig, records: list[dict]) -> str:
    if cfg.format == "json":
        return _json({"config": _config_dict(cfg), "records": records})
    header = list(records[0].keys())
    return _csv(header, [[r.get(k) for k in header] for r in records])


def cmd_runtime(cfg: RunConfig, ns: list[int]) -> str:
    if not ns:
        raise UsageError("--n is required")
    return _records_out(cfg, [_runtime_record(cfg, n) for n in ns])


def cmd_table(cfg: RunConfig) -> str:
    eps = 0.1 if cfg.epsilon is None else cfg.epsilon
    table = analytics.summary_table(cfg.n, eps, cfg.t_max)
    data = table.to_dict()
    if cfg.format == "json":
        config = _config_dict(cfg)
        config["epsilon"] = eps
        return _json({"config": config, "table": data})
    rows = []
    for row_name, cells in data.items():
        if row_name == "Notes":
            rows.append([row_name] + ["; ".join(cells.get(w, [])) for w in WALKS])
            continue
        sample = next(iter(cells.values()))
        if isinstance(sample, dict):
            for key in sample:
                vals = [cells[w].get(key) for w in WALKS]
                if key == "repeated":
                    vals = [None if v is None else
                            f"runs={v['runs']} total_steps={_cell(_num(v['total_steps']))}"
                            for v in vals]
                rows.append([f"{row_name}: {key}"] + vals)
        else:
            rows.append([row_name] + [cells[w] for w in WALKS])
    return _csv(["property", *WALKS], rows)


def cmd_delta(cfg: RunConfig, ns: list[int]) -> str:
    if not ns:
        raise UsageError("--n is required")
    records = [asdict(analytics.delta_max(n)) for n in ns]
    return _records_out(cfg, records)


def cmd_sample(cfg: RunConfig) -> str:
    g = CompleteGraphInstance(cfg.n, cfg.marked)
    if cfg.walk == "rw-discrete":
        state = rw_discrete.state_at(g, _steps(cfg.t_max))
    elif cfg.walk == "rw-continuous":
        state = rw_continuous.state_at(g, _need_t(cfg.t_max))
    elif cfg.walk == "qw-discrete":
        state = qw_discrete.state_at(g, _steps(cfg.t_max))
    else:
        state = qw_continuous.state_at(g, _need_t(cfg.t_max), cfg.gamma)
    shots = sample_vertices(state, cfg.shots, cfg.seed)
    rows = [(k + 1, int(v)) for k, v in enumerate(shots)]
    if cfg.format == "json":
        return _json({"config": _config_dict(cfg), "samples": [list(r) for r in rows]})
    return _csv(("shot", "vertex"), rows)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="walksearch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, walk_required=True):
        p.add_argument("--n", type=int, action="append", help="vertex count (repeatable where noted)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", help="write to this path instead of stdout")
        if walk_required:
            p.add_argument("--walk", choices=WALKS, required=True)
            p.add_argument("--marked", type=int, default=1)
            p.add_argument("--gamma", type=float, help="jumping rate (qw-continuous), default 1/n")

    p = sub.add_parser("simulate", help="success-probability time series")
    common(p)
    p.add_argument("--mode", choices=MODES, default="full")
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--dt", type=float, help="sample spacing (continuous walks)")

    p = sub.add_parser("runtime", help="runtime to reach the target probability")
    common(p)
    p.add_argument("--epsilon", type=float)

    p = sub.add_parser("table", help="numeric summary of all four walks")
    common(p, walk_required=False)
    p.add_argument("--epsilon", type=float, help="target failure probability (default 0.1)")
    p.add_argument("--t-max", type=float, help="time for the success-at-t row")

    p = sub.add_parser("delta", help="maximum gap between the two random walks")
    common(p, walk_required=False)

    p = sub.add_parser("sample", help="measure the walker's position")
    common(p)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--shots", type=int, default=1)
    return parser


def _config(args) -> tuple[RunConfig, list[int]]:
    if args.command is None:
        raise UsageError("a subcommand is required: simulate, runtime, table, delta, sample")
    ns = args.n or []
    cfg = RunConfig(
        command=args.command,
        walk=getattr(args, "walk", None),
        n=ns[0] if len(ns) == 1 else None,
        marked=getattr(args, "marked", 1),
        mode=getattr(args, "mode", "full"),
        t_max=getattr(args, "t_max", None),
        dt=getattr(args, "dt", None),
        epsilon=getattr(args, "epsilon", None),
        gamma=getattr(args, "gamma", None),
        format=args.format,
        seed=getattr(args, "seed", None),
        shots=getattr(args, "shots", 1),
        output=args.output,
    )
    return cfg, ns


def dispatch(cfg: RunConfig, ns: list[int]) -> str:
    if cfg.command == "runtime":
        return cmd_runtime(cfg, ns)
    if cfg.command == "delta":
        return cmd_delta(cfg, ns)
    cfg.n = _single_n(ns)
    if cfg.command == "simulate":
        return cmd_simulate(cfg)
    if cfg.command == "table":
        return cmd_table(cfg)
    return cmd_sample(cfg)


def run(argv: list[str] | None = None) -> str:
    """Parse ``argv`` and return the command's output text."""
    cfg, ns = _config(build_parser().parse_args(argv))
    return dispatch(cfg, ns)


def main(argv: list[str] | None = None) -> int:
    try:
        cfg, ns = _config(build_parser().parse_args(argv))
        text = dispatch(cfg, ns)
        if cfg.output:
            with open(cfg.output, "w", newline="\n", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    except (UsageError, WalkSearchError, ValueError, IndexError, OSError) as exc:
        msg = " ".join(str(exc).split())
        print(f"walksearch: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
