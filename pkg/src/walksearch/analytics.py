"""Cross-walk comparisons and the summary table.

The table is a view over the walk modules: every number in it comes from
calling the owning module's function, never from a local formula.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from . import qw_continuous, qw_discrete, rw_continuous, rw_discrete
from .errors import DomainError, InstanceError

WALKS = ("rw-discrete", "rw-continuous", "qw-discrete", "qw-continuous")


@dataclass(frozen=True)
class DeltaReport:
    n: int
    t_star: float
    delta_max: float
    asymptote: float


def _check_n(n: int) -> None:
    if n < 3:
        raise DomainError(f"the random-walk gap needs n >= 3, got {n}")


def delta(n: int, t: float) -> float:
    """e^{-t/n} - ((n-2)/(n-1))^t."""
    _check_n(n)
    if t < 0:
        raise DomainError("t must be >= 0")
    return math.exp(-t / n) - math.exp(t * math.log1p(-1.0 / (n - 1)))


def delta_derivative(n: int, t: float) -> float:
    log_r = math.log1p(-1.0 / (n - 1))
    return -math.exp(-t / n) / n - math.exp(t * log_r) * log_r


def delta_argmax(n: int) -> float:
    """Stationary point n ln(n ln((n-1)/(n-2))) / (n ln((n-1)/(n-2)) - 1)."""
    _check_n(n)
    k = n * math.log1p(1.0 / (n - 2))
    return n * math.log(k) / (k - 1.0)


def delta_asymptote(n: int) -> float:
    return 3.0 / (2.0 * math.e * n)


def delta_max(n: int) -> DeltaReport:
    t_star = delta_argmax(n)
    return DeltaReport(n, t_star, delta(n, t_star), delta_asymptote(n))


def quantum_asymptotic_comparison(n: int, t: float) -> tuple[float, float]:
    """Large-n success curves: (1/2) sin^2(sqrt2 t/sqrt n) and sin^2(t/sqrt n)."""
    if n < 3:
        raise DomainError("n must be >= 3")
    w = t / math.sqrt(n)
    return 0.5 * math.sin(math.sqrt(2.0) * w) ** 2, math.sin(w) ** 2


@dataclass
class WalkColumn:
    walk: str
    oracle: str
    vector_space: str
    subspace: str
    t: float | None = None
    success_at_t: float | None = None
    probability: float | None = None
    runtime: float | None = None
    asymptotic_probability: float | None = None
    asymptotic_runtime: float | None = None
    repeated: dict | None = None
    overall: str = ""
    notes: list = field(default_factory=list)


ROW_NAMES = (
    "Oracle",
    "Vector Space",
    "Subspace",
    "Success Probability at Time t",
    "Probability and Runtime",
    "Asymptotic Prob. and Runtime",
    "Overall Runtime",
)


@dataclass
class SummaryTable:
    n: int
    epsilon: float
    columns: dict[str, WalkColumn]

    def to_dict(self) -> dict:
        """Rows keyed by the printed row names, then by walk."""
        out: dict = {name: {} for name in ROW_NAMES}
        for walk, col in self.columns.items():
            out["Oracle"][walk] = col.oracle
            out["Vector Space"][walk] = col.vector_space
            out["Subspace"][walk] = col.subspace
            out["Success Probability at Time t"][walk] = {
                "t": col.t, "success": col.success_at_t,
            }
            out["Probability and Runtime"][walk] = {
                "probability": col.probability, "runtime": col.runtime,
            }
            asym = {
                "probability": col.asymptotic_probability,
                "runtime": col.asymptotic_runtime,
            }
            if col.repeated is not None:
                asym["repeated"] = col.repeated
            out["Asymptotic Prob. and Runtime"][walk] = asym
            out["Overall Runtime"][walk] = col.overall
            if col.notes:
                out.setdefault("Notes", {})[walk] = list(col.notes)
        return out

    def column(self, walk: str) -> WalkColumn:
        return self.columns[walk]

    def as_records(self) -> list[dict]:
        return [asdict(c) for c in self.columns.values()]


def _rw_discrete_column(n, eps, t):
    col = WalkColumn("rw-discrete", "Absorbing", "R^N", "R^2", overall="O(N)")
    try:
        col.runtime = rw_discrete.runtime_for_epsilon(n, eps)
        col.probability = rw_discrete.success_closed_form(n, col.runtime)
        steps = rw_discrete.runtime_steps(n, eps)
    except DomainError as exc:
        col.notes.append(str(exc))
        steps = 1 if n == 2 else None
    col.t = float(math.floor(t)) if t is not None else (float(steps) if steps is not None else None)
    if col.t is not None:
        col.success_at_t = rw_discrete.success_closed_form(n, int(col.t))
    col.asymptotic_probability = 1.0 - eps
    col.asymptotic_runtime = rw_discrete.asymptotic_runtime(n, eps)
    return col


def _rw_continuous_column(n, eps, t):
    col = WalkColumn("rw-continuous", "Absorbing", "R^N", "R^2", overall="O(N)")
    try:
        col.runtime = rw_continuous.runtime_for_epsilon(n, eps)
        col.probability = rw_continuous.success_closed_form(n, col.runtime)
    except DomainError as exc:
        col.notes.append(str(exc))
    col.t = t if t is not None else col.runtime
    if col.t is not None:
        col.success_at_t = rw_continuous.success_closed_form(n, col.t)
    col.asymptotic_probability = 1.0 - eps
    col.asymptotic_runtime = rw_continuous.asymptotic_runtime(n, eps)
    return col


def _qw_discrete_column(n, eps, t):
    col = WalkColumn(
        "qw-discrete", "Phase", "C^N (x) C^(N-1) -> R^N (x) R^(N-1)", "C^3 -> R^3",
        overall="O(sqrt(N))",
    )
    if n < 3:
        col.notes.append("requires N >= 3")
        return col
    steps = qw_discrete.optimal_steps(n)
    col.runtime = float(steps)
    col.probability = qw_discrete.success_at_optimum(n)
    col.t = float(math.floor(t)) if t is not None else float(steps)
    col.success_at_t = qw_discrete.success_closed_form(n, int(col.t))
    col.asymptotic_probability = 0.5
    col.asymptotic_runtime = qw_discrete.asymptotic_steps(n)
    if 0 < eps < 1:
        runs, total = qw_discrete.repetition_plan(n, eps)
        col.repeated = {"probability": 1.0 - eps, "runs": runs, "total_steps": total}
    return col


def _qw_continuous_column(n, eps, t):
    col = WalkColumn(
        "qw-continuous", "Hamiltonian Phase", "C^N", "C^2", overall="O(sqrt(N))"
    )
    col.runtime = qw_continuous.runtime(n)
    col.probability = qw_continuous.success_closed_form(n, col.runtime)
    col.t = t if t is not None else col.runtime
    col.success_at_t = qw_continuous.success_closed_form(n, col.t)
    col.asymptotic_probability = 1.0
    col.asymptotic_runtime = qw_continuous.runtime(n)
    return col


def summary_table(n: int, eps: float, t: float | None = None) -> SummaryTable:
    """Numeric summary of all four walks for one (n, eps).

    ``t`` is the time at which the success-probability row is evaluated;
    by default each walk uses its own runtime (rounded up to a whole step
    for the random walk, the optimal even step for the coined walk).
    Discrete walks use ``floor(t)`` when ``t`` is given.
    """
    if n < 2:
        raise InstanceError("n must be >= 2")
    if not 0 < eps <= 1:
        raise DomainError(f"eps must lie in (0, 1], got {eps!r}")
    builders = (_rw_discrete_column, _rw_continuous_column, _qw_discrete_column,
                _qw_continuous_column)
    cols = [b(n, eps, t) for b in builders]
    return SummaryTable(n, eps, {c.walk: c for c in cols})
