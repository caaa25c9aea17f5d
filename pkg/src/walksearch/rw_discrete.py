"""Discrete-time random walk search with an absorbing marked vertex."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg import matvec
from .model import (
    CompleteGraphInstance,
    EvolutionRecord,
    ProbabilityState,
    uniform_distribution,
)


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """Column-stochastic matrix; entry (i, j) is the hop probability j -> i."""

    matrix: np.ndarray


@dataclass(frozen=True)
class Subspace2DClassical:
    """Weights on the marked vertex and on the uniform unmarked distribution."""

    c_a: float
    c_b: float

    @property
    def coeffs(self) -> tuple[float, float]:
        return (self.c_a, self.c_b)


def build_transition(g: CompleteGraphInstance) -> TransitionMatrix:
    n, a = g.n, g.a
    p = np.full((n, n), 1.0 / (n - 1))
    np.fill_diagonal(p, 0.0)
    p[:, a] = 0.0
    p[a, a] = 1.0
    p.setflags(write=False)
    return TransitionMatrix(p)


def subspace_matrix(n: int) -> np.ndarray:
    """Transition matrix restricted to span{e_a, e_b}."""
    return np.array([[1.0, 1.0 / (n - 1)], [0.0, (n - 2) / (n - 1)]])


def _check_steps(t: int) -> int:
    if isinstance(t, bool) or int(t) != t or t < 0:
        raise ValueError(f"step count must be a nonnegative integer, got {t!r}")
    return int(t)


def states(g: CompleteGraphInstance, t: int) -> list[ProbabilityState]:
    """Distributions p(0), ..., p(t) by repeated multiplication with P."""
    t = _check_steps(t)
    p = build_transition(g).matrix
    x = uniform_distribution(g).probs
    out = [ProbabilityState(x)]
    for _ in range(t):
        x = matvec(p, x)
        out.append(ProbabilityState(x))
    return out


def state_at(g: CompleteGraphInstance, t: int) -> ProbabilityState:
    return states(g, t)[-1]


def evolve_full(g: CompleteGraphInstance, t: int) -> EvolutionRecord:
    hist = states(g, t)
    return EvolutionRecord(
        t=np.arange(len(hist), dtype=float),
        success=[s.probs[g.a] for s in hist],
        conserved=[s.conserved() for s in hist],
    )


def evolve_subspace(g: CompleteGraphInstance, t: int) -> list[Subspace2DClassical]:
    t = _check_steps(t)
    p2 = subspace_matrix(g.n)
    x = np.array([1.0 / g.n, (g.n - 1) / g.n])
    out = [Subspace2DClassical(*x)]
    for _ in range(t):
        x = matvec(p2, x)
        out.append(Subspace2DClassical(*x))
    return out


def success_closed_form(n: int, t: float) -> float:
    """1 - ((n-1)/n) ((n-2)/(n-1))^t."""
    if n < 2:
        raise DomainError("n must be >= 2")
    if t < 0:
        raise DomainError("t must be >= 0")
    return 1.0 - (n - 1) / n * ((n - 2) / (n - 1)) ** t


def runtime_for_epsilon(n: int, eps: float) -> float:
    """Real-valued time at which the success probability reaches 1 - eps.

    Take the ceiling for an executable step count; the success probability
    at that integer is at least 1 - eps.
    """
    if n == 2:
        raise DomainError(
            "n = 2: the walk reaches the marked vertex with certainty after one step"
        )
    if n < 2:
        raise DomainError("n must be >= 3")
    if not 0 < eps <= (n - 1) / n:
        raise DomainError(f"eps must lie in (0, {(n - 1) / n!r}], got {eps!r}")
    if eps == (n - 1) / n:
        return 0.0
    return math.log(n / (n - 1) * eps) / math.log((n - 2) / (n - 1))


def runtime_steps(n: int, eps: float) -> int:
    return int(math.ceil(runtime_for_epsilon(n, eps) - 1e-12))


def asymptotic_runtime(n: int, eps: float) -> float:
    """Large-n runtime n ln(1/eps), shared by both random walks."""
    if not 0 < eps <= 1:
        raise DomainError(f"eps must lie in (0, 1], got {eps!r}")
    return n * math.log(1.0 / eps)
