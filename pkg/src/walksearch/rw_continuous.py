"""Continuous-time random walk search, p(t) = exp(L t / ||L||) p(0)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg import expm, expm_apply, matvec, spectral_norm
from .model import (
    CompleteGraphInstance,
    EvolutionRecord,
    ProbabilityState,
    uniform_distribution,
)
from .rw_discrete import Subspace2DClassical, asymptotic_runtime  # noqa: F401

PROPAGATOR_TOL = 1e-15


@dataclass(frozen=True, eq=False)
class AbsorbingLaplacian:
    """A - D with the marked column zeroed; ``norm`` is fixed to n."""

    matrix: np.ndarray
    norm: float

    def measured_norm(self) -> float:
        """Largest singular value of ``matrix`` (diagnostic only)."""
        return spectral_norm(self.matrix)


def build_absorbing_laplacian(g: CompleteGraphInstance) -> AbsorbingLaplacian:
    n, a = g.n, g.a
    adjacency = np.ones((n, n)) - np.eye(n)
    adjacency[:, a] = 0.0
    adjacency[a, a] = 1.0
    # Out-degree: unmarked vertices hop to n-1 others, the marked one to itself.
    degree = np.diag(adjacency.sum(axis=0))
    lap = adjacency - degree
    lap.setflags(write=False)
    return AbsorbingLaplacian(lap, float(n))


def subspace_generator(n: int) -> np.ndarray:
    """L / ||L|| restricted to span{e_a, e_b}."""
    return np.array([[0.0, 1.0], [0.0, -1.0]]) / n


def sample_times(t_max: float, dt: float) -> np.ndarray:
    """0, dt, 2dt, ... below t_max, always ending exactly at t_max."""
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    if not t_max >= 0:
        raise ValueError(f"t_max must be >= 0, got {t_max!r}")
    k = int(math.floor(t_max / dt + 1e-9))
    times = dt * np.arange(k + 1, dtype=float)
    if t_max - times[-1] > 1e-9 * max(1.0, t_max):
        times = np.append(times, t_max)
    else:
        times[-1] = t_max
    return times


def _propagate(gen: np.ndarray, times: np.ndarray, x0: np.ndarray) -> list[np.ndarray]:
    # Reuse one propagator while the spacing is uniform.
    out = [x0]
    cache: dict[float, np.ndarray] = {}
    x = x0
    for prev, cur in zip(times[:-1], times[1:]):
        step = float(cur - prev)
        key = round(step, 12)
        if key not in cache:
            cache[key] = expm(gen, step, PROPAGATOR_TOL)
        x = matvec(cache[key], x)
        out.append(x)
    return out


def states(g: CompleteGraphInstance, times) -> list[ProbabilityState]:
    lap = build_absorbing_laplacian(g)
    times = np.asarray(times, dtype=float)
    xs = _propagate(lap.matrix / lap.norm, times, uniform_distribution(g).probs)
    return [ProbabilityState(x) for x in xs]


def state_at(g: CompleteGraphInstance, t: float) -> ProbabilityState:
    lap = build_absorbing_laplacian(g)
    x = expm_apply(lap.matrix / lap.norm, t, uniform_distribution(g).probs, PROPAGATOR_TOL)
    return ProbabilityState(x)


def default_dt(n: int) -> float:
    return n / 100.0


def evolve_full(
    g: CompleteGraphInstance, t_max: float, dt: float | None = None
) -> EvolutionRecord:
    times = sample_times(t_max, default_dt(g.n) if dt is None else dt)
    hist = states(g, times)
    return EvolutionRecord(
        t=times,
        success=[s.probs[g.a] for s in hist],
        conserved=[float(s.probs.sum()) for s in hist],
    )


def evolve_subspace(g: CompleteGraphInstance, t: float) -> Subspace2DClassical:
    if t < 0:
        raise ValueError("t must be >= 0")
    x0 = np.array([1.0 / g.n, (g.n - 1) / g.n])
    c = expm_apply(subspace_generator(g.n), t, x0, PROPAGATOR_TOL)
    return Subspace2DClassical(float(c[0]), float(c[1]))


def evolve_subspace_series(
    g: CompleteGraphInstance, t_max: float, dt: float | None = None
) -> tuple[np.ndarray, list[Subspace2DClassical]]:
    times = sample_times(t_max, default_dt(g.n) if dt is None else dt)
    x0 = np.array([1.0 / g.n, (g.n - 1) / g.n])
    xs = _propagate(subspace_generator(g.n), times, x0)
    return times, [Subspace2DClassical(float(x[0]), float(x[1])) for x in xs]


def success_closed_form(n: int, t: float) -> float:
    """1 - ((n-1)/n) e^{-t/n}."""
    if n < 2:
        raise DomainError("n must be >= 2")
    if t < 0:
        raise DomainError("t must be >= 0")
    return 1.0 - (n - 1) / n * math.exp(-t / n)


def runtime_for_epsilon(n: int, eps: float) -> float:
    """n ln(((n-1)/n) / eps)."""
    if n < 2:
        raise DomainError("n must be >= 2")
    if not 0 < eps <= (n - 1) / n:
        raise DomainError(f"eps must lie in (0, {(n - 1) / n!r}], got {eps!r}")
    if eps == (n - 1) / n:
        return 0.0
    return n * math.log((n - 1) / n / eps)
