"""Problem instances, walker states and Born-rule readout.

Vertex labels are 1-based at every public boundary and 0-based inside
arrays. Arc (i -> j) of the coined walk lives at slot
``(i-1)(n-1) + (j-1 if j < i else j-2)``, i.e. the directions at each
vertex point to the remaining vertices in increasing order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DimensionError, InstanceError

STATE_TOL = 1e-10
CONSERVED_TOL = 1e-9


def _frozen(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class CompleteGraphInstance:
    """Complete graph on ``n`` vertices with one marked vertex (1-based)."""

    n: int
    marked: int = 1

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool):
            raise InstanceError(f"n must be an integer, got {self.n!r}")
        if self.n < 2:
            raise InstanceError(f"n must be >= 2, got {self.n}")
        if not isinstance(self.marked, (int, np.integer)):
            raise InstanceError(f"marked must be an integer, got {self.marked!r}")
        if not 1 <= self.marked <= self.n:
            raise InstanceError(f"marked must lie in 1..{self.n}, got {self.marked}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "marked", int(self.marked))

    @property
    def a(self) -> int:
        """0-based index of the marked vertex."""
        return self.marked - 1

    def require_coined(self) -> None:
        if self.n < 3:
            raise InstanceError(
                f"the coined walk needs n >= 3 (two distinct unmarked vertices), got {self.n}"
            )


@dataclass(frozen=True, eq=False)
class ProbabilityState:
    probs: np.ndarray

    def __post_init__(self):
        p = _frozen(self.probs, float)
        if p.ndim != 1:
            raise DimensionError("probabilities must be a 1-D sequence")
        if np.any(p < -1e-12):
            raise ValueError("probabilities must be nonnegative")
        if abs(p.sum() - 1.0) > STATE_TOL:
            raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")
        object.__setattr__(self, "probs", p)

    @property
    def n(self) -> int:
        return self.probs.size

    def vertex_probabilities(self) -> np.ndarray:
        return self.probs.copy()

    def conserved(self) -> float:
        return float(self.probs.sum())


@dataclass(frozen=True, eq=False)
class VertexAmplitudeState:
    amps: np.ndarray

    def __post_init__(self):
        z = _frozen(self.amps, complex)
        if z.ndim != 1:
            raise DimensionError("amplitudes must be a 1-D sequence")
        norm2 = float(np.vdot(z, z).real)
        if abs(norm2 - 1.0) > STATE_TOL:
            raise ValueError(f"squared norm is {norm2!r}, not 1")
        object.__setattr__(self, "amps", z)

    @property
    def n(self) -> int:
        return self.amps.size

    def vertex_probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def conserved(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)


@dataclass(frozen=True, eq=False)
class ArcState:
    """Amplitudes on the n(n-1) directed edges of the complete graph."""

    amps: np.ndarray

    def __post_init__(self):
        z = _frozen(self.amps, complex)
        if z.ndim != 1:
            raise DimensionError("amplitudes must be a 1-D sequence")
        n = n_from_arc_count(z.size)
        norm2 = float(np.vdot(z, z).real)
        if abs(norm2 - 1.0) > STATE_TOL:
            raise ValueError(f"squared norm is {norm2!r}, not 1")
        object.__setattr__(self, "amps", z)
        object.__setattr__(self, "_n", n)

    @property
    def n(self) -> int:
        return self._n

    @property
    def grid(self) -> np.ndarray:
        """Amplitudes reshaped to (vertex, direction)."""
        return self.amps.reshape(self.n, self.n - 1)

    def amplitude(self, i: int, j: int) -> complex:
        return complex(self.amps[arc_index(self.n, i, j)])

    def vertex_probabilities(self) -> np.ndarray:
        return (np.abs(self.grid) ** 2).sum(axis=1)

    def conserved(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)


State = Union[ProbabilityState, VertexAmplitudeState, ArcState]


@dataclass(frozen=True, eq=False)
class EvolutionRecord:
    """Sampled success-probability time series.

    ``conserved`` is the total probability (random walks) or the squared
    norm (quantum walks) at each sample.
    """

    t: np.ndarray
    success: np.ndarray
    conserved: np.ndarray

    def __post_init__(self):
        t = _frozen(self.t, float)
        s = _frozen(self.success, float)
        c = _frozen(self.conserved, float)
        if not (t.shape == s.shape == c.shape) or t.ndim != 1:
            raise DimensionError("t, success and conserved must be equal-length 1-D")
        if t.size > 1 and np.any(np.diff(t) <= 0):
            raise ValueError("sample times must be strictly increasing")
        if c.size and np.max(np.abs(c - 1.0)) > CONSERVED_TOL:
            raise ValueError(
                f"conserved quantity drifted by {np.max(np.abs(c - 1.0)):.3g}"
            )
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "success", s)
        object.__setattr__(self, "conserved", c)

    def __len__(self):
        return self.t.size

    def rows(self):
        return list(zip(self.t.tolist(), self.success.tolist(), self.conserved.tolist()))


def arc_index(n: int, i: int, j: int) -> int:
    """0-based slot of arc (i -> j), with 1-based vertex labels."""
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise IndexError(f"no arc ({i} -> {j}) in the complete graph on {n} vertices")
    return (i - 1) * (n - 1) + (j - 1 if j < i else j - 2)


def arc_at(n: int, k: int) -> tuple[int, int]:
    """Inverse of :func:`arc_index`."""
    if not 0 <= k < n * (n - 1):
        raise IndexError(f"arc slot {k} out of range for n={n}")
    i, d = divmod(k, n - 1)
    j = d if d < i else d + 1
    return i + 1, j + 1


def n_from_arc_count(m: int) -> int:
    n = int(round((1 + np.sqrt(1 + 4 * m)) / 2))
    if n * (n - 1) != m or n < 2:
        raise DimensionError(f"{m} is not n(n-1) for any n >= 2")
    return n


def complete_graph_laplacian(n: int) -> np.ndarray:
    """Discrete Laplacian A - D of the complete graph (no absorption)."""
    return np.ones((n, n)) - n * np.eye(n)


def uniform_distribution(g: CompleteGraphInstance) -> ProbabilityState:
    return ProbabilityState(np.full(g.n, 1.0 / g.n))


def uniform_superposition_vertices(g: CompleteGraphInstance) -> VertexAmplitudeState:
    return VertexAmplitudeState(np.full(g.n, 1.0 / np.sqrt(g.n), dtype=complex))


def uniform_superposition_arcs(g: CompleteGraphInstance) -> ArcState:
    g.require_coined()
    m = g.n * (g.n - 1)
    return ArcState(np.full(m, 1.0 / np.sqrt(m), dtype=complex))


def vertex_probability(state: State, v: int) -> float:
    """Born-rule probability of finding the walker at vertex ``v`` (1-based)."""
    if not 1 <= v <= state.n:
        raise IndexError(f"vertex {v} out of range 1..{state.n}")
    if isinstance(state, ArcState):
        row = state.grid[v - 1]
        return float(np.sum(np.abs(row) ** 2))
    if isinstance(state, VertexAmplitudeState):
        return float(abs(state.amps[v - 1]) ** 2)
    if isinstance(state, ProbabilityState):
        return float(state.probs[v - 1])
    raise TypeError(f"unsupported state type {type(state).__name__}")


def sample_vertices(
    state: State, shots: int = 1, seed: int | None = None
) -> np.ndarray:
    """Measure the walker's position ``shots`` times; returns 1-based labels.

    Each shot is an independent measurement of a fresh copy of ``state``.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    p = np.clip(state.vertex_probabilities(), 0.0, None)
    p = p / p.sum()
    rng = np.random.default_rng(seed)
    return rng.choice(state.n, size=shots, p=p) + 1
