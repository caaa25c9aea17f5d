"""Continuous-time quantum walk search with H = -gamma L - |a><a|."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg import EigenSystem, hermitian_eigen
from .model import (
    CompleteGraphInstance,
    EvolutionRecord,
    VertexAmplitudeState,
    complete_graph_laplacian,
    uniform_superposition_vertices,
)
from .rw_continuous import sample_times


@dataclass(frozen=True, eq=False)
class SearchHamiltonian:
    matrix: np.ndarray
    gamma: float

    def eigen(self) -> EigenSystem:
        return hermitian_eigen(self.matrix)


@dataclass(frozen=True)
class Subspace2DQuantum:
    """Amplitudes on |a> and on the uniform unmarked superposition |b>."""

    c_a: complex
    c_b: complex

    @property
    def coeffs(self) -> tuple[complex, complex]:
        return (self.c_a, self.c_b)

    @property
    def success(self) -> float:
        return abs(self.c_a) ** 2


def critical_gamma(n: int) -> float:
    if n < 2:
        raise DomainError("n must be >= 2")
    return 1.0 / n


def _gamma(n: int, gamma: float | None) -> float:
    gamma = critical_gamma(n) if gamma is None else float(gamma)
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma!r}")
    return gamma


def build_hamiltonian(g: CompleteGraphInstance, gamma: float | None = None) -> SearchHamiltonian:
    gamma = _gamma(g.n, gamma)
    h = -gamma * complete_graph_laplacian(g.n)
    h[g.a, g.a] -= 1.0
    h.setflags(write=False)
    return SearchHamiltonian(h, gamma)


def subspace_hamiltonian(n: int, gamma: float | None = None) -> np.ndarray:
    """H restricted to span{|a>, |b>}."""
    gamma = _gamma(n, gamma)
    off = -gamma * math.sqrt(n - 1)
    return np.array([[gamma * (n - 1) - 1.0, off], [off, gamma]])


def _evolve_eigen(eig: EigenSystem, times: np.ndarray, psi0: np.ndarray) -> np.ndarray:
    """Rows are e^{-iHt} psi0 for each t, built from an exact eigenbasis."""
    coeffs = eig.vectors.conj().T @ psi0
    phases = np.exp(-1j * np.outer(times, eig.values))
    return (phases * coeffs) @ eig.vectors.T


def states(
    g: CompleteGraphInstance, times, gamma: float | None = None
) -> list[VertexAmplitudeState]:
    ham = build_hamiltonian(g, gamma)
    psi0 = uniform_superposition_vertices(g).amps
    rows = _evolve_eigen(ham.eigen(), np.asarray(times, dtype=float), psi0)
    return [VertexAmplitudeState(r) for r in rows]


def state_at(g: CompleteGraphInstance, t: float, gamma: float | None = None) -> VertexAmplitudeState:
    return states(g, [t], gamma)[0]


def default_dt(n: int) -> float:
    """200 samples per period of the success probability."""
    return math.pi * math.sqrt(n) / 200.0


def evolve_full(
    g: CompleteGraphInstance,
    t_max: float,
    dt: float | None = None,
    gamma: float | None = None,
) -> EvolutionRecord:
    times = sample_times(t_max, default_dt(g.n) if dt is None else dt)
    hist = states(g, times, gamma)
    return EvolutionRecord(
        t=times,
        success=[abs(s.amps[g.a]) ** 2 for s in hist],
        conserved=[s.conserved() for s in hist],
    )


def evolve_subspace(
    g: CompleteGraphInstance, t: float, gamma: float | None = None
) -> Subspace2DQuantum:
    """Two-level evolution; at the critical gamma this equals the displayed
    c_a = i sin(t/sqrt n) + cos(t/sqrt n)/sqrt n, c_b = sqrt((n-1)/n) cos(t/sqrt n)."""
    if t < 0:
        raise ValueError("t must be >= 0")
    return evolve_subspace_series(g, [t], gamma)[0]


def evolve_subspace_series(
    g: CompleteGraphInstance, times, gamma: float | None = None
) -> list[Subspace2DQuantum]:
    h2 = subspace_hamiltonian(g.n, gamma)
    psi0 = np.array([1.0 / math.sqrt(g.n), math.sqrt((g.n - 1) / g.n)], dtype=complex)
    rows = _evolve_eigen(hermitian_eigen(h2), np.asarray(times, dtype=float), psi0)
    return [Subspace2DQuantum(complex(r[0]), complex(r[1])) for r in rows]


def subspace_closed_form(n: int, t: float) -> tuple[complex, complex]:
    """(c_a, c_b) at time t for gamma = 1/n."""
    w = t / math.sqrt(n)
    return (
        complex(math.cos(w) / math.sqrt(n), math.sin(w)),
        complex(math.sqrt((n - 1) / n) * math.cos(w), 0.0),
    )


def success_closed_form(n: int, t: float) -> float:
    """sin^2(t/sqrt n) + cos^2(t/sqrt n)/n, valid at gamma = 1/n."""
    if n < 2:
        raise DomainError("n must be >= 2")
    if t < 0:
        raise DomainError("t must be >= 0")
    w = t / math.sqrt(n)
    return math.sin(w) ** 2 + math.cos(w) ** 2 / n


def runtime(n: int) -> float:
    """First time the success probability reaches 1: pi sqrt(n) / 2."""
    if n < 2:
        raise DomainError("n must be >= 2")
    return math.pi * math.sqrt(n) / 2.0


def energy(ham: SearchHamiltonian, psi: VertexAmplitudeState) -> float:
    return float(np.real(np.vdot(psi.amps, ham.matrix @ psi.amps)))
