"""Coined discrete-time quantum walk search (Grover coin, flip-flop shift).

The oracle, coin and shift are applied as implicit maps on the
(vertex, direction) grid, which costs O(n^2) per step. They only use
sums, scalar division and negation, so they run unchanged on object
arrays of ``fractions.Fraction`` for exact arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionError, DomainError, InstanceError
from .model import (
    ArcState,
    CompleteGraphInstance,
    EvolutionRecord,
    arc_index,
    uniform_superposition_arcs,
)

EXPLICIT_MAX_N = 12


def shift_permutation(n: int) -> np.ndarray:
    """perm[k] is the slot of the reversed arc of slot k."""
    perm = np.empty(n * (n - 1), dtype=np.intp)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                perm[arc_index(n, i, j)] = arc_index(n, j, i)
    return perm


def apply_oracle(x: np.ndarray, n: int, a: int) -> np.ndarray:
    """Q = I - 2|a,s_c><a,s_c| on a flat arc vector (``a`` 0-based)."""
    out = x.copy()
    row = slice(a * (n - 1), (a + 1) * (n - 1))
    mean = out[row].sum() / (n - 1)
    out[row] = out[row] - 2 * mean
    return out


def apply_phase_oracle(x: np.ndarray, n: int, a: int) -> np.ndarray:
    """(I - 2|a><a|) (x) I: negate every amplitude at the marked vertex."""
    out = x.copy()
    out[a * (n - 1):(a + 1) * (n - 1)] = -out[a * (n - 1):(a + 1) * (n - 1)]
    return out


def apply_coin(x: np.ndarray, n: int) -> np.ndarray:
    """Grover diffusion at every vertex: invert about the per-vertex mean."""
    grid = x.reshape(n, n - 1)
    mean = grid.sum(axis=1, keepdims=True) / (n - 1)
    return (2 * mean - grid).reshape(-1)


def apply_shift(x: np.ndarray, perm: np.ndarray) -> np.ndarray:
    return x[perm]


@dataclass(frozen=True, eq=False)
class CoinedOperators:
    """Oracle, coin and shift for one instance, as implicit maps."""

    n: int
    a: int

    @cached_property
    def perm(self) -> np.ndarray:
        return shift_permutation(self.n)

    def _check(self, x):
        if x.shape != (self.n * (self.n - 1),):
            raise DimensionError(
                f"expected {self.n * (self.n - 1)} arc amplitudes, got shape {x.shape}"
            )

    def oracle(self, x: np.ndarray) -> np.ndarray:
        self._check(x)
        return apply_oracle(x, self.n, self.a)

    def coin(self, x: np.ndarray) -> np.ndarray:
        self._check(x)
        return apply_coin(x, self.n)

    def shift(self, x: np.ndarray) -> np.ndarray:
        self._check(x)
        return apply_shift(x, self.perm)

    def step(self, x: np.ndarray) -> np.ndarray:
        return self.shift(self.coin(self.oracle(x)))

    def matrices(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Explicit (Q, C, S) for validation; only for n <= 12."""
        n = self.n
        if n > EXPLICIT_MAX_N:
            raise DomainError(f"explicit operators are limited to n <= {EXPLICIT_MAX_N}")
        m = n * (n - 1)
        s_c = np.full(n - 1, 1.0 / math.sqrt(n - 1))
        e_a = np.zeros(n)
        e_a[self.a] = 1.0
        marked = np.kron(e_a, s_c)
        q = np.eye(m) - 2.0 * np.outer(marked, marked)
        c_g = 2.0 * np.outer(s_c, s_c) - np.eye(n - 1)
        c = np.kron(np.eye(n), c_g)
        s = np.zeros((m, m))
        s[np.arange(m), self.perm] = 1.0
        return q, c, s


def build_operators(g: CompleteGraphInstance) -> CoinedOperators:
    g.require_coined()
    return CoinedOperators(g.n, g.a)


def step(state: ArcState, ops: CoinedOperators) -> ArcState:
    """One search step S C Q."""
    if state.n != ops.n:
        raise DimensionError(f"state has n={state.n}, operators have n={ops.n}")
    return ArcState(ops.step(np.array(state.amps)))


def trace(x0: np.ndarray, ops: CoinedOperators, steps: int) -> list[dict]:
    """Per-step intermediates {'Q', 'CQ', 'SCQ'} starting from ``x0``."""
    rows = []
    x = x0
    for _ in range(steps):
        q = ops.oracle(x)
        cq = ops.coin(q)
        x = ops.shift(cq)
        rows.append({"Q": q, "CQ": cq, "SCQ": x})
    return rows


def _check_steps(t) -> int:
    if isinstance(t, bool) or int(t) != t or t < 0:
        raise ValueError(f"step count must be a nonnegative integer, got {t!r}")
    return int(t)


def states(g: CompleteGraphInstance, t: int) -> list[ArcState]:
    t = _check_steps(t)
    ops = build_operators(g)
    psi = uniform_superposition_arcs(g)
    out = [psi]
    for _ in range(t):
        psi = step(psi, ops)
        out.append(psi)
    return out


def state_at(g: CompleteGraphInstance, t: int) -> ArcState:
    return states(g, t)[-1]


def evolve_full(g: CompleteGraphInstance, t: int) -> EvolutionRecord:
    hist = states(g, t)
    return EvolutionRecord(
        t=np.arange(len(hist), dtype=float),
        success=[float(np.sum(np.abs(s.grid[g.a]) ** 2)) for s in hist],
        conserved=[s.conserved() for s in hist],
    )


def phi(n: int) -> float:
    """Rotation angle with sin(phi) = sqrt(2n-3)/(n-1), cos(phi) = (n-2)/(n-1)."""
    if n < 3:
        raise InstanceError("the coined walk needs n >= 3")
    return math.atan2(math.sqrt(2 * n - 3), n - 2)


@dataclass(frozen=True)
class Subspace3D:
    """Coefficients on |ab>, |ba>, |bb>."""

    c_ab: float
    c_ba: float
    c_bb: float
    phi: float

    @property
    def coeffs(self) -> tuple[float, float, float]:
        return (self.c_ab, self.c_ba, self.c_bb)

    @property
    def success(self) -> float:
        return self.c_ab ** 2


def subspace_operator(n: int) -> np.ndarray:
    """S C Q restricted to span{|ab>, |ba>, |bb>}."""
    if n < 3:
        raise InstanceError("the coined walk needs n >= 3")
    k = 2.0 * math.sqrt(n - 2) / (n - 1)
    r = (n - 3) / (n - 1)
    return np.array([[0.0, -r, k], [-1.0, 0.0, 0.0], [0.0, k, r]])


def subspace_initial(n: int) -> np.ndarray:
    return np.array([1.0, 1.0, math.sqrt(n - 2)]) / math.sqrt(n)


def evolve_subspace(g: CompleteGraphInstance, t: int) -> list[Subspace3D]:
    g.require_coined()
    t = _check_steps(t)
    u = subspace_operator(g.n)
    angle = phi(g.n)
    x = subspace_initial(g.n)
    out = [Subspace3D(*x, angle)]
    for _ in range(t):
        x = u @ x
        out.append(Subspace3D(*x, angle))
    return out


def subspace_closed_form(n: int, t: int) -> tuple[float, float, float]:
    """(c_ab, c_ba, c_bb) at step t from the eigen-expansion of U."""
    if n < 3:
        raise InstanceError("the coined walk needs n >= 3")
    t = _check_steps(t)
    f = phi(n)
    c, s = math.cos(f * t), math.sin(f * t)
    root = math.sqrt(2 * n - 3)
    sign = -1.0 if t % 2 else 1.0
    pre = math.sqrt(n - 2) / ((2 * n - 3) * math.sqrt(n))
    c_ab = pre * ((n - 1) / math.sqrt(n - 2) * (c + s * root) + sign * math.sqrt(n - 2))
    c_ba = pre * ((n - 1) / math.sqrt(n - 2) * (c - s * root) + sign * math.sqrt(n - 2))
    c_bb = pre * (2 * (n - 1) * c - sign)
    return c_ab, c_ba, c_bb


def success_closed_form(n: int, t: int) -> float:
    """[(n-1)(cos(phi t) + sin(phi t) sqrt(2n-3)) + (-1)^t (n-2)]^2 / ((2n-3)^2 n)."""
    if n < 3:
        raise InstanceError("the coined walk needs n >= 3")
    t = _check_steps(t)
    f = phi(n)
    sign = -1.0 if t % 2 else 1.0
    num = (n - 1) * (math.cos(f * t) + math.sin(f * t) * math.sqrt(2 * n - 3)) + sign * (n - 2)
    return num * num / ((2 * n - 3) ** 2 * n)


def ba_probability_closed_form(n: int, t: int) -> float:
    """Probability of the walker pointing at the marked vertex from outside."""
    if n < 3:
        raise InstanceError("the coined walk needs n >= 3")
    t = _check_steps(t)
    f = phi(n)
    sign = -1.0 if t % 2 else 1.0
    num = (n - 1) * (math.cos(f * t) - math.sin(f * t) * math.sqrt(2 * n - 3)) + sign * (n - 2)
    return num * num / ((2 * n - 3) ** 2 * n)


def optimal_steps(n: int) -> int:
    """pi / (2 phi) rounded to the nearest even integer (ties round up)."""
    x = math.pi / (2.0 * phi(n))
    return 2 * int(math.floor(x / 2.0 + 0.5))


def success_at_optimum(n: int) -> float:
    """Leading term n (sqrt(2n) + 1)^2 / (2n - 3)^2; the O(1/n) part is dropped."""
    if n < 3:
        raise InstanceError("the coined walk needs n >= 3")
    return n * (math.sqrt(2 * n) + 1.0) ** 2 / (2 * n - 3) ** 2


def asymptotic_steps(n: int) -> float:
    return math.pi / (2.0 * math.sqrt(2.0)) * math.sqrt(n)


def repetition_plan(n: int, eps: float) -> tuple[int, float]:
    """Independent runs needed for failure probability eps, and total steps."""
    if not 0 < eps < 1:
        raise DomainError(f"eps must lie in (0, 1), got {eps!r}")
    runs = max(1, int(math.ceil(math.log2(1.0 / eps) - 1e-12)))
    return runs, float(runs * optimal_steps(n))
