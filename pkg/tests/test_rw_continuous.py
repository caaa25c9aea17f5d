import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from walksearch import rw_continuous as rc
from walksearch import rw_discrete
from walksearch.errors import DomainError
from walksearch.model import CompleteGraphInstance

import oracles

# 50-digit Taylor-series oracle for n=4, t=4; equals 1 - 0.75/e.
SUCCESS_N4_T4 = 0.724090419121418
# Bisection oracle on the exact success formula.
RUNTIME_N4_EPS01 = 8.059612082169076


class TestLaplacian:
    def test_n4_a2(self):
        lap = rc.build_absorbing_laplacian(CompleteGraphInstance(4, 2))
        expected = [[-3, 0, 1, 1], [1, 0, 1, 1], [1, 0, -3, 1], [1, 0, 1, -3]]
        assert lap.matrix.tolist() == expected
        assert lap.norm == 4

    def test_n2_a1(self):
        lap = rc.build_absorbing_laplacian(CompleteGraphInstance(2, 1))
        assert lap.matrix.tolist() == [[0, 1], [0, -1]]

    @pytest.mark.parametrize("n, marked", [(2, 2), (3, 1), (9, 5), (30, 30)])
    def test_columns_sum_to_zero(self, n, marked):
        lap = rc.build_absorbing_laplacian(CompleteGraphInstance(n, marked))
        assert np.all(lap.matrix.sum(axis=0) == 0)
        assert np.all(lap.matrix[:, marked - 1] == 0)

    def test_matches_oracle_construction(self):
        lap = rc.build_absorbing_laplacian(CompleteGraphInstance(7, 3))
        assert lap.matrix.tolist() == oracles.absorbing_laplacian_lists(7, 2)

    def test_not_symmetric(self):
        lap = rc.build_absorbing_laplacian(CompleteGraphInstance(4, 2)).matrix
        assert not np.array_equal(lap, lap.T)

    @pytest.mark.parametrize("n", [3, 4, 10, 64])
    def test_measured_norm_equals_n(self, n):
        lap = rc.build_absorbing_laplacian(CompleteGraphInstance(n))
        assert lap.measured_norm() == pytest.approx(n, rel=1e-10)

    def test_measured_norm_n2(self):
        lap = rc.build_absorbing_laplacian(CompleteGraphInstance(2))
        assert lap.measured_norm() == pytest.approx(math.sqrt(2), rel=1e-12)
        assert lap.norm == 2


class TestSampleTimes:
    def test_regular(self):
        assert rc.sample_times(1.0, 0.25).tolist() == [0, 0.25, 0.5, 0.75, 1.0]

    def test_ragged_end(self):
        assert rc.sample_times(1.0, 0.3).tolist() == pytest.approx([0, 0.3, 0.6, 0.9, 1.0])

    def test_exact_end(self):
        t = rc.sample_times(3.14159, 3.14159 / 200)
        assert t[-1] == 3.14159 and t.size == 201

    def test_zero(self):
        assert rc.sample_times(0.0, 1.0).tolist() == [0.0]

    @pytest.mark.parametrize("dt", [0.0, -1.0])
    def test_bad_dt(self, dt):
        with pytest.raises(ValueError):
            rc.sample_times(1.0, dt)


class TestEvolveFull:
    def test_initial(self):
        rec = rc.evolve_full(CompleteGraphInstance(4, 2), 0.0, 1.0)
        assert rec.success.tolist() == [0.25]

    def test_n4_t4(self):
        rec = rc.evolve_full(CompleteGraphInstance(4, 2), 4.0, 4.0)
        assert rec.success[-1] == pytest.approx(SUCCESS_N4_T4, abs=1e-12)
        assert abs(rec.success[-1] - 0.724091) <= 1e-6

    def test_n2_long_time(self):
        rec = rc.evolve_full(CompleteGraphInstance(2), 80.0, 10.0)
        assert rec.success[-1] == pytest.approx(1.0, abs=1e-15)

    def test_default_dt(self):
        rec = rc.evolve_full(CompleteGraphInstance(10), 1.0)
        assert rec.t[1] == pytest.approx(0.1) and rec.t[-1] == 1.0
        assert rc.default_dt(10) == 0.1

    def test_rejects_bad_dt(self):
        with pytest.raises(ValueError):
            rc.evolve_full(CompleteGraphInstance(4), 1.0, 0.0)

    def test_state_at_oracle(self):
        g = CompleteGraphInstance(5, 4)
        lists = oracles.absorbing_laplacian_lists(5, 3)
        gen = [[v / 5 for v in row] for row in lists]
        ref = oracles.mp_series_expm_apply(gen, 7.5, [0.2] * 5)
        got = rc.state_at(g, 7.5).probs
        assert np.allclose(got, [float(v) for v in ref], atol=1e-13, rtol=0)

    @settings(max_examples=20)
    @given(st.integers(2, 12), st.floats(0, 60))
    def test_against_series_oracle(self, n, t):
        lists = oracles.absorbing_laplacian_lists(n, 0)
        gen = [[v / n for v in row] for row in lists]
        ref = float(oracles.mp_series_expm_apply(gen, t, [1 / n] * n, dps=60)[0])
        assert rc.state_at(CompleteGraphInstance(n), t).probs[0] == pytest.approx(ref, abs=1e-12)

    def test_closed_form_grid(self):
        worst = 0.0
        for n in range(2, 65):
            rec = rc.evolve_full(CompleteGraphInstance(n), 20.0 * n, 0.5)
            cf = np.array([rc.success_closed_form(n, t) for t in rec.t])
            worst = max(worst, np.max(np.abs(rec.success - cf)))
            assert np.max(np.abs(rec.conserved - 1)) <= 1e-9
            assert np.all(np.diff(rec.success) >= -1e-12)
        assert worst <= 1e-8


class TestSubspace:
    @pytest.mark.parametrize("n", [2, 4, 31])
    def test_initial(self, n):
        s = rc.evolve_subspace(CompleteGraphInstance(n), 0.0)
        assert s.c_a == pytest.approx(1 / n) and s.c_b == pytest.approx((n - 1) / n)

    def test_n4_t4(self):
        s = rc.evolve_subspace(CompleteGraphInstance(4), 4.0)
        assert s.c_a == pytest.approx(SUCCESS_N4_T4, abs=1e-12)

    def test_limit(self):
        s = rc.evolve_subspace(CompleteGraphInstance(4), 400.0)
        assert s.coeffs == pytest.approx((1.0, 0.0), abs=1e-12)

    def test_generator_eigen(self):
        for n in (2, 5, 40):
            m = rc.subspace_generator(n) * n
            assert (m @ np.array([-1.0, 1.0])).tolist() == [1.0, -1.0]
            assert (m @ np.array([1.0, 0.0])).tolist() == [0.0, 0.0]

    @pytest.mark.parametrize("n", [2, 3, 11, 32])
    def test_matches_full_projection(self, n):
        g = CompleteGraphInstance(n, n)
        times, sub = rc.evolve_subspace_series(g, 5.0 * n, 0.25 * n)
        full = rc.states(g, times)
        for p, s in zip(full, sub):
            assert abs(p.probs[g.a] - s.c_a) <= 1e-10
            assert abs(1 - p.probs[g.a] - s.c_b) <= 1e-10

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            rc.evolve_subspace(CompleteGraphInstance(3), -1.0)


class TestClosedForm:
    def test_values(self):
        assert rc.success_closed_form(4, 0) == 0.25
        assert rc.success_closed_form(4, 4) == pytest.approx(1 - 0.75 / math.e, abs=1e-15)
        assert rc.success_closed_form(4, 1e4) == pytest.approx(1.0, abs=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            rc.success_closed_form(1, 1)
        with pytest.raises(DomainError):
            rc.success_closed_form(3, -0.1)


class TestRuntime:
    @pytest.mark.parametrize("n", [2, 4, 9])
    def test_degenerate_eps(self, n):
        assert rc.runtime_for_epsilon(n, (n - 1) / n) == 0.0

    def test_n4(self):
        oracle = oracles.bisect(lambda t: rc.success_closed_form(4, t) - 0.9, 0, 100)
        assert oracle == pytest.approx(RUNTIME_N4_EPS01, abs=1e-10)
        t = rc.runtime_for_epsilon(4, 0.1)
        assert t == pytest.approx(RUNTIME_N4_EPS01, abs=1e-12)
        assert abs(t - 8.0596) <= 0.001

    def test_large_n_ratio(self):
        ratio = rc.runtime_for_epsilon(10_000, 0.1) / rc.asymptotic_runtime(10_000, 0.1)
        assert abs(ratio - 1) <= 0.001

    def test_n2_allowed(self):
        assert rc.runtime_for_epsilon(2, 0.1) == pytest.approx(2 * math.log(5))

    @pytest.mark.parametrize("eps", [0.0, 0.8, -1.0])
    def test_domain(self, eps):
        with pytest.raises(DomainError):
            rc.runtime_for_epsilon(4, eps)

    @given(st.integers(2, 10_000), st.floats(1e-9, 1.0))
    def test_inverse(self, n, frac):
        eps = frac * (n - 1) / n
        t = rc.runtime_for_epsilon(n, eps)
        assert rc.success_closed_form(n, t) == pytest.approx(1 - eps, abs=1e-10)


class TestAsymptotic:
    def test_shared(self):
        assert rc.asymptotic_runtime is rw_discrete.asymptotic_runtime

    def test_values(self):
        assert rc.asymptotic_runtime(9, 1.0) == 0.0
        assert rc.asymptotic_runtime(1000, 0.01) == pytest.approx(4605.17018598809, rel=1e-14)
