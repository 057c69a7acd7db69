import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frameforge.errors import NotHermitian, RankDeficient
from frameforge.linalg import (
    Rng, gram, hermitian_eigenvalues, least_squares, singular_values, smallest_singular_value, spectral_norm,
)
from frameforge.parallel import THREADS_ENV, combination_batches, ordered_map, resolve_threads


class TestSpectral:
    def test_eigenvalues_descending(self):
        h = np.diag([1.0, 3.0, 2.0])
        assert np.allclose(hermitian_eigenvalues(h), [3, 2, 1])

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))

    def test_gram_is_hermitian(self):
        a = Rng(1).complex_normal((3, 5))
        g = gram(a)
        assert np.array_equal(g, g.conj().T)

    def test_norms(self):
        a = np.diag([4.0, 0.5])
        assert spectral_norm(a) == pytest.approx(4)
        assert smallest_singular_value(a) == pytest.approx(0.5)
        assert np.allclose(singular_values(a), [4, 0.5])

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000), st.integers(1, 5), st.integers(1, 5))
    def test_spectral_norm_squared_is_top_gram_eigenvalue(self, seed, m, n):
        a = Rng(seed).complex_normal((m, n))
        assert spectral_norm(a) ** 2 == pytest.approx(hermitian_eigenvalues(gram(a))[0], rel=1e-9)


class TestLeastSquares:
    def test_exact_solution(self):
        rng = Rng(3)
        a = rng.complex_normal((6, 3))
        x = rng.complex_normal(3)
        assert np.allclose(least_squares(a, a @ x), x)

    def test_rank_deficient(self):
        a = np.ones((4, 2))
        with pytest.raises(RankDeficient):
            least_squares(a, np.ones(4))

    def test_wide_matrix(self):
        with pytest.raises(RankDeficient):
            least_squares(np.eye(2, 3), np.ones(2))


class TestRng:
    def test_reproducible(self):
        assert np.array_equal(Rng(5).normal(4), Rng(5).normal(4))

    def test_spawn_streams_differ(self):
        r = Rng(5)
        assert not np.array_equal(r.spawn(0).normal(4), r.spawn(1).normal(4))
        assert np.array_equal(r.spawn(2).normal(4), Rng(5).spawn(2).normal(4))

    def test_complex_normal_variance(self):
        z = Rng(0).complex_normal(200_000, variance=4.0)
        assert np.mean(np.abs(z) ** 2) == pytest.approx(4.0, rel=0.02)

    def test_choice_without_replacement(self):
        c = Rng(0).choice(10, 10)
        assert sorted(c) == list(range(10))


class TestParallel:
    def test_env_fallback(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, "3")
        assert resolve_threads() == 3
        assert resolve_threads(2) == 2

    def test_batches_are_lexicographic(self):
        rows = np.vstack(list(combination_batches(6, 3, batch=7)))
        assert rows.shape == (20, 3)
        assert [tuple(r) for r in rows] == sorted(tuple(r) for r in rows)

    def test_ordered_map_keeps_order(self):
        assert list(ordered_map(lambda x: x * x, range(20), threads=4)) == [x * x for x in range(20)]
