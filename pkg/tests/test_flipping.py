import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frameforge.coherence import average_coherence, worst_case_coherence
from frameforge.constructions import build_random
from frameforge.flipping import FlipPattern, apply_pattern, exhaustive_flip, linear_time_flip
from frameforge.frame import Frame
from frameforge.linalg import Rng, spectral_norm

from test_acceptance import FLIP_EXAMPLE


class TestPattern:
    def test_string_round_trip(self):
        p = FlipPattern.from_string("+-−+")
        assert p.to_string() == "+--+"
        assert list(p.signs) == [1, -1, -1, 1]

    def test_rejects_non_signs(self):
        with pytest.raises(ValueError):
            FlipPattern([1, 0])


class TestExample:
    def test_greedy(self):
        f = Frame(FLIP_EXAMPLE)
        r = linear_time_flip(f)
        assert r.pattern.to_string() == "+-+--++-++"
        assert average_coherence(f) == pytest.approx(0.37778, abs=1e-5)
        assert average_coherence(r.frame) == pytest.approx(0.15556, abs=1e-5)
        assert worst_case_coherence(f) / math.sqrt(5) == pytest.approx(0.26833, abs=1e-5)

    def test_exhaustive(self):
        pat, nu = exhaustive_flip(Frame(FLIP_EXAMPLE), threads=2)
        assert nu == pytest.approx(1 / 9, abs=1e-4)
        assert pat.signs[0] == 1
        assert average_coherence(apply_pattern(Frame(FLIP_EXAMPLE), pat)) == pytest.approx(nu)

    def test_exhaustive_size_cap(self):
        with pytest.raises(ValueError):
            exhaustive_flip(build_random("rademacher", 4, 23, Rng(0)))


class TestInvariants:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(2, 6), st.integers(2, 40))
    def test_partial_sums_and_equivalence(self, seed, m, n):
        f = build_random("normalized_gaussian", m, max(m, n), Rng(seed))
        r = linear_time_flip(f)
        assert np.all(r.partial_sq_norms <= np.arange(1, f.n + 1) + 1e-9)
        assert worst_case_coherence(r.frame) == pytest.approx(worst_case_coherence(f))
        assert spectral_norm(r.frame.matrix) == pytest.approx(spectral_norm(f.matrix))
        assert np.allclose(r.frame.column_norms(), f.column_norms())

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10_000), st.integers(3, 12))
    def test_exhaustive_not_worse_than_greedy(self, seed, n):
        f = build_random("normalized_gaussian", 3, n, Rng(seed))
        _, best = exhaustive_flip(f, threads=1)
        assert best <= average_coherence(linear_time_flip(f).frame) + 1e-12
