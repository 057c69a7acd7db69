import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frameforge.constructions import build_harmonic, build_identity_fourier, build_paley_etf, build_random
from frameforge.errors import EmptyRowSet
from frameforge.frame import Frame
from frameforge.linalg import Rng
from frameforge.spark import (
    complement, dft_brute_full_spark, dft_full_spark_test, first_dependent_subset, is_full_spark, scale, spark,
    translate, uniformly_distributed,
)


class TestSpark:
    def test_paley13(self):
        r = spark(build_paley_etf(13))
        assert r.spark == 8 and not r.lower_bound

    def test_identity_fourier_dirac_comb(self):
        r = spark(build_identity_fourier(4))
        assert (r.spark, r.witness) == (4, (0, 2, 4, 6))

    def test_repeated_column(self):
        a = np.array([[1.0, 0, 1], [0, 1, 0]])
        assert spark(Frame(a)).spark == 2

    def test_square_full_rank_is_infinite(self):
        assert spark(Frame(np.eye(3))).spark == math.inf

    def test_budget_gives_lower_bound(self):
        r = spark(build_paley_etf(13), budget=50)
        assert r.lower_bound and r.witness is None

    def test_gaussian_is_full_spark(self):
        assert is_full_spark(build_random("normalized_gaussian", 4, 9, Rng(0)))

    def test_witness_is_dependent(self):
        f = build_identity_fourier(4)
        w = first_dependent_subset(f.matrix, 4)
        assert np.linalg.matrix_rank(f.matrix[:, list(w)]) < 4


class TestDftCriterion:
    def test_uniform_distribution(self):
        assert uniformly_distributed(8, [0, 1, 2])
        assert not uniformly_distributed(8, [0, 2, 4])

    def test_prime_always_full(self):
        v = dft_full_spark_test(13, [0, 1, 5, 7])
        assert v.verdict == "full_spark" and v.method == "chebotarev"

    def test_n10_counterexample(self):
        v = dft_full_spark_test(10, [0, 1, 3, 4])
        assert v.uniform and v.verdict == "not_full_spark" and v.witness == (0, 1, 2, 6)

    def test_empty(self):
        with pytest.raises(EmptyRowSet):
            dft_full_spark_test(8, [])

    def test_large_composite_is_necessary_only(self):
        v = dft_full_spark_test(30, [0, 1, 2, 3, 4])
        assert v.verdict in ("necessary_condition_only", "not_full_spark")

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from([4, 8, 9, 16, 25]), st.data())
    def test_prime_power_agrees_with_brute(self, n, data):
        rows = data.draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=min(n - 1, 4)))
        v = dft_full_spark_test(n, sorted(rows))
        assert (v.verdict == "full_spark") == dft_brute_full_spark(n, sorted(rows))[0]

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from([6, 10, 12, 14, 15]), st.data())
    def test_closure_invariance(self, n, data):
        rows = sorted(data.draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n - 1)))
        shift = data.draw(st.integers(0, n - 1))
        unit = data.draw(st.sampled_from([u for u in range(1, n) if math.gcd(u, n) == 1]))
        v = dft_full_spark_test(n, rows).verdict
        assert dft_full_spark_test(n, translate(rows, shift, n)).verdict == v
        assert dft_full_spark_test(n, scale(rows, unit, n)).verdict == v
        assert dft_full_spark_test(n, complement(rows, n)).verdict == v

    def test_scale_needs_unit(self):
        with pytest.raises(ValueError):
            scale([0, 1], 2, 8)

    def test_harmonic_frame_matches_verdict(self):
        rows = [0, 1, 3, 4]
        assert not is_full_spark(build_harmonic(10, rows, normalize=False))
