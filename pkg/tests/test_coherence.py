import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frameforge.coherence import (
    asymptotic_lower_bounds, average_coherence, check_nu_sufficient_conditions, coherence_report,
    real_packing_bound, welch_lower_bound, worst_case_coherence,
)
from frameforge.constructions import (
    build_chirp, build_code_frame, build_gabor, build_paley_etf, build_random, build_steiner_etf,
)
from frameforge.designs import steiner_system
from frameforge.frame import Frame
from frameforge.linalg import Rng


def steiner():
    return build_steiner_etf(steiner_system("2-blocks", v=4), "real_sylvester")


class TestWorkedValues:
    def test_steiner(self):
        r = coherence_report(steiner())
        assert r.mu == pytest.approx(1 / 3)
        assert r.nu == pytest.approx(1 / 15)
        assert r.welch_bound == pytest.approx(1 / 3)
        assert r.frame_potential == pytest.approx(16 ** 2 / 6)
        assert r.spectral_norm == pytest.approx(math.sqrt(16 / 6))

    def test_steiner_condition_ii(self):
        c = check_nu_sufficient_conditions(steiner())
        assert c.cond_ii and c.any

    def test_chirp_condition_i(self):
        assert check_nu_sufficient_conditions(build_chirp(5)).cond_i

    def test_code_frame_condition_i(self):
        assert check_nu_sufficient_conditions(build_code_frame(4, 1)).cond_i

    def test_alltop_fixed_modulation(self):
        assert average_coherence(build_gabor(5, modulation="fixed")) == pytest.approx(1 / 24)

    def test_welch_values(self):
        assert welch_lower_bound(9, 37) == pytest.approx(0.29397, abs=1e-5)
        assert welch_lower_bound(3, 3) == 0.0

    def test_report_serializes(self):
        r = coherence_report(build_paley_etf(5))
        assert '"mu"' in r.to_json()
        assert r.to_text().startswith("mu=")

    def test_normalizes_with_warning(self):
        f = Frame(2 * steiner().matrix)
        with pytest.warns(UserWarning):
            r = coherence_report(f)
        assert r.normalized and r.mu == pytest.approx(1 / 3)

    def test_scp_flags(self):
        r = coherence_report(build_code_frame(4, 1))
        assert r.scp1 is False  # 1/(164 ln 256) is far below 1/2
        assert r.scp2 == (r.nu <= r.mu / 4 + 1e-12)


class TestBounds:
    def test_real_bound_planar(self):
        for n in range(3, 10):
            assert real_packing_bound(2, n) == pytest.approx(math.cos(math.pi / n))

    def test_dim3_only_for_m3(self):
        assert asymptotic_lower_bounds(3, 10).dim3_bound == pytest.approx(1 - 0.4 + 0.02)
        assert asymptotic_lower_bounds(4, 10).dim3_bound is None

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(2, 6), st.integers(0, 20))
    def test_welch_below_mu(self, seed, m, extra):
        f = build_random("normalized_gaussian", m, m + extra + 1, Rng(seed))
        assert welch_lower_bound(f.m, f.n) <= worst_case_coherence(f) + 1e-12

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(2, 5), st.integers(2, 20))
    def test_nu_at_most_mu_and_invariant_under_flips(self, seed, m, n):
        rng = Rng(seed)
        f = build_random("normalized_gaussian", m, max(n, m), rng)
        nu, mu = average_coherence(f), worst_case_coherence(f)
        assert nu <= mu + 1e-12
        flipped = f.with_matrix(f.matrix * rng.signs(f.n))
        assert worst_case_coherence(flipped) == pytest.approx(mu)
