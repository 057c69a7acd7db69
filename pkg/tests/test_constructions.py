import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frameforge.constructions import (
    DIFFERENCE_SET_37, build_chirp, build_code_frame, build_gabor, build_harmonic,
    build_harmonic_plus_identity, build_identity_fourier, build_paley_etf, build_planar, build_random,
    build_simplex, build_spherical_2design, build_steiner_etf, build_vandermonde, real_rotation,
)
from frameforge.designs import steiner_system
from frameforge.errors import (
    BadPrime, EmptyRowSet, FrameFormatError, HadamardUnavailable, NotPrime, ZeroIndexIncluded,
)
from frameforge.frame import Frame
from frameforge.linalg import Rng

from test_acceptance import STEINER_6x16


def gram_abs(f):
    return np.abs(f.matrix.conj().T @ f.matrix)


class TestFrame:
    def test_rejects_zero_column(self):
        with pytest.raises(ValueError):
            Frame(np.array([[1.0, 0.0], [0.0, 0.0]]))

    def test_rejects_more_rows_than_columns(self):
        with pytest.raises(ValueError):
            Frame(np.ones((3, 2)))

    def test_text_round_trip_is_exact(self, tmp_path):
        f = build_paley_etf(13)
        path = tmp_path / "p.frame"
        f.save(path)
        g = Frame.load(path)
        assert np.array_equal(f.matrix, g.matrix)
        assert g.family == "paley"
        assert g.to_text() == f.to_text()

    def test_header_and_column_major(self):
        f = Frame(np.array([[1.0, 2.0], [3.0, 4.0j]]), family="demo", params={"a": 1}, seed=7)
        lines = f.to_text().splitlines()
        assert lines[0] == "2 2 demo a=1 7"
        assert lines[1:] == ["1 0", "3 0", "2 0", "0 4"]

    @pytest.mark.parametrize("text", ["", "2 2 x\n", "2 2 x - -\n1 0\n", "1 1 x - -\nfoo bar\n"])
    def test_malformed(self, text):
        with pytest.raises(FrameFormatError):
            Frame.from_text(text)

    def test_predicates(self):
        f = build_simplex(4)
        assert f.unit_norm and f.tight and f.equiangular and f.etf and f.is_real


class TestSteiner:
    def test_reproduces_6x16_display(self):
        f = build_steiner_etf(steiner_system("2-blocks", v=4), "real_sylvester")
        assert np.allclose(f.matrix, STEINER_6x16, atol=1e-12)

    def test_3x9_dft(self):
        f = build_steiner_etf(steiner_system("2-blocks", v=3), "complex_dft")
        assert f.shape == (3, 9) and f.etf
        assert f.matrix[0, 1] == pytest.approx(np.exp(-2j * np.pi / 3) / math.sqrt(2))

    def test_sylvester_unavailable_for_odd_block(self):
        with pytest.raises(HadamardUnavailable):
            build_steiner_etf(steiner_system("2-blocks", v=3), "real_sylvester")

    @pytest.mark.parametrize("design", [
        ("triples", dict(v=9)), ("triples", dict(v=13)), ("affine", dict(q=2, n=3)), ("projective", dict(q=2, n=3)),
    ])
    def test_is_etf(self, design):
        family, kw = design
        f = build_steiner_etf(steiner_system(family, **kw))
        assert f.etf
        d = steiner_system(family, **kw)
        assert f.shape == (d.b, d.v * (d.r + 1))

    def test_other_hadamard_rows_still_etf(self):
        f = build_steiner_etf(steiner_system("2-blocks", v=4), "real_sylvester", [0, 1, 2])
        assert f.etf


class TestHarmonic:
    def test_difference_set_gives_etf(self):
        f = build_harmonic(7, [1, 2, 4])
        assert f.etf

    def test_empty_rows(self):
        with pytest.raises(EmptyRowSet):
            build_harmonic(7, [])

    def test_paley(self):
        for p in (5, 13, 17):
            f = build_paley_etf(p)
            assert f.shape == ((p + 1) // 2, p + 1) and f.etf

    @pytest.mark.parametrize("p", [7, 9, 15])
    def test_paley_bad_prime(self, p):
        with pytest.raises(BadPrime):
            build_paley_etf(p)

    def test_real_rotation_keeps_gram(self):
        f = build_paley_etf(13)
        r = real_rotation(f)
        assert r.is_real
        assert np.allclose(r.matrix.T @ r.matrix, (f.matrix.conj().T @ f.matrix).real, atol=1e-12)

    def test_harmonic_plus_identity_shape(self):
        assert build_harmonic_plus_identity(7, [1, 2, 4], 2).shape == (3, 9)

    def test_vandermonde_unit_circle(self):
        f = build_vandermonde(np.exp(2j * np.pi * np.arange(8) / 8), 3, normalize=True)
        assert f.shape == (3, 8) and f.unit_norm and f.tight


class TestGaborChirp:
    def test_alltop_shifted_vs_fixed(self):
        assert build_gabor(5).shape == (5, 25)
        assert build_gabor(5, modulation="fixed").unit_norm

    def test_steinhaus_reproducible(self):
        a = build_gabor(5, "steinhaus", Rng(4)).matrix
        b = build_gabor(5, "steinhaus", Rng(4)).matrix
        assert np.array_equal(a, b)

    def test_chirp_not_prime(self):
        with pytest.raises(NotPrime):
            build_chirp(6)

    @pytest.mark.parametrize("m", [3, 5, 7])
    def test_chirp_coherence(self, m):
        g = gram_abs(build_chirp(m))
        assert np.max(g[~np.eye(m * m, dtype=bool)]) == pytest.approx(1 / math.sqrt(m))


class TestOthers:
    def test_spherical_is_2design(self):
        f = build_spherical_2design(37, DIFFERENCE_SET_37)
        assert f.shape == (18, 37) and f.is_real and f.tight and f.unit_norm
        assert np.allclose(f.matrix.sum(axis=1), 0, atol=1e-12)

    def test_spherical_zero_frequency(self):
        with pytest.raises(ZeroIndexIncluded):
            build_spherical_2design(37, [0, 1])

    def test_code_frame(self):
        f = build_code_frame(4, 1)
        assert f.shape == (16, 256) and f.is_real and f.tight and f.unit_norm
        assert set(np.round(np.unique(gram_abs(f)), 12)) <= {0.0, 0.25, 0.5, 1.0}

    def test_code_frame_first_block_is_hadamard(self):
        f = build_code_frame(3, 1)
        h = f.matrix[:, :8] * math.sqrt(8)
        assert np.allclose(h @ h.T, 8 * np.eye(8))

    def test_identity_fourier(self):
        f = build_identity_fourier(4)
        assert f.shape == (4, 8) and f.tight

    @settings(max_examples=20, deadline=None)
    @given(st.integers(2, 12))
    def test_simplex_and_planar(self, n):
        s = gram_abs(build_simplex(n))
        assert np.allclose(s[~np.eye(n, dtype=bool)], 1 / (n - 1))
        p = build_planar(n)
        assert p.unit_norm and (n == 1 or p.tight)

    @pytest.mark.parametrize("kind", ["normalized_gaussian", "random_harmonic", "steinhaus_gabor", "rademacher"])
    def test_random_reproducible_and_unit(self, kind):
        a = build_random(kind, 4, 16, Rng(2))
        b = build_random(kind, 4, 16, Rng(2))
        assert np.array_equal(a.matrix, b.matrix)
        assert a.unit_norm

    def test_random_harmonic_records_rows(self):
        f = build_random("random_harmonic", 4, 16, Rng(0))
        assert f.params["rows"] == f.m == len(f.params["row_set"])
