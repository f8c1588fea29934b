import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import closed_form_eigenvalues, cubic_eigenvalues
from spectral_casimir.errors import PoleError, ValidationError
from spectral_casimir.spectral_core import (
    N0,
    Geometry,
    InteractionMatrix,
    dipole_tensor,
    eigen_decompose,
    greens_trace,
    interaction_matrix,
    reference_decomposition,
)


class TestGeometry:
    def test_separation(self):
        assert Geometry(10.0, 10.0).separation == 40.0

    @pytest.mark.parametrize("radius,gap", [(0.0, 1.0), (-1.0, 1.0), (1.0, -0.1)])
    def test_invalid(self, radius, gap):
        with pytest.raises(ValidationError):
            Geometry(radius, gap)

    def test_ratio_at_contact(self):
        assert Geometry(7.0, 0.0).size_ratio_cubed == 1.0 / 8.0


class TestDipoleTensor:
    def test_zz_entry(self):
        t = dipole_tensor(Geometry(10.0, 10.0))
        assert t.diagonal[2] == pytest.approx(3.125e-5, rel=1e-15)
        assert t.diagonal[0] == t.diagonal[1] == pytest.approx(-1.0 / 64000.0, rel=1e-15)

    @given(st.floats(1e-3, 1e3), st.floats(0.0, 1e4))
    def test_traceless_and_axial(self, radius, gap):
        d = dipole_tensor(Geometry(radius, gap)).diagonal
        assert abs(d.sum()) <= 1e-15 * abs(d).max()
        assert d[2] == pytest.approx(-2.0 * d[0], rel=1e-15)

    def test_far_limit(self):
        assert np.all(dipole_tensor(Geometry(1.0, np.inf)).matrix == 0.0)
        assert abs(dipole_tensor(Geometry(1.0, 1e6)).matrix).max() < 1e-18


class TestInteractionMatrix:
    def test_no_substrate(self):
        h = interaction_matrix(Geometry(5.0, 1.0), 0.0)
        np.testing.assert_array_equal(h.matrix, np.eye(3) / 3.0)

    def test_conductor_at_one_radius(self):
        h = interaction_matrix(Geometry(10.0, 10.0), -1.0).matrix
        assert h[0, 0] == pytest.approx(0.328125, rel=1e-15)
        assert h[1, 1] == pytest.approx(0.328125, rel=1e-15)
        assert h[2, 2] == pytest.approx(0.3229166666666667, rel=1e-15)
        assert np.count_nonzero(h - np.diag(np.diag(h))) == 0

    def test_conductor_at_contact(self):
        h = interaction_matrix(Geometry(3.0, 0.0), -1.0).matrix
        assert h[2, 2] == pytest.approx(0.25, rel=1e-15)

    def test_far_limit(self):
        h = interaction_matrix(Geometry(1.0, 1e8), -1.0).matrix
        np.testing.assert_allclose(h, np.eye(3) / 3.0, rtol=1e-20, atol=1e-23)

    @pytest.mark.parametrize("f_c", [1.0, -1.5])
    def test_contrast_range(self, f_c):
        with pytest.raises(ValidationError):
            interaction_matrix(Geometry(1.0, 1.0), f_c)


class TestEigenDecompose:
    def test_identity(self):
        dec = eigen_decompose(np.eye(3) / 3.0)
        assert dec.eigenvalues == (1.0 / 3.0,)
        assert dec.multiplicities == (3,)
        assert dec.shifts == (0.0,)

    def test_reference(self):
        dec = reference_decomposition()
        assert dec.eigenvalues == (N0,) and dec.multiplicities == (3,)

    def test_conductor_one_radius(self, kernel_path):
        dec = eigen_decompose(interaction_matrix(Geometry(10.0, 10.0), -1.0))
        assert dec.multiplicities == (1, 2)
        assert dec.labels == ("perpendicular", "parallel")
        assert dec.eigenvalues[0] == pytest.approx(0.3229166666666667, rel=1e-12)
        assert dec.eigenvalues[1] == pytest.approx(0.328125, rel=1e-12)
        assert dec.n_perpendicular < dec.n_parallel < N0

    def test_raw_matrix_path_matches(self):
        h = interaction_matrix(Geometry(10.0, 3.0), -0.773)
        a = eigen_decompose(h)
        b = eigen_decompose(h.matrix)
        np.testing.assert_allclose(a.eigenvalues, b.eigenvalues, rtol=1e-14)
        assert a.labels == b.labels

    def test_rejects_asymmetric(self):
        m = np.eye(3) / 3.0
        m[0, 1] = 1e-6
        with pytest.raises(ValidationError):
            eigen_decompose(m)

    @pytest.mark.parametrize("seed", range(12))
    def test_random_symmetric_against_cubic(self, seed, kernel_path):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=(3, 3))
        a = a + a.T
        dec = eigen_decompose(a)
        got = dec.expanded() - 0.0
        # raw matrices report eigenvalues directly
        np.testing.assert_allclose(np.sort(got), cubic_eigenvalues(a), rtol=1e-12, atol=1e-13)
        v = dec.vectors
        np.testing.assert_allclose(v.T @ v, np.eye(3), atol=1e-13)
        np.testing.assert_allclose(a @ v, v * got, atol=1e-12)

    def test_tilted_axis_labels(self):
        # rotate the uniaxial coupling so that the symmetry axis leaves z by 30 degrees
        c, s = np.cos(np.pi / 6), np.sin(np.pi / 6)
        rot = np.array([[1, 0, 0], [0, c, -s], [0, s, c]])
        k = np.diag([-0.01, -0.01, -0.02])
        dec = eigen_decompose(InteractionMatrix(rot @ k @ rot.T))
        assert dec.multiplicities == (1, 2)
        assert dec.labels == ("perpendicular", "parallel")

    @settings(max_examples=200)
    @given(st.floats(0.0, 100.0), st.floats(-1.0, 0.0))
    def test_closed_form_and_bounds(self, z_over_r, f_c):
        dec = eigen_decompose(interaction_matrix(Geometry(1.0, z_over_r), f_c))
        perp, par = closed_form_eigenvalues(f_c, z_over_r)
        assert dec.n_perpendicular == pytest.approx(perp, rel=1e-12)
        assert dec.n_parallel == pytest.approx(par, rel=1e-12)
        assert sum(dec.multiplicities) == 3
        assert all(0.75 * N0 <= n <= N0 for n in dec.eigenvalues)
        assert dec.n_perpendicular <= dec.n_parallel <= N0
        if f_c < -1e-290:
            assert dec.multiplicities == (1, 2)
            assert dec.shifts[1] < 0.0

    @pytest.mark.parametrize("scale", [0.1, 10.0, 1000.0])
    @pytest.mark.parametrize("z_over_r", [0.0, 0.37, 4.0, 55.0])
    def test_scale_invariance(self, scale, z_over_r):
        base = eigen_decompose(interaction_matrix(Geometry(7.0, 7.0 * z_over_r), -0.773))
        scaled = eigen_decompose(interaction_matrix(Geometry(7.0 * scale, 7.0 * z_over_r * scale), -0.773))
        np.testing.assert_allclose(scaled.eigenvalues, base.eigenvalues, rtol=1e-14)
        np.testing.assert_allclose(scaled.shifts, base.shifts, rtol=1e-14)

    @given(st.floats(0.0, 50.0), st.floats(1e-3, 1.0), st.floats(-1.0, -1e-3))
    def test_monotone_in_gap(self, z, dz, f_c):
        a = eigen_decompose(interaction_matrix(Geometry(1.0, z), f_c))
        b = eigen_decompose(interaction_matrix(Geometry(1.0, z + dz), f_c))
        assert b.shifts[0] > a.shifts[0] and b.shifts[1] > a.shifts[1]


class TestGreensTrace:
    def test_single_pole(self):
        assert greens_trace(1.0, reference_decomposition()) == pytest.approx(4.5, rel=1e-15)

    def test_split_spectrum_against_inverse(self):
        h = interaction_matrix(Geometry(10.0, 10.0), -1.0)
        dec = eigen_decompose(h)
        explicit = np.trace(np.linalg.inv(0.5 * np.eye(3) - h.matrix))
        assert greens_trace(0.5, dec).real == pytest.approx(explicit, rel=1e-13)
        assert greens_trace(0.5, dec).real == pytest.approx(17.283422459893046, rel=1e-13)

    @given(st.floats(-2.0, 2.0), st.floats(1e-9, 5.0))
    def test_negative_imaginary_part_above_axis(self, re, im):
        dec = eigen_decompose(interaction_matrix(Geometry(1.0, 0.2), -0.516))
        assert greens_trace(complex(re, im), dec).imag < 0.0

    def test_pole(self):
        with pytest.raises(PoleError):
            greens_trace(N0, reference_decomposition())
        with pytest.raises(PoleError):
            greens_trace(complex(N0, 0.0), reference_decomposition())

    def test_vectorised(self):
        u = np.array([0.5 + 0.01j, 0.9 + 0.0j])
        out = greens_trace(u, reference_decomposition())
        np.testing.assert_allclose(out, 3.0 / (u - N0))
