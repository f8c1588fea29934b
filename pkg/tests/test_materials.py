import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_casimir.errors import (
    DomainError,
    SingularValueError,
    UnknownMaterialError,
    UnsupportedModelError,
    ValidationError,
)
from spectral_casimir.materials import (
    PRESETS,
    DielectricModel,
    MaterialLibrary,
    contrast_factor,
    drude_mode_frequency,
    epsilon_at,
    parse_material_definition,
    spectral_variable,
)


class TestDielectricModel:
    def test_invalid_drude(self):
        with pytest.raises(ValidationError):
            DielectricModel.drude(0.0)
        with pytest.raises(ValidationError):
            DielectricModel.drude(3.0, -0.1)

    def test_invalid_constant(self):
        with pytest.raises(ValidationError):
            DielectricModel.constant(0.0)

    def test_unknown_variant(self):
        with pytest.raises(ValidationError):
            DielectricModel("lorentz")

    def test_damping_rate_in_ev(self):
        assert DielectricModel.drude(15.8, 0.04).damping_rate == pytest.approx(0.632, rel=1e-15)


class TestEpsilon:
    def test_constant(self):
        assert epsilon_at(DielectricModel.constant(3.13), 1.0) == complex(3.13, 0.0)

    def test_undamped_drude_at_plasma_frequency(self):
        assert epsilon_at(DielectricModel.drude(3.80, 0.0), 3.80) == 0j

    def test_damped_drude_against_high_precision(self):
        # mpmath, 40 digits: 1 - wp^2 / (w (w + i 0.0126 wp)), wp = 8.55, w = 4
        expected = complex(-3.565594552361481658, 0.1229628752814756048)
        got = epsilon_at(PRESETS["Au"], 4.0)
        assert got.real == pytest.approx(expected.real, rel=1e-14)
        assert got.imag == pytest.approx(expected.imag, rel=1e-13)

    def test_array_input(self):
        w = np.array([1.0, 2.0, 4.0])
        out = epsilon_at(PRESETS["Au"], w)
        assert out.shape == (3,)
        assert out[2] == pytest.approx(epsilon_at(PRESETS["Au"], 4.0))

    def test_perfect_conductor_rejected(self):
        with pytest.raises(UnsupportedModelError):
            epsilon_at(PRESETS["Inf"], 1.0)

    @pytest.mark.parametrize("omega", [0.0, -1.0])
    def test_drude_needs_positive_frequency(self, omega):
        with pytest.raises(DomainError):
            epsilon_at(PRESETS["K"], omega)


class TestSpectralVariable:
    def test_unity_at_plasma_frequency(self):
        assert spectral_variable(DielectricModel.drude(3.80), 1.0, 3.80) == 1.0

    def test_one_third(self):
        wp = 3.80
        u = spectral_variable(DielectricModel.drude(wp), 1.0, wp / math.sqrt(3.0))
        assert u.imag == 0.0
        assert u.real == pytest.approx(1.0 / 3.0, rel=1e-15)

    def test_damped(self):
        # w (w + i/tau) / wp^2 with 1/tau = 0.04 * 15.8 eV, w = 5 eV
        u = spectral_variable(PRESETS["Al"], 1.0, 5.0)
        assert u.real == pytest.approx(0.10014420765902900176, rel=1e-14)
        assert u.imag == pytest.approx(0.01265822784810126582, rel=1e-14)

    def test_matches_definition_generic_ambient(self):
        sphere = PRESETS["Au"]
        for amb in (1.0, 1.77, 2.5):
            for w in (1.0, 3.3, 7.0):
                direct = 1.0 / (1.0 - epsilon_at(sphere, w) / amb)
                assert cmath.isclose(spectral_variable(sphere, amb, w), direct, rel_tol=1e-12)

    def test_pole(self):
        with pytest.raises(SingularValueError):
            spectral_variable(DielectricModel.constant(2.0), 2.0, 1.0)

    def test_bad_ambient(self):
        with pytest.raises(ValidationError):
            spectral_variable(PRESETS["K"], 0.0, 1.0)

    @given(st.floats(0.01, 30.0), st.floats(0.01, 30.0))
    def test_undamped_real_and_monotone(self, w1, w2):
        sphere = DielectricModel.drude(8.55)
        u1 = spectral_variable(sphere, 1.0, w1)
        u2 = spectral_variable(sphere, 1.0, w2)
        assert u1.imag == 0.0 and u1.real >= 0.0
        if w1 < w2:
            assert u1.real < u2.real

    @settings(max_examples=300)
    @given(st.floats(1e-6, 1.0), st.floats(0.5, 20.0))
    def test_round_trip(self, n, wp):
        w = drude_mode_frequency(n, wp)
        u = spectral_variable(DielectricModel.drude(wp), 1.0, w)
        assert abs(u.real - n) <= 1e-12 * n

    @given(st.floats(1e-3, 1.0 / 3.0), st.floats(1.0, 5.0))
    def test_round_trip_dielectric_ambient(self, n, amb):
        w = drude_mode_frequency(n, 8.55, amb)
        u = spectral_variable(DielectricModel.drude(8.55), amb, w)
        assert abs(u.real - n) <= 1e-12 * n


class TestContrastFactor:
    def test_tabulated_substrates(self):
        assert round(contrast_factor(PRESETS["Al2O3"]), 3) == -0.516
        assert round(contrast_factor(PRESETS["TiO2"]), 3) == -0.773

    def test_perfect_conductor(self):
        assert contrast_factor(PRESETS["Inf"]) == -1.0

    def test_vanishing_contrast(self):
        assert contrast_factor(DielectricModel.constant(1.7), 1.7) == 0.0

    def test_dispersive_substrate_rejected(self):
        with pytest.raises(UnsupportedModelError):
            contrast_factor(PRESETS["Au"])

    @given(st.floats(1.0001, 1e6), st.floats(1e-3, 1e-2))
    def test_decreasing_and_bounded(self, eps, step):
        f1 = contrast_factor(DielectricModel.constant(eps))
        f2 = contrast_factor(DielectricModel.constant(eps * (1 + step)))
        assert -1.0 <= f1 < 0.0
        assert f2 < f1


class TestLibrary:
    def test_presets(self):
        assert set(PRESETS) == {"K", "Au", "Ag", "Al", "Al2O3", "TiO2", "Inf"}
        assert PRESETS["K"] == DielectricModel.drude(3.80, 0.105)
        assert PRESETS["Ag"] == DielectricModel.drude(9.60, 0.00188)
        assert PRESETS["Al"].omega_p == 15.80

    def test_presets_immutable(self):
        with pytest.raises(TypeError):
            PRESETS["K"] = DielectricModel.drude(1.0)
        lib = MaterialLibrary()
        with pytest.raises(ValidationError):
            lib.register("au", DielectricModel.drude(1.0))

    def test_case_insensitive(self):
        lib = MaterialLibrary()
        assert lib["al2o3"] is PRESETS["Al2O3"]
        assert lib["INF"].kind == "perfect_conductor"
        assert lib.canonical_name("tio2") == "TiO2"

    def test_unknown_lists_presets(self):
        with pytest.raises(UnknownMaterialError) as info:
            MaterialLibrary()["Cu"]
        assert "Al2O3" in str(info.value)

    def test_user_materials(self):
        lib = MaterialLibrary({"Na": parse_material_definition("omega_p_ev=5.9, damping_ratio=0.01")})
        lib.register("glass", parse_material_definition("epsilon=2.25"))
        assert lib["na"].omega_p == 5.9
        assert [n for n, _ in lib.user_materials()] == ["Na", "glass"]
        assert len(lib) == 9

    @pytest.mark.parametrize("text", ["", "omega_p_ev=abc", "foo=1", "epsilon=2, omega_p_ev=3"])
    def test_bad_definitions(self, text):
        with pytest.raises(ValidationError):
            parse_material_definition(text)
