import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fieldtheory import (
    FieldConfig, action_eval, action_forms, config_from_modes, conservation_check, dispersion_residual,
    dispersion_solve, em_tensor, eom_residual, lagrangian, mass_shell, noether_current, on_shell_mode,
    plane_wave_em_tensor, random_on_shell_config, u1_charge_check, wave_operator, wave_operator_check,
    wave_operator_eigenvalue,
)
from forms import DIMENSION, Form, apply_field, apply_minor, differential, hodge, inner, left_multiply, right_multiply
from kminkowski import WaveElement, mode_antipode, mode_eigenvalues, random_wave


def displayed_current(cfg: FieldConfig, a: int) -> Form:
    """½{(χ_a ▷ φ†) *dφ + *d(σ^b_a ▷ φ†)(χ_b ▷ φ)} - i_a(ℒ), ℒ = ½{-φ†(*d*dφ) + m²φ†φ} vol."""
    phi, phi_dagger = cfg.phi, cfg.phi.dagger()
    density = -(phi_dagger * wave_operator(phi)) + phi_dagger * phi * cfg.mass ** 2
    volume_density = left_multiply(density * 0.5, Form.volume(phi.zero_like()))
    current = left_multiply(apply_field("chi", a, phi_dagger), hodge(differential(Form.function(phi))))
    for b in range(DIMENSION):
        rotated = apply_minor("sigma", (b,), (a,), phi_dagger)
        current = current + right_multiply(hodge(differential(Form.function(rotated))), apply_field("chi", b, phi))
    return current * 0.5 - inner(a, volume_density)


seeds = st.integers(0, 2 ** 32 - 1)
momenta = st.tuples(*[st.floats(-0.3, 0.3, allow_nan=False)] * 3)
masses = st.floats(0.0, 2.0, allow_nan=False)


class TestDispersion:
    def test_massless_closed_form(self):
        assert dispersion_solve([0.1, 0.0, 0.0], 0.0, 1.0) == pytest.approx(-math.log(0.9), rel=1e-12)

    def test_massive_at_rest(self):
        assert dispersion_solve([0.0, 0.0, 0.0], 1.0, 1.0) == pytest.approx(2.0 * math.asinh(0.5), rel=1e-12)

    def test_massless_at_rest(self):
        assert dispersion_solve([0.0, 0.0, 0.0], 0.0, 1.0) == 0.0

    @pytest.mark.parametrize("kvec", [[1.0, 0.0, 0.0], [0.8, 0.8, 0.0], [3.0, 0.0, 0.0]])
    def test_no_root_beyond_kappa(self, kvec):
        with pytest.raises(ValueError, match="dispersion bracket failed"):
            dispersion_solve(kvec, 0.3, 1.0)

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            dispersion_solve([0.1, 0.0, 0.0], -1.0, 1.0)
        with pytest.raises(ValueError):
            dispersion_solve([0.1, 0.0, 0.0], 1.0, 0.0)

    @given(momenta, masses, st.sampled_from([0.7, 1.0, 2.0, 10.0]))
    def test_residual_vanishes(self, kvec, mass, kappa):
        k = on_shell_mode(kvec, mass, kappa)
        assert k[0] >= 0.0
        assert dispersion_residual(k, mass, kappa) <= 1e-12 * max(1.0, k[0] ** 2)
        assert abs(mass_shell(k[0], kvec, kappa) - mass ** 2) <= 1e-12 * max(1.0, k[0] ** 2)

    @pytest.mark.parametrize("direction", [(1, 0, 0), (0, 1, 1), (1, -2, 2)])
    def test_commutative_limit(self, direction):
        kvec = 1e-3 * np.array(direction, dtype=float) / np.linalg.norm(direction)
        k0 = dispersion_solve(kvec, 1e-3, 1e6)
        expected = math.sqrt(2.0) * 1e-3
        assert abs(k0 - expected) / expected <= 1e-9


class TestFieldConfig:
    def test_negative_mass(self):
        with pytest.raises(ValueError, match="mass"):
            FieldConfig(WaveElement(kappa=1.0), -0.1, 1.0)

    def test_kappa_mismatch(self):
        with pytest.raises(ValueError):
            FieldConfig(WaveElement(kappa=2.0), 0.0, 1.0)

    def test_from_modes(self):
        cfg = config_from_modes([{"re": 1.0, "im": -0.5, "k": [0.1, 0.2, 0.0, 0.0]}], 0.5, 1.0)
        (k, coeff), = cfg.phi.modes()
        assert coeff == pytest.approx(1.0 - 0.5j)
        np.testing.assert_allclose(k, [0.1, 0.2, 0.0, 0.0], atol=1e-12)

    @pytest.mark.parametrize("records", [
        [{"re": 1.0}],
        [{"re": 1.0, "k": [0.1, 0.2]}],
        [{"re": "x", "k": [0, 0, 0, 0]}],
        ["not a record"],
    ])
    def test_malformed_modes(self, records):
        with pytest.raises(ValueError):
            config_from_modes(records, 0.0, 1.0)


class TestWaveOperator:
    @settings(max_examples=20, deadline=None)
    @given(seeds)
    def test_casimir_eigenvalue(self, seed):
        phi = random_wave(np.random.default_rng(seed), 3, 1.0, scale=0.5)
        report = wave_operator_check(FieldConfig(phi))
        assert report['valid'], report['failures']

    def test_single_mode(self):
        k = (0.4, 0.1, -0.3, 0.2)
        phi = WaveElement.plane_wave(k, 2.0)
        (kq, _), = phi.modes()
        expected = 2.0 * wave_operator_eigenvalue(kq, 1.0)
        assert wave_operator(phi).coefficient(kq) == pytest.approx(expected, rel=1e-10)
        assert wave_operator_eigenvalue(kq, 1.0) == pytest.approx(-mode_eigenvalues(kq, 1.0)['box'])

    def test_off_shell_action(self):
        phi = WaveElement.plane_wave((0.3, 0.2, 0.0, 0.0), 1 + 1j)
        (k, _), = phi.modes()
        cfg = FieldConfig(phi, 0.5, 1.0)
        expected = 0.5 * 2.0 * (mode_eigenvalues(k, 1.0)['box'] + 0.25)
        first, second = action_forms(cfg)
        assert complex(first) == pytest.approx(expected, rel=1e-10, abs=1e-12)
        assert complex(second) == pytest.approx(expected, rel=1e-10, abs=1e-12)
        assert complex(action_eval(cfg)) == pytest.approx(expected, rel=1e-10, abs=1e-12)


class TestOnShell:
    @settings(max_examples=10, deadline=None)
    @given(seeds, st.integers(1, 3), st.floats(0.0, 1.0))
    def test_equation_of_motion(self, seed, modes, mass):
        cfg = random_on_shell_config(np.random.default_rng(seed), modes, mass, 1.0)
        assert eom_residual(cfg).max_abs() <= 1e-10 * cfg.scale()

    @settings(max_examples=8, deadline=None)
    @given(seeds, st.integers(1, 3), st.floats(0.0, 1.0))
    def test_currents_are_conserved(self, seed, modes, mass):
        cfg = random_on_shell_config(np.random.default_rng(seed), modes, mass, 1.0)
        report = conservation_check(cfg)
        assert report['valid'], report['failures']
        assert report['cases'] == 5
        assert u1_charge_check(cfg)['valid']

    @settings(max_examples=10, deadline=None)
    @given(seeds, st.integers(1, 3), st.floats(0.0, 1.0))
    def test_action_vanishes_on_shell(self, seed, modes, mass):
        cfg = random_on_shell_config(np.random.default_rng(seed), modes, mass, 1.0)
        first, second = action_forms(cfg)
        assert abs(complex(first) - complex(second)) <= 1e-10 * cfg.scale()
        assert abs(complex(first)) <= 1e-10 * cfg.scale()

    @settings(max_examples=8, deadline=None)
    @given(seeds, st.floats(0.0, 1.0))
    def test_single_mode_em_tensor(self, seed, mass):
        cfg = random_on_shell_config(np.random.default_rng(seed), 1, mass, 1.0)
        (k, coeff), = cfg.phi.modes()
        tensor = em_tensor(cfg)
        np.testing.assert_allclose(tensor.at_mode(), plane_wave_em_tensor(k, coeff, 1.0),
                                   atol=1e-10 * cfg.scale())
        assert tensor.asymmetry() <= 1e-10 * cfg.scale()

    def test_current_index(self):
        cfg = random_on_shell_config(np.random.default_rng(0), 1, 0.3, 1.0)
        with pytest.raises(ValueError):
            noether_current(cfg, 5)

    def test_scale_is_at_least_one(self):
        assert FieldConfig(WaveElement(kappa=1.0)).scale() == 1.0
        assert FieldConfig(WaveElement.plane_wave((0.1, 0.0, 0.0, 0.0), 3.0)).scale() >= 9.0


class TestConstantField:
    def test_em_tensor_vanishes(self):
        cfg = FieldConfig(WaveElement.constant(1.0))
        tensor = em_tensor(cfg)
        assert np.abs(tensor.at_mode()).max() == 0.0
        assert tensor.asymmetry() == 0.0

    def test_action_vanishes(self):
        first, second = action_forms(FieldConfig(WaveElement.constant(1.0)))
        assert complex(first) == 0.0
        assert complex(second) == 0.0

    def test_mode_and_antipode_agree(self):
        phi = WaveElement.plane_wave((0.3, 0.1, -0.2, 0.0), 1.0)
        (k, _), = phi.modes()
        phi = phi + WaveElement.plane_wave(mode_antipode(k, 1.0), 0.5j)
        cfg = FieldConfig(phi, 0.4, 1.0)
        first, second = action_forms(cfg)
        assert abs(complex(first)) > 1e-3
        assert complex(first) == pytest.approx(complex(second), rel=1e-10, abs=1e-12)


class TestCurrentAssembly:
    def test_displayed_assembly_is_not_conserved(self):
        cfg = random_on_shell_config(np.random.default_rng(0), 3, 0.4, 1.0)
        scale = cfg.scale()
        displayed = [differential(displayed_current(cfg, a)).max_abs() / scale for a in range(DIMENSION)]
        assembled = [differential(noether_current(cfg, a)).max_abs() / scale for a in range(DIMENSION)]
        assert max(displayed) > 1e-6
        assert max(assembled) <= 1e-10

    def test_hodge_lagrangian_differs_pointwise(self):
        cfg = random_on_shell_config(np.random.default_rng(0), 3, 0.4, 1.0)
        phi, phi_dagger = cfg.phi, cfg.phi.dagger()
        density = -(phi_dagger * wave_operator(phi)) + phi_dagger * phi * cfg.mass ** 2
        displayed = left_multiply(density * 0.5, Form.volume(phi.zero_like()))
        assert (lagrangian(cfg) - displayed).max_abs() > 1e-6
        assert abs(complex(action_forms(cfg)[0])) <= 1e-10 * cfg.scale()


class TestOffShell:
    def test_currents_not_conserved(self):
        cfg = FieldConfig(random_wave(np.random.default_rng(3), 3, 1.0, scale=0.5), 0.3, 1.0)
        assert eom_residual(cfg).max_abs() > 1e-3
        report = conservation_check(cfg)
        assert not report['valid']
        assert report['cases'] == 5
