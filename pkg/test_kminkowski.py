import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kminkowski import (
    PolyElement, WaveElement, act, act_diagonal, compose_modes, eigenvalue, involution, lambda_eigenvalues,
    mode_antipode, mode_eigenvalues, nc_mul, plane_wave_series, random_poly, random_wave,
)
from kpoincare import GENERATORS, OperatorElement, casimir, chi, coproduct, lambda_matrix, op_mul, word_element, xi
from scalars import I, I_OVER_KAPPA, ONE, ExactScalar

ETA = np.diag([-1.0, 1.0, 1.0, 1.0, 1.0])

seeds = st.integers(0, 2 ** 32 - 1)
polys = seeds.map(lambda s: random_poly(np.random.default_rng(s), max_degree=3))
small_polys = seeds.map(lambda s: random_poly(np.random.default_rng(s), max_degree=2, max_terms=2))
modes = st.tuples(*[st.floats(-0.8, 0.8, allow_nan=False)] * 4)


def x(mu: int) -> PolyElement:
    return PolyElement.coordinate(mu)


class TestCoordinateAlgebra:
    @pytest.mark.parametrize("j", [1, 2, 3])
    def test_space_time_commutator(self, j):
        assert x(j) * x(0) - x(0) * x(j) == x(j) * I_OVER_KAPPA

    def test_space_coordinates_commute(self):
        for j in (1, 2, 3):
            for k in (1, 2, 3):
                assert x(j) * x(k) == x(k) * x(j)

    def test_printing(self):
        assert str(x(1) * x(0) - x(0) * x(1)) == "(i/κ)·x1"
        assert str(PolyElement()) == "0"

    def test_coordinate_index(self):
        with pytest.raises(ValueError):
            PolyElement.coordinate(4)

    @settings(max_examples=30, deadline=None)
    @given(polys, polys, polys)
    def test_associativity(self, f, g, h):
        assert nc_mul(nc_mul(f, g), h) == nc_mul(f, nc_mul(g, h))

    @settings(max_examples=30, deadline=None)
    @given(polys, polys)
    def test_involution_reverses_products(self, f, g):
        assert involution(nc_mul(f, g)) == nc_mul(involution(g), involution(f))
        assert involution(involution(f)) == f

    @pytest.mark.parametrize("mu", range(4))
    def test_coordinates_are_hermitian(self, mu):
        assert involution(x(mu)) == x(mu)


class TestAction:
    @pytest.mark.parametrize("j", [1, 2, 3])
    def test_spatial_momentum(self, j):
        p = OperatorElement.generator(f"P{j}")
        assert act(p, x(j)) == PolyElement.constant(-I)
        assert act(p, x(0)).is_zero()

    def test_energy(self):
        assert act(OperatorElement.generator("P0"), x(0)) == PolyElement.constant(I)

    def test_e_shifts_time(self):
        assert act(OperatorElement.generator("E"), x(0)) == x(0) + PolyElement.constant(I_OVER_KAPPA)
        assert act(OperatorElement.generator("E"), PolyElement.constant(ONE)) == PolyElement.constant(ONE)

    def test_boost_on_time(self):
        assert act(OperatorElement.generator("N1"), x(0)) == x(1) * I

    @settings(max_examples=20, deadline=None)
    @given(st.sampled_from(GENERATORS), st.sampled_from(GENERATORS), small_polys)
    def test_action_is_a_representation(self, a, b, f):
        g, h = OperatorElement.generator(a), OperatorElement.generator(b)
        assert act(op_mul(g, h), f) == act(g, act(h, f))

    @settings(max_examples=20, deadline=None)
    @given(st.sampled_from(GENERATORS), small_polys, small_polys)
    def test_action_follows_coproduct(self, name, f, g):
        h = OperatorElement.generator(name)
        expected = PolyElement()
        for (w1, w2), coeff in coproduct(h).terms.items():
            expected = expected + nc_mul(act(word_element(w1), f), act(word_element(w2), g)) * coeff
        assert act(h, nc_mul(f, g)) == expected


class TestModes:
    @given(modes, modes, modes)
    def test_composition_is_associative(self, k, l, m):
        left = compose_modes(compose_modes(k, l, 1.0), m, 1.0)
        right = compose_modes(k, compose_modes(l, m, 1.0), 1.0)
        np.testing.assert_allclose(left, right, rtol=1e-12, atol=1e-12)

    @given(modes)
    def test_antipode_inverts(self, k):
        np.testing.assert_allclose(compose_modes(k, mode_antipode(k, 2.0), 2.0), (0, 0, 0, 0), atol=1e-12)
        np.testing.assert_allclose(mode_antipode(mode_antipode(k, 2.0), 2.0), k, atol=1e-12)

    def test_plane_wave_product(self):
        f = WaveElement.plane_wave((0.3, 0.1, 0.0, -0.2), 2.0)
        g = WaveElement.plane_wave((-0.1, 0.2, 0.4, 0.0), 1j)
        (k, _), = f.modes()
        (l, _), = g.modes()
        product = f * g
        assert len(product.modes()) == 1
        assert product.coefficient(compose_modes(k, l, 1.0)) == pytest.approx(2j)

    def test_wave_involution(self):
        f = WaveElement.plane_wave((0.3, 0.1, 0.0, -0.2), 1 + 2j)
        (k, _), = f.modes()
        assert f.dagger().coefficient(mode_antipode(k, 1.0)) == pytest.approx(1 - 2j)
        assert (f * f.dagger()).coefficient((0, 0, 0, 0)) == pytest.approx(5.0)

    def test_kappa_must_be_positive(self):
        with pytest.raises(ValueError):
            WaveElement(kappa=0.0)

    def test_kappa_mismatch(self):
        with pytest.raises(ValueError, match="κ mismatch"):
            WaveElement.plane_wave((0, 0, 0, 0), 1.0, 1.0) + WaveElement.plane_wave((0, 0, 0, 0), 1.0, 2.0)

    def test_exact_coefficient_rejected(self):
        with pytest.raises(TypeError, match="backend mismatch"):
            WaveElement.plane_wave((0, 0, 0, 0)) * ExactScalar(1)

    def test_boost_not_diagonal(self):
        with pytest.raises(ValueError, match="not diagonal on plane waves"):
            act_diagonal(OperatorElement.generator("N1"), WaveElement.plane_wave((0.1, 0, 0, 0)))


class TestClosedForms:
    @settings(max_examples=30, deadline=None)
    @given(modes, st.sampled_from([0.5, 1.0, 3.0]))
    def test_xi_chi_and_box_match_operators(self, k, kappa):
        values = mode_eigenvalues(k, kappa)
        expected_xi = [eigenvalue(field, k, kappa) for field in xi()]
        expected_chi = [eigenvalue(field, k, kappa) for field in chi()]
        np.testing.assert_allclose(values['xi'], np.real(expected_xi), rtol=1e-10, atol=1e-10)
        np.testing.assert_allclose(values['chi'], np.real(expected_chi), rtol=1e-10, atol=1e-10)
        assert values['box'] == pytest.approx(eigenvalue(casimir(), k, kappa).real, rel=1e-9, abs=1e-10)

    @settings(max_examples=30, deadline=None)
    @given(modes)
    def test_lambda_matches_operator_matrix(self, k):
        expected = np.array([[eigenvalue(entry, k, 1.5).real for entry in row] for row in lambda_matrix()])
        np.testing.assert_allclose(lambda_eigenvalues(k, 1.5), expected, rtol=1e-10, atol=1e-10)

    @given(modes)
    def test_lambda_is_so41(self, k):
        matrix = lambda_eigenvalues(k, 1.0)
        np.testing.assert_allclose(matrix @ ETA @ matrix.T, ETA, atol=1e-10)

    @given(modes)
    def test_sigma_inverts_lambda(self, k):
        values = mode_eigenvalues(k, 1.0)
        np.testing.assert_allclose(values['sigma'] @ values['lambda'], np.eye(5), atol=1e-10)

    def test_large_kappa_keeps_precision(self):
        k = (1e-3, 1e-3, 0.0, 0.0)
        values = mode_eigenvalues(k, 1e6)
        assert values['xi'][0] == pytest.approx(-1e-3, rel=1e-6)
        assert values['box'] == pytest.approx(-1e-6 + 1e-6 * math.exp(1e-9), abs=1e-15)

    def test_random_wave_is_reproducible(self):
        first = random_wave(np.random.default_rng(3), 3, 1.0)
        second = random_wave(np.random.default_rng(3), 3, 1.0)
        assert first == second


class TestPlaneWaveSeries:
    K = (Fraction(1, 10), Fraction(1, 5), Fraction(-3, 10), Fraction(1, 7))

    @pytest.mark.parametrize("j", [1, 2, 3])
    def test_spatial_momenta_match_eigenvalues(self, j):
        order = 3
        series = plane_wave_series(self.K, order)
        image = act(OperatorElement.generator(f"P{j}"), series).terms
        wave = act_diagonal(OperatorElement.generator(f"P{j}"), WaveElement.plane_wave(self.K))
        (k, _), = wave.modes()
        eigen = wave.coefficient(k)
        assert eigen == pytest.approx(float(self.K[j]), abs=1e-12)
        for mono, coeff in series.terms.items():
            if mono[j - 1] < order:
                assert image.get(mono, ExactScalar(0)) == coeff * ExactScalar(self.K[j])

    def test_constant_term(self):
        assert plane_wave_series(self.K, 2).terms[(0, 0, 0, 0)] == ONE
