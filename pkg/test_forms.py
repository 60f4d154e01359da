import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forms import (
    DIMENSION, WORDS_BY_DEGREE, Form, act_form, cartan_sides, coord_commutator, dagger, differential,
    hodge, inner, left_multiply, lie, metric, random_form, right_multiply, to_right_coefficients,
    from_right_coefficients, wedge,
)
from kminkowski import PolyElement, WaveElement, random_poly
from kpoincare import SYMMETRY_GENERATORS, OperatorElement
from scalars import I, I_OVER_KAPPA, ONE

seeds = st.integers(0, 2 ** 32 - 1)
degrees = st.integers(0, DIMENSION)


def one() -> PolyElement:
    return PolyElement.constant(ONE)


def x(mu: int) -> PolyElement:
    return PolyElement.coordinate(mu)


def e(*word) -> Form:
    return Form.word(word, one())


def form_of(seed: int, degree: int, **kwargs) -> Form:
    return random_form(np.random.default_rng(seed), degree, **kwargs)


ALL_WORDS = [w for words in WORDS_BY_DEGREE.values() for w in words]


class TestBasis:
    def test_word_count(self):
        assert len(ALL_WORDS) == 32

    def test_unsorted_word_rejected(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            Form({(1, 0): one()})

    def test_antisymmetry(self):
        assert e(1, 0) == -e(0, 1)
        assert wedge(e(2), e(2)).is_zero()
        assert wedge(e(0), e(1)) == e(0, 1)

    def test_printing(self):
        assert str(e(0, 1)) == "e0^e1"
        assert str(left_multiply(x(1) * 2, e(0))) == "2·x1·e0"
        assert str(Form()) == "0"

    def test_commuting_time_past_e0(self):
        expected = left_multiply(x(0), e(0)) - left_multiply(PolyElement.constant(I_OVER_KAPPA), e(4))
        assert right_multiply(e(0), x(0)) == expected

    @pytest.mark.parametrize("j", [1, 2, 3])
    def test_spatial_one_forms_commute_with_time(self, j):
        assert right_multiply(e(j), x(0)) == left_multiply(x(0), e(j))

    @pytest.mark.parametrize("mu", range(4))
    def test_volume_is_central(self, mu):
        assert coord_commutator(mu, Form.volume()).is_zero()

    def test_commutator_is_exact_only(self):
        with pytest.raises(ValueError, match="exact only"):
            coord_commutator(0, Form.volume(WaveElement()))

    @settings(max_examples=20, deadline=None)
    @given(seeds, degrees)
    def test_right_coefficients_round_trip(self, seed, degree):
        omega = form_of(seed, degree)
        assert from_right_coefficients(to_right_coefficients(omega), omega.zero) == omega


class TestWedge:
    @settings(max_examples=15, deadline=None)
    @given(seeds, st.integers(0, 2), st.integers(0, 1), st.integers(0, 2))
    def test_associativity(self, seed, n, m, k):
        rng = np.random.default_rng(seed)
        a, b, c = (random_form(rng, d, max_words=1, max_poly_degree=1) for d in (n, m, k))
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))

    def test_backend_mismatch(self):
        with pytest.raises(TypeError, match="backend mismatch"):
            wedge(e(0), Form.basis(1, WaveElement()))

    @settings(max_examples=20, deadline=None)
    @given(seeds, seeds)
    def test_function_leibniz(self, s1, s2):
        f = random_poly(np.random.default_rng(s1), max_degree=3)
        g = random_poly(np.random.default_rng(s2), max_degree=3)
        df, dg = differential(Form.function(f)), differential(Form.function(g))
        assert differential(Form.function(f * g)) == right_multiply(df, g) + left_multiply(f, dg)


class TestDifferential:
    @settings(max_examples=30, deadline=None)
    @given(seeds, st.integers(0, DIMENSION - 2))
    def test_nilpotent(self, seed, degree):
        assert differential(differential(form_of(seed, degree))).is_zero()

    @settings(max_examples=20, deadline=None)
    @given(seeds, st.integers(0, 2), st.integers(0, 2))
    def test_graded_leibniz(self, seed, n, m):
        rng = np.random.default_rng(seed)
        omega = random_form(rng, n, max_words=1)
        rho = random_form(rng, m, max_words=1)
        lhs = differential(wedge(omega, rho))
        rhs = wedge(differential(omega), rho) + wedge(omega, differential(rho)) * (-1) ** n
        assert lhs == rhs

    @pytest.mark.parametrize("mu", range(4))
    def test_basis_forms_closed(self, mu):
        assert differential(e(mu)).is_zero()
        assert differential(Form.function(one())).is_zero()

    def test_volume_form_has_no_differential(self):
        assert differential(left_multiply(x(0), Form.volume())).is_zero()

    @settings(max_examples=15, deadline=None)
    @given(seeds, st.integers(0, 4))
    def test_commutes_with_involution(self, seed, degree):
        omega = form_of(seed, degree, max_words=1)
        assert differential(dagger(omega)) == dagger(differential(omega)) * (-1) ** degree

    def test_wave_backend(self):
        f = WaveElement.from_modes([(1.0, (0.3, 0.1, -0.2, 0.05)), (2j, (-0.1, 0.0, 0.4, 0.2))])
        assert differential(differential(Form.function(f))).max_abs() < 1e-12


class TestInvolution:
    @pytest.mark.parametrize("word", ALL_WORDS)
    def test_basis_sign(self, word):
        n = len(word)
        assert dagger(e(*word)) == e(*word) * (-1) ** (n * (n - 1) // 2)

    @settings(max_examples=20, deadline=None)
    @given(seeds, degrees)
    def test_involutive(self, seed, degree):
        omega = form_of(seed, degree)
        assert dagger(dagger(omega)) == omega

    def test_one_form(self):
        assert dagger(left_multiply(x(0), e(0))) == right_multiply(e(0), x(0))


class TestHodge:
    @pytest.mark.parametrize("word", ALL_WORDS)
    def test_double_star(self, word):
        n = len(word)
        assert hodge(hodge(e(*word))) == e(*word) * (-1) ** (n * (DIMENSION - n))

    def test_volume(self):
        assert hodge(Form.volume()) == Form.function(one())
        assert hodge(Form.function(one())) == Form.volume()

    @pytest.mark.parametrize("word", ALL_WORDS)
    def test_left_and_right_linear(self, word):
        f = x(0) * x(1) + x(2)
        assert hodge(left_multiply(f, e(*word))) == left_multiply(f, hodge(e(*word)))
        assert hodge(right_multiply(e(*word), f)) == right_multiply(hodge(e(*word)), f)

    @pytest.mark.parametrize("a", range(DIMENSION))
    @pytest.mark.parametrize("b", range(DIMENSION))
    def test_metric(self, a, b):
        expected = PolyElement.constant((-1 if a == 0 else 1) if a == b else 0)
        assert metric(Form.basis(a), Form.basis(b)) == expected

    def test_metric_needs_one_forms(self):
        with pytest.raises(ValueError):
            metric(e(0, 1), e(0, 1))

    @settings(max_examples=10, deadline=None)
    @given(seeds, degrees, st.sampled_from(SYMMETRY_GENERATORS))
    def test_covariance(self, seed, degree, name):
        h = OperatorElement.generator(name)
        omega = form_of(seed, degree, max_words=1)
        assert hodge(act_form(h, omega)) == act_form(h, hodge(omega))


class TestDerivatives:
    @pytest.mark.parametrize("a", range(DIMENSION))
    @pytest.mark.parametrize("b", range(DIMENSION))
    def test_inner_on_basis(self, a, b):
        expected = Form.function(one()) if a == b else Form()
        assert inner(a, e(b)) == expected

    def test_inner_on_functions(self):
        assert inner(0, Form.function(x(0))).is_zero()

    def test_inner_index(self):
        with pytest.raises(ValueError):
            inner(5, e(0))

    @settings(max_examples=12, deadline=None)
    @given(seeds, degrees, st.integers(0, DIMENSION - 1))
    def test_cartan_identity(self, seed, degree, a):
        omega = form_of(seed, degree, max_words=1, max_poly_degree=2)
        left, right = cartan_sides(a, omega)
        assert left == right

    @settings(max_examples=10, deadline=None)
    @given(seeds, st.integers(0, 3), st.sampled_from(SYMMETRY_GENERATORS))
    def test_lie_commutes_with_d(self, seed, degree, name):
        h = OperatorElement.generator(name)
        omega = form_of(seed, degree, max_words=1)
        assert lie(h, differential(omega)) == differential(lie(h, omega))

    @pytest.mark.parametrize("name", ["P0", "P1", "P2", "P3"])
    def test_translations_kill_basis_forms(self, name):
        assert act_form(OperatorElement.generator(name), e(0, 2)).is_zero()

    def test_boost_rotates_one_forms(self):
        n1 = OperatorElement.generator("N1")
        assert act_form(n1, e(4)).is_zero()
        assert act_form(n1, e(0)) == left_multiply(PolyElement.constant(I), e(1))
        assert act_form(n1, e(1)) == left_multiply(PolyElement.constant(I), e(0))
