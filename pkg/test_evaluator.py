from fractions import Fraction

import pytest

from evaluator import BackendError, EvalEnv, evaluate, evaluate_text, format_value
from expression_parser import parse
from forms import Form
from kminkowski import PolyElement, WaveElement
from scalars import I_OVER_KAPPA, NumericScalar

WAVE = EvalEnv(backend="wave")


class TestExactBackend:
    @pytest.mark.parametrize("src,text", [
        ("x1*x0 - x0*x1", "(i/κ)·x1"),
        ("star(star(e2))", "e2"),
        ("d(d(x1*x0))", "0"),
        ("1 - kappa^-2", "1 - 1/κ^2"),
        ("P1 * x1", "-i"),
        ("P0 * x0", "i"),
        ("lie(P1)(x1)", "-i"),
        ("iota(0)(e0 ^ e1)", "e1"),
        ("d(x2)", "e2"),
        ("e1 ^ e0", "-e0^e1"),
    ])
    def test_examples(self, src, text):
        assert evaluate_text(src) == text

    def test_fixed_kappa(self):
        assert evaluate_text("x1*x0 - x0*x1", EvalEnv(kappa=Fraction(1))) == "i·x1"
        assert evaluate_text("1 - kappa^-2", EvalEnv(kappa=Fraction(2))) == "3/4"

    def test_time_shift(self):
        expected = Form.function(PolyElement.coordinate(0) + PolyElement.constant(I_OVER_KAPPA))
        assert evaluate(parse("E * x0")) == expected

    def test_scalar_times_form(self):
        assert evaluate(parse("2 * e0")) == Form.basis(0) * 2
        assert evaluate(parse("e0 * 2")) == Form.basis(0) * 2

    @pytest.mark.parametrize("src", ["int(vol)", "wave(0.1, 0, 0, 0)", "phi"])
    def test_needs_wave_backend(self, src):
        with pytest.raises(BackendError):
            evaluate_text(src)


class TestWaveBackend:
    def test_constant_integral(self):
        assert evaluate_text("int(vol)", WAVE) == "1"
        assert evaluate_text("int(wave(0, 0, 0, 0) * vol)", WAVE) == "1"

    def test_nonzero_mode_integral(self):
        assert evaluate_text("int(wave(0.3, 0.1, 0, 0) * vol)", WAVE) == "0"

    def test_bound_field(self):
        env = EvalEnv(backend="wave", phi=WaveElement.constant(2.0))
        assert evaluate_text("int(phi * vol)", env) == "2"
        assert evaluate_text("int(dagger(phi) * phi * vol)", env) == "4"

    def test_unbound_field(self):
        with pytest.raises(BackendError, match="unbound"):
            evaluate_text("phi", WAVE)

    def test_coordinates_rejected(self):
        with pytest.raises(BackendError, match="backend mismatch"):
            evaluate_text("x0 * wave(0, 0, 0, 0)", WAVE)

    def test_kappa_evaluated(self):
        env = EvalEnv(backend="wave", kappa=2.0)
        assert evaluate_text("int(kappa * vol)", env) == "2"

    def test_numeric_scalars_print_compactly(self):
        assert format_value(NumericScalar(0, -2), WAVE) == "-2i"


class TestEnv:
    def test_unknown_backend(self):
        with pytest.raises(ValueError, match="unknown backend"):
            EvalEnv(backend="symbolic")

    def test_kappa_must_be_positive(self):
        with pytest.raises(ValueError):
            EvalEnv(kappa=Fraction(0))

    def test_default_wave_kappa(self):
        assert EvalEnv(backend="wave").numeric_kappa == 1.0
