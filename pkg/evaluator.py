"""
kforms - Expression Evaluator

Evaluates parsed expressions against the algebra engine and prints the
result in canonical form.

Features:
    - Exact backend: polynomials in x0..x3 with Laurent coefficients in 1/κ,
      optionally fixed to a rational κ when printing
    - Plane-wave backend: numeric κ, wave(k) literals and a bound field phi
    - Operator products act on forms (P0 * x0 is P0 ▷ x0)
    - Backend mismatches reported with a remediation hint
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import config
from expression_parser import Ast, parse
from forms import (
    Form, act_form, dagger, differential, hodge, inner, left_multiply, lie, right_multiply, wedge,
)
from integral import integrate
from kminkowski import PolyElement, WaveElement
from kpoincare import OperatorElement, casimir, chi, twist, xi
from scalars import I, KAPPA, ExactScalar, NumericScalar, format_scalar

logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
logger = logging.getLogger(__name__)


class BackendError(ValueError):
    """Expression needs the other coefficient backend."""


@dataclass
class EvalEnv:
    """
    Evaluation settings.

    Args:
        backend: "exact" or "wave"
        kappa: rational κ for printing (exact), numeric κ (wave), None for symbolic
        phi: field bound to the name phi (wave backend)
    """

    backend: str = config.DEFAULT_BACKEND
    kappa: Fraction | float | None = None
    phi: WaveElement | None = None

    def __post_init__(self):
        if self.backend not in config.BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}, choose from {config.BACKENDS}")
        if self.kappa is not None and not self.kappa > 0:
            raise ValueError(f"κ must be positive, got {self.kappa}")

    @property
    def is_wave(self) -> bool:
        return self.backend == "wave"

    @property
    def numeric_kappa(self) -> float:
        return float(self.kappa) if self.kappa is not None else config.WAVE_KAPPA

    def zero(self):
        if self.is_wave:
            return WaveElement(kappa=self.numeric_kappa)
        return PolyElement()


def _operator(name: str) -> OperatorElement:
    if name.startswith("xi_"):
        return xi()[int(name[3:])]
    if name.startswith("chi_"):
        return chi()[int(name[4:])]
    if name == "T":
        return twist()
    if name == "box":
        return casimir()
    return OperatorElement.generator(name)


def _is_scalar(value) -> bool:
    return isinstance(value, (ExactScalar, NumericScalar))


def _coefficient(value, env: EvalEnv):
    """A scalar in the coefficient type of the active backend."""
    if env.is_wave:
        if isinstance(value, ExactScalar):
            return NumericScalar(value.evaluate(env.numeric_kappa))
        return NumericScalar(value)
    if isinstance(value, NumericScalar):
        raise BackendError("backend mismatch: numeric scalars need --backend wave")
    return value


def _as_form(value, env: EvalEnv) -> Form:
    if isinstance(value, Form):
        return value
    if _is_scalar(value):
        return Form.function(env.zero().one_like() * _coefficient(value, env))
    raise TypeError(f"expected a form, got {type(value).__name__}")


def _scalar_binary(op: str, a, b, env: EvalEnv):
    if isinstance(a, NumericScalar) or isinstance(b, NumericScalar):
        a, b = NumericScalar(_numeric(a, env)), NumericScalar(_numeric(b, env))
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    return a * b


def _numeric(value, env: EvalEnv) -> complex:
    if isinstance(value, ExactScalar):
        return value.evaluate(env.numeric_kappa)
    return complex(value)


def _exact_operator_scalar(value) -> ExactScalar:
    if isinstance(value, NumericScalar):
        raise BackendError("operator coefficients must be exact")
    return value


def _multiply(a, b, env: EvalEnv):
    if _is_scalar(a) and _is_scalar(b):
        return _scalar_binary("mul", a, b, env)
    if isinstance(a, OperatorElement):
        if isinstance(b, OperatorElement):
            return a * b
        if _is_scalar(b):
            return a * _exact_operator_scalar(b)
        return act_form(a, b)
    if isinstance(b, OperatorElement):
        return _exact_operator_scalar(a) * b
    if _is_scalar(a):
        return b * _coefficient(a, env)
    if _is_scalar(b):
        return a * _coefficient(b, env)
    if a.degrees() <= {0}:
        return left_multiply(a.component(()), b)
    return right_multiply(a, b.component(()))


def _add(op: str, a, b, env: EvalEnv):
    if _is_scalar(a) and _is_scalar(b):
        return _scalar_binary(op, a, b, env)
    if isinstance(a, OperatorElement) or isinstance(b, OperatorElement):
        a = a if isinstance(a, OperatorElement) else OperatorElement.constant(_exact_operator_scalar(a))
        b = b if isinstance(b, OperatorElement) else OperatorElement.constant(_exact_operator_scalar(b))
        return a + b if op == "add" else a - b
    a, b = _as_form(a, env), _as_form(b, env)
    return a + b if op == "add" else a - b


def evaluate(ast: Ast, env: EvalEnv | None = None):
    """
    Evaluate an expression tree.

    Returns:
        ExactScalar, NumericScalar, Form or OperatorElement

    Raises:
        BackendError: for atoms the active backend cannot represent
        ValueError: for domain errors raised by the engine
    """
    env = env or EvalEnv()
    node = ast.node

    if node == "number":
        return ExactScalar(ast.value)
    if node == "imag":
        return I
    if node == "kappa":
        return KAPPA ** ast.value
    if node == "coord":
        if env.is_wave:
            raise BackendError("backend mismatch: coordinates need --backend exact")
        return Form.function(PolyElement.coordinate(ast.value))
    if node == "wave":
        if not env.is_wave:
            raise BackendError("backend mismatch: plane waves need --backend wave")
        return Form.function(WaveElement.plane_wave(ast.value, 1.0, env.numeric_kappa))
    if node == "phi":
        if env.phi is None:
            raise BackendError("phi is unbound: pass --modes FILE with --backend wave")
        if not env.is_wave:
            raise BackendError("backend mismatch: phi needs --backend wave")
        return Form.function(env.phi)
    if node == "basis":
        return Form.basis(ast.value, env.zero())
    if node == "vol":
        return Form.volume(env.zero())
    if node == "operator":
        return _operator(ast.value)

    if node in ("add", "sub", "mul", "wedge"):
        a = evaluate(ast.children[0], env)
        b = evaluate(ast.children[1], env)
        if node == "mul":
            return _multiply(a, b, env)
        if node == "wedge":
            return wedge(_as_form(a, env), _as_form(b, env))
        return _add(node, a, b, env)

    if node == "lie":
        operator = evaluate(ast.children[0], env)
        return lie(operator, _as_form(evaluate(ast.children[1], env), env))

    value = evaluate(ast.children[0], env)
    if node == "neg":
        return -value
    if node == "dagger":
        if _is_scalar(value):
            return value.conj()
        return dagger(value)
    form = _as_form(value, env)
    if node == "d":
        return differential(form)
    if node == "star":
        return hodge(form)
    if node == "iota":
        return inner(ast.value, form)
    if node == "int":
        if not env.is_wave:
            raise BackendError("backend mismatch: int(...) needs --backend wave")
        return integrate(form)
    raise ValueError(f"unknown node {node!r}")


def _fix_kappa(value, kappa: Fraction):
    if isinstance(value, ExactScalar):
        return value.substitute(kappa)
    if isinstance(value, Form):
        return Form({w: c.substitute(kappa) for w, c in value.terms.items()}, value.zero)
    return value


def format_value(value, env: EvalEnv | None = None) -> str:
    """Canonical text of an evaluation result."""
    env = env or EvalEnv()
    if not env.is_wave and env.kappa is not None:
        value = _fix_kappa(value, Fraction(env.kappa))
    if _is_scalar(value):
        return format_scalar(value)
    return str(value)


def evaluate_text(src: str, env: EvalEnv | None = None) -> str:
    """Parse, evaluate and print."""
    env = env or EvalEnv()
    ast = parse(src)
    logger.info(f"evaluating {ast.describe()} expression on the {env.backend} backend")
    return format_value(evaluate(ast, env), env)

