"""
kforms - Coefficient Scalars

Exact and numeric coefficient arithmetic shared by every algebra module.

Features:
    - ExactScalar: Laurent polynomial in 1/κ with Gaussian-rational coefficients
    - NumericScalar: complex double that refuses to become NaN or infinite
    - Canonical sparse storage (no stored zero coefficient)
    - Conjugation fixing κ, inversion of single-term units
    - Evaluation at a concrete κ, exact substitution of a rational κ
"""

import cmath
import logging
import re
from fractions import Fraction
from numbers import Rational

import config

logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
logger = logging.getLogger(__name__)

_PLAIN = re.compile(r"^-?(\d+|i|\d+i)$")


def _gaussian(value) -> tuple[Fraction, Fraction]:
    """Convert an int, Fraction, complex or (re, im) pair into a Gaussian rational."""
    if isinstance(value, tuple):
        return Fraction(value[0]), Fraction(value[1])
    if isinstance(value, Rational):
        return Fraction(value), Fraction(0)
    if isinstance(value, complex):
        return Fraction(value.real), Fraction(value.imag)
    if isinstance(value, float):
        return Fraction(value), Fraction(0)
    raise TypeError(f"cannot build an exact scalar from {type(value).__name__}")


def _format_rational(value: Fraction) -> str:
    return str(value)


def _format_gaussian(real: Fraction, imag: Fraction) -> str:
    def imaginary(b: Fraction) -> str:
        if b == 1:
            return "i"
        if b == -1:
            return "-i"
        if b.denominator == 1:
            return f"{b}i"
        return f"({b})i"

    if imag == 0:
        return _format_rational(real)
    if real == 0:
        return imaginary(imag)
    sign = "+" if imag > 0 else "-"
    return f"({real}{sign}{imaginary(abs(imag))})"


def _format_term(power: int, coeff: tuple[Fraction, Fraction]) -> str:
    text = _format_gaussian(*coeff)
    plain = bool(_PLAIN.match(text))
    if power == 0:
        return text
    symbol = "κ" if abs(power) == 1 else f"κ^{abs(power)}"
    if power > 0:
        return f"{text}/{symbol}" if plain else f"({text})/{symbol}"
    if text == "1":
        return symbol
    if text == "-1":
        return f"-{symbol}"
    return f"{text}·{symbol}" if plain else f"({text})·{symbol}"


class ExactScalar:
    """
    Gaussian-rational Laurent polynomial in κ⁻¹.

    Stored as a map power -> (re, im) where the term reads (re + i·im)·κ^(-power).
    Values are immutable once built.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        """
        Build a scalar from a mapping or a plain number.

        Args:
            terms: dict of power -> coefficient, or a number (taken at power 0)
        """
        canonical: dict[int, tuple[Fraction, Fraction]] = {}
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {0: terms}
        for power, coeff in terms.items():
            real, imag = _gaussian(coeff)
            if real or imag:
                canonical[int(power)] = (real, imag)
        self._terms = canonical
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "ExactScalar":
        obj = cls.__new__(cls)
        obj._terms = {p: c for p, c in terms.items() if c[0] or c[1]}
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, value) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        return cls(value)

    @property
    def terms(self) -> dict[int, tuple[Fraction, Fraction]]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(power == 0 for power in self._terms)

    def powers(self) -> list[int]:
        return sorted(self._terms)

    def __add__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        result = dict(self._terms)
        for power, (b_re, b_im) in other._terms.items():
            a_re, a_im = result.get(power, (0, 0))
            result[power] = (a_re + b_re, a_im + b_im)
        return ExactScalar._raw(result)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw({p: (-a, -b) for p, (a, b) in self._terms.items()})

    def __sub__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return ExactScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            factor = Fraction(other)
            return ExactScalar._raw({p: (a * factor, b * factor) for p, (a, b) in self._terms.items()})
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        result: dict[int, tuple[Fraction, Fraction]] = {}
        for p, (a, b) in self._terms.items():
            for q, (c, d) in other._terms.items():
                re_part, im_part = result.get(p + q, (0, 0))
                result[p + q] = (re_part + a * c - b * d, im_part + a * d + b * c)
        return ExactScalar._raw(result)

    __rmul__ = __mul__

    def conj(self) -> "ExactScalar":
        """Complex conjugation; κ is real so powers are untouched."""
        return ExactScalar._raw({p: (a, -b) for p, (a, b) in self._terms.items()})

    def inv(self) -> "ExactScalar":
        """
        Multiplicative inverse of a single-term scalar.

        Raises:
            ZeroDivisionError: for the zero scalar
            ArithmeticError: for scalars with more than one power of κ
        """
        if not self._terms:
            raise ZeroDivisionError("division by zero")
        if len(self._terms) > 1:
            raise ArithmeticError("not a unit")
        (power, (a, b)), = self._terms.items()
        norm = a * a + b * b
        return ExactScalar._raw({-power: (a / norm, -b / norm)})

    def __truediv__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) * self.inv()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inv() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def evaluate(self, kappa) -> complex:
        """Numerical value at a concrete κ."""
        kappa = complex(kappa)
        total = 0j
        for power, (a, b) in self._terms.items():
            total += complex(float(a), float(b)) * kappa ** (-power)
        return total

    def substitute(self, kappa: Fraction) -> "ExactScalar":
        """Exact value at a rational κ, returned as a constant scalar."""
        kappa = Fraction(kappa)
        if kappa == 0:
            raise ZeroDivisionError("division by zero")
        real, imag = Fraction(0), Fraction(0)
        for power, (a, b) in self._terms.items():
            factor = kappa ** (-power)
            real += a * factor
            imag += b * factor
        return ExactScalar({0: (real, imag)})

    def constant_term(self) -> tuple[Fraction, Fraction]:
        return self._terms.get(0, (Fraction(0), Fraction(0)))

    def __str__(self):
        if not self._terms:
            return "0"
        text = " + ".join(_format_term(p, self._terms[p]) for p in sorted(self._terms))
        return text.replace("+ -", "- ")

    def __repr__(self):
        return f"ExactScalar({self})"


class NumericScalar(complex):
    """Complex double coefficient that stays finite under every operation."""

    def __new__(cls, real=0.0, imag=0.0):
        value = complex(real) + 1j * complex(imag)
        if not (cmath.isfinite(value)):
            raise ArithmeticError("numeric scalar is not finite")
        return super().__new__(cls, value.real, value.imag)

    @classmethod
    def coerce(cls, value) -> "NumericScalar":
        if isinstance(value, NumericScalar):
            return value
        if isinstance(value, ExactScalar):
            raise TypeError("exact scalar needs a κ before it can become numeric")
        return cls(value)

    def __add__(self, other):
        return NumericScalar(complex.__add__(self, complex(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return NumericScalar(complex.__sub__(self, complex(other)))

    def __rsub__(self, other):
        return NumericScalar(complex(other) - complex(self))

    def __mul__(self, other):
        return NumericScalar(complex.__mul__(self, complex(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = complex(other)
        if other == 0:
            raise ZeroDivisionError("division by zero")
        return NumericScalar(complex(self) / other)

    def __neg__(self):
        return NumericScalar(-complex(self))

    def conj(self) -> "NumericScalar":
        return NumericScalar(self.conjugate())

    def inv(self) -> "NumericScalar":
        if complex(self) == 0:
            raise ZeroDivisionError("division by zero")
        return NumericScalar(1 / complex(self))

    def is_zero(self) -> bool:
        return complex(self) == 0

    def evaluate(self, kappa=None) -> complex:
        return complex(self)

    def __repr__(self):
        return f"NumericScalar({complex(self)!r})"


def scalar_ops(a, b, operation: str):
    """
    Dispatch a named ring operation on two scalars of the same backend.

    Args:
        a: left operand
        b: right operand (ignored by unary operations)
        operation: one of add, mul, sub, neg, conj, eq, inv

    Returns:
        Scalar or bool for eq
    """
    if operation == "add":
        return a + b
    if operation == "sub":
        return a - b
    if operation == "mul":
        return a * b
    if operation == "neg":
        return -a
    if operation == "conj":
        return a.conj()
    if operation == "inv":
        return a.inv()
    if operation == "eq":
        return a == b
    raise ValueError(f"unknown scalar operation: {operation}")


def format_scalar(value) -> str:
    """Printable form of either backend's scalar."""
    if isinstance(value, ExactScalar):
        return str(value)
    z = complex(value)
    real, imag = z.real + 0.0, z.imag + 0.0
    if imag == 0:
        return f"{real:.12g}"
    if real == 0:
        return f"{imag:.12g}i"
    return f"{real:.12g}{imag:+.12g}i"


def format_term(coeff, basis: str) -> str:
    """Coefficient times basis label, e.g. "(i/κ)·x1", "-x0", "2·e0^e1"."""
    text = format_scalar(coeff)
    if not basis:
        return text
    if text == "1":
        return basis
    if text == "-1":
        return f"-{basis}"
    if _PLAIN.match(text):
        return f"{text}·{basis}"
    return f"({text})·{basis}"


def random_exact_scalar(rng, max_terms: int = 3, max_power: int = 2, bound: int = 5) -> ExactScalar:
    """Random Gaussian-rational Laurent polynomial, used by the verification suites."""
    terms = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        power = int(rng.integers(0, max_power + 1))
        real = Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, 4)))
        imag = Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, 4)))
        terms[power] = (real, imag)
    return ExactScalar(terms)


ZERO = ExactScalar()
ONE = ExactScalar(1)
I = ExactScalar({0: (0, 1)})
KAPPA_INV = ExactScalar({1: 1})
KAPPA = ExactScalar({-1: 1})
I_OVER_KAPPA = ExactScalar({1: (0, 1)})
