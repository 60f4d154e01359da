"""
kforms - κ-Minkowski Algebra

Elements of the noncommutative spacetime algebra [x_j, x_0] = (i/κ) x_j in
two backends, plus the left action of the κ-Poincaré operators.

Features:
    - PolyElement: exact normal-ordered polynomials x1^a x2^b x3^c x0^m
    - WaveElement: finite sums of plane waves e_k = exp(i k·x) exp(-i k0 x0)
    - Deformed mode composition k ⊕ l and mode antipode S(k)
    - Left action through the coproduct (polynomials) or eigenvalues (waves)
    - Numerically stable closed forms for ξ(k), χ(k), λ(k), σ(k) and □(k)
"""

import logging
import math
from functools import lru_cache

import numpy as np

import config
from kpoincare import LORENTZ_NAMES, OperatorElement, coproduct, levi_civita
from scalars import ExactScalar, NumericScalar, ONE, I, format_term, random_exact_scalar

logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
logger = logging.getLogger(__name__)

COORDINATE_NAMES = ("x0", "x1", "x2", "x3")
ZERO_MONO = (0, 0, 0, 0)


def coordinate_mono(mu: int) -> tuple:
    """Exponent vector (n1, n2, n3, n0) of the single coordinate x^mu."""
    if mu == 0:
        return (0, 0, 0, 1)
    return tuple(1 if slot == mu - 1 else 0 for slot in range(3)) + (0,)


def _accumulate(target: dict, key, coeff) -> None:
    total = target.get(key)
    target[key] = coeff if total is None else total + coeff
    if target[key].is_zero():
        del target[key]


@lru_cache(maxsize=None)
def _shift_power(shift: int, power: int) -> ExactScalar:
    """(-i·shift/κ)^power."""
    return ExactScalar({1: (0, -shift)}) ** power if shift else (ONE if power == 0 else ExactScalar())


@lru_cache(maxsize=None)
def _mono_mul(left: tuple, right: tuple) -> tuple:
    """x^a x0^m · x^b x0^n = x^(a+b) (x0 - i|b|/κ)^m x0^n."""
    spatial = tuple(left[j] + right[j] for j in range(3))
    degree = sum(right[:3])
    m, n = left[3], right[3]
    result: dict = {}
    for r in range(m + 1):
        coeff = _shift_power(degree, m - r) * math.comb(m, r)
        if not coeff.is_zero():
            _accumulate(result, spatial + (r + n,), coeff)
    return tuple(result.items())


def format_mono(mono: tuple) -> str:
    letters = []
    for slot, name in ((0, "x1"), (1, "x2"), (2, "x3"), (3, "x0")):
        power = mono[slot]
        if power == 1:
            letters.append(name)
        elif power:
            letters.append(f"{name}^{power}")
    return "·".join(letters)


class PolyElement:
    """Exact κ-Minkowski polynomial in normal order (spatial left, time right)."""

    backend = "exact"
    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None):
        self._terms = {}
        for mono, coeff in (terms or {}).items():
            coeff = ExactScalar.coerce(coeff)
            if not coeff.is_zero():
                self._terms[tuple(mono)] = coeff

    @classmethod
    def _raw(cls, terms: dict) -> "PolyElement":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def constant(cls, value) -> "PolyElement":
        return cls({ZERO_MONO: value})

    @classmethod
    def coordinate(cls, mu: int) -> "PolyElement":
        if not 0 <= mu <= 3:
            raise ValueError(f"coordinate index must be 0..3, got {mu}")
        return cls({coordinate_mono(mu): ONE})

    @classmethod
    def monomial(cls, mono: tuple, coeff=ONE) -> "PolyElement":
        return cls({tuple(mono): coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def zero_like(self) -> "PolyElement":
        return PolyElement()

    def one_like(self) -> "PolyElement":
        return PolyElement.constant(ONE)

    def counit(self) -> ExactScalar:
        """Value at the origin: the coefficient of the unit monomial."""
        return self._terms.get(ZERO_MONO, ExactScalar())

    def _coerce(self, other) -> "PolyElement":
        if isinstance(other, PolyElement):
            return other
        if isinstance(other, WaveElement):
            raise TypeError("backend mismatch: polynomial and plane-wave elements do not mix")
        return PolyElement.constant(other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        result = dict(self._terms)
        for mono, coeff in other._terms.items():
            _accumulate(result, mono, coeff)
        return PolyElement._raw(result)

    __radd__ = __add__

    def __neg__(self):
        return PolyElement._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, PolyElement):
            return nc_mul(self, other)
        if isinstance(other, WaveElement):
            raise TypeError("backend mismatch: polynomial and plane-wave elements do not mix")
        try:
            factor = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return PolyElement({m: c * factor for m, c in self._terms.items()})

    def __rmul__(self, other):
        try:
            factor = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return PolyElement({m: factor * c for m, c in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, PolyElement):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def dagger(self) -> "PolyElement":
        return involution(self)

    def conj_scalars(self) -> "PolyElement":
        return PolyElement._raw({m: c.conj() for m, c in self._terms.items()})

    def substitute(self, kappa) -> "PolyElement":
        """Fix κ to a rational value, keeping the result exact."""
        return PolyElement({m: c.substitute(kappa) for m, c in self._terms.items()})

    def __str__(self):
        if not self._terms:
            return "0"
        order = sorted(self._terms, key=lambda m: (sum(m), m[:3][::-1], m[3]))
        parts = [format_term(self._terms[m], format_mono(m)) for m in order]
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"PolyElement({self})"


def nc_mul(f: PolyElement, g: PolyElement) -> PolyElement:
    """Normal-ordered product f·g."""
    result: dict = {}
    for m1, c1 in f._terms.items():
        for m2, c2 in g._terms.items():
            coeff = c1 * c2
            for mono, c in _mono_mul(m1, m2):
                _accumulate(result, mono, coeff * c)
    return PolyElement._raw(result)


def involution(f: PolyElement) -> PolyElement:
    """f† with (x^mu)† = x^mu; reverses products and conjugates coefficients."""
    result = PolyElement()
    for (a1, a2, a3, m), coeff in f._terms.items():
        time = PolyElement.monomial((0, 0, 0, m))
        space = PolyElement.monomial((a1, a2, a3, 0))
        result = result + nc_mul(time, space) * coeff.conj()
    return result


# =============================================================================
# OPERATOR ACTION ON POLYNOMIALS
# =============================================================================
def _momentum_on_mono(momentum: tuple, mono: tuple) -> dict:
    """
    Closed form for P1^n1 P2^n2 P3^n3 P0^n0 E^e acting on x^a x0^m.

    P_j acts as -i∂_j, P0 as i∂_0 and E shifts x0 by i/κ.
    """
    coeff = ONE
    spatial = []
    for j in range(3):
        n, a = momentum[j], mono[j]
        if n > a:
            return {}
        if n:
            coeff = coeff * ExactScalar({0: (0, -1)}) ** n * (math.factorial(a) // math.factorial(a - n))
        spatial.append(a - n)
    n0, m = momentum[3], mono[3]
    if n0 > m:
        return {}
    if n0:
        coeff = coeff * I ** n0 * (math.factorial(m) // math.factorial(m - n0))
    m -= n0
    exponent = momentum[4]
    result: dict = {}
    if not exponent:
        result[tuple(spatial) + (m,)] = coeff
        return result
    shift = ExactScalar({1: (0, exponent)})
    for r in range(m + 1):
        _accumulate(result, tuple(spatial) + (r,), coeff * shift ** (m - r) * math.comb(m, r))
    return result


def _lorentz_on_coordinate(letter: int, mono: tuple) -> dict:
    """N_j ▷ x0 = i x_j, N_j ▷ x_k = i δ_jk x0, R_j ▷ x_k = i ε_jkl x_l, R_j ▷ x0 = 0."""
    result: dict = {}
    time = mono[3] == 1
    if letter >= 3:
        j = letter - 3
        if time:
            result[coordinate_mono(j + 1)] = I
        elif mono[j] == 1:
            result[(0, 0, 0, 1)] = I
        return result
    if time:
        return result
    k = next(slot for slot in range(3) if mono[slot])
    for l in range(3):
        sign = levi_civita(letter, k, l)
        if sign:
            result[coordinate_mono(l + 1)] = I * sign
    return result


@lru_cache(maxsize=None)
def _letter_coproduct(letter: int) -> tuple:
    delta = coproduct(OperatorElement.generator(LORENTZ_NAMES[letter]))
    return tuple(delta.terms.items())


@lru_cache(maxsize=None)
def _lorentz_on_mono(letter: int, mono: tuple) -> tuple:
    """
    Lorentz letter on a monomial by peeling the leftmost coordinate:
    h ▷ (x·rest) = (h(1) ▷ x)(h(2) ▷ rest).
    """
    degree = sum(mono)
    if degree == 0:
        return ()
    if degree == 1:
        return tuple(_lorentz_on_coordinate(letter, mono).items())
    slot = next((s for s in range(3) if mono[s]), 3)
    head = tuple(1 if s == slot else 0 for s in range(4))
    rest = tuple(mono[s] - head[s] for s in range(4))
    result: dict = {}
    for (w1, w2), coeff in _letter_coproduct(letter):
        left = _act_word(w1, head)
        if not left:
            continue
        right = _act_word(w2, rest)
        if not right:
            continue
        product = nc_mul(PolyElement._raw(dict(left)), PolyElement._raw(dict(right)))
        for m, c in product._terms.items():
            _accumulate(result, m, coeff * c)
    return tuple(result.items())


@lru_cache(maxsize=None)
def _act_word(word: tuple, mono: tuple) -> tuple:
    """Normal-ordered word acting on a monomial; letters apply right to left."""
    lword, momentum = word
    poly = _momentum_on_mono(momentum, mono)
    for letter in reversed(lword):
        nxt: dict = {}
        for m, c in poly.items():
            for m2, c2 in _lorentz_on_mono(letter, m):
                _accumulate(nxt, m2, c * c2)
        poly = nxt
        if not poly:
            break
    return tuple(poly.items())


def act(h: OperatorElement, f):
    """
    Left action h ▷ f.

    Args:
        h: κ-Poincaré element
        f: PolyElement (coproduct recursion) or WaveElement (eigenvalues)

    Returns:
        Element of the same backend as f
    """
    if isinstance(f, WaveElement):
        return act_diagonal(h, f)
    result: dict = {}
    for word, hc in h.terms.items():
        for mono, fc in f._terms.items():
            coeff = hc * fc
            for m, c in _act_word(word, mono):
                _accumulate(result, m, coeff * c)
    return PolyElement._raw(result)


def random_poly(rng, max_degree: int = 4, max_terms: int = 3) -> PolyElement:
    """Random polynomial of total degree ≤ max_degree with exact coefficients."""
    terms = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        degree = int(rng.integers(0, max_degree + 1))
        cuts = sorted(int(c) for c in rng.integers(0, degree + 1, size=3))
        mono = (cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], degree - cuts[2])
        terms[mono] = random_exact_scalar(rng, max_terms=2, max_power=1)
    return PolyElement(terms)


def plane_wave_series(k, order: int) -> PolyElement:
    """
    Truncated normal-ordered plane wave Σ (i k·x)^a/a! (-i k0 x0)^m/m!.

    Args:
        k: (k0, k1, k2, k3) as exact rationals
        order: highest power kept in each coordinate
    """
    k0, k1, k2, k3 = (ExactScalar(v) for v in k)
    spatial = (I * k1, I * k2, I * k3)
    temporal = -(I * k0)
    terms = {}
    for a1 in range(order + 1):
        for a2 in range(order + 1):
            for a3 in range(order + 1):
                for m in range(order + 1):
                    coeff = (spatial[0] ** a1 * spatial[1] ** a2 * spatial[2] ** a3 * temporal ** m)
                    denominator = (math.factorial(a1) * math.factorial(a2)
                                   * math.factorial(a3) * math.factorial(m))
                    terms[(a1, a2, a3, m)] = coeff / denominator
    return PolyElement(terms)


# =============================================================================
# PLANE-WAVE BACKEND
# =============================================================================
def quantize_mode(k) -> tuple:
    """Round a mode onto the 2^-MODE_GRID_BITS grid so equal modes hash equally."""
    scale = 2 ** config.MODE_GRID_BITS
    return tuple(int(round(float(v) * scale)) for v in k)


def mode_value(key: tuple) -> tuple:
    scale = 2 ** config.MODE_GRID_BITS
    return tuple(v / scale for v in key)


def compose_modes(k, l, kappa: float) -> tuple:
    """k ⊕ l = (k0 + l0, k_j + exp(-k0/κ) l_j)."""
    factor = math.exp(-k[0] / kappa)
    return (k[0] + l[0],) + tuple(k[j] + factor * l[j] for j in range(1, 4))


def mode_antipode(k, kappa: float) -> tuple:
    """S(k) = (-k0, -exp(k0/κ) k); S(S(k)) = k."""
    factor = math.exp(k[0] / kappa)
    return (-k[0],) + tuple(-factor * k[j] for j in range(1, 4))


def _format_mode(k: tuple) -> str:
    return "e(" + ",".join(f"{v + 0.0:.6g}" for v in k) + ")"


class WaveElement:
    """
    Finite sum of plane-wave modes with complex coefficients at a fixed κ.

    Terms map a quantized mode key to a NumericScalar.
    """

    backend = "wave"
    __slots__ = ("_terms", "kappa")

    def __init__(self, terms: dict | None = None, kappa: float = config.WAVE_KAPPA):
        if not kappa > 0:
            raise ValueError(f"κ must be positive, got {kappa}")
        self.kappa = float(kappa)
        self._terms = {}
        for key, coeff in (terms or {}).items():
            coeff = NumericScalar.coerce(coeff)
            if coeff != 0:
                total = self._terms.get(key, NumericScalar()) + coeff
                self._terms[key] = total

    @classmethod
    def _raw(cls, terms: dict, kappa: float) -> "WaveElement":
        obj = cls.__new__(cls)
        obj.kappa = kappa
        obj._terms = {k: c for k, c in terms.items() if c != 0}
        return obj

    @classmethod
    def plane_wave(cls, k, coeff=1.0, kappa: float = config.WAVE_KAPPA) -> "WaveElement":
        return cls({quantize_mode(k): coeff}, kappa)

    @classmethod
    def from_modes(cls, modes, kappa: float = config.WAVE_KAPPA) -> "WaveElement":
        """Build from (coefficient, mode) pairs; repeated modes add up."""
        element = cls(kappa=kappa)
        for coeff, k in modes:
            element = element + cls.plane_wave(k, coeff, kappa)
        return element

    @classmethod
    def constant(cls, value, kappa: float = config.WAVE_KAPPA) -> "WaveElement":
        return cls.plane_wave((0.0, 0.0, 0.0, 0.0), value, kappa)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def modes(self) -> list[tuple]:
        """(mode, coefficient) pairs in a deterministic order."""
        return [(mode_value(key), complex(self._terms[key])) for key in sorted(self._terms)]

    def coefficient(self, k) -> complex:
        return complex(self._terms.get(quantize_mode(k), 0j))

    def is_zero(self) -> bool:
        return not self._terms

    def zero_like(self) -> "WaveElement":
        return WaveElement(kappa=self.kappa)

    def one_like(self) -> "WaveElement":
        return WaveElement.constant(1.0, self.kappa)

    def counit(self) -> complex:
        return self.coefficient((0.0, 0.0, 0.0, 0.0))

    def max_abs(self) -> float:
        return max((abs(complex(c)) for c in self._terms.values()), default=0.0)

    def _check(self, other: "WaveElement") -> None:
        if not math.isclose(self.kappa, other.kappa, rel_tol=1e-15):
            raise ValueError(f"κ mismatch between wave elements: {self.kappa} vs {other.kappa}")

    def _coerce(self, other) -> "WaveElement":
        if isinstance(other, WaveElement):
            self._check(other)
            return other
        if isinstance(other, (PolyElement, ExactScalar)):
            raise TypeError("backend mismatch: use exact coefficients only with the exact backend")
        return WaveElement.constant(other, self.kappa)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        result = dict(self._terms)
        for key, coeff in other._terms.items():
            result[key] = result.get(key, NumericScalar()) + coeff
        return WaveElement._raw(result, self.kappa)

    __radd__ = __add__

    def __neg__(self):
        return WaveElement._raw({k: -c for k, c in self._terms.items()}, self.kappa)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, WaveElement):
            return wave_mul(self, other)
        if isinstance(other, (PolyElement, ExactScalar)):
            raise TypeError("backend mismatch: use exact coefficients only with the exact backend")
        factor = NumericScalar(complex(other))
        return WaveElement._raw({k: c * factor for k, c in self._terms.items()}, self.kappa)

    def __rmul__(self, other):
        return self.__mul__(other)

    def dagger(self) -> "WaveElement":
        return wave_involution(self)

    def conj_scalars(self) -> "WaveElement":
        return WaveElement._raw({k: c.conj() for k, c in self._terms.items()}, self.kappa)

    def allclose(self, other, tol: float = 1e-10) -> bool:
        """Coefficientwise agreement within an absolute tolerance."""
        difference = self - other
        return difference.max_abs() <= tol

    def __eq__(self, other):
        if not isinstance(other, WaveElement):
            return NotImplemented
        return self.kappa == other.kappa and self._terms == other._terms

    def __hash__(self):
        return hash((self.kappa, frozenset(self._terms.items())))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = [format_term(self._terms[key], _format_mode(mode_value(key))) for key in sorted(self._terms)]
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"WaveElement({self}, kappa={self.kappa})"


def wave_mul(f: WaveElement, g: WaveElement) -> WaveElement:
    """e_k · e_l = e_(k⊕l), extended bilinearly."""
    f._check(g)
    result: dict = {}
    for k_key, c in f._terms.items():
        k = mode_value(k_key)
        for l_key, d in g._terms.items():
            key = quantize_mode(compose_modes(k, mode_value(l_key), f.kappa))
            result[key] = result.get(key, NumericScalar()) + c * d
    return WaveElement._raw(result, f.kappa)


def wave_involution(f: WaveElement) -> WaveElement:
    """(c e_k)† = conj(c) e_S(k)."""
    result: dict = {}
    for key, coeff in f._terms.items():
        image = quantize_mode(mode_antipode(mode_value(key), f.kappa))
        result[image] = result.get(image, NumericScalar()) + coeff.conj()
    return WaveElement._raw(result, f.kappa)


def eigenvalue(h: OperatorElement, k, kappa: float) -> complex:
    """
    Scalar by which a momentum-sector element acts on e_k.

    Raises:
        ValueError: when h contains a boost or rotation letter
    """
    if not h.is_momentum():
        raise ValueError("not diagonal on plane waves")
    k0, k1, k2, k3 = (float(v) for v in k)
    boost = math.exp(k0 / kappa)
    total = 0j
    for (_, mono), coeff in h.terms.items():
        value = coeff.evaluate(kappa)
        value *= k1 ** mono[0] * k2 ** mono[1] * k3 ** mono[2] * k0 ** mono[3]
        value *= boost ** mono[4]
        total += value
    return total


def act_diagonal(h: OperatorElement, f: WaveElement) -> WaveElement:
    """Momentum-sector operator acting on plane waves by eigenvalue substitution."""
    if not h.is_momentum():
        raise ValueError("not diagonal on plane waves")
    result = {}
    for key, coeff in f._terms.items():
        result[key] = coeff * eigenvalue(h, mode_value(key), f.kappa)
    return WaveElement._raw(result, f.kappa)


# =============================================================================
# CLOSED-FORM EIGENVALUES
# =============================================================================
def mode_eigenvalues(k, kappa: float) -> dict:
    """
    Eigenvalues of ξ_a, χ_a, λ^a_b, σ^a_b and □ on e_k.

    Written with half-angle sinh so that large κ keeps full relative accuracy.

    Returns:
        Dict with 'xi', 'chi' (length-5 arrays), 'lambda', 'sigma' (5×5 arrays)
        and 'box' (float)
    """
    k = np.asarray(k, dtype=float)
    x = k[0] / kappa
    p = k[1:]
    p2 = float(p @ p)
    boost = math.exp(x)
    sinh = math.sinh(x)
    half = 2.0 * math.sinh(x / 2.0) ** 2  # cosh(x) - 1
    quadratic = boost * p2 / (2.0 * kappa)
    xi_k = np.array([-kappa * sinh + quadratic, p[0], p[1], p[2], kappa * half - quadratic])
    chi_k = np.array([-kappa * sinh - quadratic, boost * p[0], boost * p[1], boost * p[2],
                      -kappa * half + quadratic])
    box = -4.0 * kappa ** 2 * math.sinh(x / 2.0) ** 2 + boost * p2
    return {
        'xi': xi_k,
        'chi': chi_k,
        'lambda': lambda_eigenvalues(k, kappa),
        'sigma': lambda_eigenvalues(mode_antipode(k, kappa), kappa),
        'box': box,
    }


def lambda_eigenvalues(k, kappa: float) -> np.ndarray:
    """λ^a_b(k); an SO(4,1) matrix for every real mode."""
    k = np.asarray(k, dtype=float)
    x = k[0] / kappa
    p = k[1:]
    boost = math.exp(x)
    q = boost * float(p @ p) / (2.0 * kappa ** 2)
    matrix = np.eye(5)
    matrix[0, 0] = math.cosh(x) + q
    matrix[0, 4] = -math.sinh(x) - q
    matrix[4, 0] = -math.sinh(x) + q
    matrix[4, 4] = math.cosh(x) - q
    matrix[0, 1:4] = p / kappa
    matrix[4, 1:4] = p / kappa
    matrix[1:4, 0] = boost * p / kappa
    matrix[1:4, 4] = -boost * p / kappa
    return matrix


def random_wave(rng, modes: int, kappa: float, scale: float = 1.0) -> WaveElement:
    """Random plane-wave sum with Gaussian coefficients and modes of size ~scale."""
    element = WaveElement(kappa=kappa)
    for _ in range(modes):
        k = rng.normal(0.0, scale, size=4)
        coeff = complex(rng.normal(), rng.normal())
        element = element + WaveElement.plane_wave(k, coeff, kappa)
    return element
