"""
kforms - Differential Forms

The 5-dimensional bicovariant differential complex over κ-Minkowski, with
coefficients stored on the left of canonical wedge words e^a1 ∧ ... ∧ e^an
(a1 < ... < an). Works over either coefficient backend.

Features:
    - Wedge product, pushing right coefficients left through λ-minors
    - Differential d f = (i ξ_a ▷ f) e^a, involution, coordinate commutators
    - Hodge star with η = diag(-1,1,1,1,1), ε_01234 = +1, and the metric g
    - Lie derivative through the coproduct, inner derivative through
      right coefficients (σ-minors), Cartan identity d i_a + i_a d = £_(iχ_a)
"""

import itertools
import logging
from functools import lru_cache

import numpy as np

import config
from kminkowski import (
    PolyElement, WaveElement, act, lambda_eigenvalues, mode_antipode, mode_eigenvalues,
    mode_value, random_poly, random_wave,
)
from kpoincare import (
    OperatorElement, chi, coproduct, lambda_minor, levi_civita,
    permutation_sign, sigma_minor, xi,
)
from scalars import I, ONE

logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
logger = logging.getLogger(__name__)

ETA = config.METRIC
DIMENSION = config.FORM_DIMENSION
WORDS_BY_DEGREE = {n: list(itertools.combinations(range(DIMENSION), n)) for n in range(DIMENSION + 1)}
VOLUME_WORD = tuple(range(DIMENSION))


def format_word(word: tuple) -> str:
    return "^".join(f"e{a}" for a in word)


@lru_cache(maxsize=None)
def wedge_words(u: tuple, v: tuple) -> tuple:
    """(sign, sorted word) for e^u ∧ e^v; sign 0 when a letter repeats."""
    sign = permutation_sign(u + v)
    if not sign:
        return 0, ()
    return sign, tuple(sorted(u + v))


@lru_cache(maxsize=None)
def hodge_basis(word: tuple) -> tuple:
    """
    *(e^w) = sign · e^(complement of w).

    Degrees 0-2 follow η(w) ε(w, w̄); degrees 3-5 carry an extra factor -1 (det η)
    so that ** = (-1)^(n(5-n)) and *(vol) = 1.
    """
    complement = tuple(c for c in range(DIMENSION) if c not in word)
    sign = levi_civita(*(word + complement))
    for a in word:
        sign *= ETA[a]
    if len(word) >= 3:
        sign = -sign
    return sign, complement


# =============================================================================
# BACKEND DISPATCH FOR MOMENTUM OPERATORS
# =============================================================================
@lru_cache(maxsize=4096)
def _mode_minor(kind: str, key: tuple, kappa: float, rows: tuple, cols: tuple) -> float:
    k = mode_value(key)
    if kind == "sigma":
        k = mode_antipode(k, kappa)
    if not rows:
        return 1.0
    matrix = lambda_eigenvalues(k, kappa)
    return float(np.linalg.det(matrix[np.ix_(rows, cols)]))


@lru_cache(maxsize=4096)
def _mode_fields(key: tuple, kappa: float) -> dict:
    return mode_eigenvalues(mode_value(key), kappa)


def apply_minor(kind: str, rows: tuple, cols: tuple, f):
    """det λ[rows][cols] ▷ f (kind 'lambda') or det σ[rows][cols] ▷ f (kind 'sigma')."""
    if isinstance(f, WaveElement):
        terms = {}
        for key, coeff in f.terms.items():
            value = _mode_minor(kind, key, f.kappa, rows, cols)
            if value != 0.0:
                terms[key] = coeff * value
        return WaveElement(terms, f.kappa)
    minor = lambda_minor(rows, cols) if kind == "lambda" else sigma_minor(rows, cols)
    if minor.is_zero():
        return f.zero_like()
    return act(minor, f)


def apply_field(kind: str, a: int, f):
    """ξ_a ▷ f or χ_a ▷ f, using closed-form eigenvalues on plane waves."""
    if isinstance(f, WaveElement):
        terms = {key: coeff * float(_mode_fields(key, f.kappa)[kind][a]) for key, coeff in f.terms.items()}
        return WaveElement(terms, f.kappa)
    fields = xi() if kind == "xi" else chi()
    return act(fields[a], f)


def push_right(word: tuple, g) -> dict:
    """e^w g = Σ_u (Λ^w_u ▷ g) e^u with Λ the λ-minors."""
    result = {}
    for u in WORDS_BY_DEGREE[len(word)]:
        image = apply_minor("lambda", word, u, g)
        if not image.is_zero():
            result[u] = image
    return result


def _add(target: dict, word: tuple, coeff) -> None:
    if word in target:
        total = target[word] + coeff
        if total.is_zero():
            del target[word]
        else:
            target[word] = total
    elif not coeff.is_zero():
        target[word] = coeff


class Form:
    """
    Element of Γ^∧: a map from sorted wedge words to left coefficients.

    Args:
        terms: dict of word tuple -> PolyElement or WaveElement
        zero: zero coefficient of the backend, used when terms is empty
    """

    __slots__ = ("_terms", "_zero")

    def __init__(self, terms: dict | None = None, zero=None):
        self._terms = {}
        for word, coeff in (terms or {}).items():
            word = tuple(word)
            if list(word) != sorted(set(word)) or any(not 0 <= a < DIMENSION for a in word):
                raise ValueError(f"wedge word must be strictly increasing over 0..4, got {word}")
            if zero is None:
                zero = coeff.zero_like()
            _add(self._terms, word, coeff)
        self._zero = zero if zero is not None else PolyElement()

    @classmethod
    def _raw(cls, terms: dict, zero) -> "Form":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._zero = zero
        return obj

    @classmethod
    def function(cls, f) -> "Form":
        """The 0-form f."""
        return cls({(): f}, f.zero_like())

    @classmethod
    def basis(cls, a: int, zero=None) -> "Form":
        zero = zero if zero is not None else PolyElement()
        return cls({(a,): zero.one_like()}, zero)

    @classmethod
    def word(cls, word: tuple, coeff) -> "Form":
        """coeff · e^word for any (possibly unsorted) word, sign folded in."""
        sign = permutation_sign(word)
        if not sign:
            return cls(zero=coeff.zero_like())
        return cls({tuple(sorted(word)): coeff * sign}, coeff.zero_like())

    @classmethod
    def volume(cls, zero=None) -> "Form":
        zero = zero if zero is not None else PolyElement()
        return cls({VOLUME_WORD: zero.one_like()}, zero)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def zero(self):
        return self._zero

    def is_wave(self) -> bool:
        return isinstance(self._zero, WaveElement)

    def degrees(self) -> set:
        return {len(word) for word in self._terms}

    @property
    def degree(self) -> int:
        """Degree of a homogeneous form (0 for the zero form)."""
        degrees = self.degrees()
        if len(degrees) > 1:
            raise ValueError(f"form is not homogeneous: degrees {sorted(degrees)}")
        return degrees.pop() if degrees else 0

    def component(self, word: tuple):
        return self._terms.get(tuple(word), self._zero)

    def is_zero(self) -> bool:
        return not self._terms

    def _same_backend(self, other: "Form") -> None:
        if isinstance(self._zero, WaveElement) != isinstance(other._zero, WaveElement):
            raise TypeError("backend mismatch: cannot combine exact and plane-wave forms")

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._same_backend(other)
        result = dict(self._terms)
        for word, coeff in other._terms.items():
            _add(result, word, coeff)
        return Form._raw(result, self._zero)

    def __neg__(self):
        return Form._raw({w: -c for w, c in self._terms.items()}, self._zero)

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        """Right multiplication by a scalar or an algebra element."""
        if isinstance(other, (PolyElement, WaveElement)):
            return right_multiply(self, other)
        if isinstance(other, Form):
            return NotImplemented
        return Form({w: c * other for w, c in self._terms.items()}, self._zero)

    def __rmul__(self, other):
        if isinstance(other, (PolyElement, WaveElement)):
            return left_multiply(other, self)
        return Form({w: other * c for w, c in self._terms.items()}, self._zero)

    def __xor__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def max_abs(self) -> float:
        """Largest coefficient magnitude (plane-wave backend)."""
        return max((c.max_abs() for c in self._terms.values()), default=0.0)

    def allclose(self, other: "Form", tol: float = 1e-10) -> bool:
        return (self - other).max_abs() <= tol

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for word in sorted(self._terms, key=lambda w: (len(w), w)):
            coeff = self._terms[word]
            text = str(coeff)
            label = format_word(word)
            if not label:
                parts.append(text)
            elif text == "1":
                parts.append(label)
            elif text == "-1":
                parts.append(f"-{label}")
            elif " " in text or text.startswith("("):
                parts.append(f"({text})·{label}")
            else:
                parts.append(f"{text}·{label}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Form({self})"


# =============================================================================
# PRODUCTS
# =============================================================================
def left_multiply(f, omega: Form) -> Form:
    """f · ω."""
    result: dict = {}
    for word, coeff in omega._terms.items():
        _add(result, word, f * coeff)
    return Form._raw(result, omega._zero)


def right_multiply(omega: Form, f) -> Form:
    """ω · f, moving f to the left of every wedge word."""
    result: dict = {}
    for word, coeff in omega._terms.items():
        for u, pushed in push_right(word, f).items():
            _add(result, u, coeff * pushed)
    return Form._raw(result, omega._zero)


def wedge(omega: Form, rho: Form) -> Form:
    """
    Graded product ω ∧ ρ.

    (f e^w) ∧ (g e^v) = f (Λ^w_u ▷ g) e^u ∧ e^v; terms above degree 5 vanish.
    """
    omega._same_backend(rho)
    result: dict = {}
    for w, f in omega._terms.items():
        for v, g in rho._terms.items():
            if len(w) + len(v) > DIMENSION:
                continue
            for u, pushed in push_right(w, g).items():
                sign, word = wedge_words(u, v)
                if sign:
                    _add(result, word, (f * pushed) * sign)
    return Form._raw(result, omega._zero)


def to_right_coefficients(omega: Form) -> dict:
    """Rewrite Σ f_w e^w as Σ e^u g_u; f e^w = e^u (det σ[w][u] ▷ f)."""
    result: dict = {}
    for word, coeff in omega._terms.items():
        for u in WORDS_BY_DEGREE[len(word)]:
            image = apply_minor("sigma", word, u, coeff)
            if not image.is_zero():
                _add(result, u, image)
    return result


def from_right_coefficients(terms: dict, zero) -> Form:
    result: dict = {}
    for word, coeff in terms.items():
        for u, pushed in push_right(word, coeff).items():
            _add(result, u, pushed)
    return Form._raw(result, zero)


# =============================================================================
# DIFFERENTIAL, INVOLUTION, HODGE
# =============================================================================
def differential_function(f) -> Form:
    """d f = Σ_a (i ξ_a ▷ f) e^a."""
    terms = {}
    for a in range(DIMENSION):
        image = apply_field("xi", a, f)
        if not image.is_zero():
            terms[(a,)] = image * I if isinstance(f, PolyElement) else image * 1j
    return Form(terms, f.zero_like())


def differential(omega: Form) -> Form:
    """d(f e^w) = d f ∧ e^w; basis forms are closed."""
    result: dict = {}
    for word, coeff in omega._terms.items():
        if len(word) == DIMENSION:
            continue
        for (a,), image in differential_function(coeff)._terms.items():
            sign, target = wedge_words((a,), word)
            if sign:
                _add(result, target, image * sign)
    return Form._raw(result, omega._zero)


def dagger(omega: Form) -> Form:
    """(f e^w)† = (-1)^(n(n-1)/2) e^w f†."""
    result: dict = {}
    for word, coeff in omega._terms.items():
        n = len(word)
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        for u, pushed in push_right(word, coeff.dagger()).items():
            _add(result, u, pushed * sign)
    return Form._raw(result, omega._zero)


def hodge(omega: Form) -> Form:
    """Hodge star, left 𝒜-linear on the basis map hodge_basis."""
    result: dict = {}
    for word, coeff in omega._terms.items():
        sign, complement = hodge_basis(word)
        _add(result, complement, coeff * sign)
    return Form._raw(result, omega._zero)


def coord_commutator(mu: int, omega: Form) -> Form:
    """
    [x^mu, ω] = x^mu ω - ω x^mu.

    Raises:
        ValueError: on the plane-wave backend, which has no coordinates
    """
    if omega.is_wave():
        raise ValueError("exact only")
    x = PolyElement.coordinate(mu)
    return left_multiply(x, omega) - right_multiply(omega, x)


def metric(omega: Form, rho: Form):
    """
    g(ω, ρ) = *(ω† ∧ *ρ) for one-forms.

    Raises:
        ValueError: if either argument is not a one-form
    """
    if omega.degrees() - {1} or rho.degrees() - {1}:
        raise ValueError(f"metric needs one-forms, got degrees {sorted(omega.degrees())} "
                         f"and {sorted(rho.degrees())}")
    return hodge(wedge(dagger(omega), hodge(rho))).component(())


# =============================================================================
# LIE AND INNER DERIVATIVES
# =============================================================================
def _lorentz_on_one_form(letter: int, a: int) -> dict:
    """N_j ▷ e^0 = i e^j, N_j ▷ e^k = i δ_jk e^0, R_j ▷ e^k = i ε_jkl e^l; e^4 is invariant."""
    if a == 4:
        return {}
    if letter >= 3:
        j = letter - 3 + 1
        if a == 0:
            return {j: I}
        return {0: I} if a == j else {}
    if a == 0:
        return {}
    result = {}
    for l in range(3):
        sign = levi_civita(letter, a - 1, l)
        if sign:
            result[l + 1] = I * sign
    return result


@lru_cache(maxsize=None)
def _lorentz_on_word(letter: int, word: tuple) -> tuple:
    """Lorentz letter acting on e^w as a derivation."""
    result: dict = {}
    for position, a in enumerate(word):
        for b, coeff in _lorentz_on_one_form(letter, a).items():
            new = word[:position] + (b,) + word[position + 1:]
            sign = permutation_sign(new)
            if sign:
                target = tuple(sorted(new))
                total = result.get(target)
                result[target] = coeff * sign if total is None else total + coeff * sign
    return tuple((w, c) for w, c in result.items() if not c.is_zero())


@lru_cache(maxsize=None)
def act_on_basis(op_word: tuple, word: tuple) -> tuple:
    """
    A normal-ordered operator word acting on a basis form.

    Momentum letters act through the counit (P ▷ e = 0, E ▷ e = e); Lorentz
    letters act as derivations, applied right to left.
    """
    lword, momentum = op_word
    if any(momentum[:4]):
        return ()
    current = {word: ONE}
    for letter in reversed(lword):
        nxt: dict = {}
        for w, c in current.items():
            for w2, c2 in _lorentz_on_word(letter, w):
                total = nxt.get(w2)
                nxt[w2] = c * c2 if total is None else total + c * c2
        current = {w: c for w, c in nxt.items() if not c.is_zero()}
    return tuple(current.items())


def act_form(h: OperatorElement, omega: Form) -> Form:
    """h ▷ (f e^w) = (h(1) ▷ f)(h(2) ▷ e^w)."""
    result: dict = {}
    if h.is_momentum():
        for word, coeff in omega._terms.items():
            _add(result, word, act(h, coeff))
        return Form._raw(result, omega._zero)
    delta = coproduct(h)
    for word, coeff in omega._terms.items():
        for (w1, w2), c in delta.terms.items():
            images = act_on_basis(w2, word)
            if not images:
                continue
            moved = act(OperatorElement({w1: c}), coeff)
            if moved.is_zero():
                continue
            for target, scalar in images:
                _add(result, target, moved * scalar)
    return Form._raw(result, omega._zero)


def lie(h: OperatorElement, omega: Form) -> Form:
    """Lie derivative £_h(ω) = h ▷ ω; commutes with d."""
    return act_form(h, omega)


def inner(a: int, omega: Form) -> Form:
    """
    Inner derivative i_a, contracting the first slot of right-coefficient words.

    i_a(e^u g) = Σ_p (-1)^p δ(u_p, a) e^(u without u_p) g; zero on functions.
    """
    if not 0 <= a < DIMENSION:
        raise ValueError(f"inner derivative index must be 0..4, got {a}")
    contracted: dict = {}
    for word, coeff in to_right_coefficients(omega).items():
        if a not in word:
            continue
        position = word.index(a)
        sign = -1 if position % 2 else 1
        _add(contracted, word[:position] + word[position + 1:], coeff * sign)
    return from_right_coefficients(contracted, omega._zero)


def cartan_sides(a: int, omega: Form) -> tuple:
    """(d i_a + i_a d)(ω) and £_(iχ_a)(ω)."""
    left = differential(inner(a, omega)) + inner(a, differential(omega))
    if omega.is_wave():
        terms = {w: apply_field("chi", a, c) * 1j for w, c in omega._terms.items()}
        return left, Form(terms, omega._zero)
    return left, lie(chi()[a] * I, omega)


# =============================================================================
# RANDOM FORMS
# =============================================================================
def random_form(rng, degree: int, zero=None, max_words: int = 2, max_poly_degree: int = 2,
                modes: int = 2, scale: float = 0.5) -> Form:
    """Random homogeneous form over the backend of `zero` (exact by default)."""
    zero = zero if zero is not None else PolyElement()
    words = WORDS_BY_DEGREE[degree]
    count = min(max_words, len(words))
    chosen = rng.choice(len(words), size=count, replace=False)
    terms = {}
    for index in sorted(int(i) for i in chosen):
        if isinstance(zero, WaveElement):
            terms[words[index]] = random_wave(rng, modes, zero.kappa, scale)
        else:
            terms[words[index]] = random_poly(rng, max_degree=max_poly_degree, max_terms=2)
    return Form(terms, zero)

