"""
kforms - κ-Poincaré Operator Algebra

The bicrossproduct Hopf algebra U(so(3,1)) ▷◀ A* as a term-rewriting system.
Words are kept in normal order R < N < P < P0 < E-power: a sorted Lorentz
part followed by a commutative momentum monomial.

Features:
    - Normal-ordered products with memoized rewriting
    - Coproduct, antipode and counit on arbitrary elements
    - The operator families λ, ξ, χ, σ, T and the mass Casimir □
    - Exact verification of the Hopf structure, the SO(4,1) identity,
      the ε-λ lemma, Casimir centrality and the Lorentz vector law
"""

import itertools
import logging
from fractions import Fraction
from functools import lru_cache

import config
from reports import new_report, record_case
from scalars import ExactScalar, ZERO, ONE, I, KAPPA, KAPPA_INV, I_OVER_KAPPA, format_term

logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
logger = logging.getLogger(__name__)

LORENTZ_NAMES = tuple(config.LORENTZ_LETTERS)
MOMENTUM_NAMES = tuple(config.MOMENTUM_LETTERS)
GENERATORS = LORENTZ_NAMES + ("P1", "P2", "P3", "P0", "E", "Einv")
SYMMETRY_GENERATORS = ("P0", "P1", "P2", "P3", "N1", "N2", "N3", "R1", "R2", "R3")

P0_SLOT = 3
E_SLOT = 4
ZERO_MONO = (0, 0, 0, 0, 0)
UNIT_WORD = ((), ZERO_MONO)
ETA = config.METRIC
HALF = ExactScalar(Fraction(1, 2))


def permutation_sign(sequence) -> int:
    """Sign of the permutation sorting `sequence`; 0 when an entry repeats."""
    items = list(sequence)
    if len(set(items)) != len(items):
        return 0
    sign = 1
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


def levi_civita(*indices) -> int:
    """ε symbol on 0..n-1 with ε_{01..n-1} = +1."""
    if sorted(indices) != list(range(len(indices))):
        return 0
    return permutation_sign(indices)


# =============================================================================
# MOMENTUM MONOMIALS
# (p1, p2, p3, p0, e) stands for P1^p1 P2^p2 P3^p3 P0^p0 E^e
# =============================================================================
def _mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _shift(mono: tuple, slot: int, amount: int) -> tuple:
    return mono[:slot] + (mono[slot] + amount,) + mono[slot + 1:]


def _accumulate(target: dict, key, coeff) -> None:
    total = target.get(key)
    target[key] = coeff if total is None else total + coeff
    if target[key].is_zero():
        del target[key]


@lru_cache(maxsize=None)
def _bracket_with_momentum(letter: int, slot: int) -> tuple:
    """[ℓ, P] for a Lorentz letter and a momentum generator slot (P1..P3, P0)."""
    result: dict = {}
    if letter < 3:
        j = letter
        if slot < 3:
            for l in range(3):
                sign = levi_civita(j, slot, l)
                if sign:
                    _accumulate(result, _shift(ZERO_MONO, l, 1), I * sign)
        return tuple(result.items())
    j = letter - 3
    if slot == P0_SLOT:
        _accumulate(result, _shift(ZERO_MONO, j, 1), I)
        return tuple(result.items())
    if slot == j:
        _accumulate(result, ZERO_MONO, I * KAPPA * HALF)
        _accumulate(result, _shift(ZERO_MONO, E_SLOT, -2), -(I * KAPPA * HALF))
        for l in range(3):
            _accumulate(result, _shift(ZERO_MONO, l, 2), I_OVER_KAPPA * HALF)
    _accumulate(result, _shift(_shift(ZERO_MONO, j, 1), slot, 1), -I_OVER_KAPPA)
    return tuple(result.items())


def _derive(letter: int, mono: tuple) -> dict:
    """ad_ℓ acting as a derivation on a commutative momentum monomial."""
    result: dict = {}
    for slot in range(4):
        power = mono[slot]
        if not power:
            continue
        base = _shift(mono, slot, -1)
        for piece, coeff in _bracket_with_momentum(letter, slot):
            _accumulate(result, _mono_mul(base, piece), coeff * power)
    exponent = mono[E_SLOT]
    if exponent and letter >= 3:
        # [N_j, E^n] = (i n/κ) P_j E^n
        _accumulate(result, _shift(mono, letter - 3, 1), I_OVER_KAPPA * exponent)
    return result


@lru_cache(maxsize=None)
def _lorentz_bracket(a: int, b: int) -> tuple:
    """Classical so(3,1) bracket [a, b] as (letter, coefficient) pairs."""
    j, k = a % 3, b % 3
    pairs = []
    for l in range(3):
        sign = levi_civita(j, k, l)
        if not sign:
            continue
        if a < 3 and b < 3:
            pairs.append((l, I * sign))
        elif a >= 3 and b >= 3:
            pairs.append((l, -(I * sign)))
        else:
            pairs.append((3 + l, I * sign))
    return tuple(pairs)


@lru_cache(maxsize=None)
def _normalize_lorentz(word: tuple) -> tuple:
    """PBW-order a Lorentz word, swapping the first descent until none is left."""
    for i in range(len(word) - 1):
        a, b = word[i], word[i + 1]
        if a <= b:
            continue
        result: dict = {}
        prefix, suffix = word[:i], word[i + 2:]
        for w, c in _normalize_lorentz(prefix + (b, a) + suffix):
            _accumulate(result, w, c)
        for letter, coeff in _lorentz_bracket(a, b):
            for w, c in _normalize_lorentz(prefix + (letter,) + suffix):
                _accumulate(result, w, coeff * c)
        return tuple(result.items())
    return ((word, ONE),)


@lru_cache(maxsize=None)
def _push(mono: tuple, word: tuple) -> tuple:
    """Move a momentum monomial rightward through a sorted Lorentz word."""
    if not word:
        return (((), mono), ONE),
    letter, rest = word[0], word[1:]
    result: dict = {}
    for (lw, m), c in _push(mono, rest):
        _accumulate(result, ((letter,) + lw, m), c)
    # m ℓ = ℓ m - [ℓ, m]
    for piece, coeff in _derive(letter, mono).items():
        for key, c in _push(piece, rest):
            _accumulate(result, key, -(coeff * c))
    return tuple(result.items())


@lru_cache(maxsize=None)
def _word_mul(left: tuple, right: tuple) -> tuple:
    l1, m1 = left
    l2, m2 = right
    if not l2:
        return (((l1, _mono_mul(m1, m2)), ONE),)
    result: dict = {}
    for (lp, mp), cp in _push(m1, l2):
        mono = _mono_mul(mp, m2)
        if not l1:
            _accumulate(result, (lp, mono), cp)
            continue
        for lw, cl in _normalize_lorentz(l1 + lp):
            _accumulate(result, (lw, mono), cp * cl)
    return tuple(result.items())


def format_word(word: tuple) -> str:
    lword, mono = word
    letters = [LORENTZ_NAMES[letter] for letter in lword]
    for slot in range(4):
        power = mono[slot]
        if power == 1:
            letters.append(MOMENTUM_NAMES[slot])
        elif power:
            letters.append(f"{MOMENTUM_NAMES[slot]}^{power}")
    if mono[E_SLOT] == 1:
        letters.append("E")
    elif mono[E_SLOT]:
        letters.append(f"E^{mono[E_SLOT]}")
    return "·".join(letters)


def _word_order(word: tuple):
    lword, mono = word
    return (len(lword) + sum(mono[:4]), lword, mono)


class OperatorElement:
    """
    Normal-ordered element of the κ-Poincaré algebra.

    Terms map a word (lorentz_letters, momentum_monomial) to an ExactScalar.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None):
        self._terms = {}
        for word, coeff in (terms or {}).items():
            coeff = ExactScalar.coerce(coeff)
            if not coeff.is_zero():
                self._terms[word] = coeff

    @classmethod
    def _raw(cls, terms: dict) -> "OperatorElement":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def unit(cls) -> "OperatorElement":
        return cls({UNIT_WORD: ONE})

    @classmethod
    def constant(cls, value) -> "OperatorElement":
        return cls({UNIT_WORD: ExactScalar.coerce(value)})

    @classmethod
    def monomial(cls, mono: tuple, coeff=ONE) -> "OperatorElement":
        return cls({((), tuple(mono)): coeff})

    @classmethod
    def e_power(cls, exponent: int) -> "OperatorElement":
        return cls.monomial(_shift(ZERO_MONO, E_SLOT, exponent))

    @classmethod
    def generator(cls, name: str) -> "OperatorElement":
        """
        Single generator by name.

        Args:
            name: one of R1..R3, N1..N3, P0..P3, E, Einv

        Raises:
            ValueError: for an unknown generator name
        """
        if name in LORENTZ_NAMES:
            return cls({((LORENTZ_NAMES.index(name),), ZERO_MONO): ONE})
        if name in ("P1", "P2", "P3"):
            return cls.monomial(_shift(ZERO_MONO, int(name[1]) - 1, 1))
        if name == "P0":
            return cls.monomial(_shift(ZERO_MONO, P0_SLOT, 1))
        if name == "E":
            return cls.e_power(1)
        if name in ("Einv", "E^-1"):
            return cls.e_power(-1)
        raise ValueError(f"unknown κ-Poincaré generator: {name}")

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_momentum(self) -> bool:
        """True when no Lorentz letter appears, so the element is diagonal on plane waves."""
        return all(not lword for lword, _ in self._terms)

    def _coerce(self, other) -> "OperatorElement":
        if isinstance(other, OperatorElement):
            return other
        return OperatorElement.constant(other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        result = dict(self._terms)
        for word, coeff in other._terms.items():
            _accumulate(result, word, coeff)
        return OperatorElement._raw(result)

    __radd__ = __add__

    def __neg__(self):
        return OperatorElement._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, OperatorElement):
            return op_mul(self, other)
        try:
            factor = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return OperatorElement({w: c * factor for w, c in self._terms.items()})

    def __rmul__(self, other):
        try:
            factor = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return OperatorElement({w: factor * c for w, c in self._terms.items()})

    def __pow__(self, exponent: int):
        result = OperatorElement.unit()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, OperatorElement):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = [format_term(self._terms[w], format_word(w)) for w in sorted(self._terms, key=_word_order)]
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"OperatorElement({self})"


def op_mul(a: OperatorElement, b: OperatorElement) -> OperatorElement:
    """Normal-ordered product a·b."""
    result: dict = {}
    for w1, c1 in a._terms.items():
        for w2, c2 in b._terms.items():
            coeff = c1 * c2
            for word, c in _word_mul(w1, w2):
                _accumulate(result, word, coeff * c)
    return OperatorElement._raw(result)


def commutator(a: OperatorElement, b: OperatorElement) -> OperatorElement:
    return op_mul(a, b) - op_mul(b, a)


def word_element(word: tuple) -> OperatorElement:
    return OperatorElement._raw({word: ONE})


# =============================================================================
# TENSOR PRODUCTS
# =============================================================================
class TensorOperator:
    """Element of the n-fold tensor power; keys are tuples of words, one per leg."""

    __slots__ = ("_terms", "arity")

    def __init__(self, terms: dict | None = None, arity: int = 2):
        self.arity = arity
        self._terms = {}
        for key, coeff in (terms or {}).items():
            coeff = ExactScalar.coerce(coeff)
            if not coeff.is_zero():
                self._terms[tuple(key)] = coeff

    @classmethod
    def tensor(cls, *elements: OperatorElement) -> "TensorOperator":
        terms: dict = {}
        items = [list(e._terms.items()) for e in elements]
        for combo in itertools.product(*items):
            coeff = ONE
            for _, c in combo:
                coeff = coeff * c
            _accumulate(terms, tuple(w for w, _ in combo), coeff)
        return cls(terms, arity=len(elements))

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "TensorOperator") -> "TensorOperator":
        result = dict(self._terms)
        for key, coeff in other._terms.items():
            _accumulate(result, key, coeff)
        return TensorOperator(result, self.arity)

    def __neg__(self):
        return TensorOperator({k: -c for k, c in self._terms.items()}, self.arity)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TensorOperator):
            factor = ExactScalar.coerce(other)
            return TensorOperator({k: c * factor for k, c in self._terms.items()}, self.arity)
        result: dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                legs = [_word_mul(u, v) for u, v in zip(k1, k2)]
                base = c1 * c2
                for combo in itertools.product(*legs):
                    coeff = base
                    for _, c in combo:
                        coeff = coeff * c
                    _accumulate(result, tuple(w for w, _ in combo), coeff)
        return TensorOperator(result, self.arity)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TensorOperator):
            return NotImplemented
        return self.arity == other.arity and self._terms == other._terms

    def map_leg(self, leg: int, fn) -> "TensorOperator":
        """Apply a linear map OperatorElement -> OperatorElement to one leg."""
        result: dict = {}
        for key, coeff in self._terms.items():
            image = fn(word_element(key[leg]))
            for word, c in image._terms.items():
                _accumulate(result, key[:leg] + (word,) + key[leg + 1:], coeff * c)
        return TensorOperator(result, self.arity)

    def expand_leg(self, leg: int, fn) -> "TensorOperator":
        """Apply a map OperatorElement -> TensorOperator to one leg, splicing the new legs in."""
        result: dict = {}
        arity = self.arity
        for key, coeff in self._terms.items():
            image = fn(word_element(key[leg]))
            arity = self.arity - 1 + image.arity
            for words, c in image._terms.items():
                _accumulate(result, key[:leg] + words + key[leg + 1:], coeff * c)
        return TensorOperator(result, arity)

    def multiply_legs(self) -> OperatorElement:
        """m: a ⊗ b ⊗ ... -> a·b·..."""
        total = OperatorElement()
        for key, coeff in self._terms.items():
            product = word_element(key[0])
            for word in key[1:]:
                product = op_mul(product, word_element(word))
            total = total + coeff * product
        return total

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for key in sorted(self._terms, key=lambda k: tuple(_word_order(w) for w in k)):
            legs = " ⊗ ".join(format_word(w) or "1" for w in key)
            parts.append(format_term(self._terms[key], f"({legs})"))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"TensorOperator({self})"


# =============================================================================
# HOPF STRUCTURE
# =============================================================================
def _element(name: str) -> OperatorElement:
    return OperatorElement.generator(name)


@lru_cache(maxsize=None)
def _generator_coproduct(key) -> TensorOperator:
    one = OperatorElement.unit()
    if isinstance(key, str) and key.startswith("R"):
        g = _element(key)
        return TensorOperator.tensor(g, one) + TensorOperator.tensor(one, g)
    if isinstance(key, str) and key.startswith("N"):
        k = int(key[1]) - 1
        g = _element(key)
        result = TensorOperator.tensor(g, one) + TensorOperator.tensor(OperatorElement.e_power(-1), g)
        for l in range(3):
            for m in range(3):
                sign = levi_civita(k, l, m)
                if sign:
                    twisted = TensorOperator.tensor(_element(f"P{l + 1}"), _element(f"R{m + 1}"))
                    result = result + twisted * (KAPPA_INV * sign)
        return result
    if key == "P0":
        g = _element("P0")
        return TensorOperator.tensor(g, one) + TensorOperator.tensor(one, g)
    if key in ("P1", "P2", "P3"):
        g = _element(key)
        return TensorOperator.tensor(g, one) + TensorOperator.tensor(OperatorElement.e_power(-1), g)
    raise ValueError(f"no coproduct rule for {key}")


@lru_cache(maxsize=None)
def _word_coproduct(word: tuple) -> TensorOperator:
    lword, mono = word
    if lword:
        head = _generator_coproduct(LORENTZ_NAMES[lword[0]])
        return head * _word_coproduct((lword[1:], mono))
    if mono[E_SLOT]:
        grouplike = OperatorElement.e_power(mono[E_SLOT])
        rest = _shift(mono, E_SLOT, -mono[E_SLOT])
        return TensorOperator.tensor(grouplike, grouplike) * _word_coproduct(((), rest))
    for slot in range(4):
        if mono[slot]:
            head = _generator_coproduct(MOMENTUM_NAMES[slot])
            return head * _word_coproduct(((), _shift(mono, slot, -1)))
    one = OperatorElement.unit()
    return TensorOperator.tensor(one, one)


def coproduct(a: OperatorElement) -> TensorOperator:
    """Δ(a), extended from the generators as an algebra homomorphism."""
    result = TensorOperator()
    for word, coeff in a._terms.items():
        result = result + _word_coproduct(word) * coeff
    return result


@lru_cache(maxsize=None)
def _letter_antipode(letter: int) -> OperatorElement:
    name = LORENTZ_NAMES[letter]
    g = _element(name)
    if letter < 3:
        return -g
    k = letter - 3
    e = OperatorElement.e_power(1)
    result = -op_mul(e, g)
    for l in range(3):
        for m in range(3):
            sign = levi_civita(k, l, m)
            if sign:
                term = op_mul(op_mul(e, _element(f"P{l + 1}")), _element(f"R{m + 1}"))
                result = result + term * (KAPPA_INV * sign)
    return result


@lru_cache(maxsize=None)
def _word_antipode(word: tuple) -> OperatorElement:
    lword, mono = word
    spatial = mono[0] + mono[1] + mono[2]
    sign = -1 if (spatial + mono[P0_SLOT]) % 2 else 1
    # S(P_j) = -E P_j, S(P0) = -P0, S(E^n) = E^-n; these commute with each other
    image = mono[:4] + (spatial - mono[E_SLOT],)
    result = OperatorElement.monomial(image, ExactScalar(sign))
    for letter in reversed(lword):
        result = op_mul(result, _letter_antipode(letter))
    return result


def antipode(a: OperatorElement) -> OperatorElement:
    """S(a); an algebra anti-homomorphism."""
    result = OperatorElement()
    for word, coeff in a._terms.items():
        result = result + coeff * _word_antipode(word)
    return result


def counit(a: OperatorElement) -> ExactScalar:
    """ε(a): only pure powers of E survive, each with value 1."""
    total = ZERO
    for (lword, mono), coeff in a._terms.items():
        if not lword and not any(mono[:4]):
            total = total + coeff
    return total


# =============================================================================
# OPERATOR FAMILIES
# =============================================================================
def _p(j: int) -> OperatorElement:
    return _element(f"P{j + 1}")


def _p_squared() -> OperatorElement:
    return sum((op_mul(_p(j), _p(j)) for j in range(3)), OperatorElement())


def _sinh() -> OperatorElement:
    return (OperatorElement.e_power(1) - OperatorElement.e_power(-1)) * HALF


def _cosh() -> OperatorElement:
    return (OperatorElement.e_power(1) + OperatorElement.e_power(-1)) * HALF


@lru_cache(maxsize=None)
def lambda_matrix() -> tuple:
    """
    The 5×5 matrix λ^a_b commuting functions past one-forms, e^a f = (λ^a_b ▷ f) e^b.

    Returns:
        tuple of 5 rows, each a tuple of 5 OperatorElements
    """
    e = OperatorElement.e_power(1)
    one = OperatorElement.unit()
    zero = OperatorElement()
    q = op_mul(e, _p_squared()) * (KAPPA_INV * KAPPA_INV * HALF)
    sinh, cosh = _sinh(), _cosh()
    rows = [[cosh + q] + [_p(j) * KAPPA_INV for j in range(3)] + [-sinh - q]]
    for j in range(3):
        ep = op_mul(e, _p(j)) * KAPPA_INV
        rows.append([ep] + [one if k == j else zero for k in range(3)] + [-ep])
    rows.append([-sinh + q] + [_p(j) * KAPPA_INV for j in range(3)] + [cosh - q])
    return tuple(tuple(row) for row in rows)


@lru_cache(maxsize=None)
def xi() -> tuple:
    """Left vector fields ξ_a with d f = (i ξ_a ▷ f) e^a."""
    e = OperatorElement.e_power(1)
    quadratic = op_mul(e, _p_squared()) * (KAPPA_INV * HALF)
    xi0 = _sinh() * (-KAPPA) + quadratic
    xi4 = _cosh() * KAPPA - quadratic - KAPPA
    return (xi0, _p(0), _p(1), _p(2), xi4)


@lru_cache(maxsize=None)
def chi() -> tuple:
    """χ_a = -S(ξ_a)."""
    return tuple(-antipode(x) for x in xi())


@lru_cache(maxsize=None)
def sigma_matrix() -> tuple:
    """σ^a_b = S(λ^a_b)."""
    return tuple(tuple(antipode(entry) for entry in row) for row in lambda_matrix())


def twist() -> OperatorElement:
    """Modular twist T = E³ of the integral."""
    return OperatorElement.e_power(3)


@lru_cache(maxsize=None)
def casimir() -> OperatorElement:
    """Mass Casimir □ = η^{ab} ξ_a ξ_b."""
    fields = xi()
    return sum((op_mul(fields[a], fields[a]) * ETA[a] for a in range(5)), OperatorElement())


def lorentz_generator(mu: int, nu: int) -> OperatorElement:
    """M_{μν} with M_{0j} = N_j and M_{jk} = ε_{jkl} R_l."""
    if mu == nu:
        return OperatorElement()
    if mu > nu:
        return -lorentz_generator(nu, mu)
    if mu == 0:
        return _element(f"N{nu}")
    result = OperatorElement()
    for l in range(3):
        sign = levi_civita(mu - 1, nu - 1, l)
        if sign:
            result = result + _element(f"R{l + 1}") * sign
    return result


@lru_cache(maxsize=None)
def _minor(kind: str, rows: tuple, cols: tuple) -> OperatorElement:
    """Determinant of the rows × cols submatrix of λ or σ (entries commute)."""
    if not rows:
        return OperatorElement.unit()
    matrix = lambda_matrix() if kind == "lambda" else sigma_matrix()
    head, rest = rows[0], rows[1:]
    total = OperatorElement()
    for position, col in enumerate(cols):
        entry = matrix[head][col]
        if entry.is_zero():
            continue
        cofactor = _minor(kind, rest, cols[:position] + cols[position + 1:])
        term = op_mul(entry, cofactor)
        total = total + (term if position % 2 == 0 else -term)
    return total


def lambda_minor(rows: tuple, cols: tuple) -> OperatorElement:
    """det λ[rows][cols] for sorted, distinct row and column tuples."""
    return _minor("lambda", tuple(rows), tuple(cols))


def sigma_minor(rows: tuple, cols: tuple) -> OperatorElement:
    return _minor("sigma", tuple(rows), tuple(cols))


def commutator_casimir(m: OperatorElement) -> OperatorElement:
    """m·□ - □·m in normal form."""
    return commutator(m, casimir())


# =============================================================================
# VERIFICATION
# =============================================================================
def so41_contraction(a: int, b: int) -> OperatorElement:
    lam = lambda_matrix()
    return sum((op_mul(lam[a][c], lam[b][c]) * ETA[c] for c in range(5)), OperatorElement())


def verify_so41() -> dict:
    """η^{cd} λ^a_c λ^b_d = η^{ab} for all 25 index pairs."""
    report = new_report("so41")
    for a in range(5):
        for b in range(5):
            expected = OperatorElement.constant(ETA[a] if a == b else 0)
            residual = so41_contraction(a, b) - expected
            record_case(report, residual.is_zero(), [a, b], str(residual))
    return report


def epsilon_lambda_sides(n: int, indices: tuple) -> tuple:
    """
    Both sides of the ε-λ lemma for one assignment of free indices.

    λ^{a1}_{b1}...λ^{an}_{bn} ε^{b1..bn a(n+1)..a5}
        = S(λ^{a(n+1)}_{b(n+1)})...S(λ^{a5}_{b5}) ε^{a1..an b(n+1)..b5}

    Both sums collapse to a signed minor because the entries commute.
    """
    head, tail = tuple(indices[:n]), tuple(indices[n:])
    lhs = OperatorElement()
    complement = tuple(c for c in range(5) if c not in tail)
    if len(complement) == n:
        sign = permutation_sign(head) * levi_civita(*(complement + tail))
        if sign:
            lhs = lambda_minor(tuple(sorted(head)), complement) * sign
    rhs = OperatorElement()
    complement = tuple(c for c in range(5) if c not in head)
    if len(complement) == 5 - n:
        sign = permutation_sign(tail) * levi_civita(*(head + complement))
        if sign:
            rhs = sigma_minor(tuple(sorted(tail)), complement) * sign
    return lhs, rhs


def verify_epsilon_lambda_lemma(n: int) -> dict:
    """Check the ε-λ lemma exhaustively over all 5^5 free-index assignments."""
    if not 1 <= n <= 4:
        raise ValueError(f"ε-λ lemma degree must be between 1 and 4, got {n}")
    report = new_report(f"epsilon_lambda_n{n}")
    for indices in itertools.product(range(5), repeat=5):
        lhs, rhs = epsilon_lambda_sides(n, indices)
        residual = lhs - rhs
        record_case(report, residual.is_zero(), list(indices), str(residual))
    logger.info(f"ε-λ lemma n={n}: {report['cases']} assignments, valid={report['valid']}")
    return report


def verify_jacobi() -> dict:
    report = new_report("jacobi")
    for a, b, c in itertools.combinations(GENERATORS, 3):
        x, y, z = _element(a), _element(b), _element(c)
        total = (commutator(x, commutator(y, z)) + commutator(y, commutator(z, x))
                 + commutator(z, commutator(x, y)))
        record_case(report, total.is_zero(), [a, b, c], str(total))
    return report


def verify_coassociativity() -> dict:
    report = new_report("coassociativity")
    for name in GENERATORS:
        delta = coproduct(_element(name))
        left = delta.expand_leg(0, coproduct)
        right = delta.expand_leg(1, coproduct)
        residual = left - right
        record_case(report, residual.is_zero(), [name], str(residual))
    return report


def verify_antipode_axioms() -> dict:
    """m∘(S⊗id)∘Δ = ε·1 = m∘(id⊗S)∘Δ on every generator."""
    report = new_report("antipode_axioms")
    for name in GENERATORS:
        g = _element(name)
        delta = coproduct(g)
        expected = OperatorElement.constant(counit(g))
        left = delta.map_leg(0, antipode).multiply_legs() - expected
        right = delta.map_leg(1, antipode).multiply_legs() - expected
        record_case(report, left.is_zero(), [name, "S⊗id"], str(left))
        record_case(report, right.is_zero(), [name, "id⊗S"], str(right))
    return report


def verify_coproduct_homomorphism() -> dict:
    """Δ(gh) = Δ(g)Δ(h) for every ordered generator pair."""
    report = new_report("coproduct_homomorphism")
    for a, b in itertools.product(GENERATORS, repeat=2):
        x, y = _element(a), _element(b)
        residual = coproduct(op_mul(x, y)) - coproduct(x) * coproduct(y)
        record_case(report, residual.is_zero(), [a, b], str(residual))
    return report


def verify_antipode_antihomomorphism() -> dict:
    report = new_report("antipode_antihomomorphism")
    for a, b in itertools.product(GENERATORS, repeat=2):
        x, y = _element(a), _element(b)
        residual = antipode(op_mul(x, y)) - op_mul(antipode(y), antipode(x))
        record_case(report, residual.is_zero(), [a, b], str(residual))
    return report


def verify_xi_coproduct() -> dict:
    """Δ(ξ_a) = ξ_b ⊗ λ^b_a + 1 ⊗ ξ_a and ε(ξ_a) = 0."""
    report = new_report("xi_coproduct")
    fields, lam = xi(), lambda_matrix()
    one = OperatorElement.unit()
    for a in range(5):
        expected = TensorOperator.tensor(one, fields[a])
        for b in range(5):
            expected = expected + TensorOperator.tensor(fields[b], lam[b][a])
        residual = coproduct(fields[a]) - expected
        record_case(report, residual.is_zero(), [a], str(residual))
        record_case(report, counit(fields[a]).is_zero(), [a, "counit"], str(counit(fields[a])))
    return report


def verify_lambda_hopf() -> dict:
    """Coalgebra structure of λ and the χ coproduct."""
    report = new_report("lambda_hopf")
    lam, sig, fields = lambda_matrix(), sigma_matrix(), chi()
    one = OperatorElement.unit()
    for a in range(5):
        for b in range(5):
            expected = TensorOperator()
            for c in range(5):
                expected = expected + TensorOperator.tensor(lam[a][c], lam[c][b])
            residual = coproduct(lam[a][b]) - expected
            record_case(report, residual.is_zero(), [a, b, "coproduct"], str(residual))
            delta = 1 if a == b else 0
            record_case(report, counit(lam[a][b]) == delta, [a, b, "counit"], str(counit(lam[a][b])))
            inverse = sum((op_mul(sig[a][c], lam[c][b]) for c in range(5)), OperatorElement())
            residual = inverse - OperatorElement.constant(delta)
            record_case(report, residual.is_zero(), [a, b, "inverse"], str(residual))
        expected = TensorOperator.tensor(fields[a], one)
        for b in range(5):
            expected = expected + TensorOperator.tensor(sig[b][a], fields[b])
        residual = coproduct(fields[a]) - expected
        record_case(report, residual.is_zero(), [a, "chi_coproduct"], str(residual))
    return report


def verify_determinant() -> dict:
    report = new_report("lambda_determinant")
    full = tuple(range(5))
    residual = lambda_minor(full, full) - OperatorElement.unit()
    record_case(report, residual.is_zero(), ["lambda"], str(residual))
    return report


def verify_twist() -> dict:
    report = new_report("twist")
    t = twist()
    residual = coproduct(t) - TensorOperator.tensor(t, t)
    record_case(report, residual.is_zero(), ["coproduct"], str(residual))
    residual = op_mul(antipode(t), t) - OperatorElement.unit()
    record_case(report, residual.is_zero(), ["S(T)T"], str(residual))
    record_case(report, counit(t) == 1, ["counit"], str(counit(t)))
    return report


def verify_casimir() -> dict:
    """S(□) = □, η ξξ = η χχ and [h, □] = 0 for the ten symmetry generators."""
    report = new_report("casimir")
    box = casimir()
    residual = antipode(box) - box
    record_case(report, residual.is_zero(), ["antipode"], str(residual))
    fields = chi()
    right = sum((op_mul(fields[a], fields[a]) * ETA[a] for a in range(5)), OperatorElement())
    residual = right - box
    record_case(report, residual.is_zero(), ["chi_form"], str(residual))
    for name in SYMMETRY_GENERATORS:
        residual = commutator_casimir(_element(name))
        record_case(report, residual.is_zero(), [name], str(residual))
    return report


def verify_vector_law() -> dict:
    """[M_{μν}, χ_ρ] = i(η_{μρ} χ_ν - η_{νρ} χ_μ), with χ_4 Lorentz invariant."""
    report = new_report("vector_law")
    fields = chi()
    for mu, nu in itertools.combinations(range(4), 2):
        m = lorentz_generator(mu, nu)
        for rho in range(5):
            expected = OperatorElement()
            if mu == rho:
                expected = expected + fields[nu] * ETA[mu]
            if nu == rho:
                expected = expected - fields[mu] * ETA[nu]
            residual = commutator(m, fields[rho]) - I * expected
            record_case(report, residual.is_zero(), [mu, nu, rho], str(residual))
    return report


def verify_hopf_identities() -> list[dict]:
    """Every exact identity of the operator algebra, one report each."""
    logger.info("Verifying κ-Poincaré Hopf identities")
    reports = [
        verify_jacobi(),
        verify_coassociativity(),
        verify_antipode_axioms(),
        verify_coproduct_homomorphism(),
        verify_antipode_antihomomorphism(),
        verify_so41(),
        verify_xi_coproduct(),
        verify_lambda_hopf(),
        verify_determinant(),
        verify_twist(),
        verify_casimir(),
        verify_vector_law(),
    ]
    return reports
