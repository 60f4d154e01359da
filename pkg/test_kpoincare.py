import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import kpoincare
from kpoincare import (
    GENERATORS, SYMMETRY_GENERATORS, OperatorElement, TensorOperator, antipode, casimir, chi, commutator,
    coproduct, counit, lorentz_generator, op_mul, twist, verify_epsilon_lambda_lemma, xi,
)
from scalars import KAPPA_INV, ONE, ExactScalar


def operator_elements(max_terms: int = 2, max_length: int = 2):
    word = st.lists(st.sampled_from(GENERATORS), min_size=0, max_size=max_length)
    coeff = st.integers(-3, 3).filter(bool)

    def build(pairs):
        total = OperatorElement()
        for letters, c in pairs:
            term = OperatorElement.unit()
            for name in letters:
                term = op_mul(term, OperatorElement.generator(name))
            total = total + term * c
        return total

    return st.lists(st.tuples(word, coeff), min_size=1, max_size=max_terms).map(build)


HOPF_CHECKS = [
    "verify_jacobi", "verify_coassociativity", "verify_antipode_axioms", "verify_coproduct_homomorphism",
    "verify_antipode_antihomomorphism", "verify_so41", "verify_xi_coproduct", "verify_lambda_hopf",
    "verify_determinant", "verify_twist", "verify_casimir", "verify_vector_law",
]


@pytest.mark.parametrize("check", HOPF_CHECKS)
def test_hopf_identity_holds_exactly(check):
    report = getattr(kpoincare, check)()
    assert report['valid'], report['failures'][:3]
    assert report['cases'] > 0


def test_so41_covers_all_pairs():
    assert kpoincare.verify_so41()['cases'] == 25


@pytest.mark.parametrize("n", [1, 2])
def test_epsilon_lambda_lemma(n):
    report = verify_epsilon_lambda_lemma(n)
    assert report['valid'], report['failures'][:3]
    assert report['cases'] == 5 ** 5


@pytest.mark.slow
@pytest.mark.parametrize("n", [3, 4])
def test_epsilon_lambda_lemma_high_degree(n):
    assert verify_epsilon_lambda_lemma(n)['valid']


def test_epsilon_lambda_lemma_rejects_degree():
    with pytest.raises(ValueError):
        verify_epsilon_lambda_lemma(5)


class TestGenerators:
    def test_unknown_generator(self):
        with pytest.raises(ValueError, match="unknown"):
            OperatorElement.generator("Q7")

    def test_e_inverse(self):
        e, einv = OperatorElement.generator("E"), OperatorElement.generator("Einv")
        assert op_mul(e, einv) == OperatorElement.unit()
        assert op_mul(einv, e) == OperatorElement.unit()

    @pytest.mark.parametrize("name,value", [("P0", 0), ("P1", 0), ("N2", 0), ("R3", 0), ("E", 1), ("Einv", 1)])
    def test_counit(self, name, value):
        assert counit(OperatorElement.generator(name)) == value

    def test_momenta_commute(self):
        names = ["P0", "P1", "P2", "P3", "E"]
        for a in names:
            for b in names:
                assert commutator(OperatorElement.generator(a), OperatorElement.generator(b)).is_zero()

    def test_e_is_grouplike(self):
        e = OperatorElement.generator("E")
        assert coproduct(e) == TensorOperator.tensor(e, e)
        assert antipode(e) == OperatorElement.generator("Einv")

    def test_twist_is_e_cubed(self):
        assert twist() == OperatorElement.generator("E") ** 3

    @pytest.mark.parametrize("mu,nu", [(0, 1), (1, 2), (2, 3), (0, 3)])
    def test_lorentz_generator_antisymmetric(self, mu, nu):
        assert lorentz_generator(mu, nu) == -lorentz_generator(nu, mu)
        assert lorentz_generator(mu, mu).is_zero()

    def test_xi_and_chi_have_zero_counit(self):
        for field in xi() + chi():
            assert counit(field).is_zero()

    @pytest.mark.parametrize("name", SYMMETRY_GENERATORS)
    def test_casimir_is_central(self, name):
        assert commutator(OperatorElement.generator(name), casimir()).is_zero()


class TestBoostCoproduct:
    @pytest.mark.parametrize("k,l,m", [(1, 2, 3), (2, 3, 1), (3, 1, 2)])
    def test_twisted_term_has_real_coefficient(self, k, l, m):
        twisted = TensorOperator.tensor(OperatorElement.generator(f"P{l}"), OperatorElement.generator(f"R{m}"))
        (key, _), = twisted.terms.items()
        assert coproduct(OperatorElement.generator(f"N{k}")).terms[key] == KAPPA_INV

    @pytest.mark.parametrize("a", SYMMETRY_GENERATORS)
    @pytest.mark.parametrize("b", SYMMETRY_GENERATORS)
    def test_multiplicative_on_generator_pairs(self, a, b):
        x, y = OperatorElement.generator(a), OperatorElement.generator(b)
        assert coproduct(op_mul(x, y)) == coproduct(x) * coproduct(y)


class TestRandomElements:
    @settings(max_examples=25, deadline=None)
    @given(operator_elements(), operator_elements(), operator_elements())
    def test_product_is_associative(self, a, b, c):
        assert op_mul(op_mul(a, b), c) == op_mul(a, op_mul(b, c))

    @settings(max_examples=25, deadline=None)
    @given(operator_elements(), operator_elements())
    def test_coproduct_is_multiplicative(self, a, b):
        assert coproduct(op_mul(a, b)) == coproduct(a) * coproduct(b)

    @settings(max_examples=25, deadline=None)
    @given(operator_elements(), operator_elements())
    def test_antipode_reverses_products(self, a, b):
        assert antipode(op_mul(a, b)) == op_mul(antipode(b), antipode(a))

    @settings(max_examples=25, deadline=None)
    @given(operator_elements(), operator_elements())
    def test_counit_is_multiplicative(self, a, b):
        assert counit(op_mul(a, b)) == counit(a) * counit(b)

    @settings(max_examples=25, deadline=None)
    @given(operator_elements())
    def test_scalar_multiplication(self, a):
        assert a * ExactScalar(2) == a + a
        assert a * ONE == a
