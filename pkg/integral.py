"""
kforms - Integral on Top Forms

Left-invariant integral of 5-forms in the plane-wave model, where the
translation-invariant functional picks the zero mode: ∫ e_k vol = [k = 0].

Features:
    - integrate: zero-mode coefficient of the volume component
    - inner_product: (ω, ρ) = ∫ ω† ∧ *ρ, hermitian and sesquilinear
    - tilde_positivity: (ω, ω̃) ≥ 0 with equality only for ω = 0
    - nondegeneracy_witness: ω̃ together with per-component norms
"""

import logging

import config
from forms import Form, VOLUME_WORD, dagger, differential, hodge, wedge
from kminkowski import WaveElement
from reports import new_report, numeric_residual, record_case
from scalars import NumericScalar

logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
logger = logging.getLogger(__name__)

ZERO_MODE = (0.0, 0.0, 0.0, 0.0)


def integrate(omega: Form) -> NumericScalar:
    """
    ∫ ω for a 5-form over the plane-wave backend.

    Raises:
        ValueError: for forms of another degree or exact coefficients
    """
    if not omega.is_wave():
        raise ValueError("integral needs the plane-wave backend")
    if omega.degrees() - {5}:
        raise ValueError(f"integral needs a 5-form, got degrees {sorted(omega.degrees())}")
    return NumericScalar(omega.component(VOLUME_WORD).coefficient(ZERO_MODE))


def integrate_function(f: WaveElement) -> NumericScalar:
    """∫ f vol."""
    return integrate(Form({VOLUME_WORD: f}, f.zero_like()))


def is_closed_integral(omega: Form, tol: float = 0.0) -> bool:
    """True when ∫ dω vanishes to within tol; omega must be a 4-form."""
    return abs(complex(integrate(differential(omega)))) <= tol


def inner_product(omega: Form, rho: Form) -> NumericScalar:
    """
    (ω, ρ) = ∫ ω† ∧ *ρ.

    Raises:
        ValueError: when the degrees differ
    """
    if len(omega.degrees() | rho.degrees()) > 1:
        raise ValueError(f"inner product needs equal degrees, got {sorted(omega.degrees())} "
                         f"and {sorted(rho.degrees())}")
    if omega.is_zero() or rho.is_zero():
        return NumericScalar(0.0)
    return integrate(wedge(dagger(omega), hodge(rho)))


def tilde(omega: Form) -> Form:
    """
    ω̃: components with an index 0 change sign, and every degree-n component
    carries the sign (-1)^(n(n-1)/2), times -1 from degree 3 on.
    """
    terms = {}
    for word, coeff in omega.terms.items():
        n = len(word)
        sign = -1 if 0 in word else 1
        if (n * (n - 1) // 2) % 2:
            sign = -sign
        if n >= 3:
            sign = -sign
        terms[word] = coeff * sign
    return Form(terms, omega.zero)


def tilde_positivity(omega: Form, tol: float = config.TOLERANCES["hermiticity"]) -> dict:
    """
    Check that (ω, ω̃) is real and non-negative, and zero only for ω = 0.

    Returns:
        Report dict with the value attached under 'value'
    """
    report = new_report("tilde_positivity")
    value = complex(inner_product(omega, tilde(omega)))
    scale = max(1.0, abs(value))
    label = str(omega)[:120]
    record_case(report, abs(value.imag) <= tol * scale, [label, "real"], numeric_residual(value.imag))
    record_case(report, value.real >= -tol * scale, [label, "nonnegative"], numeric_residual(min(value.real, 0.0)))
    if omega.is_zero():
        record_case(report, abs(value) <= tol, [label, "zero"], numeric_residual(value))
    else:
        record_case(report, value.real > tol, [label, "definite"], numeric_residual(value.real))
    report['value'] = [value.real, value.imag]
    return report


def nondegeneracy_witness(omega: Form) -> dict:
    """
    The partner form ω̃ and the norms ∫ f_w† f_w of each component.

    Returns:
        Dict with 'tilde' (Form), 'pairing' (complex) and 'component_norms'
    """
    partner = tilde(omega)
    norms = {}
    for word, coeff in omega.terms.items():
        norms[word] = complex(integrate_function(coeff.dagger() * coeff)).real
    return {
        'tilde': partner,
        'pairing': complex(inner_product(omega, partner)),
        'component_norms': norms,
    }
