"""
kforms - Scalar Field Theory

Complex scalar field on κ-Minkowski over the plane-wave backend: action,
equation of motion, deformed dispersion relation, the Noether current
4-forms and the U(1) current.

Features:
    - dispersion_solve: bracketing root search with a Newton polish
    - action_eval: Hodge form and wave-operator form of the action
    - eom_residual: *d*dφ - m²φ through the forms pipeline
    - noether_current / em_tensor: j_a = *(e^b) T_ab, extracted from j_a
    - u1_current: j = *(φ†dφ - dφ†φ), closed on-shell
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, newton

import config
from forms import (
    DIMENSION, ETA, Form, apply_field, apply_minor, dagger, differential, hodge,
    inner, left_multiply, right_multiply, to_right_coefficients, wedge,
)
from integral import ZERO_MODE, integrate, integrate_function
from kminkowski import WaveElement, mode_eigenvalues
from reports import new_report, numeric_residual, record_case
from scalars import NumericScalar

logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldConfig:
    """Field φ with mass m ≥ 0 at deformation κ > 0."""

    phi: WaveElement
    mass: float = 0.0
    kappa: float = config.WAVE_KAPPA

    def __post_init__(self):
        if self.mass < 0:
            raise ValueError(f"mass must be non-negative, got {self.mass}")
        if not self.kappa > 0:
            raise ValueError(f"κ must be positive, got {self.kappa}")
        if not math.isclose(self.phi.kappa, self.kappa, rel_tol=1e-15):
            raise ValueError(f"field built at κ={self.phi.kappa}, config says κ={self.kappa}")

    def scale(self) -> float:
        """Size used for relative tolerances: (Σ|c|)² (1 + max |ξ(k)|)²."""
        total, largest = 0.0, 0.0
        for k, coeff in self.phi.modes():
            total += abs(coeff)
            largest = max(largest, float(np.max(np.abs(mode_eigenvalues(k, self.kappa)['xi']))))
        return max(1.0, total ** 2 * (1.0 + largest) ** 2)


@dataclass(frozen=True)
class EMTensor:
    """T_ab as a 5×5 nested tuple of WaveElements."""

    components: tuple

    def component(self, a: int, b: int) -> WaveElement:
        return self.components[a][b]

    def at_mode(self, k=ZERO_MODE) -> np.ndarray:
        """Coefficients of e_k in every component."""
        return np.array([[self.components[a][b].coefficient(k) for b in range(DIMENSION)]
                         for a in range(DIMENSION)])

    def asymmetry(self) -> float:
        """Largest |T_ab - T_ba| coefficient."""
        worst = 0.0
        for a in range(DIMENSION):
            for b in range(a + 1, DIMENSION):
                worst = max(worst, (self.components[a][b] - self.components[b][a]).max_abs())
        return worst


# =============================================================================
# DISPERSION RELATION
# =============================================================================
def mass_shell(k0: float, kvec, kappa: float) -> float:
    """-η^{ab} χ_a χ_b at (k0, kvec): 4κ² sinh²(k0/2κ) - e^{k0/κ} |k|²."""
    p2 = float(np.dot(kvec, kvec))
    return 4.0 * kappa ** 2 * math.sinh(k0 / (2.0 * kappa)) ** 2 - math.exp(k0 / kappa) * p2


def dispersion_solve(kvec, mass: float, kappa: float) -> float:
    """
    Positive-energy solution k0 ≥ 0 of the deformed mass shell.

    The shell has a root exactly when |k| < κ; for m = 0 it is
    k0 = -κ log(1 - |k|/κ).

    Args:
        kvec: spatial momentum (k1, k2, k3)
        mass: m ≥ 0
        kappa: κ > 0

    Returns:
        k0 with -η^{ab}χ_a(k)χ_b(k) = m²

    Raises:
        ValueError: "dispersion bracket failed" when no root can be bracketed
    """
    if mass < 0 or not kappa > 0:
        raise ValueError("dispersion needs m ≥ 0 and κ > 0")
    kvec = np.asarray(kvec, dtype=float)
    m2 = float(mass) ** 2

    def residual(k0: float) -> float:
        return mass_shell(k0, kvec, kappa) - m2

    def slope(k0: float) -> float:
        return 2.0 * kappa * math.sinh(k0 / kappa) - math.exp(k0 / kappa) * float(kvec @ kvec) / kappa

    start = residual(0.0)
    if start == 0.0:
        return 0.0
    if float(np.sqrt(kvec @ kvec)) >= kappa:
        raise ValueError("dispersion bracket failed")

    upper = config.DISPERSION["initial_bracket"] * max(1.0, math.sqrt(m2 + float(kvec @ kvec)))
    for _ in range(config.DISPERSION["max_doublings"]):
        try:
            if residual(upper) > 0:
                break
        except OverflowError:
            raise ValueError("dispersion bracket failed")
        upper *= 2.0
    else:
        raise ValueError("dispersion bracket failed")

    root = brentq(residual, 0.0, upper, xtol=config.DISPERSION["xtol"], rtol=4 * np.finfo(float).eps)
    if slope(root) > 0:
        polished = newton(residual, root, fprime=slope, tol=config.DISPERSION["xtol"],
                          maxiter=config.DISPERSION["newton_steps"], disp=False)
        if 0.0 <= polished <= upper and abs(residual(polished)) <= abs(residual(root)):
            root = float(polished)
    logger.debug(f"dispersion k={kvec.tolist()} m={mass} κ={kappa} -> k0={root!r}")
    return float(root)


def dispersion_residual(k, mass: float, kappa: float) -> float:
    """|-η^{ab}χ_a(k)χ_b(k) - m²| from the χ eigenvalues on e_k."""
    chi_k = mode_eigenvalues(k, kappa)['chi']
    casimir = -sum(ETA[a] * chi_k[a] ** 2 for a in range(DIMENSION))
    return abs(casimir - mass ** 2)


def on_shell_mode(kvec, mass: float, kappa: float) -> tuple:
    return (dispersion_solve(kvec, mass, kappa),) + tuple(float(v) for v in kvec)


def random_on_shell_config(rng, modes: int, mass: float, kappa: float, scale: float = 0.5) -> FieldConfig:
    """
    Field with `modes` random positive-energy on-shell plane waves.

    Spatial momenta are drawn with size ~scale·min(κ, 1) and kept below κ/2.
    """
    pairs = []
    for _ in range(modes):
        kvec = rng.normal(0.0, scale * min(kappa, 1.0), size=3)
        norm = float(np.sqrt(kvec @ kvec))
        if norm >= kappa / 2:
            kvec = kvec * (kappa / (4 * norm))
        coeff = complex(rng.normal(), rng.normal())
        pairs.append((coeff, on_shell_mode(kvec, mass, kappa)))
    return FieldConfig(WaveElement.from_modes(pairs, kappa), float(mass), float(kappa))


def config_from_modes(records: list, mass: float, kappa: float) -> FieldConfig:
    """
    Build a FieldConfig from mode records [{re, im, k: [k0, k1, k2, k3]}, ...].

    Raises:
        ValueError: on malformed records
    """
    pairs = []
    for index, record in enumerate(records):
        try:
            coeff = complex(float(record.get("re", 0.0)), float(record.get("im", 0.0)))
            k = [float(v) for v in record["k"]]
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise ValueError(f"mode record {index} is malformed: {e}")
        if len(k) != 4:
            raise ValueError(f"mode record {index} needs four momentum components, got {len(k)}")
        pairs.append((coeff, k))
    return FieldConfig(WaveElement.from_modes(pairs, kappa), float(mass), float(kappa))


# =============================================================================
# ACTION AND EQUATION OF MOTION
# =============================================================================
def wave_operator(phi: WaveElement) -> WaveElement:
    """*d*d φ computed through the forms module."""
    return hodge(differential(hodge(differential(Form.function(phi))))).component(())


def wave_operator_eigenvalue(k, kappa: float) -> float:
    """Eigenvalue of *d*d on e_k, equal to -η^{ab}ξ_a(k)ξ_b(k)."""
    return -mode_eigenvalues(k, kappa)['box']


def eom_residual(cfg: FieldConfig) -> WaveElement:
    """*d*dφ - m²φ; zero exactly when every mode is on-shell."""
    return wave_operator(cfg.phi) - cfg.phi * (cfg.mass ** 2)


def action_forms(cfg: FieldConfig) -> tuple:
    """
    Both evaluations of the action.

    Returns:
        (½∫{(dφ)† ∧ *dφ + m² φ† ∧ *φ}, ½∫{-φ†(*d*dφ) + m² φ†φ} vol)
    """
    phi = Form.function(cfg.phi)
    dphi = differential(phi)
    m2 = cfg.mass ** 2
    hodge_form = integrate(wedge(dagger(dphi), hodge(dphi)))
    if m2:
        hodge_form = hodge_form + integrate(wedge(dagger(phi), hodge(phi))) * m2
    density = -(cfg.phi.dagger() * wave_operator(cfg.phi)) + cfg.phi.dagger() * cfg.phi * m2
    box_form = integrate_function(density)
    return NumericScalar(hodge_form * 0.5), NumericScalar(box_form * 0.5)


def action_eval(cfg: FieldConfig) -> NumericScalar:
    """
    S[φ] in the Hodge form.

    Logs a warning when the wave-operator form disagrees beyond tolerance.
    """
    first, second = action_forms(cfg)
    tol = config.TOLERANCES["action_agreement"] * cfg.scale()
    if abs(complex(first) - complex(second)) > tol:
        logger.warning(f"action forms disagree: {complex(first)} vs {complex(second)}")
    return first


# =============================================================================
# CURRENTS
# =============================================================================
def lagrangian(cfg: FieldConfig) -> Form:
    """ℒ = ½{dφ† ∧ *dφ + m² φ† ∧ *φ}, a 5-form."""
    phi = Form.function(cfg.phi)
    phi_dagger = Form.function(cfg.phi.dagger())
    density = wedge(differential(phi_dagger), hodge(differential(phi)))
    if cfg.mass:
        density = density + wedge(phi_dagger, hodge(phi)) * (cfg.mass ** 2)
    return density * 0.5


def noether_current(cfg: FieldConfig, a: int) -> Form:
    """
    Energy-momentum current 4-form along iχ_a.

    j_a = -[½{(iχ_a ▷ φ†) *dφ + *d(σ^b_a ▷ φ†)(iχ_b ▷ φ)} - i_a(ℒ)]

    Raises:
        ValueError: for a outside 0..4
    """
    if not 0 <= a < DIMENSION:
        raise ValueError(f"current index must be 0..4, got {a}")
    phi = cfg.phi
    phi_dagger = phi.dagger()
    star_dphi = hodge(differential(Form.function(phi)))
    current = left_multiply(apply_field("chi", a, phi_dagger) * 1j, star_dphi)
    for b in range(DIMENSION):
        rotated = apply_minor("sigma", (b,), (a,), phi_dagger)
        if rotated.is_zero():
            continue
        pushed = apply_field("chi", b, phi) * 1j
        current = current + right_multiply(hodge(differential(Form.function(rotated))), pushed)
    return -(current * 0.5 - inner(a, lagrangian(cfg)))


def em_tensor(cfg: FieldConfig) -> EMTensor:
    """
    T_ab from j_a = *(e^b) T_ab, reading right coefficients of each j_a.

    *(e^b) = η_b (-1)^b e^(b̄), so T_ab is the right coefficient of e^(b̄)
    times η_b (-1)^b.
    """
    rows = []
    zero = cfg.phi.zero_like()
    for a in range(DIMENSION):
        right = to_right_coefficients(noether_current(cfg, a))
        row = []
        for b in range(DIMENSION):
            complement = tuple(c for c in range(DIMENSION) if c != b)
            sign = ETA[b] * (-1 if b % 2 else 1)
            row.append(right.get(complement, zero) * sign)
        rows.append(tuple(row))
    return EMTensor(tuple(rows))


def plane_wave_em_tensor(k, coeff: complex, kappa: float) -> np.ndarray:
    """Expected T_ab on c·e_k on-shell: -½[ξ_aξ_b + ξ_bξ_a] |c|²."""
    xi_k = mode_eigenvalues(k, kappa)['xi']
    return -0.5 * (np.outer(xi_k, xi_k) + np.outer(xi_k, xi_k).T) * abs(coeff) ** 2


def u1_current(cfg: FieldConfig) -> Form:
    """j = *(φ† dφ - dφ† φ)."""
    phi = cfg.phi
    phi_dagger = phi.dagger()
    dphi = differential(Form.function(phi))
    dphi_dagger = differential(Form.function(phi_dagger))
    return hodge(left_multiply(phi_dagger, dphi) - right_multiply(dphi_dagger, phi))


# =============================================================================
# CHECKS
# =============================================================================
def conservation_check(cfg: FieldConfig, tol: float = config.TOLERANCES["conservation"]) -> dict:
    """d j_a = 0 for a = 0..4, relative to the field scale."""
    report = new_report("noether_conservation")
    scale = cfg.scale()
    for a in range(DIMENSION):
        divergence = differential(noether_current(cfg, a)).max_abs()
        record_case(report, divergence <= tol * scale, {'a': a, 'phi': str(cfg.phi)[:120]},
                    numeric_residual(divergence / scale))
    return report


def u1_charge_check(cfg: FieldConfig, tol: float = config.TOLERANCES["conservation"]) -> dict:
    """d j = 0 for the U(1) current."""
    report = new_report("u1_conservation")
    scale = cfg.scale()
    divergence = differential(u1_current(cfg)).max_abs()
    record_case(report, divergence <= tol * scale, {'phi': str(cfg.phi)[:120]},
                numeric_residual(divergence / scale))
    return report


def wave_operator_check(cfg: FieldConfig, tol: float = config.TOLERANCES["eigenvalue"]) -> dict:
    """*d*d agrees with multiplication by -η^{ab}ξ_aξ_b on every mode."""
    report = new_report("wave_operator_casimir")
    image = wave_operator(cfg.phi)
    for k, coeff in cfg.phi.modes():
        expected = coeff * wave_operator_eigenvalue(k, cfg.kappa)
        got = image.coefficient(k)
        scale = max(1.0, abs(expected))
        record_case(report, abs(got - expected) <= tol * scale, {'k': list(k)},
                    numeric_residual((got - expected) / scale))
    return report
