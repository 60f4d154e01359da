"""
kforms - Verification Suites

Runs the randomized and exhaustive identity checks of every engine module
and assembles the versioned JSON report of `kforms verify`.

Features:
    - Suites: hopf, calculus, hodge, integral, starprod, fieldtheory, all
    - Deterministic per-suite random streams derived from one seed
    - Failed identities recorded, never raised
    - Report echoes κ, backend, seed, tolerance and grid
"""

import itertools
import logging
import math
import time

import numpy as np

import config
import fieldtheory
import starprod
from forms import (
    DIMENSION, VOLUME_WORD, WORDS_BY_DEGREE, Form, act_form, coord_commutator, dagger,
    differential, hodge, inner, cartan_sides, left_multiply, lie, metric, random_form,
    right_multiply, wedge,
)
from integral import integrate, inner_product, is_closed_integral, nondegeneracy_witness, tilde_positivity
from kminkowski import PolyElement, WaveElement, random_poly, random_wave
from kpoincare import (
    SYMMETRY_GENERATORS, OperatorElement, counit, verify_epsilon_lambda_lemma, verify_hopf_identities,
)
from reports import merge_reports, new_report, numeric_residual, record_case
from scalars import ONE, NumericScalar, random_exact_scalar

logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
logger = logging.getLogger(__name__)

MOMENTUM_GENERATORS = ("P0", "P1", "P2", "P3", "E")


def _label(value, limit: int = 160) -> str:
    text = str(value)
    return text if len(text) <= limit else text[:limit] + "..."


class SuiteRunner:
    """
    Runs named verification suites with shared settings.

    Args:
        seed: master seed; each suite draws from its own derived stream
        tol: override for every numeric tolerance
        grid_points: star-product grid size N
        half_width: star-product domain half-width L
        calculus_samples: randomized polynomials per calculus identity
    """

    def __init__(self, seed: int | None = None, tol: float | None = None,
                 grid_points: int | None = None, half_width: float | None = None,
                 calculus_samples: int | None = None):
        if seed is None:
            seed = config.DEFAULT_SEED
        if seed is None:
            seed = int(np.random.SeedSequence().entropy % 2 ** 63)
        self.seed = int(seed)
        self.tolerances = dict(config.TOLERANCES)
        if tol is not None:
            self.tolerances = {key: float(tol) for key in self.tolerances}
        self.tol = tol
        self.grid = starprod.GridSpec(
            grid_points or config.STARPROD_GRID["points"],
            half_width or config.STARPROD_GRID["half_width"],
            config.STARPROD_GRID["kappa"],
        )
        self.samples = dict(config.SUITE_SAMPLES)
        if calculus_samples is not None:
            self.samples["calculus_polynomials"] = calculus_samples
            self.samples["cartan_forms"] = max(1, calculus_samples // 2)

    def rng(self, suite: str) -> np.random.Generator:
        return np.random.default_rng([self.seed, config.SUITES.index(suite)])

    def run(self, name: str) -> dict:
        """
        Run one suite, or every suite in config.ALL_SUITES for "all".

        Raises:
            ValueError: for an unknown suite name
        """
        if name == "all":
            reports = [self.run(suite) for suite in config.ALL_SUITES]
            return {
                'suite': 'all',
                'valid': all(r['valid'] for r in reports),
                'cases': sum(r['cases'] for r in reports),
                'suites': reports,
                'failures': [f for r in reports for f in r['failures']],
            }
        if name not in config.SUITES:
            raise ValueError(f"unknown suite {name!r}, choose from {config.SUITES + ['all']}")
        logger.info(f"Running suite {name} with seed {self.seed}")
        runner = getattr(self, f"_suite_{name}")
        summary = merge_reports(name, runner(self.rng(name)))
        logger.info(f"Suite {name}: {summary['cases']} cases, valid={summary['valid']}")
        return summary

    # =========================================================================
    # HOPF
    # =========================================================================
    def _suite_hopf(self, rng) -> list[dict]:
        return verify_hopf_identities()

    # =========================================================================
    # CALCULUS
    # =========================================================================
    def _suite_calculus(self, rng) -> list[dict]:
        count = self.samples["calculus_polynomials"]
        degree = self.samples["max_poly_degree"]
        reports = [
            self._scalar_ring(rng, count),
            self._numeric_agreement(rng, count),
            self._nilpotency(rng, count, degree),
            self._coordinate_jacobi(rng, count, degree),
            self._volume_central(),
            self._basis_involution(),
            self._leibniz(rng, count),
            self._d_dagger(rng, count),
            self._cartan(rng),
            self._lie_commutes_with_d(rng, count),
        ]
        return reports

    def _scalar_ring(self, rng, count: int) -> dict:
        report = new_report("scalar_ring")
        for _ in range(count):
            a, b, c = (random_exact_scalar(rng) for _ in range(3))
            residual = (a * b) * c - a * (b * c)
            record_case(report, residual.is_zero(), [str(a), str(b), str(c), "assoc"], str(residual))
            residual = (a * b).conj() - b.conj() * a.conj()
            record_case(report, residual.is_zero(), [str(a), str(b), "conj"], str(residual))
        return report

    def _numeric_agreement(self, rng, count: int) -> dict:
        report = new_report("numeric_exact_agreement")
        tol = self.tolerances["numeric_exact_agreement"]
        for _ in range(count):
            a, b, c = (random_exact_scalar(rng) for _ in range(3))
            exact = ((a * b + c) * a.conj() - b * c).evaluate(1)
            x, y, z = (NumericScalar(s.evaluate(1)) for s in (a, b, c))
            numeric = (x * y + z) * x.conj() - y * z
            scale = max(1.0, abs(exact))
            record_case(report, abs(numeric - exact) <= tol * scale, [str(a), str(b), str(c)],
                        numeric_residual((numeric - exact) / scale))
        return report

    def _nilpotency(self, rng, count: int, degree: int) -> dict:
        report = new_report("d_squared")
        for _ in range(count):
            f = random_poly(rng, max_degree=degree)
            image = differential(differential(Form.function(f)))
            record_case(report, image.is_zero(), [_label(f)], _label(image))
        return report

    def _coordinate_jacobi(self, rng, count: int, degree: int) -> dict:
        """[x^μ,[x^ν,ω]] - [x^ν,[x^μ,ω]] = [[x^μ,x^ν],ω] with ω = e^a f."""
        report = new_report("coordinate_jacobi")
        for _ in range(count):
            mu, nu = (int(v) for v in rng.choice(4, size=2, replace=False))
            a = int(rng.integers(0, DIMENSION))
            omega = left_multiply(random_poly(rng, max_degree=max(1, degree - 2)), Form.basis(a))
            lhs = coord_commutator(mu, coord_commutator(nu, omega)) - coord_commutator(nu, coord_commutator(mu, omega))
            x_mu, x_nu = PolyElement.coordinate(mu), PolyElement.coordinate(nu)
            bracket = x_mu * x_nu - x_nu * x_mu
            rhs = left_multiply(bracket, omega) - right_multiply(omega, bracket)
            residual = lhs - rhs
            record_case(report, residual.is_zero(), [mu, nu, _label(omega)], _label(residual))
        return report

    def _volume_central(self) -> dict:
        report = new_report("volume_central")
        for mu in range(4):
            residual = coord_commutator(mu, Form.volume())
            record_case(report, residual.is_zero(), [mu], _label(residual))
        return report

    def _basis_involution(self) -> dict:
        report = new_report("basis_involution")
        for n, words in WORDS_BY_DEGREE.items():
            sign = -1 if (n * (n - 1) // 2) % 2 else 1
            for word in words:
                basis = Form.word(word, PolyElement.constant(ONE))
                residual = dagger(basis) - basis * sign
                record_case(report, residual.is_zero(), list(word), _label(residual))
        return report

    def _leibniz(self, rng, count: int) -> dict:
        """d(ω∧ρ) = dω∧ρ + (-1)^n ω∧dρ."""
        report = new_report("graded_leibniz")
        for _ in range(max(1, count // 4)):
            n = int(rng.integers(0, DIMENSION))
            m = int(rng.integers(0, DIMENSION - n))
            omega = random_form(rng, n, max_words=1)
            rho = random_form(rng, m, max_words=1)
            lhs = differential(wedge(omega, rho))
            rhs = wedge(differential(omega), rho) + wedge(omega, differential(rho)) * (-1) ** n
            residual = lhs - rhs
            record_case(report, residual.is_zero(), [n, m, _label(omega), _label(rho)], _label(residual))
        return report

    def _d_dagger(self, rng, count: int) -> dict:
        """d(ω†) = (-1)^n (dω)† for an n-form ω."""
        report = new_report("d_dagger")
        for _ in range(max(1, count // 4)):
            n = int(rng.integers(0, DIMENSION))
            omega = random_form(rng, n, max_words=1)
            residual = differential(dagger(omega)) - dagger(differential(omega)) * (-1) ** n
            record_case(report, residual.is_zero(), [n, _label(omega)], _label(residual))
        return report

    def _cartan(self, rng) -> dict:
        """(d i_a + i_a d) ω = £_(iχ_a) ω for forms of every degree."""
        report = new_report("cartan_identity")
        per_degree = max(1, self.samples["cartan_forms"] // 10)
        for degree in range(DIMENSION + 1):
            for _ in range(per_degree):
                a = int(rng.integers(0, DIMENSION))
                omega = random_form(rng, degree, max_words=1, max_poly_degree=2)
                left, right = cartan_sides(a, omega)
                residual = left - right
                record_case(report, residual.is_zero(), [degree, a, _label(omega)], _label(residual))
        return report

    def _lie_commutes_with_d(self, rng, count: int) -> dict:
        report = new_report("lie_d_commutation")
        for _ in range(max(1, count // 10)):
            name = SYMMETRY_GENERATORS[int(rng.integers(0, len(SYMMETRY_GENERATORS)))]
            h = OperatorElement.generator(name)
            omega = random_form(rng, int(rng.integers(0, DIMENSION)), max_words=1)
            residual = lie(h, differential(omega)) - differential(lie(h, omega))
            record_case(report, residual.is_zero(), [name, _label(omega)], _label(residual))
        return report

    # =========================================================================
    # HODGE
    # =========================================================================
    def _suite_hodge(self, rng) -> list[dict]:
        return [
            self._hodge_involutive(),
            self._hodge_linearity(rng),
            self._metric(),
            self._hermiticity(rng),
            self._hodge_covariance(rng),
        ]

    def _hodge_involutive(self) -> dict:
        report = new_report("hodge_involutive")
        for n, words in WORDS_BY_DEGREE.items():
            sign = (-1) ** (n * (DIMENSION - n))
            for word in words:
                basis = Form.word(word, PolyElement.constant(ONE))
                residual = hodge(hodge(basis)) - basis * sign
                record_case(report, residual.is_zero(), list(word), _label(residual))
        return report

    def _hodge_linearity(self, rng) -> dict:
        """*(f ω) = f *ω and *(ω f) = (*ω) f on basis words."""
        report = new_report("hodge_linearity")
        for words in WORDS_BY_DEGREE.values():
            for word in words:
                basis = Form.word(word, PolyElement.constant(ONE))
                f = random_poly(rng, max_degree=2, max_terms=2)
                residual = hodge(left_multiply(f, basis)) - left_multiply(f, hodge(basis))
                record_case(report, residual.is_zero(), [list(word), _label(f), "left"], _label(residual))
                residual = hodge(right_multiply(basis, f)) - right_multiply(hodge(basis), f)
                record_case(report, residual.is_zero(), [list(word), _label(f), "right"], _label(residual))
        return report

    def _metric(self) -> dict:
        report = new_report("metric")
        for a, b in itertools.product(range(DIMENSION), repeat=2):
            value = metric(Form.basis(a), Form.basis(b))
            expected = PolyElement.constant(config.METRIC[a] if a == b else 0)
            residual = value - expected
            record_case(report, residual.is_zero(), [a, b], _label(residual))
        return report

    def _hermiticity(self, rng) -> dict:
        """(ω, ρ) = conj((ρ, ω)) on the plane-wave backend."""
        report = new_report("inner_product_hermitian")
        tol = self.tolerances["hermiticity"]
        zero = WaveElement(kappa=config.WAVE_KAPPA)
        for degree in range(DIMENSION + 1):
            for _ in range(2):
                omega = random_form(rng, degree, zero, max_words=2, modes=2)
                rho = random_form(rng, degree, zero, max_words=2, modes=2)
                # shared modes so the pairing is not trivially zero
                rho = rho + omega * complex(rng.normal(), rng.normal())
                forward = complex(inner_product(omega, rho))
                backward = complex(inner_product(rho, omega)).conjugate()
                scale = max(1.0, abs(forward))
                record_case(report, abs(forward - backward) <= tol * scale, [degree, _label(omega)],
                            numeric_residual((forward - backward) / scale))
        return report

    def _hodge_covariance(self, rng) -> dict:
        """*(h ▷ ω) = h ▷ *(ω) for translations and Lorentz generators."""
        report = new_report("hodge_covariance")
        for name in SYMMETRY_GENERATORS:
            h = OperatorElement.generator(name)
            degree = int(rng.integers(0, DIMENSION + 1))
            omega = random_form(rng, degree, max_words=2, max_poly_degree=2)
            residual = hodge(act_form(h, omega)) - act_form(h, hodge(omega))
            record_case(report, residual.is_zero(), [name, _label(omega)], _label(residual))
        return report

    # =========================================================================
    # INTEGRAL
    # =========================================================================
    def _suite_integral(self, rng) -> list[dict]:
        reports = [
            self._closed_integral(rng),
            self._left_invariance(rng),
            self._positivity(rng),
        ]
        reports.extend(verify_epsilon_lambda_lemma(n) for n in range(1, 5))
        return reports

    def _wave_zero(self) -> WaveElement:
        return WaveElement(kappa=config.WAVE_KAPPA)

    def _closed_integral(self, rng) -> dict:
        report = new_report("closed_integral")
        zero = self._wave_zero()
        for _ in range(self.samples["wave_forms"]):
            omega = random_form(rng, DIMENSION - 1, zero, max_words=3, modes=3)
            value = integrate(differential(omega))
            record_case(report, is_closed_integral(omega), [_label(omega)], numeric_residual(value))
        return report

    def _left_invariance(self, rng) -> dict:
        """∫ h ▷ ω = ε(h) ∫ ω for momentum generators."""
        report = new_report("left_invariance")
        zero = self._wave_zero()
        for _ in range(max(1, self.samples["wave_forms"] // 4)):
            omega = random_form(rng, DIMENSION, zero, modes=3)
            omega = omega + Form({VOLUME_WORD: zero.one_like() * complex(rng.normal(), rng.normal())}, zero)
            for name in MOMENTUM_GENERATORS:
                h = OperatorElement.generator(name)
                lhs = complex(integrate(act_form(h, omega)))
                rhs = counit(h).evaluate(zero.kappa) * complex(integrate(omega))
                scale = max(1.0, abs(rhs))
                record_case(report, abs(lhs - rhs) <= self.tolerances["hermiticity"] * scale,
                            [name, _label(omega)], numeric_residual(lhs - rhs))
        return report

    def _positivity(self, rng) -> dict:
        """(ω, ω̃) ≥ 0 and equals the sum of the component norms."""
        report = new_report("tilde_positivity")
        tol = self.tolerances["hermiticity"]
        zero = self._wave_zero()
        for degree in range(DIMENSION + 1):
            for _ in range(max(1, self.samples["wave_forms"] // 8)):
                omega = random_form(rng, degree, zero, max_words=3, modes=2)
                check = tilde_positivity(omega, tol)
                witness = nondegeneracy_witness(omega)
                norms = sum(witness['component_norms'].values())
                pairing = witness['pairing']
                scale = max(1.0, abs(pairing))
                record_case(report, check['valid'] and abs(pairing - norms) <= tol * scale,
                            [degree, _label(omega)], numeric_residual((pairing - norms) / scale))
        zero_form = Form(zero=zero)
        record_case(report, tilde_positivity(zero_form, tol)['valid'], ["zero form"], 0.0)
        return report

    # =========================================================================
    # STAR PRODUCT
    # =========================================================================
    def _suite_starprod(self, rng) -> list[dict]:
        grid = self.grid
        tol = self.tolerances["twisted_cyclicity"]
        f_params, g_params = starprod.random_packet_params(rng), starprod.random_packet_params(rng)
        inputs = {'points': grid.points, 'half_width': grid.half_width}
        try:
            f = starprod.gaussian_packet(grid, **f_params)
            g = starprod.gaussian_packet(grid, **g_params)
            starprod.check_decay(f)
            starprod.check_decay(g)
        except ValueError as e:
            report = new_report("star_domain")
            record_case(report, False, inputs, str(e))
            return [report]
        zero = starprod.GridFunction(np.zeros_like(f.samples), grid)
        checks = [
            ("twisted_cyclicity_p1", lambda: starprod.twisted_cyclicity_check(f, g, 1, tol)),
            ("twist_exponent", lambda: self._twist_scan(f, g)),
            ("star_convergence", lambda: self._convergence(f_params, g_params)),
            ("star_positivity", lambda: starprod.verify_positivity(f)),
            ("star_positivity", lambda: starprod.verify_positivity(zero)),
            ("trace_involution", lambda: starprod.verify_involution_trace(g)),
            ("star_commutative_limit", lambda: self._star_commutative_limit(f_params)),
        ]
        reports = [self._guarded(identity, check, inputs) for identity, check in checks]
        reports.append(self._decay_guard())
        return reports

    @staticmethod
    def _guarded(identity: str, check, inputs) -> dict:
        """Run one check; a ValueError becomes a failed case of that identity only."""
        try:
            return check()
        except ValueError as e:
            logger.warning(f"{identity} aborted: {e}")
            report = new_report(identity)
            record_case(report, False, inputs, str(e))
            return report

    def _twist_scan(self, f, g) -> dict:
        report = new_report("twist_exponent")
        scan = starprod.scan_twist_exponent(f, g)
        residuals = {str(p): (numeric_residual(r) if math.isfinite(r) else None) for p, r in scan['residuals'].items()}
        record_case(report, scan['selected'] == 1, residuals, scan['selected'])
        return report

    def _convergence(self, f_params: dict, g_params: dict) -> dict:
        """Halving the spacing shrinks the cyclicity residual at least fourfold."""
        report = new_report("star_convergence")
        fine = starprod.GridSpec(max(8, self.grid.points // 2), self.grid.half_width, self.grid.kappa)
        coarse = starprod.GridSpec(max(8, fine.points // 2), fine.half_width, fine.kappa)
        residuals = []
        for grid in (coarse, fine):
            f = starprod.gaussian_packet(grid, **f_params)
            g = starprod.gaussian_packet(grid, **g_params)
            residuals.append(starprod.cyclicity_residual(f, g, 1))
        coarse_residual, fine_residual = residuals
        passed = fine_residual < 1e-10 or coarse_residual >= 4.0 * fine_residual
        record_case(report, passed, {'points': [coarse.points, fine.points]},
                    [numeric_residual(coarse_residual), numeric_residual(fine_residual)])
        return report

    def _star_commutative_limit(self, params: dict) -> dict:
        report = new_report("star_commutative_limit")
        grid = starprod.GridSpec(max(8, self.grid.points // 2), self.grid.half_width, 1e6)
        deviation = starprod.commutative_limit_deviation(starprod.gaussian_packet(grid, **params))
        record_case(report, deviation <= self.tolerances["star_commutative_limit"], {'kappa': grid.kappa},
                    numeric_residual(deviation))
        return report

    def _decay_guard(self) -> dict:
        report = new_report("domain_guard")
        grid = starprod.GridSpec(64, 4.0, self.grid.kappa)
        wide = starprod.gaussian_packet(grid, width=3.0)
        try:
            starprod.star(wide, wide)
            raised = False
        except ValueError as e:
            raised = str(e) == "domain too small"
        record_case(report, raised, {'points': grid.points, 'half_width': grid.half_width}, None)
        return report

    # =========================================================================
    # FIELD THEORY
    # =========================================================================
    def _suite_fieldtheory(self, rng) -> list[dict]:
        return [
            self._dispersion(rng),
            self._dispersion_commutative_limit(rng),
            self._casimir_eigenvalue(rng),
            self._on_shell(rng),
            self._plane_wave_tensor(rng),
        ]

    def _dispersion(self, rng) -> dict:
        report = new_report("dispersion_residual")
        tol = self.tolerances["dispersion_residual"]
        for _ in range(self.samples["onshell_configs"]):
            kappa = float(rng.choice([1.0, 2.0, 10.0]))
            kvec = rng.normal(0.0, 0.3, size=3)
            mass = float(rng.uniform(0.0, 1.0))
            k = fieldtheory.on_shell_mode(kvec, mass, kappa)
            residual = fieldtheory.dispersion_residual(k, mass, kappa)
            scale = max(1.0, k[0] ** 2)
            record_case(report, residual <= tol * scale, {'k': list(k), 'm': mass, 'kappa': kappa},
                        numeric_residual(residual / scale))
        return report

    def _dispersion_commutative_limit(self, rng) -> dict:
        """κ = 10^6 reproduces k0 = sqrt(|k|² + m²) for small momenta."""
        report = new_report("dispersion_commutative_limit")
        tol = self.tolerances["commutative_limit"]
        for _ in range(10):
            direction = rng.normal(size=3)
            kvec = 1e-3 * direction / np.linalg.norm(direction)
            mass = 1e-3
            k0 = fieldtheory.dispersion_solve(kvec, mass, 1e6)
            expected = math.sqrt(float(kvec @ kvec) + mass ** 2)
            deviation = abs(k0 - expected) / expected
            record_case(report, deviation <= tol, {'k': kvec.tolist(), 'm': mass}, numeric_residual(deviation))
        return report

    def _casimir_eigenvalue(self, rng) -> dict:
        report = new_report("wave_operator_casimir")
        for _ in range(10):
            phi = random_wave(rng, 3, config.WAVE_KAPPA, scale=0.5)
            check = fieldtheory.wave_operator_check(fieldtheory.FieldConfig(phi), self.tolerances["eigenvalue"])
            report['cases'] += check['cases']
            report['failures'].extend(check['failures'])
            report['valid'] = report['valid'] and check['valid']
        return report

    def _on_shell(self, rng) -> dict:
        """EOM, current conservation and action agreement on random on-shell fields."""
        report = new_report("on_shell_field")
        tol = self.tolerances["conservation"]
        for _ in range(self.samples["onshell_configs"]):
            modes = int(rng.integers(1, self.samples["max_config_modes"] + 1))
            mass = float(rng.uniform(0.0, 1.0))
            cfg = fieldtheory.random_on_shell_config(rng, modes, mass, config.WAVE_KAPPA)
            scale = cfg.scale()
            label = {'phi': _label(cfg.phi), 'm': mass}
            eom = fieldtheory.eom_residual(cfg).max_abs()
            record_case(report, eom <= tol * scale, dict(label, check="eom"), numeric_residual(eom / scale))
            for check in (fieldtheory.conservation_check(cfg, tol), fieldtheory.u1_charge_check(cfg, tol)):
                record_case(report, check['valid'], dict(label, check=check['identity']),
                            [f['residual'] for f in check['failures']] or None)
            first, second = fieldtheory.action_forms(cfg)
            gap = abs(complex(first) - complex(second))
            record_case(report, gap <= self.tolerances["action_agreement"] * scale, dict(label, check="action"),
                        numeric_residual(gap / scale))
            record_case(report, abs(complex(first)) <= tol * scale, dict(label, check="on_shell_action"),
                        numeric_residual(complex(first) / scale))
        return report

    def _plane_wave_tensor(self, rng) -> dict:
        """T_ab = -½[ξ_aξ_b + ξ_bξ_a] φ†φ on single on-shell modes."""
        report = new_report("plane_wave_em_tensor")
        tol = self.tolerances["conservation"]
        for _ in range(5):
            cfg = fieldtheory.random_on_shell_config(rng, 1, float(rng.uniform(0.0, 1.0)), config.WAVE_KAPPA)
            (k, coeff), = cfg.phi.modes()
            tensor = fieldtheory.em_tensor(cfg)
            expected = fieldtheory.plane_wave_em_tensor(k, coeff, cfg.kappa)
            scale = cfg.scale()
            gap = float(np.max(np.abs(tensor.at_mode() - expected)))
            record_case(report, gap <= tol * scale, {'k': list(k), 'check': 'display'}, numeric_residual(gap / scale))
            asymmetry = tensor.asymmetry()
            record_case(report, asymmetry <= self.tolerances["eigenvalue"] * scale, {'k': list(k), 'check': 'symmetry'},
                        numeric_residual(asymmetry / scale))
        return report


def run_suite(name: str, seed: int | None = None, tol: float | None = None,
              grid_points: int | None = None, half_width: float | None = None,
              timing: bool = config.REPORT_TIMING) -> dict:
    """
    Run a suite and wrap it in the versioned report.

    Args:
        name: suite name or "all"
        seed: master seed (falls back on KFORMS_SEED, then fresh entropy)
        tol: numeric tolerance override
        grid_points: star-product grid N
        half_width: star-product domain L
        timing: add elapsed seconds (off by default so reports stay byte-identical)

    Returns:
        JSON-ready report dict

    Raises:
        ValueError: for an unknown suite name
    """
    runner = SuiteRunner(seed, tol, grid_points, half_width)
    start_time = time.time()
    summary = runner.run(name)
    report = {
        'schema': config.REPORT_SCHEMA,
        'suite': name,
        'valid': summary['valid'],
        'cases': summary['cases'],
        'failures': summary['failures'],
        'config': {
            'kappa': 'symbolic',
            'wave_kappa': config.WAVE_KAPPA,
            'backend': config.DEFAULT_BACKEND,
            'seed': runner.seed,
            'tolerance': runner.tol,
            'grid': {'points': runner.grid.points, 'half_width': runner.grid.half_width,
                     'kappa': runner.grid.kappa},
        },
    }
    if name == "all":
        report['suites'] = [
            {key: s[key] for key in ('suite', 'valid', 'cases', 'identities')} for s in summary['suites']
        ]
    else:
        report['identities'] = summary['identities']
    if timing:
        report['elapsed_seconds'] = round(time.time() - start_time, 1)
    return report
