"""
kforms - Star Product (1+1 dimensions)

Continuum realization of two-dimensional κ-Minkowski on a square grid over
(α, β) = (time, space). Functions are sampled wave packets, the product is
the κ-deformed star product and the integral is the plain Lebesgue trace.

Features:
    - star(f, g): (1/2π) ∫dv e^{iαv} F(v, β) g(α, e^{-v/κ}β), F the α-transform of f
    - dagger(f): involution built from the α-transform of f̄ with the same dilation
    - star_square(f) = f† ⋆ f, whose trace is non-negative
    - twist(f, p): spectral action of e^{p·P0/κ}
    - twisted_cyclicity_check and scan_twist_exponent on pairs of packets
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.fft import fft, fftfreq, ifft
from scipy.interpolate import CubicSpline

import config
from reports import new_report, numeric_residual, record_case

logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridSpec:
    """
    Square N×N grid over [-L, L)² with deformation parameter κ.

    Samples sit at -L + j·(2L/N), j = 0..N-1, on both axes.
    """

    points: int = config.STARPROD_GRID["points"]
    half_width: float = config.STARPROD_GRID["half_width"]
    kappa: float = config.STARPROD_GRID["kappa"]

    def __post_init__(self):
        if self.points < 8 or self.points & (self.points - 1):
            raise ValueError(f"grid size must be a power of two, got {self.points}")
        if self.half_width <= 0 or self.kappa <= 0:
            raise ValueError("grid half-width and κ must be positive")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.points

    @property
    def axis(self) -> np.ndarray:
        return -self.half_width + self.spacing * np.arange(self.points)

    @property
    def frequencies(self) -> np.ndarray:
        """Angular frequencies v_m conjugate to α."""
        return 2.0 * np.pi * fftfreq(self.points, d=self.spacing)

    @property
    def cell_area(self) -> float:
        return self.spacing ** 2

    def refined(self) -> "GridSpec":
        """Same domain and κ with half the spacing."""
        return GridSpec(self.points * 2, self.half_width, self.kappa)


@dataclass(frozen=True)
class GridFunction:
    """Complex samples f[α index, β index] on a GridSpec."""

    samples: np.ndarray
    grid: GridSpec = field(default_factory=GridSpec)

    def __post_init__(self):
        shape = (self.grid.points, self.grid.points)
        if self.samples.shape != shape:
            raise ValueError(f"samples have shape {self.samples.shape}, grid needs {shape}")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("grid samples must be finite")

    def _check_grid(self, other: "GridFunction"):
        if other.grid != self.grid:
            raise ValueError("grid functions live on different grids")

    def __add__(self, other: "GridFunction") -> "GridFunction":
        self._check_grid(other)
        return GridFunction(self.samples + other.samples, self.grid)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        self._check_grid(other)
        return GridFunction(self.samples - other.samples, self.grid)

    def __mul__(self, scalar) -> "GridFunction":
        return GridFunction(self.samples * complex(scalar), self.grid)

    __rmul__ = __mul__

    def conj(self) -> "GridFunction":
        return GridFunction(np.conj(self.samples), self.grid)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.samples))) if self.samples.size else 0.0

    def is_zero(self) -> bool:
        return not np.any(self.samples)


def gaussian_packet(grid: GridSpec | None = None, center=(0.0, 0.0), width: float | None = None,
                    momentum=(0.0, 0.0), amplitude: complex = 1.0) -> GridFunction:
    """
    Normalized Gaussian wave packet; with amplitude 1 its trace is 1.

    Args:
        grid: target grid (defaults from config)
        center: (α0, β0)
        width: standard deviation on both axes
        momentum: (p_α, p_β) phase e^{i(p_α α + p_β β)}
        amplitude: overall complex factor
    """
    grid = grid or GridSpec()
    width = width or config.STARPROD_GRID["packet_width"]
    alpha, beta = np.meshgrid(grid.axis, grid.axis, indexing="ij")
    envelope = np.exp(-((alpha - center[0]) ** 2 + (beta - center[1]) ** 2) / (2.0 * width ** 2))
    phase = np.exp(1j * (momentum[0] * alpha + momentum[1] * beta))
    samples = amplitude * envelope * phase / (2.0 * np.pi * width ** 2)
    return GridFunction(samples.astype(complex), grid)


def random_packet_params(rng) -> dict:
    """Keyword arguments of a random packet near the origin, narrow enough for the decay check."""
    return {
        'center': tuple(float(c) for c in rng.uniform(-1.5, 1.5, size=2)),
        'width': config.STARPROD_GRID["packet_width"] * float(rng.uniform(0.8, 1.1)),
        'momentum': tuple(float(p) for p in rng.uniform(-1.0, 1.0, size=2)),
        'amplitude': complex(rng.normal(), rng.normal()),
    }


def random_packet(rng, grid: GridSpec | None = None) -> GridFunction:
    return gaussian_packet(grid, **random_packet_params(rng))


def check_decay(f: GridFunction, threshold: float | None = None):
    """
    Raises:
        ValueError: "domain too small" when boundary samples exceed the threshold
    """
    threshold = config.STARPROD_GRID["decay_threshold"] if threshold is None else threshold
    samples = np.abs(f.samples)
    peak = samples.max() if samples.size else 0.0
    edge = max(samples[0].max(), samples[-1].max(), samples[:, 0].max(), samples[:, -1].max())
    if edge > threshold * peak:
        logger.debug(f"boundary ratio {edge / peak:.3e} above {threshold:.1e}")
        raise ValueError("domain too small")


def _transform(f: np.ndarray, grid: GridSpec) -> np.ndarray:
    """F(v_m, β) = ∫dα e^{-iαv_m} f(α, β)."""
    shift = np.exp(1j * grid.half_width * grid.frequencies)
    return grid.spacing * shift[:, None] * fft(f, axis=0)


def _inverse(spectrum: np.ndarray, grid: GridSpec) -> np.ndarray:
    """f(α, β) = (1/2π) ∫dv e^{iαv} F(v, β)."""
    shift = np.exp(-1j * grid.half_width * grid.frequencies)
    return ifft(shift[:, None] * spectrum, axis=0) / grid.spacing


def _significant_bins(spectrum: np.ndarray) -> np.ndarray:
    """Frequency rows that carry weight above the spectral cutoff."""
    rows = np.max(np.abs(spectrum), axis=1)
    peak = rows.max() if rows.size else 0.0
    if peak == 0:
        return np.array([], dtype=int)
    return np.nonzero(rows > config.STARPROD_GRID["spectral_cutoff"] * peak)[0]


def _dilate(spline: CubicSpline, grid: GridSpec, factor: float) -> np.ndarray:
    """Resample along β at factor·β; points leaving the domain read as 0."""
    values = spline(factor * grid.axis)
    return np.nan_to_num(values, nan=0.0)


def _beta_spline(samples: np.ndarray, grid: GridSpec) -> CubicSpline:
    return CubicSpline(grid.axis, samples, axis=-1, extrapolate=False)


def star(f: GridFunction, g: GridFunction, check_left: bool = True) -> GridFunction:
    """
    (f ⋆ g)(α, β) = (1/2π) ∫dv e^{iαv} F(v, β) g(α, e^{-v/κ}β).

    check_left=False skips the boundary test on f, for a left factor that is
    the image of an already checked packet.

    Raises:
        ValueError: "domain too small" for inputs that do not decay
    """
    f._check_grid(g)
    grid = f.grid
    if f.is_zero() or g.is_zero():
        return GridFunction(np.zeros_like(f.samples), grid)
    if check_left:
        check_decay(f)
    check_decay(g)
    spectrum = _transform(f.samples, grid)
    spline = _beta_spline(g.samples, grid)
    frequencies = grid.frequencies
    result = np.zeros_like(f.samples)
    bins = _significant_bins(spectrum)
    logger.debug(f"star product over {len(bins)} of {grid.points} frequency bins")
    for m in bins:
        v = frequencies[m]
        phase = np.exp(1j * grid.axis * v)
        dilated = _dilate(spline, grid, np.exp(-v / grid.kappa))
        result += phase[:, None] * spectrum[m][None, :] * dilated
    result /= grid.points * grid.spacing
    return GridFunction(result, grid)


def dagger(f: GridFunction) -> GridFunction:
    """
    f†: inverse α-transform of z ↦ FT(f̄)(z, e^{-z/κ}β).

    Raises:
        ValueError: "domain too small" for inputs that do not decay
    """
    grid = f.grid
    if f.is_zero():
        return f
    check_decay(f)
    spectrum = _transform(np.conj(f.samples), grid)
    dilated = np.zeros_like(spectrum)
    for m in _significant_bins(spectrum):
        factor = np.exp(-grid.frequencies[m] / grid.kappa)
        dilated[m] = _dilate(_beta_spline(spectrum[m], grid), grid, factor)
    return GridFunction(_inverse(dilated, grid), grid)


def star_square(f: GridFunction) -> GridFunction:
    """
    f† ⋆ f.

    Only f is tested for decay. The β-dilation in f† stretches its tail past
    the boundary threshold even when f itself is well inside the domain.
    """
    return star(dagger(f), f, check_left=False)


def trace(f: GridFunction) -> complex:
    """∫ f dα dβ by the rectangle rule."""
    return complex(np.sum(f.samples) * f.grid.cell_area)


def twist(f: GridFunction, power: int = 1) -> GridFunction:
    """
    e^{power·P0/κ} ▷ f, applied as the multiplier e^{power·v/κ} on the α-spectrum.

    Bins below the spectral cutoff are dropped first so the growing
    multiplier cannot amplify rounding noise.
    """
    grid = f.grid
    if f.is_zero() or power == 0:
        return f
    spectrum = _transform(f.samples, grid)
    weights = np.zeros(grid.points)
    bins = _significant_bins(spectrum)
    weights[bins] = np.exp(power * grid.frequencies[bins] / grid.kappa)
    return GridFunction(_inverse(weights[:, None] * spectrum, grid), grid)


def cyclicity_residual(f: GridFunction, g: GridFunction, power: int = 1, lhs: complex | None = None) -> float:
    """|∫f⋆g - ∫g⋆(T^power ▷ f)| relative to |∫f⋆g|; lhs may be passed in when already known."""
    lhs = trace(star(f, g)) if lhs is None else lhs
    rhs = trace(star(g, twist(f, power)))
    scale = max(abs(lhs), abs(rhs), np.finfo(float).tiny)
    return abs(lhs - rhs) / scale


def twisted_cyclicity_check(f: GridFunction, g: GridFunction, power: int = 1,
                            tol: float = config.TOLERANCES["twisted_cyclicity"]) -> dict:
    """
    Compare trace(f ⋆ g) with trace(g ⋆ (T ▷ f)).

    Returns:
        Report dict with 'lhs', 'rhs' and 'relative_deviation' attached
    """
    report = new_report(f"twisted_cyclicity_p{power}")
    lhs = trace(star(f, g))
    rhs = trace(star(g, twist(f, power)))
    scale = max(abs(lhs), abs(rhs), np.finfo(float).tiny)
    deviation = abs(lhs - rhs) / scale
    inputs = {'points': f.grid.points, 'half_width': f.grid.half_width, 'kappa': f.grid.kappa}
    record_case(report, deviation <= tol, inputs, numeric_residual(deviation))
    report['lhs'] = [lhs.real, lhs.imag]
    report['rhs'] = [rhs.real, rhs.imag]
    report['relative_deviation'] = deviation
    return report


def scan_twist_exponent(f: GridFunction, g: GridFunction, powers=None) -> dict:
    """
    Residual of the twisted trace property for each candidate exponent.

    Returns:
        Dict with 'residuals' (power -> relative deviation) and 'selected'
    """
    powers = config.STARPROD_GRID["twist_exponents"] if powers is None else powers
    lhs = trace(star(f, g))
    residuals = {}
    for p in powers:
        try:
            residuals[int(p)] = cyclicity_residual(f, g, p, lhs)
        except ValueError as e:
            # a large twist can push the packet out of the decaying class
            logger.debug(f"twist exponent {p} skipped: {e}")
            residuals[int(p)] = float("inf")
    selected = min(residuals, key=residuals.get)
    logger.info(f"twist exponent scan {residuals} selects {selected}")
    return {'residuals': residuals, 'selected': selected}


def commutative_limit_deviation(f: GridFunction) -> float:
    """Largest |f†⋆f - |f|²| relative to max |f|²."""
    pointwise = np.abs(f.samples) ** 2
    peak = pointwise.max()
    if peak == 0:
        return 0.0
    return float(np.max(np.abs(star_square(f).samples - pointwise)) / peak)


def verify_positivity(f: GridFunction, tol: float = config.TOLERANCES["hermiticity"]) -> dict:
    """trace(f† ⋆ f) is real and non-negative, strictly positive for f ≠ 0."""
    report = new_report("star_positivity")
    value = trace(star_square(f))
    scale = max(1.0, abs(value))
    inputs = {'peak': f.max_abs()}
    record_case(report, abs(value.imag) <= 1e-8 * scale, inputs, numeric_residual(value.imag))
    if f.is_zero():
        record_case(report, value == 0, inputs, numeric_residual(value))
    else:
        record_case(report, value.real > tol, inputs, numeric_residual(min(value.real, 0.0)))
    report['value'] = [value.real, value.imag]
    return report


def verify_involution_trace(f: GridFunction, tol: float = 1e-8) -> dict:
    """conj(trace f) = trace(f†)."""
    report = new_report("trace_involution")
    residual = trace(dagger(f)) - trace(f).conjugate()
    record_case(report, abs(residual) <= tol * max(1.0, abs(trace(f))), {'peak': f.max_abs()},
                numeric_residual(residual))
    return report
