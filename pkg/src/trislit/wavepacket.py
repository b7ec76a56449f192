"""Exact free evolution of Gaussian slit packets and the screen intensity.

Each slit of width eps emits a Gaussian packet which evolves freely for a
time t. The packet that started centered at x = c is

    psi(x, t) = A * exp(-(x - c)^2 / (4 eps^2 + 2 i hbar t / m)),
    A = [sqrt(2 pi) (eps + i hbar t / (2 m eps))]^(-1/2),

so |psi|^2 is a Gaussian of width sigma with

    sigma^2 = eps^2 + (hbar t / (2 m eps))^2,
    Omega^2 = eps^4 + (hbar t / (2 m))^2.

For three slits at x = +l1, 0, -l2 entangled with detector states d_1..d_3
(priors p_i), the screen intensity carries three cosine cross terms whose
envelopes are the geometric means of the slit envelopes and whose phases are

    pair (1,2): x l1 k - beta1 + theta1         k = hbar t / (4 m Omega^2)
    pair (2,3): x l2 k + beta2 + theta2
    pair (1,3): x (l1+l2) k + beta3 + theta3

with beta1 = k l1^2 / 2, beta2 = k l2^2 / 2, beta3 = k (l2^2 - l1^2) / 2 and
theta_k the phases of the detector overlaps. `intensity_closed_form`
evaluates that expression verbatim; `intensity_oracle` computes the same
quantity independently as the detector-Gram-weighted sum over packet products,
so the two implementations cross-check each other to rounding accuracy.

A fringe of the equal-spacing pattern has period 8 pi m Omega^2 / (hbar t d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import DetectorConfig

# Priors below this threshold do not contribute a beam to the fringe structure.
ACTIVE_PRIOR_TOL = 1e-12

DEFAULT_SAMPLES_PER_PERIOD = 64
DEFAULT_WINDOW_PERIODS = (0.25, 3.25)


@dataclass(frozen=True, eq=False)
class SlitGeometry:
    """Slit positions on the x axis plus the evolution constants.

    Positions must be strictly monotonic (distinct slits); all slits share the
    width eps. Natural units (hbar = m = eps = 1) are the intended default,
    with the spacing and time setting the physical regime.
    """

    positions: tuple
    width: float = 1.0
    mass: float = 1.0
    hbar: float = 1.0
    time: float = 0.0

    def __post_init__(self):
        pos = tuple(float(p) for p in self.positions)
        if len(pos) < 1:
            raise ValueError("at least one slit position is required")
        diffs = np.diff(pos)
        if len(pos) > 1 and not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise ValueError("slit positions must be strictly monotonic")
        for name in ("width", "mass", "hbar"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.time < 0:
            raise ValueError("time must be nonnegative")
        object.__setattr__(self, "positions", pos)

    @property
    def n(self) -> int:
        return len(self.positions)

    @property
    def sigma(self) -> float:
        """Evolved packet width: sigma^2 = eps^2 + (hbar t / 2 m eps)^2."""
        eps = self.width
        spread = self.hbar * self.time / (2.0 * self.mass * eps)
        return math.hypot(eps, spread)

    @property
    def omega_sq(self) -> float:
        """Omega^2 = eps^4 + (hbar t / 2 m)^2; sets the fringe frequency."""
        return self.width**4 + (self.hbar * self.time / (2.0 * self.mass)) ** 2

    @property
    def phase_rate(self) -> float:
        """k = hbar t / (4 m Omega^2), the cross-term phase per unit (x * gap)."""
        return self.hbar * self.time / (4.0 * self.mass * self.omega_sq)

    @property
    def min_gap(self) -> float:
        if self.n < 2:
            return math.inf
        return float(np.abs(np.diff(self.positions)).min())

    @property
    def max_gap(self) -> float:
        if self.n < 2:
            return 0.0
        return float(np.abs(np.diff(self.positions)).max())

    @property
    def fringe_period(self) -> float:
        """8 pi m Omega^2 / (hbar t d_min); infinite at t = 0."""
        return self.period_for_gap(self.min_gap)

    def period_for_gap(self, gap: float) -> float:
        if self.time == 0.0 or not math.isfinite(gap) or gap <= 0.0:
            return math.inf
        return 8.0 * math.pi * self.mass * self.omega_sq / (self.hbar * self.time * gap)

    def with_time(self, time: float) -> "SlitGeometry":
        return SlitGeometry(self.positions, self.width, self.mass, self.hbar, time)


def time_for_sigma(sigma_target: float, width: float = 1.0, mass: float = 1.0,
                   hbar: float = 1.0) -> float:
    """Evolution time at which the packet width reaches sigma_target."""
    if sigma_target < width:
        raise ValueError(
            f"target width {sigma_target} is below the initial width {width}"
        )
    return (2.0 * mass * width / hbar) * math.sqrt(sigma_target**2 - width**2)


def _resolve_time(gap_ref, width, mass, hbar, time, sigma_over_d):
    if (time is None) == (sigma_over_d is None):
        raise ValueError("specify exactly one of time and sigma_over_d")
    if time is not None:
        return float(time)
    if sigma_over_d <= 0:
        raise ValueError("sigma_over_d must be positive")
    return time_for_sigma(sigma_over_d * gap_ref, width, mass, hbar)


def three_slit(l1: float, l2: float | None = None, *, width: float = 1.0,
               mass: float = 1.0, hbar: float = 1.0, time: float | None = None,
               sigma_over_d: float | None = None) -> SlitGeometry:
    """Slits at +l1, 0, -l2 (l2 defaults to l1 for equal spacing).

    Either give the evolution time directly or a sigma_over_d target, in which
    case t is solved so that sigma = sigma_over_d times the largest gap.
    """
    if l2 is None:
        l2 = l1
    if l1 <= 0 or l2 <= 0:
        raise ValueError("slit separations must be positive")
    t = _resolve_time(max(l1, l2), width, mass, hbar, time, sigma_over_d)
    return SlitGeometry((l1, 0.0, -l2), width, mass, hbar, t)


def two_slit(d: float, *, width: float = 1.0, mass: float = 1.0, hbar: float = 1.0,
             time: float | None = None, sigma_over_d: float | None = None) -> SlitGeometry:
    """Slits at +d and 0 (the three-slit layout with the third slit removed)."""
    if d <= 0:
        raise ValueError("slit separation must be positive")
    t = _resolve_time(d, width, mass, hbar, time, sigma_over_d)
    return SlitGeometry((d, 0.0), width, mass, hbar, t)


def _x_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def gaussian_amplitude(x, center: float, geom: SlitGeometry):
    """Freely evolved Gaussian packet amplitude at position(s) x.

    At t = 0 this is the minimum-uncertainty packet of width eps with peak
    modulus (2 pi eps^2)^(-1/4); the evolution is exact and unitary.
    """
    arr, scalar = _x_array(x)
    eps, m, hbar, t = geom.width, geom.mass, geom.hbar, geom.time
    denom = 4.0 * eps**2 + 2j * hbar * t / m
    norm = 1.0 / np.sqrt(np.sqrt(2.0 * np.pi) * (eps + 1j * hbar * t / (2.0 * m * eps)))
    out = norm * np.exp(-((arr - center) ** 2) / denom)
    return complex(out) if scalar else out


def _check_pairing(geom: SlitGeometry, det: DetectorConfig):
    if geom.n != det.n:
        raise ValueError(
            f"geometry has {geom.n} slits but detector has {det.n} states"
        )


def intensity_oracle(x, geom: SlitGeometry, det: DetectorConfig):
    """Screen intensity from first principles: sum_ij sqrt(p_i p_j) psi_i psi_j* <d_j|d_i>.

    This is the independent reference path: it never touches the closed-form
    algebra, only packet amplitudes and the detector Gram matrix. The result
    is real up to rounding; the imaginary residue is checked against
    1e-12 times the intensity scale.
    """
    _check_pairing(geom, det)
    arr, scalar = _x_array(x)
    flat = np.atleast_1d(arr)
    psis = np.array([gaussian_amplitude(flat, c, geom) for c in geom.positions])
    weights = np.sqrt(det.priors)
    gram = det.gram()
    total = np.zeros(flat.shape, dtype=complex)
    for i in range(det.n):
        for j in range(det.n):
            total += weights[i] * weights[j] * psis[i] * np.conj(psis[j]) * gram[j, i]
    scale = np.abs(total.real).max() + 1e-300
    if np.abs(total.imag).max() > 1e-12 * scale:
        raise ArithmeticError(
            "intensity has a non-negligible imaginary residue; "
            "the detector Gram matrix is inconsistent"
        )
    out = total.real.reshape(arr.shape) if arr.shape else total.real
    return float(out[0]) if scalar else out


def envelope_intensity(x, geom: SlitGeometry, det: DetectorConfig):
    """Incoherent part of the pattern: sum_i p_i |psi_i(x)|^2.

    This is what the screen would show if the detector states were mutually
    orthogonal; the fringe cross terms ride on top of it.
    """
    _check_pairing(geom, det)
    arr, scalar = _x_array(x)
    sigma = geom.sigma
    norm = 1.0 / (np.sqrt(2.0 * np.pi) * sigma)
    total = np.zeros(arr.shape if arr.shape else (1,))
    flat = np.atleast_1d(arr)
    for c, p in zip(geom.positions, det.priors):
        total += p * np.exp(-((flat - c) ** 2) / (2.0 * sigma**2))
    out = norm * total
    return float(out[0]) if scalar else out.reshape(arr.shape)


def intensity_closed_form(x, geom: SlitGeometry, det: DetectorConfig):
    """Three-slit screen intensity evaluated from the closed-form expression.

    Requires the canonical layout (slits at +l1, 0, -l2); an ascending
    position list is handled by relabelling the slits in reverse, which
    leaves the intensity unchanged. Must agree with `intensity_oracle` to
    rounding accuracy for every valid input.
    """
    _check_pairing(geom, det)
    if geom.n != 3:
        raise ValueError("the closed form is specific to 3 slits; use intensity_oracle")
    pos = geom.positions
    if pos[0] < pos[-1]:
        rev_geom = SlitGeometry(pos[::-1], geom.width, geom.mass, geom.hbar, geom.time)
        rev_det = DetectorConfig(det.states[::-1], det.priors[::-1])
        return intensity_closed_form(x, rev_geom, rev_det)
    if abs(pos[1]) > 1e-9 * max(abs(pos[0]), abs(pos[2])):
        raise ValueError(
            "closed form expects the middle slit at x = 0 "
            f"(got positions {pos})"
        )
    l1, l2 = pos[0], -pos[2]

    arr, scalar = _x_array(x)
    xv = np.atleast_1d(arr)
    sigma = geom.sigma
    s2 = sigma * sigma
    norm = 1.0 / (np.sqrt(2.0 * np.pi) * sigma)
    k = geom.phase_rate
    b1 = k * l1**2 / 2.0
    b2 = k * l2**2 / 2.0
    b3 = k * (l2**2 - l1**2) / 2.0

    p1, p2, p3 = det.priors
    gram = det.gram()
    g12, g23, g13 = gram[0, 1], gram[1, 2], gram[0, 2]
    th1, th2, th3 = np.angle(g12), np.angle(g23), np.angle(g13)

    envelope = (
        p1 * np.exp(-((xv - l1) ** 2) / (2.0 * s2))
        + p2 * np.exp(-(xv**2) / (2.0 * s2))
        + p3 * np.exp(-((xv + l2) ** 2) / (2.0 * s2))
    )
    cross12 = (
        2.0 * np.sqrt(p1 * p2) * abs(g12)
        * np.exp(-(2.0 * xv**2 + l1**2 - 2.0 * xv * l1) / (4.0 * s2))
        * np.cos(k * l1 * xv - b1 + th1)
    )
    cross23 = (
        2.0 * np.sqrt(p2 * p3) * abs(g23)
        * np.exp(-(2.0 * xv**2 + l2**2 + 2.0 * xv * l2) / (4.0 * s2))
        * np.cos(k * l2 * xv + b2 + th2)
    )
    cross13 = (
        2.0 * np.sqrt(p1 * p3) * abs(g13)
        * np.exp(-(2.0 * xv**2 + l1**2 + l2**2 + 2.0 * xv * (l2 - l1)) / (4.0 * s2))
        * np.cos(k * (l1 + l2) * xv + b3 + th3)
    )
    out = norm * (envelope + cross12 + cross23 + cross13)
    return float(out[0]) if scalar else out.reshape(arr.shape)


@dataclass(frozen=True, eq=False)
class IntensityPattern:
    """Sampled intensity plus the metadata visibility extraction needs.

    `envelope` holds the incoherent part on the same grid, `n_beams` the
    number of slits with nonzero prior (the fringe structure is that of an
    n_beams-beam interferometer), and `fringe_period` the period of the
    slowest cross term among active slits (infinite if fewer than two
    beams contribute).
    """

    xs: np.ndarray
    intensities: np.ndarray
    envelope: np.ndarray
    sigma: float
    omega_sq: float
    fringe_period: float
    n_slits: int
    n_beams: int

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float).reshape(-1)
        ys = np.asarray(self.intensities, dtype=float).reshape(-1)
        env = np.asarray(self.envelope, dtype=float).reshape(-1)
        if not (xs.size == ys.size == env.size):
            raise ValueError("xs, intensities and envelope must have equal length")
        if xs.size < 2:
            raise ValueError("a pattern needs at least two samples")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("xs must be strictly increasing")
        if ys.min() < -1e-12:
            raise ValueError(f"negative intensity {ys.min()!r} in pattern")
        for a in (xs, ys, env):
            a.flags.writeable = False
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "intensities", ys)
        object.__setattr__(self, "envelope", env)


def _active_fringe_period(geom: SlitGeometry, det: DetectorConfig):
    """Fringe period of the beams that actually contribute, plus their count."""
    active = [p for p, w in zip(geom.positions, det.priors) if w > ACTIVE_PRIOR_TOL]
    n_beams = len(active)
    if n_beams < 2:
        return math.inf, n_beams
    gap = float(np.abs(np.diff(active)).min())
    return geom.period_for_gap(gap), n_beams


def sample_pattern(geom: SlitGeometry, det: DetectorConfig, window=None,
                   samples_per_period: int = DEFAULT_SAMPLES_PER_PERIOD) -> IntensityPattern:
    """Uniform sampling of the screen intensity over a window.

    The grid guarantees at least `samples_per_period` points per fringe
    period. The default window spans 0.25 to 3.25 fringe periods, skipping
    the central fringe. Three-slit configurations go through the closed form,
    everything else through the oracle; the two agree to rounding.
    """
    _check_pairing(geom, det)
    if samples_per_period < 16:
        raise ValueError("samples_per_period must be at least 16")
    period, n_beams = _active_fringe_period(geom, det)
    grid_period = period if math.isfinite(period) else geom.fringe_period
    if window is None:
        if not math.isfinite(grid_period):
            raise ValueError(
                "no finite fringe period (t = 0 or fewer than two beams); "
                "pass an explicit window"
            )
        window = (DEFAULT_WINDOW_PERIODS[0] * grid_period,
                  DEFAULT_WINDOW_PERIODS[1] * grid_period)
    lo, hi = float(window[0]), float(window[1])
    if not hi > lo:
        raise ValueError(f"window {window!r} is degenerate")
    if math.isfinite(grid_period) and (hi - lo) < grid_period:
        raise ValueError(
            f"window width {hi - lo} is smaller than one fringe period {grid_period}"
        )
    step_ref = grid_period if math.isfinite(grid_period) else geom.sigma
    npoints = int(math.ceil((hi - lo) / step_ref * samples_per_period)) + 1
    xs = np.linspace(lo, hi, max(npoints, 2))
    use_closed_form = geom.n == 3 and abs(geom.positions[1]) <= 1e-9 * max(
        abs(geom.positions[0]), abs(geom.positions[2])
    )
    if use_closed_form:
        ys = intensity_closed_form(xs, geom, det)
    else:
        ys = intensity_oracle(xs, geom, det)
    env = envelope_intensity(xs, geom, det)
    return IntensityPattern(
        xs=xs,
        intensities=ys,
        envelope=env,
        sigma=geom.sigma,
        omega_sq=geom.omega_sq,
        fringe_period=period,
        n_slits=geom.n,
        n_beams=n_beams,
    )
