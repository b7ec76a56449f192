"""Duality relations between path knowledge and fringe contrast.

Three slits:   V + 2 D_Q / (3 - D_Q) <= 1   (equivalently D_Q + 2V/(3-V) <= 1)
Two slits:     V + D_Q <= 1, which reduces to Englert's V^2 + D^2 <= 1 for
               equal priors and to Greenberger-Yasin's P^2 + V^2 <= 1 for
               identical detector states.

`sweep_duality` verifies the bounds end to end on randomized configurations:
sample detector states and priors, evolve the packets to the far field,
extract the visibility from the simulated pattern, compute D_Q from the same
configuration, and report the left-hand side. Unequal slit spacing makes the
three-slit inequality strict; those sweeps also run the equal-spacing twin of
each configuration and record both visibilities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fringe import NoFringesError, extract_visibility
from .states import (
    DetectorConfig,
    config_from_gram,
    random_nonnegative_state,
    random_priors,
    random_state,
)
from .uqsd import distinguishability, englert_distinguishability, predictability
from .wavepacket import sample_pattern, three_slit

# Bound violations below this are discretization/envelope artifacts; the
# analytic bound is exact only in the d << sigma limit.
BOUND_SLACK = 5e-3

DEFAULT_SIGMA_OVER_D = 200.0
DEFAULT_BASE_SPACING = 100.0
SWEEP_WINDOW_PERIODS = (0.125, 2.0)

# ell2/ell1 is drawn from these bands. Near-integer ratios are excluded:
# there the three cross-term frequencies (1, r, 1+r) re-align harmonically
# within a single base period and the strict unequal-spacing inequality
# degenerates to a tie.
UNEQUAL_RATIO_BANDS = ((1.2, 1.8), (2.2, 2.8))


def _check_unit_interval(name, value):
    if not -1e-9 <= value <= 1.0 + 1e-9:
        raise ValueError(f"{name}={value!r} outside [0, 1]")
    return min(max(float(value), 0.0), 1.0)


def duality_lhs_three(v: float, d_q: float) -> float:
    """Left-hand side of the three-slit relation, V + 2 D_Q / (3 - D_Q)."""
    v = _check_unit_interval("v", v)
    d_q = _check_unit_interval("d_q", d_q)
    return v + 2.0 * d_q / (3.0 - d_q)


def duality_lhs_three_alt(v: float, d_q: float) -> float:
    """Alternate form of the three-slit relation, D_Q + 2 V / (3 - V)."""
    v = _check_unit_interval("v", v)
    d_q = _check_unit_interval("d_q", d_q)
    return d_q + 2.0 * v / (3.0 - v)


def duality_lhs_two(v: float, d_q: float) -> float:
    """Left-hand side of the two-slit relation, V + D_Q."""
    v = _check_unit_interval("v", v)
    d_q = _check_unit_interval("d_q", d_q)
    return v + d_q


def englert_check(v: float, config2: DetectorConfig) -> float:
    """V^2 + D^2 for an equal-prior two-slit configuration (must be <= 1)."""
    if config2.n != 2:
        raise ValueError("Englert's relation is for 2 slits")
    if abs(config2.priors[0] - 0.5) > 1e-12:
        raise ValueError("Englert's relation assumes equal priors")
    v = _check_unit_interval("v", v)
    d = englert_distinguishability(config2)
    return v * v + d * d


def greenberger_yasin_check(v: float, p1: float, p2: float) -> float:
    """P^2 + V^2 for the identical-detector-state scenario (must be <= 1)."""
    v = _check_unit_interval("v", v)
    p = predictability(p1, p2)
    return p * p + v * v


@dataclass(frozen=True)
class DualityReport:
    """One verified configuration: distinguishability, visibility, bound status."""

    n_slits: int
    d_q: float
    v: float
    lhs: float
    bound_satisfied: bool
    strict: bool
    slack: float
    v_equal: float | None = None

    def __post_init__(self):
        formula = duality_lhs_three if self.n_slits == 3 else duality_lhs_two
        if abs(self.lhs - formula(self.v, self.d_q)) > 1e-12:
            raise ValueError("lhs inconsistent with v and d_q")
        if abs(self.slack - (1.0 - self.lhs)) > 1e-12:
            raise ValueError("slack inconsistent with lhs")


def simulated_visibility(geom, det: DetectorConfig, *, fringe_index: int = 1,
                         samples_per_period: int = 64,
                         window_periods=SWEEP_WINDOW_PERIODS) -> float:
    """Sample the pattern and extract the fringe visibility.

    Patterns without a usable fringe (fully decohered overlaps or a single
    contributing beam) count as zero visibility.
    """
    active = int(np.sum(det.priors > 1e-12))
    if active < 2:
        return 0.0
    period = geom.fringe_period
    window = (window_periods[0] * period, window_periods[1] * period)
    pattern = sample_pattern(geom, det, window=window,
                             samples_per_period=samples_per_period)
    try:
        return extract_visibility(pattern, fringe_index).v
    except NoFringesError:
        return 0.0


def _draw_ratio(rng) -> float:
    bands = UNEQUAL_RATIO_BANDS
    widths = np.array([hi - lo for lo, hi in bands])
    pick = rng.random() * widths.sum()
    for (lo, hi), w in zip(bands, widths):
        if pick <= w:
            return lo + pick
        pick -= w
    return bands[-1][1]


def random_detector_config(rng, n: int = 3, dim: int | None = None, *,
                           nonnegative: bool = False,
                           equal_priors: bool = False) -> DetectorConfig:
    """Random detector configuration for sweeps (states plus priors)."""
    dim = dim or n
    maker = random_nonnegative_state if nonnegative else random_state
    states = tuple(maker(dim, rng) for _ in range(n))
    priors = np.full(n, 1.0 / n) if equal_priors else random_priors(n, rng)
    return DetectorConfig(states, priors)


def zero_phase_twin(det: DetectorConfig) -> DetectorConfig:
    """Same overlap magnitudes, all overlap phases zero.

    Takes the entrywise modulus of the Gram matrix (positive semidefinite for
    three states, since the modulus only increases the triple product term)
    and reconstructs states realizing it. Used to compare phase-aligned and
    phase-randomized versions of one configuration.
    """
    return config_from_gram(np.abs(det.gram()), det.priors)


def sweep_duality(n_configs: int, seed: int, geometry_mode: str = "equal", *,
                  sigma_over_d: float = DEFAULT_SIGMA_OVER_D,
                  base_spacing: float = DEFAULT_BASE_SPACING,
                  equal_priors: bool = False,
                  nonnegative_states: bool | None = None,
                  samples_per_period: int = 64,
                  fringe_index: int = 1) -> list[DualityReport]:
    """Randomized verification sweep of the three-slit duality relation.

    Each configuration draws three detector states and priors, builds the
    geometry (equal spacing, or unequal with ell2/ell1 from the incommensurate
    bands), simulates at the requested sigma/d, extracts V and computes D_Q.
    Unequal mode also runs the equal-spacing twin at the same evolution time
    and stores its visibility in v_equal; it defaults to zero-phase detector
    states because the strict inequality presumes phase-aligned overlaps.
    Fixed seeds give identical report lists.
    """
    if n_configs < 1:
        raise ValueError("n_configs must be >= 1")
    if geometry_mode not in ("equal", "unequal"):
        raise ValueError(f"unknown geometry mode {geometry_mode!r}")
    unequal = geometry_mode == "unequal"
    if nonnegative_states is None:
        nonnegative_states = unequal
    rng = np.random.default_rng(seed)
    reports = []
    for _ in range(n_configs):
        det = random_detector_config(rng, nonnegative=nonnegative_states,
                                     equal_priors=equal_priors)
        l1 = base_spacing
        l2 = _draw_ratio(rng) * base_spacing if unequal else base_spacing
        geom = three_slit(l1, l2, sigma_over_d=sigma_over_d)
        v = simulated_visibility(geom, det, fringe_index=fringe_index,
                                 samples_per_period=samples_per_period)
        v_equal = None
        if unequal:
            twin = three_slit(l1, l1, time=geom.time)
            v_equal = simulated_visibility(twin, det, fringe_index=fringe_index,
                                           samples_per_period=samples_per_period)
        d_q = distinguishability(det)
        lhs = duality_lhs_three(v, d_q)
        reports.append(DualityReport(
            n_slits=3,
            d_q=float(d_q),
            v=float(v),
            lhs=float(lhs),
            bound_satisfied=bool(lhs <= 1.0 + BOUND_SLACK),
            strict=unequal,
            slack=float(1.0 - lhs),
            v_equal=None if v_equal is None else float(v_equal),
        ))
    return reports
