"""Fringe visibility: extraction from sampled patterns and the analytic bound.

Visibility is the contrast V = (I_max - I_min) / (I_max + I_min) between a
fringe maximum and the adjacent minimum. For an N-beam pattern the minima
that belong to the fringe structure sit a third (N = 3) or half (N = 2) of a
period away from each principal maximum; at those positions every pair
cosine of the three-beam pattern equals -1/2 (both the base frequency and
its double), and for two beams -1. Averaged over the two flanking minima the
pattern value there equals

    I_min = (N * E(x_max) - I_max) / (N - 1),

where E is the incoherent envelope, an identity that holds for any overlap
phases in the far field. The extractor therefore locates the requested
principal maximum (grid scan plus three-point parabolic refinement) and
infers the canonical adjacent minimum from the envelope carried by the
pattern. Measuring the true local minimum instead would report 2/3 for a
camera-style detector (one fully coherent pair plus a flat background) and
would break the duality bound for phase-misaligned states; the canonical
convention is what the bound V <= 3T/(2+T) is a statement about.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import DetectorConfig, total_pair_coherence
from .wavepacket import IntensityPattern, SlitGeometry

# Local maxima within this many fringe periods of a higher one are secondary
# structure, not fringes of their own.
DOMINANCE_RADIUS_PERIODS = 0.6

FLATNESS_TOL = 1e-14


class NoFringesError(ValueError):
    """Raised when a pattern has no usable fringe maxima."""


@dataclass(frozen=True)
class VisibilityReport:
    """One extracted fringe: contrast, the two intensities, their positions."""

    v: float
    i_max: float
    i_min: float
    x_max: float
    x_min: float
    fringe_index: int

    def __post_init__(self):
        if self.i_min < 0.0 or self.i_max < self.i_min:
            raise ValueError(
                f"need i_max >= i_min >= 0, got {self.i_max!r}, {self.i_min!r}"
            )
        expected = (self.i_max - self.i_min) / (self.i_max + self.i_min)
        if abs(self.v - expected) > 1e-12:
            raise ValueError(f"v={self.v!r} inconsistent with intensities")
        if self.fringe_index < 1:
            raise ValueError("fringe_index must be >= 1")


def _parabolic_vertex_x(xs, ys, j):
    """Refined position of the extremum around grid index j."""
    y0, y1, y2 = ys[j - 1], ys[j], ys[j + 1]
    curv = y0 - 2.0 * y1 + y2
    if curv == 0.0:
        return xs[j]
    return xs[j] + 0.5 * (xs[j] - xs[j - 1]) * (y0 - y2) / curv


def _interpolate(xs, ys, x, npts=5):
    """Value of the local interpolating polynomial through npts nearest samples."""
    j = int(np.clip(np.searchsorted(xs, x), 1, len(xs) - 1))
    lo = max(0, j - npts // 2)
    hi = min(len(xs), lo + npts)
    lo = max(0, hi - npts)
    xi, yi = xs[lo:hi], ys[lo:hi]
    total = 0.0
    for k in range(len(xi)):
        weight = 1.0
        for m in range(len(xi)):
            if m != k:
                weight *= (x - xi[m]) / (xi[k] - xi[m])
        total += yi[k] * weight
    return total


def _principal_maxima(xs, ys, period):
    """Indices of interior local maxima not dominated by a higher one nearby."""
    left = ys[1:-1] - ys[:-2]
    right = ys[1:-1] - ys[2:]
    interior = np.where((left >= 0) & (right >= 0) & ((left > 0) | (right > 0)))[0] + 1
    if interior.size == 0:
        return []
    radius = DOMINANCE_RADIUS_PERIODS * period
    keep = []
    for j in interior:
        dominated = np.any(
            (ys[interior] > ys[j]) & (np.abs(xs[interior] - xs[j]) < radius)
        )
        if not dominated:
            keep.append(int(j))
    return keep


def extract_visibility(pattern: IntensityPattern, fringe_index: int = 1) -> VisibilityReport:
    """Contrast of the fringe_index-th principal maximum at x > 0.

    Raises NoFringesError for patterns that are flat or carry no interior
    local maximum (fully decohered or single-beam), and ValueError when the
    requested fringe is not inside the sampled window.
    """
    if fringe_index < 1:
        raise ValueError("fringe_index must be >= 1")
    if not np.isfinite(pattern.fringe_period) or pattern.n_beams < 2:
        raise NoFringesError("no fringes: fewer than two beams contribute")
    xs, ys = pattern.xs, pattern.intensities
    scale = ys.max()
    if scale <= 0.0 or (ys.max() - ys.min()) < FLATNESS_TOL * scale:
        raise NoFringesError("no fringes: pattern is flat")
    candidates = _principal_maxima(xs, ys, pattern.fringe_period)
    if not candidates:
        raise NoFringesError("no fringes: no interior local maximum")
    located = sorted(
        x for x in (_parabolic_vertex_x(xs, ys, j) for j in candidates) if x > 0.0
    )
    if fringe_index > len(located):
        raise ValueError(
            f"requested fringe {fringe_index} outside the sampled window "
            f"({len(located)} fringe(s) available)"
        )
    x_max = located[fringe_index - 1]
    i_max = _interpolate(xs, ys, x_max)
    env_at_max = _interpolate(xs, pattern.envelope, x_max)
    n = pattern.n_beams
    i_min = (n * env_at_max - i_max) / (n - 1)
    i_min = min(max(i_min, 0.0), i_max)
    x_min = x_max + pattern.fringe_period / n
    v = (i_max - i_min) / (i_max + i_min)
    return VisibilityReport(
        v=float(v),
        i_max=float(i_max),
        i_min=float(i_min),
        x_max=float(x_max),
        x_min=float(x_min),
        fringe_index=fringe_index,
    )


def _weighted_overlaps(det: DetectorConfig):
    gram = det.gram()
    p = det.priors
    w12 = np.sqrt(p[0] * p[1]) * abs(gram[0, 1])
    w13 = np.sqrt(p[0] * p[2]) * abs(gram[0, 2])
    w23 = np.sqrt(p[1] * p[2]) * abs(gram[1, 2])
    return w12, w13, w23


def ideal_visibility(x, geom: SlitGeometry, det: DetectorConfig):
    """Position-dependent ceiling on the three-slit visibility, equal spacing.

    Only the overlap magnitudes enter (the ideal case assumes the phases are
    zero or cancel). As d/sigma -> 0 this converges to 3T/(2+T) with T the
    total pair coherence.
    """
    if geom.n != 3 or det.n != 3:
        raise ValueError("ideal visibility is defined for 3 slits")
    gaps = np.abs(np.diff(geom.positions))
    if abs(gaps[0] - gaps[1]) > 1e-9 * gaps.max():
        raise ValueError("ideal visibility requires equal slit spacing")
    d = float(gaps[0])
    s2 = geom.sigma**2
    w12, w13, w23 = _weighted_overlaps(det)
    p1, p2, p3 = det.priors

    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    xv = np.atleast_1d(arr)
    half_shift = xv * d / (2.0 * s2)
    up = np.exp(half_shift)
    down = np.exp(-half_shift)
    far = np.exp(-(d * d) / (2.0 * s2))
    coherent = w12 * up + w13 * far + w23 * down
    background = 2.0 * (p2 + (p1 * up**2 + p3 * down**2) * far)
    out = 3.0 * coherent / (background + coherent)
    return float(out[0]) if scalar else out.reshape(arr.shape)


def visibility_bound(det: DetectorConfig) -> float:
    """Largest visibility compatible with the detector configuration.

    Three slits: 3T/(2+T) with T the total pair coherence. Two slits:
    2 sqrt(p1 p2) |<d1|d2>|, i.e. 1 - D_Q.
    """
    total = total_pair_coherence(det)
    if det.n == 3:
        return float(3.0 * total / (2.0 + total))
    if det.n == 2:
        return float(2.0 * total)
    raise ValueError("visibility bound implemented for 2 or 3 slits only")
