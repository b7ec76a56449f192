"""Named detector configurations for the recurring scenarios.

camera            a perfect monitor on slit 1: d1 orthogonal to d2 = d3, so
                  the detector only learns "slit 1 or not" (D_Q = 2/3 at
                  equal priors, V capped at 3/7)
symmetric-overlap d1, d2 orthogonal, both overlapping d3 by 1/sqrt(2)
identical         no path information at all (full visibility)
orthogonal        perfect path information (no fringes)

The two-slit variants of identical/orthogonal exist as well; camera and
symmetric-overlap are inherently three-slit.
"""

from __future__ import annotations

import numpy as np

from .states import DetectorConfig, DetectorState

PRESET_NAMES = ("camera", "symmetric-overlap", "identical", "orthogonal")


def preset_states(name: str, n_slits: int = 3):
    """Detector states for a named preset."""
    if name == "identical":
        base = DetectorState(np.array([1.0, 0.0]))
        return (base,) * n_slits
    if name == "orthogonal":
        return tuple(DetectorState(np.eye(n_slits)[i]) for i in range(n_slits))
    if n_slits != 3:
        raise ValueError(f"preset {name!r} is defined for 3 slits only")
    if name == "camera":
        return (
            DetectorState(np.array([1.0, 0.0])),
            DetectorState(np.array([0.0, 1.0])),
            DetectorState(np.array([0.0, 1.0])),
        )
    if name == "symmetric-overlap":
        inv_sqrt2 = 1.0 / np.sqrt(2.0)
        return (
            DetectorState(np.array([inv_sqrt2, inv_sqrt2])),
            DetectorState(np.array([inv_sqrt2, -inv_sqrt2])),
            DetectorState(np.array([1.0, 0.0])),
        )
    raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")


def preset_config(name: str, n_slits: int = 3, priors=None) -> DetectorConfig:
    """DetectorConfig for a named preset (equal priors unless given)."""
    states = preset_states(name, n_slits)
    if priors is None:
        priors = np.full(n_slits, 1.0 / n_slits)
    return DetectorConfig(states, priors)
