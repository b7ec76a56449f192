"""Two- and three-slit interference with a quantum which-path detector.

Numerical engine for the interplay between which-path information and fringe
visibility: exact Gaussian wave-packet evolution through a slit mask,
UQSD-based path distinguishability, visibility extraction from simulated
patterns, and randomized verification of the duality inequalities that bound
how much of each can be had at once.
"""

from .duality import (
    BOUND_SLACK,
    DualityReport,
    duality_lhs_three,
    duality_lhs_three_alt,
    duality_lhs_two,
    englert_check,
    greenberger_yasin_check,
    random_detector_config,
    simulated_visibility,
    sweep_duality,
    zero_phase_twin,
)
from .fringe import (
    NoFringesError,
    VisibilityReport,
    extract_visibility,
    ideal_visibility,
    visibility_bound,
)
from .presets import PRESET_NAMES, preset_config, preset_states
from .states import (
    DetectorConfig,
    DetectorState,
    Overlap,
    config_from_gram,
    overlap,
    random_nonnegative_state,
    random_priors,
    random_state,
    total_pair_coherence,
)
from .uqsd import (
    Povm2,
    distinguishability,
    englert_distinguishability,
    idp_limit,
    predictability,
    reduced_distinguishability,
    uqsd_two_state_povm,
)
from .wavepacket import (
    IntensityPattern,
    SlitGeometry,
    envelope_intensity,
    gaussian_amplitude,
    intensity_closed_form,
    intensity_oracle,
    sample_pattern,
    three_slit,
    time_for_sigma,
    two_slit,
)

__version__ = "0.1.0"

__all__ = [
    "BOUND_SLACK",
    "DetectorConfig",
    "DetectorState",
    "DualityReport",
    "IntensityPattern",
    "NoFringesError",
    "Overlap",
    "Povm2",
    "PRESET_NAMES",
    "SlitGeometry",
    "VisibilityReport",
    "config_from_gram",
    "distinguishability",
    "duality_lhs_three",
    "duality_lhs_three_alt",
    "duality_lhs_two",
    "englert_check",
    "englert_distinguishability",
    "envelope_intensity",
    "extract_visibility",
    "gaussian_amplitude",
    "greenberger_yasin_check",
    "ideal_visibility",
    "idp_limit",
    "intensity_closed_form",
    "intensity_oracle",
    "overlap",
    "predictability",
    "preset_config",
    "preset_states",
    "random_detector_config",
    "random_nonnegative_state",
    "random_priors",
    "random_state",
    "reduced_distinguishability",
    "sample_pattern",
    "simulated_visibility",
    "sweep_duality",
    "three_slit",
    "time_for_sigma",
    "total_pair_coherence",
    "two_slit",
    "uqsd_two_state_povm",
    "visibility_bound",
    "zero_phase_twin",
]
