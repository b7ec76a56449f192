"""End-to-end acceptance checks with pinned tolerances.

Each check returns a CriterionResult; `run_acceptance` executes all of them
and prints one pass/fail line per criterion. The same registry backs the
`trislit verify` subcommand and the pytest acceptance module.
"""

from __future__ import annotations

import json
import math
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .duality import (
    duality_lhs_three,
    englert_check,
    greenberger_yasin_check,
    random_detector_config,
    simulated_visibility,
    sweep_duality,
)
from .fringe import visibility_bound
from .presets import preset_config
from .states import DetectorConfig, DetectorState, random_priors, random_state
from .uqsd import (
    distinguishability,
    englert_distinguishability,
    idp_limit,
    predictability,
    reduced_distinguishability,
    uqsd_two_state_povm,
)
from .wavepacket import (
    intensity_closed_form,
    intensity_oracle,
    three_slit,
    two_slit,
)

BASE_D = 100.0
SIGMA_OVER_D = 200.0


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str


def _random_three(seed):
    rng = np.random.default_rng(seed)
    states = tuple(random_state(3, rng) for _ in range(3))
    return DetectorConfig(states, random_priors(3, rng))


def check_oracle_equivalence() -> CriterionResult:
    """1. Closed form vs Gram-sum oracle, 10 seeds x 2048 points, rel < 1e-10."""
    worst = 0.0
    for seed in range(10):
        det = _random_three(seed)
        l2 = BASE_D if seed % 2 == 0 else 1.7 * BASE_D
        geom = three_slit(BASE_D, l2, sigma_over_d=SIGMA_OVER_D)
        period = geom.fringe_period
        xs = np.linspace(0.25 * period, 3.25 * period, 2048)
        a = intensity_closed_form(xs, geom, det)
        b = intensity_oracle(xs, geom, det)
        rel = np.abs(a - b) / np.maximum(np.maximum(np.abs(a), np.abs(b)), 1e-300)
        worst = max(worst, float(rel.max()))
    return CriterionResult(1, "oracle equivalence", worst < 1e-10,
                           f"max relative deviation {worst:.3e} (tol 1e-10)")


def _total_probability(geom, det):
    sigma = geom.sigma
    span = max(abs(p) for p in geom.positions) + 10.0 * sigma
    period = geom.fringe_period
    if math.isfinite(period):
        npoints = max(1 << 15, int(math.ceil(2.0 * span / (period / 256.0))) + 1)
    else:
        npoints = 1 << 15
    xs = np.linspace(-span, span, npoints)
    return float(np.trapezoid(intensity_oracle(xs, geom, det), xs))


def check_normalization() -> CriterionResult:
    """2. Total probability 1 within 1e-6 at t = 0 and in the far field."""
    worst = 0.0
    far_time = three_slit(BASE_D, sigma_over_d=SIGMA_OVER_D).time
    for seed in range(100, 110):
        det = _random_three(seed)
        for t in (0.0, far_time):
            geom = three_slit(BASE_D, time=t)
            worst = max(worst, abs(_total_probability(geom, det) - 1.0))
    return CriterionResult(2, "normalization", worst < 1e-6,
                           f"max |integral - 1| = {worst:.3e} (tol 1e-6)")


def check_camera_case() -> CriterionResult:
    """3. Watched slit: D_Q = 2/3, V near 3/7 from below, bound saturated."""
    det = preset_config("camera")
    d_q = distinguishability(det)
    geom = three_slit(BASE_D, sigma_over_d=SIGMA_OVER_D)
    v = simulated_visibility(geom, det, window_periods=(0.25, 3.25))
    lhs = duality_lhs_three(v, d_q)
    ok_dq = abs(d_q - 2.0 / 3.0) <= 1e-12
    ok_v = (3.0 / 7.0 - 0.02) <= v <= (3.0 / 7.0 + 1e-3)
    ok_lhs = 0.98 <= lhs <= 1.005
    return CriterionResult(
        3, "camera case", ok_dq and ok_v and ok_lhs,
        f"D_Q-2/3 = {d_q - 2/3:.2e}, V = {v:.6f} (target 3/7 = {3/7:.6f}), "
        f"lhs = {lhs:.6f}",
    )


def check_symmetric_overlap_case() -> CriterionResult:
    """4. Symmetric-overlap detector: D_Q = 1 - sqrt(2)/3, V in [0.552, 0.573]."""
    det = preset_config("symmetric-overlap")
    d_q = distinguishability(det)
    bound = visibility_bound(det)
    geom = three_slit(BASE_D, sigma_over_d=SIGMA_OVER_D)
    v = simulated_visibility(geom, det, window_periods=(0.25, 3.25))
    expected_dq = 1.0 - math.sqrt(2.0) / 3.0
    expected_bound = 3.0 * math.sqrt(2.0) / (6.0 + math.sqrt(2.0))
    ok = (
        abs(d_q - expected_dq) <= 1e-12
        and 0.552 <= v <= 0.573
        and abs(bound - expected_bound) <= 1e-12
    )
    return CriterionResult(
        4, "symmetric-overlap case", ok,
        f"D_Q err {d_q - expected_dq:.2e}, V = {v:.6f}, "
        f"bound err {bound - expected_bound:.2e}",
    )


def check_duality_sweep() -> CriterionResult:
    """5. 1000 random equal-spacing configs: no violation beyond 5e-3."""
    reports = sweep_duality(1000, seed=20260810, geometry_mode="equal",
                            sigma_over_d=SIGMA_OVER_D)
    violations = sum(r.lhs > 1.0 + 5e-3 for r in reports)
    worst = max(r.lhs - 1.0 for r in reports)
    return CriterionResult(5, "duality sweep", violations == 0,
                           f"{violations} violations, worst lhs-1 = {worst:.3e}")


def check_tightness_trend() -> CriterionResult:
    """6. Zero-phase equal-prior configs: slack shrinks with sigma/d, median < 0.02."""
    kwargs = dict(geometry_mode="equal", equal_priors=True, nonnegative_states=True)
    far = sweep_duality(50, seed=61, sigma_over_d=200.0, **kwargs)
    near = sweep_duality(50, seed=61, sigma_over_d=20.0, **kwargs)
    trend_ok = all(f.slack < n.slack for f, n in zip(far, near))
    median = float(np.median([r.slack for r in far]))
    return CriterionResult(6, "tightness trend", trend_ok and median < 0.02,
                           f"per-config trend ok: {trend_ok}, "
                           f"median slack at sigma/d=200: {median:.4f}")


def check_unequal_strictness() -> CriterionResult:
    """7. 200 paired trials: unequal spacing strictly reduces the visibility."""
    reports = sweep_duality(200, seed=71, geometry_mode="unequal",
                            sigma_over_d=SIGMA_OVER_D)
    fails = sum(not (r.v < r.v_equal) for r in reports)
    margin = min(r.v_equal - r.v for r in reports)
    return CriterionResult(7, "strict unequal-spacing inequality", fails == 0,
                           f"{fails} pairs out of order, min margin {margin:.3e}")


def check_englert_saturation() -> CriterionResult:
    """8. Two slits, equal priors: simulated V^2 + D^2 in [0.98, 1.005]."""
    geom = two_slit(BASE_D, sigma_over_d=SIGMA_OVER_D)
    worst_low, worst_high = 1.0, 1.0
    for c in np.linspace(0.0, 1.0, 6):
        s = math.sqrt(max(1.0 - c * c, 0.0))
        det = DetectorConfig(
            (DetectorState(np.array([1.0, 0.0])),
             DetectorState(np.array([c, s]))),
            np.array([0.5, 0.5]),
        )
        value = englert_check(simulated_visibility(geom, det), det)
        worst_low = min(worst_low, value)
        worst_high = max(worst_high, value)
    ok = 0.98 <= worst_low and worst_high <= 1.005
    return CriterionResult(8, "two-slit Englert saturation", ok,
                           f"V^2+D^2 in [{worst_low:.4f}, {worst_high:.4f}]")


def check_greenberger_yasin() -> CriterionResult:
    """9. Identical detector states: simulated P^2 + V^2 in [0.98, 1.005]."""
    geom = two_slit(BASE_D, sigma_over_d=SIGMA_OVER_D)
    state = DetectorState(np.array([1.0, 0.0]))
    worst_low, worst_high = 1.0, 1.0
    for p1 in (0.5, 0.6, 0.75, 0.9, 1.0):
        det = DetectorConfig((state, state), np.array([p1, 1.0 - p1]))
        v = simulated_visibility(geom, det)
        value = greenberger_yasin_check(v, p1, 1.0 - p1)
        worst_low = min(worst_low, value)
        worst_high = max(worst_high, value)
    ok = 0.98 <= worst_low and worst_high <= 1.005
    return CriterionResult(9, "two-slit Greenberger-Yasin", ok,
                           f"P^2+V^2 in [{worst_low:.4f}, {worst_high:.4f}]")


def check_uqsd_povm() -> CriterionResult:
    """10. 100 random pairs: zero-error, complete, success = IDP limit."""
    rng = np.random.default_rng(1010)
    worst_mis = worst_comp = worst_gap = 0.0
    for _ in range(100):
        p = random_state(3, rng)
        q = random_state(3, rng)
        povm = uqsd_two_state_povm(p, q)
        prob_p = povm.outcome_probabilities(p)
        prob_q = povm.outcome_probabilities(q)
        worst_mis = max(worst_mis, prob_q[0], prob_p[1])
        total = povm.e_succ1 + povm.e_succ2 + povm.e_fail
        worst_comp = max(worst_comp, float(np.abs(total - np.eye(2)).max()))
        worst_gap = max(worst_gap,
                        abs(povm.success_probability(p, q) - idp_limit(p, q)))
    ok = worst_mis < 1e-12 and worst_comp < 1e-10 and worst_gap < 1e-10
    return CriterionResult(10, "UQSD POVM", ok,
                           f"misidentification {worst_mis:.2e}, completeness "
                           f"{worst_comp:.2e}, |success - IDP| {worst_gap:.2e}")


def check_identity_chain() -> CriterionResult:
    """11. N = 2 identities: D_Q = 1-sqrt(1-D^2) and reduced = 1-sqrt(1-P^2)."""
    worst = 0.0
    basis0 = np.array([1.0, 0.0])
    for c in np.linspace(0.0, 1.0, 21):
        s = math.sqrt(max(1.0 - c * c, 0.0))
        det = DetectorConfig(
            (DetectorState(basis0), DetectorState(np.array([c, s]))),
            np.array([0.5, 0.5]),
        )
        d_q = distinguishability(det)
        d_e = englert_distinguishability(det)
        worst = max(worst, abs(d_q - (1.0 - math.sqrt(max(1.0 - d_e**2, 0.0)))))
    for p1 in np.linspace(0.0, 1.0, 21):
        pred = predictability(p1, 1.0 - p1)
        reduced = reduced_distinguishability(p1, 1.0 - p1)
        worst = max(worst, abs(reduced - (1.0 - math.sqrt(max(1.0 - pred**2, 0.0)))))
    return CriterionResult(11, "identity chain", worst <= 1e-12,
                           f"max identity residual {worst:.3e} (tol 1e-12)")


def check_determinism() -> CriterionResult:
    """12. Rerunning a seeded sweep writes byte-identical CSV output."""
    from . import cli  # deferred: cli imports this module for `verify`

    config = {
        "version": 1,
        "n_configs": 40,
        "seed": 7,
        "geometry_mode": "equal",
        "sigma_over_d": 200.0,
    }
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp)
        cfg = root / "sweep.json"
        cfg.write_text(json.dumps(config), encoding="utf-8")
        out1, out2 = root / "run1", root / "run2"
        cli.run_sweep(cfg, out1)
        cli.run_sweep(cfg, out2)
        first = (out1 / "sweep.csv").read_bytes()
        second = (out2 / "sweep.csv").read_bytes()
    ok = first == second
    return CriterionResult(12, "determinism", ok,
                           f"sweep.csv identical across reruns: {ok}")


CRITERIA = (
    check_oracle_equivalence,
    check_normalization,
    check_camera_case,
    check_symmetric_overlap_case,
    check_duality_sweep,
    check_tightness_trend,
    check_unequal_strictness,
    check_englert_saturation,
    check_greenberger_yasin,
    check_uqsd_povm,
    check_identity_chain,
    check_determinism,
)


def run_acceptance(stream=None) -> list[CriterionResult]:
    """Run every acceptance criterion, printing one pass/fail line each."""
    results = []
    for check in CRITERIA:
        result = check()
        results.append(result)
        line = (f"{'PASS' if result.passed else 'FAIL'}  criterion {result.number:2d} "
                f"({result.name}): {result.detail}")
        print(line, file=stream)
    return results
