"""Path distinguishability built on unambiguous quantum state discrimination.

Two non-orthogonal states cannot be told apart with certainty, but a
three-outcome measurement can either identify the state with zero error or
declare failure. The optimal success probability for an equal mixture of
|p> and |q> is the Ivanovic-Dieks-Peres limit

    P = 1 - |<p|q>|,

and no unambiguous strategy can beat it. Taking that limit as the operational
meaning of "knowing the path", the N-path distinguishability of a detector
configuration is

    D_Q = 1 - (1/(N-1)) * sum_{i != j} sqrt(p_i p_j) |<d_i|d_j>|,

where the sum runs over ordered pairs (each unordered pair counts twice).
For N = 2 this is 1 - 2 sqrt(p1 p2)|<d1|d2>|; for N = 3 it is one minus the
plain sum over the three unordered pairs.

The module also carries the two classic two-slit measures this reduces to:
Englert's distinguishability D = sqrt(1 - |<d1|d2>|^2) and the
Greenberger-Yasin predictability P = |p1 - p2|.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .states import DetectorConfig, DetectorState, total_pair_coherence

PSD_TOL = 1e-12
COMPLETENESS_TOL = 1e-10
PARALLEL_TOL = 1e-12


def idp_limit(p: DetectorState, q: DetectorState) -> float:
    """Optimal probability of unambiguously discriminating |p> from |q>."""
    value = 1.0 - abs(p.inner(q))
    return float(min(max(value, 0.0), 1.0))


@dataclass(frozen=True, eq=False)
class Povm2:
    """Three-outcome unambiguous-discrimination measurement on span{|p>, |q>}.

    The operators are 2x2 Hermitian matrices in the orthonormal basis stored
    in `basis` (rows are vectors of the ambient space; row 0 is |p>, row 1 the
    unit vector orthogonal to |p> inside the span). Outcome 0 never fires on
    |q> (it certifies |p>), outcome 1 never fires on |p>, and outcome 2 is the
    inconclusive result.
    """

    e_succ1: np.ndarray
    e_succ2: np.ndarray
    e_fail: np.ndarray
    basis: np.ndarray

    def __post_init__(self):
        for name in ("e_succ1", "e_succ2", "e_fail"):
            op = np.asarray(getattr(self, name), dtype=complex)
            if op.shape != (2, 2):
                raise ValueError(f"{name} must be a 2x2 matrix")
            if np.abs(op - op.conj().T).max() > 1e-12:
                raise ValueError(f"{name} is not Hermitian")
            if np.linalg.eigvalsh(op).min() < -PSD_TOL:
                raise ValueError(f"{name} is not positive semidefinite")
            object.__setattr__(self, name, op)
        total = self.e_succ1 + self.e_succ2 + self.e_fail
        if np.abs(total - np.eye(2)).max() > COMPLETENESS_TOL:
            raise ValueError("POVM elements do not sum to the identity")
        basis = np.asarray(self.basis, dtype=complex)
        object.__setattr__(self, "basis", basis)

    @property
    def elements(self):
        return (self.e_succ1, self.e_succ2, self.e_fail)

    def span_coordinates(self, state: DetectorState) -> np.ndarray:
        coords = self.basis.conj() @ state.amplitudes
        if abs(np.vdot(coords, coords).real - 1.0) > 1e-9:
            raise ValueError("state does not lie in the span of the POVM")
        return coords

    def outcome_probabilities(self, state: DetectorState):
        """(P_identify_p, P_identify_q, P_fail) for a state inside the span."""
        c = self.span_coordinates(state)
        probs = tuple(float((c.conj() @ op @ c).real) for op in self.elements)
        return probs

    def success_probability(self, p: DetectorState, q: DetectorState) -> float:
        """Success probability on an equal mixture of |p> and |q>."""
        cp = self.span_coordinates(p)
        cq = self.span_coordinates(q)
        sp = (cp.conj() @ self.e_succ1 @ cp).real
        sq = (cq.conj() @ self.e_succ2 @ cq).real
        return float(0.5 * (sp + sq))


def uqsd_two_state_povm(p: DetectorState, q: DetectorState) -> Povm2:
    """Equal-prior optimal unambiguous discrimination of |p> and |q>.

    Writing |q> = c|p> + s|p_perp> with c = <p|q> and s = sqrt(1 - |c|^2),
    the success operators are scaled projectors onto the vectors orthogonal to
    the state they rule out, with weight 1/(1 + |c|). The success probability
    on an equal mixture is then the IDP limit 1 - |c|, and the failure
    operator stays positive semidefinite.
    """
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    c = p.inner(q)
    mag = abs(c)
    if mag >= 1.0 - PARALLEL_TOL:
        raise ValueError("no unambiguous discrimination possible for parallel states")
    s = np.sqrt(1.0 - mag * mag)
    p_perp_vec = (q.amplitudes - c * p.amplitudes) / s
    basis = np.array([p.amplitudes, p_perp_vec])
    # span coordinates: p = (1, 0), q = (c, s), q_perp = (s, -conj(c))
    q_perp = np.array([s, -np.conjugate(c)])
    p_perp = np.array([0.0, 1.0], dtype=complex)
    lam = 1.0 / (1.0 + mag)
    e1 = lam * np.outer(q_perp, q_perp.conj())
    e2 = lam * np.outer(p_perp, p_perp.conj())
    e_fail = np.eye(2) - e1 - e2
    return Povm2(e1, e2, e_fail, basis)


def distinguishability(config: DetectorConfig) -> float:
    """Upper limit of the probability of unambiguously identifying the path.

    D_Q = 1 - 2/(N-1) * sum_{i<j} sqrt(p_i p_j) |<d_i|d_j>|. The value is
    returned raw; for N >= 4 with skewed priors it can in principle leave
    [0, 1], in which case a RuntimeWarning is emitted instead of clamping.
    """
    value = 1.0 - 2.0 * total_pair_coherence(config) / (config.n - 1)
    if value < -1e-12 or value > 1.0 + 1e-12:
        warnings.warn(
            f"distinguishability {value!r} outside [0, 1]; "
            "returning the raw value",
            RuntimeWarning,
            stacklevel=2,
        )
    return float(value)


def englert_distinguishability(config: DetectorConfig) -> float:
    """Englert's two-slit distinguishability sqrt(1 - |<d1|d2>|^2)."""
    if config.n != 2:
        raise ValueError("Englert distinguishability is defined for exactly 2 slits")
    mag = config.overlap(0, 1).magnitude
    return float(np.sqrt(max(1.0 - mag * mag, 0.0)))


def _check_prior_pair(p1: float, p2: float):
    if p1 < 0.0 or p2 < 0.0:
        raise ValueError("priors must be nonnegative")
    if abs(p1 + p2 - 1.0) > 1e-12:
        raise ValueError(f"priors sum to {p1 + p2!r}, expected 1")


def predictability(p1: float, p2: float) -> float:
    """Greenberger-Yasin predictability |p1 - p2| of a two-path setup."""
    _check_prior_pair(p1, p2)
    return float(abs(p1 - p2))


def reduced_distinguishability(p1: float, p2: float) -> float:
    """Two-slit distinguishability when the detector states are identical.

    With |<d1|d2>| = 1 only the priors carry path information and D_Q reduces
    to 1 - 2 sqrt(p1 p2), which equals 1 - sqrt(1 - P^2) with P = |p1 - p2|.
    Both forms are evaluated and must agree to 1e-12.
    """
    _check_prior_pair(p1, p2)
    direct = 1.0 - 2.0 * np.sqrt(p1 * p2)
    pred = abs(p1 - p2)
    via_predictability = 1.0 - np.sqrt(max(1.0 - pred * pred, 0.0))
    if abs(direct - via_predictability) > 1e-12:
        raise ArithmeticError(
            "reduced distinguishability identity violated: "
            f"{direct!r} vs {via_predictability!r}"
        )
    return float(direct)
