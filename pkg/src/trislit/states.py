"""Detector-side state algebra shared by every other module.

A which-path detector is modelled by N normalized kets |d_i>, one per slit,
together with the prior probabilities p_i of the particle taking each path.
Everything downstream (distinguishability, interference cross terms, duality
bounds) is a function of the priors and of the pairwise inner products
<d_i|d_j>, so this module keeps those primitives in one place.

All types are immutable values; all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-12


def _as_state_vector(amplitudes) -> np.ndarray:
    vec = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if vec.size < 1:
        raise ValueError("state vector must have at least one amplitude")
    if not np.all(np.isfinite(vec.view(float))):
        raise ValueError("state vector amplitudes must be finite")
    return vec


@dataclass(frozen=True, eq=False)
class DetectorState:
    """A normalized detector ket.

    The constructor accepts any nonzero complex vector and normalizes it;
    zero vectors are rejected.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        vec = _as_state_vector(self.amplitudes)
        norm = np.linalg.norm(vec)
        if norm == 0.0:
            raise ValueError("cannot normalize a zero state vector")
        vec = vec / norm
        vec.flags.writeable = False
        object.__setattr__(self, "amplitudes", vec)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def inner(self, other: "DetectorState") -> complex:
        """<self|other> as a complex number."""
        if self.dim != other.dim:
            raise ValueError(
                f"dimension mismatch: {self.dim} vs {other.dim}"
            )
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class Overlap:
    """Polar form of an inner product: magnitude in [0, 1], phase in (-pi, pi]."""

    magnitude: float
    phase: float

    def __post_init__(self):
        if not (-NORM_TOL <= self.magnitude <= 1.0 + NORM_TOL):
            raise ValueError(
                f"overlap magnitude {self.magnitude} outside [0, 1]"
            )
        object.__setattr__(self, "magnitude", float(min(max(self.magnitude, 0.0), 1.0)))
        phase = float(self.phase)
        if phase <= -np.pi:
            phase += 2.0 * np.pi
        object.__setattr__(self, "phase", phase)

    @classmethod
    def from_inner_product(cls, value: complex) -> "Overlap":
        return cls(abs(value), float(np.angle(value)))


def overlap(a: DetectorState, b: DetectorState) -> Overlap:
    """Decompose <a|b> into magnitude and phase.

    The magnitude is symmetric under swapping the arguments and the phase
    changes sign (modulo 2*pi, because of the branch cut at pi).
    """
    return Overlap.from_inner_product(a.inner(b))


@dataclass(frozen=True, eq=False)
class DetectorConfig:
    """N detector states plus the prior probability of each path."""

    states: tuple
    priors: np.ndarray

    def __post_init__(self):
        states = tuple(self.states)
        if len(states) < 2:
            raise ValueError("a detector configuration needs at least 2 states")
        if not all(isinstance(s, DetectorState) for s in states):
            states = tuple(
                s if isinstance(s, DetectorState) else DetectorState(s) for s in states
            )
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise ValueError(f"detector states have mixed dimensions: {sorted(dims)}")
        priors = np.asarray(self.priors, dtype=float).reshape(-1)
        if priors.size != len(states):
            raise ValueError(
                f"got {priors.size} priors for {len(states)} states"
            )
        if np.any(priors < 0.0) or not np.all(np.isfinite(priors)):
            raise ValueError("priors must be finite and nonnegative")
        if abs(priors.sum() - 1.0) > NORM_TOL:
            raise ValueError(f"priors sum to {priors.sum()!r}, expected 1")
        priors.flags.writeable = False
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "priors", priors)

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def dim(self) -> int:
        return self.states[0].dim

    def gram(self) -> np.ndarray:
        """Gram matrix G[i, j] = <d_i|d_j>. Positive semidefinite by construction."""
        mat = np.array([s.amplitudes for s in self.states])
        return mat.conj() @ mat.T

    def overlap(self, i: int, j: int) -> Overlap:
        return overlap(self.states[i], self.states[j])


def total_pair_coherence(config: DetectorConfig) -> float:
    """Sum over unordered pairs of sqrt(p_i p_j) |<d_i|d_j>|.

    This weighted overlap sum is the single scalar that controls both the
    path distinguishability and the visibility bound.
    """
    gram = config.gram()
    p = config.priors
    total = 0.0
    for i in range(config.n):
        for j in range(i + 1, config.n):
            total += np.sqrt(p[i] * p[j]) * abs(gram[i, j])
    return float(total)


def random_state(dim: int, seed) -> DetectorState:
    """A ket drawn uniformly from the complex unit sphere.

    Independent standard complex Gaussian entries, normalized. `seed` may be
    an integer or a numpy Generator; fixed integers give identical states.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return DetectorState(vec)


def random_nonnegative_state(dim: int, seed) -> DetectorState:
    """A random ket with nonnegative components.

    Any two such kets have a real nonnegative inner product, so a set of them
    realizes zero overlap phases. Used for sweeps that assume phase-aligned
    detector overlaps.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    return DetectorState(np.abs(rng.standard_normal(dim)).astype(complex))


def random_priors(n: int, seed) -> np.ndarray:
    """Priors drawn uniformly from the probability simplex.

    Sorted-uniform spacings: the gaps between n-1 sorted uniforms partition
    [0, 1] into n parts, which is the flat Dirichlet distribution.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    cuts = np.sort(rng.random(n - 1))
    return np.diff(np.concatenate([[0.0], cuts, [1.0]]))


def config_from_gram(gram, priors) -> DetectorConfig:
    """Build a DetectorConfig realizing a given Gram matrix.

    `gram` must be Hermitian, positive semidefinite, with unit diagonal.
    States are reconstructed as the columns of the Hermitian square root,
    which reproduces the Gram matrix exactly up to rounding.
    """
    gram = np.asarray(gram, dtype=complex)
    n = gram.shape[0]
    if gram.shape != (n, n):
        raise ValueError("gram must be a square matrix")
    if np.abs(gram - gram.conj().T).max() > 1e-10:
        raise ValueError("gram must be Hermitian")
    if np.abs(np.diag(gram) - 1.0).max() > 1e-9:
        raise ValueError("gram must have unit diagonal")
    eigvals, eigvecs = np.linalg.eigh(gram)
    if eigvals.min() < -1e-10:
        raise ValueError(
            f"gram is not positive semidefinite (min eigenvalue {eigvals.min():.3e})"
        )
    root = (eigvecs * np.sqrt(np.clip(eigvals, 0.0, None))) @ eigvecs.conj().T
    states = tuple(DetectorState(root[:, i]) for i in range(n))
    return DetectorConfig(states, priors)
