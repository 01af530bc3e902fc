"""Rebuild complex concept states from per-exemplar collapse statistics.

Given collapse distributions p_a, p_b for two concepts and p_or for their
disjunction over N exemplars, build unit vectors in C^(N+1) whose squared
amplitudes reproduce p_a and p_b, choosing the relative phase of each
exemplar so that the equal superposition collapses to p_or:

    p_or(k) = (p_a(k) + p_b(k))/2 + sqrt(p_a(k) * p_b(k)) * cos(phi_k)

Exemplars where p_or is outside the attainable band get the nearest
attainable value (cos clamped to +-1) and are reported as infeasible. The
extra (N+1)-th dimension keeps both states unit-norm and absorbs, as far as
its magnitude allows, the residual overlap sum(sqrt(p_a p_b) cos(phi)), so
that the equal superposition stays normalized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-10
_FEAS_TOL = 1e-12
_SUM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ConceptState:
    """Unit-norm complex amplitude vector over N exemplars plus one slack dimension."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amps)
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state must be unit-norm, |amplitudes|^2 sums to {norm_sq!r}")

    def __len__(self) -> int:
        return len(self.amplitudes)


def collapse_probabilities(state: ConceptState) -> np.ndarray:
    """Squared moduli of the amplitudes; a probability distribution over outcomes."""
    probs = np.abs(state.amplitudes) ** 2
    if abs(float(probs.sum()) - 1.0) > NORM_TOL:
        raise ValueError("state is not normalized")
    return probs


@dataclass(frozen=True, eq=False)
class ReconstructionResult:
    state_a: ConceptState
    state_b: ConceptState
    phases: np.ndarray  # radians, one per exemplar
    infeasible_exemplars: tuple[int, ...]

    def superposition(self) -> ConceptState:
        """Normalized equal superposition of the two reconstructed states."""
        combined = self.state_a.amplitudes + self.state_b.amplitudes
        return ConceptState(combined / np.linalg.norm(combined))


def _as_distribution(name: str, values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{name} must be a nonempty 1-d distribution")
    if np.any(arr < 0.0):
        raise ValueError(f"{name} has negative entries")
    total = float(arr.sum())
    if abs(total - 1.0) > _SUM_TOL:
        raise ValueError(f"{name} must sum to 1 within {_SUM_TOL}, got {total!r}")
    return arr


def reconstruct_pair(p_a, p_b, p_or) -> ReconstructionResult:
    """Solve the pointwise inverse problem for a concept pair and its disjunction.

    Parameters
    ----------
    p_a, p_b, p_or : array-like of shape (N,)
        Collapse distributions over the same N exemplars; nonnegative,
        each summing to 1 within 1e-9.

    Returns
    -------
    ReconstructionResult with states of length N+1. Exemplar k is infeasible
    iff |p_or(k) - (p_a(k)+p_b(k))/2| > sqrt(p_a(k) p_b(k)) + 1e-12.
    """
    pa = _as_distribution("p_a", p_a)
    pb = _as_distribution("p_b", p_b)
    por = _as_distribution("p_or", p_or)
    if not (len(pa) == len(pb) == len(por)):
        raise ValueError(f"distributions must share a length, got "
                         f"{len(pa)}, {len(pb)}, {len(por)}")

    avg = (pa + pb) / 2.0
    cross = np.sqrt(pa * pb)
    deviation = por - avg

    infeasible = np.flatnonzero(np.abs(deviation) > cross + _FEAS_TOL)
    with np.errstate(divide="ignore", invalid="ignore"):
        cos_phi = np.where(cross > 0.0, deviation / np.where(cross > 0.0, cross, 1.0), 0.0)
    cos_phi = np.clip(cos_phi, -1.0, 1.0)
    phases = np.arccos(cos_phi)  # zero cross terms get pi/2 by convention

    slack_a = np.sqrt(max(0.0, 1.0 - float(pa.sum())))
    slack_b_mag = np.sqrt(max(0.0, 1.0 - float(pb.sum())))

    # Residual overlap of the exemplar coordinates; cancel it through the
    # slack coordinates when their magnitudes allow, so <A|B> ~ 0 and the
    # equal superposition is normalized.
    overlap = float(np.sum(cross * cos_phi))
    if slack_a * slack_b_mag > 0.0:
        cos_psi = float(np.clip(-overlap / (slack_a * slack_b_mag), -1.0, 1.0))
        slack_b = slack_b_mag * np.exp(1j * np.arccos(cos_psi))
    else:
        slack_b = complex(slack_b_mag)

    amps_a = np.concatenate([np.sqrt(pa).astype(complex), [slack_a]])
    amps_b = np.concatenate([np.sqrt(pb) * np.exp(1j * phases), [slack_b]])
    amps_a /= np.linalg.norm(amps_a)
    amps_b /= np.linalg.norm(amps_b)

    return ReconstructionResult(
        state_a=ConceptState(amps_a),
        state_b=ConceptState(amps_b),
        phases=phases,
        infeasible_exemplars=tuple(int(i) for i in infeasible),
    )
