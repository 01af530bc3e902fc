"""Classical (Kolmogorovian) representability of membership triples and C/D/K typing.

A triple (mu_a, mu_b, mu_or) admits a classical probability representation
iff the max-rule deviation is <= 0 and the additivity factor is >= 0. The
two violations are mutually exclusive for weights in [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .dataset import MembershipTriple


class ExemplarType(str, Enum):
    CLASSICAL = "C"
    DELTA = "D"
    KOLMOGOROV = "K"


@dataclass(frozen=True)
class ClassicalityReport:
    delta_d: float
    k_d: float
    kind: ExemplarType


@dataclass(frozen=True)
class KolmogorovWitness:
    """Probabilities of the four atoms A&B, A&!B, !A&B, !A&!B of a finite sample space."""

    p11: float
    p10: float
    p01: float
    p00: float

    def __post_init__(self) -> None:
        atoms = (self.p11, self.p10, self.p01, self.p00)
        if any(p < 0.0 or p > 1.0 for p in atoms):
            raise ValueError(f"atom probabilities must be in [0, 1]: {atoms}")
        if abs(sum(atoms) - 1.0) > 1e-12:
            raise ValueError(f"atom probabilities must sum to 1, got {sum(atoms)!r}")

    @property
    def mu_a(self) -> float:
        return self.p11 + self.p10

    @property
    def mu_b(self) -> float:
        return self.p11 + self.p01

    @property
    def mu_or(self) -> float:
        return self.p11 + self.p10 + self.p01


def delta_d(t: MembershipTriple) -> float:
    """Max-rule deviation: max(mu_a, mu_b) - mu_or. Positive means underextension."""
    return max(t.mu_a, t.mu_b) - t.mu_or


def k_d(t: MembershipTriple) -> float:
    """Additivity factor: mu_a + mu_b - mu_or. Negative breaks classical additivity."""
    return (t.mu_a + t.mu_b) - t.mu_or


def classify(t: MembershipTriple, tol: float = 0.0) -> ClassicalityReport:
    """Label a triple C (classical), D (max-rule violation) or K (additivity violation).

    Ties (delta_d == 0 or k_d == 0) count as classical; tol widens the
    classical band to absorb float noise from computed pipelines.
    """
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol}")
    dd = delta_d(t)
    kd = k_d(t)
    if dd > tol:
        kind = ExemplarType.DELTA
    elif kd < -tol:
        kind = ExemplarType.KOLMOGOROV
    else:
        kind = ExemplarType.CLASSICAL
    return ClassicalityReport(delta_d=dd, k_d=kd, kind=kind)


def kolmogorov_oracle(t: MembershipTriple) -> KolmogorovWitness | None:
    """Construct the (unique) four-atom probability space reproducing the triple.

    The marginal constraints pin down all four atoms:
        p11 = mu_a + mu_b - mu_or, p10 = mu_or - mu_b,
        p01 = mu_or - mu_a,        p00 = 1 - mu_or.
    Returns None when any atom is negative, i.e. exactly when no classical
    representation exists. Agrees with classify(t, tol=0) by construction:
    p11 >= 0 is the additivity condition and p10, p01 >= 0 the max rule.
    """
    p11 = (t.mu_a + t.mu_b) - t.mu_or
    p10 = t.mu_or - t.mu_b
    p01 = t.mu_or - t.mu_a
    p00 = 1.0 - t.mu_or
    if p11 < 0.0 or p10 < 0.0 or p01 < 0.0 or p00 < 0.0:
        return None
    return KolmogorovWitness(p11=p11, p10=p10, p01=p01, p00=p00)
