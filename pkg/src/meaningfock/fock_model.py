"""Two-sector disjunction model: evaluation, feasibility and parameter fitting.

The disjunction weight is modeled as a convex mix of a product-rule sector
and an averaging sector carrying an interference term:

    mu_or = m2 * (mu_a + mu_b - mu_a*mu_b)
          + (1 - m2) * ((mu_a + mu_b)/2 + sqrt(1-mu_a)*sqrt(1-mu_b)*cos(theta))

with m2 in [0, 1] and theta in [0, pi]. One equation, two unknowns: fitting
needs a selection rule, exposed here as explicit strategies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dataset import MembershipTriple

_SLACK = 1e-12


class NotRepresentableError(ValueError):
    """mu_or cannot be produced by any admissible (m2, theta) for these weights."""


class DegenerateInterferenceError(ValueError):
    """The interference term has zero coefficient, so theta cannot be solved."""


def _check_unit(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must be in [0, 1], got {value!r}")


@dataclass(frozen=True)
class FockFit:
    """Fitted sector weights and interference angle, plus |predicted - observed|."""

    m2: float
    n2: float
    theta: float  # radians, in [0, pi]
    residual: float

    def __post_init__(self) -> None:
        _check_unit("m2", self.m2)
        _check_unit("n2", self.n2)
        if abs(self.m2 + self.n2 - 1.0) > 1e-12:
            raise ValueError(f"m2 + n2 must equal 1, got {self.m2 + self.n2!r}")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must be in [0, pi], got {self.theta!r}")
        if self.residual < 0.0:
            raise ValueError("residual must be >= 0")

    @property
    def theta_degrees(self) -> float:
        return math.degrees(self.theta)


@dataclass(frozen=True)
class FeasibleRegion:
    """Attainable range of the disjunction formula over m2 in [0,1], theta in [0,pi].

    sector2_value is the product-rule term X, sector1_center the average Y,
    sector1_halfwidth the maximal interference magnitude Z. The raw interval
    [mu_min, mu_max] = [min(X, Y-Z), max(X, Y+Z)] may extend below 0; the
    clamped property intersects it with [0, 1].
    """

    sector2_value: float
    sector1_center: float
    sector1_halfwidth: float
    mu_min: float
    mu_max: float

    @property
    def clamped(self) -> tuple[float, float]:
        return (max(0.0, self.mu_min), min(1.0, self.mu_max))

    def contains(self, mu_or: float, slack: float = _SLACK) -> bool:
        return self.mu_min - slack <= mu_or <= self.mu_max + slack


@dataclass(frozen=True)
class MinSector2:
    """Prefer the smallest sector-2 weight (pure interference where possible)."""


@dataclass(frozen=True)
class FixedTheta:
    theta: float  # radians

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must be in [0, pi], got {self.theta!r}")


@dataclass(frozen=True)
class FixedM2:
    m2: float

    def __post_init__(self) -> None:
        _check_unit("m2", self.m2)


FitStrategy = MinSector2 | FixedTheta | FixedM2


def interference_term(mu_a: float, mu_b: float, theta: float) -> float:
    """sqrt(1-mu_a) * sqrt(1-mu_b) * cos(theta)."""
    _check_unit("mu_a", mu_a)
    _check_unit("mu_b", mu_b)
    return math.sqrt(1.0 - mu_a) * math.sqrt(1.0 - mu_b) * math.cos(theta)


def predict_disjunction(mu_a: float, mu_b: float, m2: float, theta: float) -> float:
    """Evaluate the two-sector disjunction formula."""
    _check_unit("m2", m2)
    sector2 = mu_a + mu_b - mu_a * mu_b
    sector1 = (mu_a + mu_b) / 2.0 + interference_term(mu_a, mu_b, theta)
    return m2 * sector2 + (1.0 - m2) * sector1


def feasible_region(mu_a: float, mu_b: float) -> FeasibleRegion:
    """Compute X, Y, Z and the attainable interval of the disjunction formula."""
    _check_unit("mu_a", mu_a)
    _check_unit("mu_b", mu_b)
    x = mu_a + mu_b - mu_a * mu_b
    y = (mu_a + mu_b) / 2.0
    z = math.sqrt(1.0 - mu_a) * math.sqrt(1.0 - mu_b)
    return FeasibleRegion(
        sector2_value=x,
        sector1_center=y,
        sector1_halfwidth=z,
        mu_min=min(x, y - z),
        mu_max=max(x, y + z),
    )


def _clamp(v: float, lo: float, hi: float) -> float:
    return max(lo, min(hi, v))


def _fit_min_sector2(mu_or: float, region: FeasibleRegion) -> tuple[float, float]:
    x, y, z = region.sector2_value, region.sector1_center, region.sector1_halfwidth
    if z > 0.0:
        cos_t = _clamp((mu_or - y) / z, -1.0, 1.0)
        theta = math.acos(cos_t)
        sector1 = y + z * cos_t
    else:
        theta = 0.0  # unidentifiable, reported as 0 by convention
        sector1 = y
    if x == sector1:
        if abs(mu_or - sector1) <= _SLACK:
            return 0.0, theta
        raise NotRepresentableError(
            f"mu_or={mu_or!r} unreachable: both sectors predict {sector1!r}")
    m2 = _clamp((mu_or - sector1) / (x - sector1), 0.0, 1.0)
    return m2, theta


def _fit_fixed_theta(mu_or: float, region: FeasibleRegion, theta: float) -> tuple[float, float]:
    x = region.sector2_value
    sector1 = region.sector1_center + region.sector1_halfwidth * math.cos(theta)
    if x == sector1:
        if abs(mu_or - sector1) <= _SLACK:
            return 0.0, theta  # any m2 works; smallest kept for determinism
        raise NotRepresentableError(
            f"mu_or={mu_or!r} unreachable at theta={theta!r}: "
            f"formula is constant {sector1!r}")
    m2 = (mu_or - sector1) / (x - sector1)
    if m2 < -_SLACK or m2 > 1.0 + _SLACK:
        raise NotRepresentableError(
            f"mu_or={mu_or!r} needs m2={m2!r} outside [0, 1] at theta={theta!r}")
    return _clamp(m2, 0.0, 1.0), theta


def _fit_fixed_m2(mu_or: float, region: FeasibleRegion, m2: float) -> tuple[float, float]:
    x, y, z = region.sector2_value, region.sector1_center, region.sector1_halfwidth
    base = m2 * x + (1.0 - m2) * y
    coeff = (1.0 - m2) * z
    if coeff == 0.0:
        if abs(mu_or - base) <= _SLACK:
            return m2, 0.0  # theta unidentifiable, reported as 0
        raise DegenerateInterferenceError(
            f"interference coefficient (1-m2)*Z is 0 (m2={m2!r}, Z={z!r}); "
            f"cannot reach mu_or={mu_or!r} from {base!r}")
    cos_t = (mu_or - base) / coeff
    if abs(cos_t) > 1.0 + _SLACK:
        raise NotRepresentableError(
            f"mu_or={mu_or!r} needs cos(theta)={cos_t!r} outside [-1, 1] at m2={m2!r}")
    return m2, math.acos(_clamp(cos_t, -1.0, 1.0))


def fit(t: MembershipTriple, strategy: FitStrategy = MinSector2()) -> FockFit:
    """Solve the disjunction formula for (m2, theta) under the given strategy.

    Raises NotRepresentableError when mu_or is outside the feasible interval
    (or outside the strategy's one-parameter slice of it), and
    DegenerateInterferenceError when the strategy must solve for theta but
    the interference coefficient vanishes.
    """
    region = feasible_region(t.mu_a, t.mu_b)
    if not region.contains(t.mu_or):
        raise NotRepresentableError(
            f"{t.pair_id}/{t.exemplar}: mu_or={t.mu_or!r} outside attainable "
            f"interval [{region.mu_min!r}, {region.mu_max!r}]")
    if isinstance(strategy, MinSector2):
        m2, theta = _fit_min_sector2(t.mu_or, region)
    elif isinstance(strategy, FixedTheta):
        m2, theta = _fit_fixed_theta(t.mu_or, region, strategy.theta)
    elif isinstance(strategy, FixedM2):
        m2, theta = _fit_fixed_m2(t.mu_or, region, strategy.m2)
    else:
        raise TypeError(f"unknown fit strategy: {strategy!r}")
    residual = abs(predict_disjunction(t.mu_a, t.mu_b, m2, theta) - t.mu_or)
    return FockFit(m2=m2, n2=1.0 - m2, theta=theta, residual=residual)


# Published worked example for this model family: weights (0.5, 0.9, 0.7)
# with reported parameters m2=0.26, theta=77.34 degrees and claimed value 0.7.
PUBLISHED_EXAMPLE = {
    "mu_a": 0.5,
    "mu_b": 0.9,
    "m2": 0.26,
    "theta_deg": 77.34,
    "claimed_mu_or": 0.7,
}


@dataclass(frozen=True)
class PublishedExampleAudit:
    computed_mu_or: float
    claimed_mu_or: float

    @property
    def discrepancy(self) -> float:
        return abs(self.computed_mu_or - self.claimed_mu_or)


def audit_published_example() -> PublishedExampleAudit:
    """Evaluate the formula at the published example parameters.

    Direct evaluation does not reproduce the claimed disjunction weight (the
    reported parameters presumably come from a richer underlying model), so
    this returns the discrepancy for inspection instead of asserting equality.
    """
    ex = PUBLISHED_EXAMPLE
    computed = predict_disjunction(ex["mu_a"], ex["mu_b"], ex["m2"],
                                   math.radians(ex["theta_deg"]))
    return PublishedExampleAudit(computed_mu_or=computed,
                                 claimed_mu_or=ex["claimed_mu_or"])
