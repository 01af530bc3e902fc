"""Similarity-to-membership threshold model.

Membership is 0 up to s_l, 1 from s_h on, and an S-curve of two quadratic
pieces joined at s_t (value 0.5) in between. The exact quadratic used in the
literature is not published; this smooth monotone interpolant is one
defensible choice and is injected through a single function so alternatives
can be swapped in.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ThresholdParams:
    s_l: float
    s_t: float
    s_h: float

    def __post_init__(self) -> None:
        if not self.s_l < self.s_t < self.s_h:
            raise ValueError(f"thresholds must satisfy s_l < s_t < s_h, "
                             f"got ({self.s_l}, {self.s_t}, {self.s_h})")


def membership(s: float, params: ThresholdParams) -> float:
    """Map a similarity to a membership weight in [0, 1].

    Boundaries are inclusive: membership(s_l) == 0 and membership(s_h) == 1;
    membership(s_t) == 0.5 by construction.
    """
    if s <= params.s_l:
        return 0.0
    if s >= params.s_h:
        return 1.0
    if s <= params.s_t:
        r = (s - params.s_l) / (params.s_t - params.s_l)
        return 0.5 * r * r
    r = (params.s_h - s) / (params.s_h - params.s_t)
    return 1.0 - 0.5 * r * r
