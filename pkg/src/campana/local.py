"""Intersection multiplicities of an integral point with the boundary components at a prime.

For P^n over Z, a primitive point x and a content-1 form F_i, the pullback of the
ideal of the component along x is generated by F_i(x), so the multiplicity at p is
the p-adic valuation of F_i(x).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import valuation
from .geometry import OnBoundaryError, OrbifoldModel, ProjectivePoint, evaluate


@dataclass(frozen=True)
class MultiplicityVector:
    point: ProjectivePoint
    prime: int
    entries: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.entries)


def component_values(m: OrbifoldModel, x: ProjectivePoint) -> tuple[int, ...]:
    """F_i(x) for every component; raises OnBoundaryError if any vanishes."""
    values = tuple(evaluate(c, x) for c in m.components)
    for i, v in enumerate(values):
        if v == 0:
            raise OnBoundaryError(x, i)
    return values


def _check_prime(m: OrbifoldModel, p: int) -> None:
    if p in m.s_primes:
        raise ValueError(f"prime {p} is in S; multiplicities are only defined outside S")


def multiplicity(m: OrbifoldModel, x: ProjectivePoint, p: int, i: int) -> int:
    """n_p(D_i, x) = v_p(F_i(x))."""
    _check_prime(m, p)
    value = evaluate(m.components[i], x)
    if value == 0:
        raise OnBoundaryError(x, i)
    return valuation(p, value)


def multiplicity_vector(m: OrbifoldModel, x: ProjectivePoint, p: int) -> MultiplicityVector:
    _check_prime(m, p)
    values = component_values(m, x)
    return MultiplicityVector(x, p, tuple(valuation(p, v) for v in values))


def weighted_multiplicity(m: OrbifoldModel, x: ProjectivePoint, p: int,
                          weights: Sequence | None = None) -> Fraction:
    """sum_i weights[i] * n_p(D_i, x), exactly. Defaults to the model's own weights.

    Components with zero weight are skipped, so a point on such a component is accepted.
    """
    _check_prime(m, p)
    if weights is None:
        weights = m.weights
    if len(weights) != len(m.components):
        raise ValueError("one weight per component is required")
    total = Fraction(0)
    for i, (c, w) in enumerate(zip(m.components, weights)):
        w = Fraction(w)
        if w == 0:
            continue
        value = evaluate(c, x)
        if value == 0:
            raise OnBoundaryError(x, i)
        total += w * valuation(p, value)
    return total
