"""The weighted Campana condition and point classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import factorize
from .geometry import OnBoundaryError, OrbifoldModel, ProjectivePoint, evaluate


class Kind(enum.Enum):
    INTEGRAL = "Integral"
    CAMPANA = "Campana"
    NON_CAMPANA = "NonCampana"
    ON_BOUNDARY = "OnBoundary"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class PointClass:
    """Classification of a point.

    `witness` is the first prime violating the condition for NON_CAMPANA; `component`
    is the index of a vanishing form for ON_BOUNDARY. `table` maps each support prime
    to (per-component multiplicities, weighted sum).
    """

    kind: Kind
    witness: int | None = None
    component: int | None = None
    table: dict[int, tuple[tuple[int, ...], Fraction]] = field(default_factory=dict, compare=False)

    @property
    def satisfies_condition(self) -> bool:
        """True for Integral and Campana points (the condition holds, possibly vacuously)."""
        return self.kind in (Kind.INTEGRAL, Kind.CAMPANA)

    def __str__(self) -> str:
        if self.kind is Kind.NON_CAMPANA:
            return f"{self.kind} (witness p={self.witness})"
        if self.kind is Kind.ON_BOUNDARY:
            return f"{self.kind} (component {self.component})"
        return str(self.kind)


def _factored_values(m: OrbifoldModel, x: ProjectivePoint):
    out = []
    for i, c in enumerate(m.components):
        v = evaluate(c, x)
        if v == 0:
            raise OnBoundaryError(x, i)
        out.append(factorize(v).factors)
    return out


def support_primes(m: OrbifoldModel, x: ProjectivePoint) -> tuple[int, ...]:
    """Primes outside S dividing some F_i(x), ascending."""
    s = set(m.s_primes)
    found = set()
    for factors in _factored_values(m, x):
        found.update(p for p in factors if p not in s)
    return tuple(sorted(found))


def is_campana(m: OrbifoldModel, x: ProjectivePoint) -> PointClass:
    """Classify x: the condition requires weighted multiplicity >= 1 at every support prime.

    Ties at exactly 1 count as Campana.
    """
    try:
        factored = _factored_values(m, x)
    except OnBoundaryError as err:
        return PointClass(Kind.ON_BOUNDARY, component=err.component)
    s = set(m.s_primes)
    support = sorted({p for f in factored for p in f if p not in s})
    if not support:
        return PointClass(Kind.INTEGRAL)
    weights = m.weights
    table = {}
    witness = None
    for p in support:
        mults = tuple(f.get(p, 0) for f in factored)
        total = sum((w * e for w, e in zip(weights, mults)), Fraction(0))
        table[p] = (mults, total)
        if total < 1 and witness is None:
            witness = p
    if witness is not None:
        return PointClass(Kind.NON_CAMPANA, witness=witness, table=table)
    return PointClass(Kind.CAMPANA, table=table)


classify = is_campana
