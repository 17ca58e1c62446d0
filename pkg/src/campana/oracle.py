"""Brute-force ground truths for the classifier.

These share only integer arithmetic with the code they check: no multiplicities, no
weighted sums, no resultant shortcut.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import factorize, strip_primes
from .enumeration import KINDS, P1Classifier, iter_p1_blocks, points_up_to
from .geometry import OnBoundaryError, OrbifoldModel, ProjectivePoint, evaluate, require_valid
from .predicate import Kind, is_campana

ORACLES = ("squarefull", "s-unit", "constant-true")


class OracleNotApplicable(ValueError):
    pass


@dataclass(frozen=True)
class OracleVerdict:
    point: ProjectivePoint
    expected: bool
    actual: Kind

    @property
    def agree(self) -> bool:
        return self.expected == (self.actual in (Kind.INTEGRAL, Kind.CAMPANA))


def is_squarefull(n: int) -> bool:
    """True iff every prime dividing n does so at least twice (units included)."""
    if n == 0:
        raise ValueError("0 is neither squarefull nor not")
    return all(e >= 2 for e in factorize(n).factors.values())


def squarefull_table(limit: int) -> np.ndarray:
    """Boolean mask of squarefull integers in [0, limit], built from n = a^2 b^3."""
    mask = np.zeros(limit + 1, dtype=bool)
    b = 1
    while b**3 <= limit:
        a = np.arange(1, math.isqrt(limit // b**3) + 1, dtype=np.int64)
        mask[a * a * b**3] = True
        b += 1
    return mask


def campana_oracle_p1_halves(x: ProjectivePoint) -> bool:
    """Campana on (P^1, 1/2 {x0 = 0} + 1/2 {x1 = 0}), S empty: both coordinates squarefull."""
    a, b = x.coords
    if a == 0 or b == 0:
        raise OnBoundaryError(x, 0 if a == 0 else 1)
    return is_squarefull(a) and is_squarefull(b)


def sunit_oracle(m: OrbifoldModel, x: ProjectivePoint) -> bool:
    """For all-zero weights: every F_i(x) is an S-unit."""
    if any(w != 0 for w in m.weights):
        raise OracleNotApplicable("S-unit oracle needs every weight equal to 0")
    values = [evaluate(c, x) for c in m.components]
    for i, v in enumerate(values):
        if v == 0:
            raise OnBoundaryError(x, i)
    return all(strip_primes(v, m.s_primes) == 1 for v in values)


def is_halves_model(m: OrbifoldModel) -> bool:
    if m.ambient_dim != 1 or m.s_primes or len(m.components) != 2:
        return False
    forms = sorted(c.terms for c in m.components)
    coords = sorted(((((1, 0), 1),), (((0, 1), 1),)))
    return forms == coords and all(w == Fraction(1, 2) for w in m.weights)


def check_applicable(m: OrbifoldModel, oracle: str) -> None:
    if oracle not in ORACLES:
        raise OracleNotApplicable(f"unknown oracle {oracle!r}; choose from {ORACLES}")
    if oracle == "squarefull" and not is_halves_model(m):
        raise OracleNotApplicable("squarefull oracle needs (P^1, 1/2 x0 + 1/2 x1) with S empty")
    if oracle == "s-unit" and any(w != 0 for w in m.weights):
        raise OracleNotApplicable("S-unit oracle needs every weight equal to 0")
    if oracle == "constant-true" and any(w != 1 for w in m.weights):
        raise OracleNotApplicable("constant-true oracle needs every weight equal to 1")


def _strip_vec(v: np.ndarray, primes) -> np.ndarray:
    r = np.abs(v)
    for p in primes:
        div = r % p == 0
        while div.any():
            r = np.where(div, r // p, r)
            div = r % p == 0
    return r


def _forms_vec(m: OrbifoldModel, x0: np.ndarray, x1: np.ndarray) -> list[np.ndarray]:
    out = []
    for c in m.components:
        v = np.zeros(x0.shape, dtype=np.int64)
        for (e0, e1), coeff in c.terms:
            v += coeff * x0**e0 * x1**e1
        out.append(v)
    return out


def _expected_p1(m, oracle, x0, x1, sqf):
    if oracle == "squarefull":
        return sqf[np.abs(x0)] & sqf[np.abs(x1)]
    if oracle == "s-unit":
        ok = np.ones(x0.shape, dtype=bool)
        for v in _forms_vec(m, x0, x1):
            ok &= _strip_vec(v, m.s_primes) == 1
        return ok
    return np.ones(x0.shape, dtype=bool)


def _expected_scalar(m, oracle, x) -> bool:
    if oracle == "squarefull":
        return campana_oracle_p1_halves(x)
    if oracle == "s-unit":
        return sunit_oracle(m, x)
    return True


def cross_validate(m: OrbifoldModel, bound: int, oracle: str) -> list[OracleVerdict]:
    """Disagreements between the classifier and `oracle` over all off-boundary points
    of height <= bound. An empty list means full agreement."""
    require_valid(m)
    check_applicable(m, oracle)
    bad: list[OracleVerdict] = []
    if m.ambient_dim == 1:
        clf = P1Classifier(m, bound)
        sqf = squarefull_table(bound) if oracle == "squarefull" else None
        for x0, x1 in iter_p1_blocks(0, bound):
            codes = clf.classify(x0, x1)
            boundary = np.zeros(x0.shape, dtype=bool)
            for v in _forms_vec(m, x0, x1):
                boundary |= v == 0
            x0, x1, codes = x0[~boundary], x1[~boundary], codes[~boundary]
            expected = _expected_p1(m, oracle, x0, x1, sqf)
            actual = codes <= 1  # Integral or Campana
            for i in np.flatnonzero(expected != actual):
                pt = ProjectivePoint((int(x0[i]), int(x1[i])))
                bad.append(OracleVerdict(pt, bool(expected[i]), KINDS[codes[i]]))
        return bad
    for pt in points_up_to(m.ambient_dim, bound):
        if any(evaluate(c, pt) == 0 for c in m.components):
            continue
        v = OracleVerdict(pt, _expected_scalar(m, oracle, pt), is_campana(m, pt).kind)
        if not v.agree:
            bad.append(v)
    return bad
