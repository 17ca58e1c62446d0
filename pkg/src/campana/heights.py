"""Counting functions, Weil heights and the Vojta gap as exact formal sums of logarithms.

All heights are fixed representatives of their classes modulo bounded functions:
h(x) = log max|x_j|, h_D = deg(D) * h, h_{K_X(D)} = (sum d_i - n - 1) * h.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Sequence

import mpmath

from .arith import factorize
from .geometry import OnBoundaryError, OrbifoldModel, ProjectivePoint, evaluate

GUARD_BAND = mpmath.mpf("1e-30")
_EXACT_BIT_LIMIT = 1 << 20


class LogSum:
    """A finite sum  sum_b c_b * log(b)  with integer bases b >= 2 and rational c_b.

    Arithmetic and comparison are exact; float() is only for output.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean: dict[int, Fraction] = {}
        for b, c in (terms or {}).items():
            b = int(b)
            if b < 1:
                raise ValueError(f"log base must be a positive integer, got {b}")
            if isinstance(c, float):
                raise TypeError("LogSum coefficients must be exact")
            c = Fraction(c)
            if b == 1 or c == 0:
                continue
            clean[b] = clean.get(b, Fraction(0)) + c
        self._terms = {b: c for b, c in sorted(clean.items()) if c != 0}

    @classmethod
    def log(cls, n: int, coeff=1) -> "LogSum":
        return cls({abs(int(n)): coeff})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def canonical(self) -> "LogSum":
        """Same value with every base split into primes."""
        out: dict[int, Fraction] = {}
        for b, c in self._terms.items():
            for p, e in factorize(b).factors.items():
                out[p] = out.get(p, Fraction(0)) + c * e
        return LogSum(out)

    def __add__(self, other: "LogSum") -> "LogSum":
        if not isinstance(other, LogSum):
            return NotImplemented
        t = dict(self._terms)
        for b, c in other._terms.items():
            t[b] = t.get(b, Fraction(0)) + c
        return LogSum(t)

    def __neg__(self) -> "LogSum":
        return LogSum({b: -c for b, c in self._terms.items()})

    def __sub__(self, other: "LogSum") -> "LogSum":
        if not isinstance(other, LogSum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k) -> "LogSum":
        if isinstance(k, float):
            raise TypeError("LogSum scalars must be exact")
        k = Fraction(k)
        return LogSum({b: c * k for b, c in self._terms.items()})

    __rmul__ = __mul__

    def __float__(self) -> float:
        return float(sum(float(c) * math.log(b) for b, c in self._terms.items()))

    def to_mpf(self, dps: int = 60):
        with mpmath.workdps(dps):
            return mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * mpmath.log(b)
                               for b, c in self._terms.items())

    def is_zero(self) -> bool:
        return not self.canonical()._terms

    def sign(self) -> int:
        """Exact sign of the value."""
        t = self.canonical()._terms
        if not t:
            return 0
        if all(c > 0 for c in t.values()):
            return 1
        if all(c < 0 for c in t.values()):
            return -1
        # sum c_p log p > 0  <=>  prod p^(D c_p) over c_p > 0 exceeds the rest
        den = math.lcm(*(c.denominator for c in t.values()))
        bits = sum(abs(c * den) * p.bit_length() for p, c in t.items())
        if bits <= _EXACT_BIT_LIMIT:
            pos = neg = 1
            for p, c in t.items():
                e = int(c * den)
                if e > 0:
                    pos *= p**e
                else:
                    neg *= p ** (-e)
            return (pos > neg) - (pos < neg)
        value = LogSum(t).to_mpf()
        if abs(value) < GUARD_BAND:
            raise ArithmeticError("LogSum sign undecidable within the 1e-30 guard band")
        return 1 if value > 0 else -1

    def dominated_by(self, other: "LogSum") -> bool:
        """Coefficient-wise <= over the common prime support (sufficient for <=)."""
        a, b = self.canonical()._terms, other.canonical()._terms
        return all(a.get(p, 0) <= b.get(p, 0) for p in set(a) | set(b))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogSum):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash(tuple(self.canonical()._terms.items()))

    def __lt__(self, other: "LogSum") -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: "LogSum") -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: "LogSum") -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: "LogSum") -> bool:
        return (self - other).sign() >= 0

    def __repr__(self) -> str:
        if not self._terms:
            return "LogSum(0)"
        return "LogSum(" + " + ".join(f"{c}*log({b})" for b, c in self._terms.items()) + ")"


def _weights(m: OrbifoldModel, weights) -> tuple[Fraction, ...]:
    if weights is None:
        return m.weights
    if len(weights) != len(m.components):
        raise ValueError("one weight per component is required")
    out = []
    for w in weights:
        if isinstance(w, float):
            raise TypeError("weights must be exact rationals")
        out.append(Fraction(w))
    return tuple(out)


def counting_N(m: OrbifoldModel, x: ProjectivePoint, weights: Sequence | None = None) -> LogSum:
    """sum over p outside S of (weighted multiplicity at p) * log p. Defaults to the model weights."""
    w = _weights(m, weights)
    s = set(m.s_primes)
    terms: dict[int, Fraction] = {}
    for i, (c, wi) in enumerate(zip(m.components, w)):
        if wi == 0:
            continue
        v = evaluate(c, x)
        if v == 0:
            raise OnBoundaryError(x, i)
        for p, e in factorize(v).factors.items():
            if p not in s:
                terms[p] = terms.get(p, Fraction(0)) + wi * e
    return LogSum(terms)


def counting_N1(m: OrbifoldModel, x: ProjectivePoint) -> LogSum:
    """Truncated counting function: sum of log p over support primes outside S."""
    s = set(m.s_primes)
    support: set[int] = set()
    for i, c in enumerate(m.components):
        v = evaluate(c, x)
        if v == 0:
            raise OnBoundaryError(x, i)
        support.update(p for p in factorize(v).factors if p not in s)
    return LogSum({p: 1 for p in support})


def weil_height(x: ProjectivePoint) -> LogSum:
    return LogSum.log(x.height)


def divisor_degree(m: OrbifoldModel, weights: Sequence | None = None) -> Fraction:
    return sum((wi * d for wi, d in zip(_weights(m, weights), m.degrees)), Fraction(0))


def divisor_height(m: OrbifoldModel, x: ProjectivePoint, weights: Sequence | None = None) -> LogSum:
    return divisor_degree(m, weights) * weil_height(x)


def height_constant(m: OrbifoldModel, weights: Sequence | None = None) -> LogSum:
    """sum_i w_i log ||F_i||_1, the explicit O(1) bounding N(D_w, x) by the divisor height."""
    total = LogSum()
    for c, wi in zip(m.components, _weights(m, weights)):
        total = total + LogSum.log(c.l1_norm, wi)
    return total


def log_canonical_degree(m: OrbifoldModel) -> int:
    """Degree of K_X + D on P^n."""
    return sum(m.degrees) - m.ambient_dim - 1


def bigness_margin(m: OrbifoldModel) -> Fraction:
    """Degree of K_X + sum (1 - w_i) D_i; the divisor is big iff this is positive."""
    return sum(((1 - c.weight) * c.degree for c in m.components), Fraction(0)) - (m.ambient_dim + 1)


def vojta_gap(m: OrbifoldModel, x: ProjectivePoint, delta=Fraction(0)) -> float:
    """N1(D, x) - h_{K_X(D)}(x) + delta * h(x) with H = O(1)."""
    if isinstance(delta, float):
        raise TypeError("delta must be an exact rational")
    delta = Fraction(delta)
    gap = counting_N1(m, x) + (delta - log_canonical_degree(m)) * weil_height(x)
    return float(gap)


def lemma_chain(m: OrbifoldModel, x: ProjectivePoint) -> dict:
    """The three sides of  N1 <= N(D_eps) <= h_{D_eps} + C  and exact verdicts."""
    n1 = counting_N1(m, x)
    n_eps = counting_N(m, x)
    bound = divisor_height(m, x) + height_constant(m)
    return {
        "N1": n1,
        "N_eps": n_eps,
        "bound": bound,
        "first_holds": n1 <= n_eps,
        "second_holds": n_eps <= bound,
    }
