"""Orbifold models (P^n over Z, boundary forms, weights, finite primes S) and primitive points."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .arith import is_prime


class InvalidModelError(ValueError):
    """Raised when an operation needs a model that fails validation."""


class OnBoundaryError(ValueError):
    """The point lies on a boundary component, so some multiplicity is infinite."""

    def __init__(self, point, component: int):
        self.point = point
        self.component = component
        super().__init__(f"point {point} lies on component {component}")


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    """Canonical primitive representative: gcd 1, first nonzero coordinate positive."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        c = tuple(int(v) for v in self.coords)
        object.__setattr__(self, "coords", c)
        if not any(c):
            raise ValueError("all-zero coordinates do not define a projective point")
        if math.gcd(*c) != 1:
            raise ValueError(f"{c} is not primitive; use normalize()")
        if next(v for v in c if v) < 0:
            raise ValueError(f"{c} is not sign-normalized; use normalize()")

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    @property
    def height(self) -> int:
        """max |x_j|, the exponential of the standard Weil height."""
        return max(abs(v) for v in self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.coords)) + ")"


def normalize(raw: Sequence[int]) -> ProjectivePoint:
    """Primitive, sign-normalized representative of the point with coordinates `raw`.

    >>> normalize((-3, -6))
    ProjectivePoint(coords=(1, 2))
    """
    raw = tuple(int(v) for v in raw)
    if not any(raw):
        raise ValueError("all-zero coordinates do not define a projective point")
    g = math.gcd(*raw)
    if next(v for v in raw if v) < 0:
        g = -g
    return ProjectivePoint(tuple(v // g for v in raw))


def _as_fraction(w) -> Fraction:
    if isinstance(w, float):
        raise TypeError("weights must be exact rationals, not floats")
    return Fraction(w)


@dataclass(frozen=True)
class DivisorComponent:
    """A homogeneous integral form with an exact weight in [0, 1].

    `terms` maps exponent vectors to integer coefficients; zero coefficients are dropped.
    """

    terms: tuple[tuple[tuple[int, ...], int], ...]
    weight: Fraction = Fraction(1)
    name: str = ""

    def __init__(self, terms, weight=Fraction(1), name: str = ""):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        merged: dict[tuple[int, ...], int] = {}
        for exps, coeff in items:
            exps = tuple(int(e) for e in exps)
            merged[exps] = merged.get(exps, 0) + int(coeff)
        cleaned = tuple(sorted((e, c) for e, c in merged.items() if c != 0))
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "weight", _as_fraction(weight))
        object.__setattr__(self, "name", name or _form_to_str(cleaned))

    @property
    def arity(self) -> int:
        return len(self.terms[0][0]) if self.terms else 0

    @property
    def degree(self) -> int:
        return sum(self.terms[0][0]) if self.terms else 0

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    @property
    def content(self) -> int:
        return reduce(math.gcd, (abs(c) for _, c in self.terms), 0)

    @property
    def l1_norm(self) -> int:
        """Sum of absolute coefficients; |F(x)| <= l1_norm * max|x_j|**degree."""
        return sum(abs(c) for _, c in self.terms)

    def with_weight(self, weight) -> "DivisorComponent":
        return DivisorComponent(self.terms, weight, self.name)

    def binary_coefficients(self) -> list[int]:
        """Coefficients a_0..a_d of sum a_k x0^(d-k) x1^k for a binary form."""
        if self.arity != 2:
            raise ValueError("not a binary form")
        d = self.degree
        coeffs = [0] * (d + 1)
        for (e0, e1), c in self.terms:
            coeffs[e1] = c
        return coeffs

    def __str__(self) -> str:
        return self.name


def _form_to_str(terms) -> str:
    parts = []
    for exps, c in terms:
        mono = "*".join(
            f"x{j}" if e == 1 else f"x{j}^{e}" for j, e in enumerate(exps) if e
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


def linear_form(coeffs: Sequence[int], weight=Fraction(1), name: str = "") -> DivisorComponent:
    """The hyperplane sum coeffs[j] * x_j."""
    n = len(coeffs)
    terms = {tuple(int(i == j) for i in range(n)): c for j, c in enumerate(coeffs)}
    return DivisorComponent(terms, weight, name)


@dataclass(frozen=True)
class OrbifoldModel:
    ambient_dim: int
    components: tuple[DivisorComponent, ...]
    s_primes: tuple[int, ...] = ()
    name: str = ""

    def __init__(self, ambient_dim: int, components: Iterable[DivisorComponent],
                 s_primes: Iterable[int] = (), name: str = ""):
        object.__setattr__(self, "ambient_dim", int(ambient_dim))
        object.__setattr__(self, "components", tuple(components))
        object.__setattr__(self, "s_primes", tuple(sorted(set(int(p) for p in s_primes))))
        object.__setattr__(self, "name", name)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(c.weight for c in self.components)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(c.degree for c in self.components)

    def with_weights(self, weights: Sequence) -> "OrbifoldModel":
        if len(weights) != len(self.components):
            raise ValueError("one weight per component is required")
        comps = [c.with_weight(w) for c, w in zip(self.components, weights)]
        return OrbifoldModel(self.ambient_dim, comps, self.s_primes, self.name)

    def with_s_primes(self, s_primes: Iterable[int]) -> "OrbifoldModel":
        return OrbifoldModel(self.ambient_dim, self.components, s_primes, self.name)

    def summary(self) -> dict:
        return {
            "name": self.name,
            "ambient_dim": self.ambient_dim,
            "components": [
                {"form": str(c), "degree": c.degree, "weight": str(c.weight)}
                for c in self.components
            ],
            "s_primes": list(self.s_primes),
        }


def evaluate(form: DivisorComponent, x: ProjectivePoint | Sequence[int]) -> int:
    """Exact integer value of `form` at the coordinates of `x`."""
    coords = x.coords if isinstance(x, ProjectivePoint) else tuple(x)
    if len(coords) != form.arity:
        raise ValueError(
            f"form {form} takes {form.arity} coordinates, point has {len(coords)}"
        )
    total = 0
    for exps, c in form.terms:
        term = c
        for v, e in zip(coords, exps):
            if e:
                term *= v**e
        total += term
    return total


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(f: DivisorComponent, g: DivisorComponent) -> int:
    """Resultant of two binary forms (Sylvester determinant)."""
    a, b = f.binary_coefficients(), g.binary_coefficients()
    d, e = len(a) - 1, len(b) - 1
    size = d + e
    rows = []
    for i in range(e):
        rows.append([0] * i + a + [0] * (size - d - 1 - i))
    for i in range(d):
        rows.append([0] * i + b + [0] * (size - e - 1 - i))
    return _bareiss_det(rows)


def _proportional(f: DivisorComponent, g: DivisorComponent) -> bool:
    fe, ge = dict(f.terms), dict(g.terms)
    if fe.keys() != ge.keys() or not fe:
        return False
    k = next(iter(fe))
    return all(fe[m] * ge[k] == ge[m] * fe[k] for m in fe)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_model(m: OrbifoldModel) -> ValidationReport:
    """Check every model invariant; failures are listed with component indices."""
    report = ValidationReport()
    bad = report.violations
    n = m.ambient_dim
    if n < 1:
        bad.append(f"ambient_dim must be >= 1, got {n}")
    if not m.components:
        bad.append("model has no boundary components")
    for p in m.s_primes:
        if not is_prime(p):
            bad.append(f"S contains non-prime {p}")
    shape_ok = []
    for i, c in enumerate(m.components):
        ok = True
        if not c.terms:
            bad.append(f"component {i}: zero form")
            ok = False
        elif c.arity != n + 1:
            bad.append(f"component {i}: form has {c.arity} variables, expected {n + 1}")
            ok = False
        elif not c.is_homogeneous:
            bad.append(f"component {i}: form is not homogeneous")
            ok = False
        elif any(e < 0 for exps, _ in c.terms for e in exps):
            bad.append(f"component {i}: negative exponent")
            ok = False
        elif c.degree < 1:
            bad.append(f"component {i}: degree must be >= 1")
            ok = False
        if c.terms and c.content != 1:
            bad.append(f"component {i}: content {c.content} != 1")
        if not 0 <= c.weight <= 1:
            bad.append(f"component {i}: weight {c.weight} outside [0, 1]")
        shape_ok.append(ok)
    for i, j in combinations(range(len(m.components)), 2):
        f, g = m.components[i], m.components[j]
        if not (shape_ok[i] and shape_ok[j]):
            continue
        if _proportional(f, g):
            bad.append(f"components {i} and {j} are proportional")
        elif n == 1 and resultant(f, g) == 0:
            bad.append(f"components {i} and {j} share a root (resultant 0)")
    return report


def require_valid(m: OrbifoldModel) -> OrbifoldModel:
    report = validate_model(m)
    if not report.ok:
        raise InvalidModelError("; ".join(report.violations))
    return m


def coordinate_model(n: int, weights: Sequence, s_primes: Iterable[int] = (),
                     name: str = "") -> OrbifoldModel:
    """P^n with the coordinate hyperplanes x_j = 0 weighted by `weights`."""
    comps = [
        linear_form([int(i == j) for i in range(n + 1)], w, f"x{j}")
        for j, w in enumerate(weights)
    ]
    return OrbifoldModel(n, comps, s_primes, name)
