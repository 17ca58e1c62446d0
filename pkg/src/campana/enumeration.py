"""Bounded-height enumeration of P^n(Q) and counting reports for Campana sets.

On P^1 the sweep classifies whole height ranges at once with numpy. It is exact
because of one fact about binary forms: if a prime p divides F_i(x) and F_j(x) for
a primitive x, then p divides Res(F_i, F_j). Away from S and the resultant primes,
each prime touches at most one component, and the condition there reduces to
v_p(F_i(x)) >= ceil(1 / eps_i). The few remaining primes are checked directly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .arith import factorize, primes_up_to, totients_up_to
from .geometry import (
    OrbifoldModel,
    ProjectivePoint,
    evaluate,
    normalize,
    require_valid,
    resultant,
)
from .heights import bigness_margin
from .predicate import Kind, is_campana

KINDS = (Kind.INTEGRAL, Kind.CAMPANA, Kind.NON_CAMPANA, Kind.ON_BOUNDARY)
CODE = {k: i for i, k in enumerate(KINDS)}
TALLY_KEYS = ("total", "integral", "campana", "non_campana", "on_boundary")
MIN_FIT_COUNT = 10
_INF_EXP = 127
_TABLE_LIMIT = 1 << 23
_INT64_SAFE = 1 << 62
_ROW_BLOCK = 1 << 21


# -- point streams ---------------------------------------------------------------

def coprime_pairs(bound: int) -> Iterator[tuple[int, int]]:
    """All (m, k) with bound >= m > k >= 1 and gcd(m, k) = 1, each exactly once.

    Walks the ternary tree rooted at (2, 1) and (3, 1) with children
    (2m - k, m), (2m + k, m), (m + 2k, k); every child has a larger first entry,
    so subtrees are pruned as soon as m exceeds the bound. No gcd is computed.
    """
    stack = [(3, 1), (2, 1)]
    while stack:
        m, k = stack.pop()
        if m > bound:
            continue
        yield m, k
        stack.append((m + 2 * k, k))
        stack.append((2 * m + k, m))
        stack.append((2 * m - k, m))


def points_up_to(n: int, bound: int) -> Iterator[ProjectivePoint]:
    """Every point of P^n(Q) with max|x_j| <= bound once, canonical form, fixed order."""
    if bound < 1:
        raise ValueError("height bound must be >= 1")
    if n == 1:
        for c in ((1, 0), (0, 1), (1, 1), (1, -1)):
            yield ProjectivePoint(c)
        for m, k in coprime_pairs(bound):
            yield ProjectivePoint((m, k))
            yield ProjectivePoint((m, -k))
            yield ProjectivePoint((k, m))
            yield ProjectivePoint((k, -m))
    elif n == 2:
        r = range(-bound, bound + 1)
        yield ProjectivePoint((0, 0, 1))
        for x1 in range(1, bound + 1):
            for x2 in r:
                if math.gcd(x1, x2) == 1:
                    yield ProjectivePoint((0, x1, x2))
        for x0 in range(1, bound + 1):
            for x1 in r:
                g = math.gcd(x0, x1)
                for x2 in r:
                    if math.gcd(g, x2) == 1:
                        yield ProjectivePoint((x0, x1, x2))
    else:
        raise ValueError(f"enumeration supports n in {{1, 2}}, got {n}")


def p1_rows(lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
    """Coordinates of all P^1 points with lo < height <= hi, ordered by height."""
    xs0, xs1 = [], []
    if lo < 1 <= hi:
        xs0.append(np.array([1, 0, 1, 1], dtype=np.int64))
        xs1.append(np.array([0, 1, 1, -1], dtype=np.int64))
    for m in range(max(lo + 1, 2), hi + 1):
        k = np.arange(1, m, dtype=np.int64)
        k = k[np.gcd(k, m) == 1]
        mm = np.full(k.size, m, dtype=np.int64)
        xs0.append(np.concatenate([mm, mm, k, k]))
        xs1.append(np.concatenate([k, -k, mm, -mm]))
    if not xs0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    return np.concatenate(xs0), np.concatenate(xs1)


def iter_p1_blocks(lo: int, hi: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """p1_rows(lo, hi) cut into consecutive blocks of about _ROW_BLOCK points."""
    start = lo
    while start < hi:
        # height m contributes ~2.4 m points
        step = max(1, min(hi - start, math.isqrt(start * start + _ROW_BLOCK // 2) - start))
        x0, x1 = p1_rows(start, start + step)
        start += step
        if x0.size:
            yield x0, x1


def p1_point_counts(bound: int) -> np.ndarray:
    """counts[h] = number of P^1 points of height exactly h (4 phi(h) for h >= 2)."""
    phi = totients_up_to(bound)
    counts = 4 * phi
    counts[0] = 0
    if bound >= 1:
        counts[1] = 4
    return counts


# -- exact vectorised classification on P^1 --------------------------------------

@lru_cache(maxsize=8)
def min_exponent_table(limit: int, excluded: tuple[int, ...]) -> np.ndarray:
    """table[v] = min over primes p | v, p not excluded, of v_p(v); 127 if there is none."""
    table = np.full(limit + 1, _INF_EXP, dtype=np.int8)
    if limit < 2:
        return table
    skip = set(excluded)
    for p in primes_up_to(limit):
        if p in skip:
            continue
        e = np.ones(limit // p, dtype=np.int8)
        q = p * p
        while q <= limit:
            step = q // p
            e[step - 1 :: step] += 1
            q *= p
        seg = table[p::p]
        np.minimum(seg, e, out=seg)
    return table


@lru_cache(maxsize=1 << 16)
def _min_exponent_scalar(v: int, excluded: tuple[int, ...]) -> int:
    exps = [e for p, e in factorize(v).factors.items() if p not in excluded]
    return min(exps) if exps else _INF_EXP


def _eval_vec(form, x0: np.ndarray, x1: np.ndarray) -> np.ndarray:
    out = np.zeros(x0.shape, dtype=np.int64)
    for (e0, e1), c in form.terms:
        out += c * x0**e0 * x1**e1
    return out


class P1Classifier:
    """Exact batch classifier for models on P^1 with heights up to `bound`."""

    def __init__(self, model: OrbifoldModel, bound: int):
        require_valid(model)
        if model.ambient_dim != 1:
            raise ValueError("P1Classifier needs a model on P^1")
        self.model = model
        comps = model.components
        self.vectorized = all(c.l1_norm * bound**c.degree < _INT64_SAFE for c in comps)
        res_primes: set[int] = set()
        for f, g in combinations(comps, 2):
            res_primes.update(factorize(resultant(f, g)).factors)
        s = set(model.s_primes)
        self.excluded = tuple(sorted(s | res_primes))
        self.check_primes = tuple(sorted(res_primes - s))
        weights = model.weights
        self.scale = math.lcm(*(w.denominator for w in weights)) if weights else 1
        self.int_weights = tuple(int(w * self.scale) for w in weights)
        self.required = tuple(
            -(-self.scale // w) if w else _INF_EXP for w in self.int_weights
        )
        self.max_value = max(c.l1_norm * bound**c.degree for c in comps)
        self._table = None
        self._vp = {}
        if self.vectorized and self.max_value <= _TABLE_LIMIT:
            limit = int(self.max_value)
            self._table = min_exponent_table(limit, self.excluded)
            for p in self.check_primes:
                vp = np.zeros(limit + 1, dtype=np.int8)
                q = p
                while q <= limit:
                    vp[q::q] += 1
                    q *= p
                self._vp[p] = vp

    def valuations(self, values: np.ndarray, p: int) -> np.ndarray:
        """v_p of each nonzero entry."""
        if p in self._vp:
            return self._vp[p][np.abs(values)].astype(np.int64)
        r = np.abs(values)
        e = np.zeros(r.shape, dtype=np.int64)
        div = r % p == 0
        while div.any():
            e += div
            r = np.where(div, r // p, r)
            div = r % p == 0
        return e

    def min_exponents(self, values: np.ndarray) -> np.ndarray:
        a = np.abs(values)
        if self._table is not None:
            return self._table[a]
        uniq, inv = np.unique(a, return_inverse=True)
        mins = np.array(
            [_min_exponent_scalar(int(v), self.excluded) if v else _INF_EXP for v in uniq],
            dtype=np.int16,
        )
        return mins[inv]

    def classify(self, x0: np.ndarray, x1: np.ndarray) -> np.ndarray:
        """Kind codes (index into KINDS) for the points (x0[i], x1[i])."""
        if not self.vectorized:
            return np.array(
                [CODE[is_campana(self.model, ProjectivePoint((int(a), int(b)))).kind]
                 for a, b in zip(x0, x1)],
                dtype=np.int8,
            )
        values = [_eval_vec(c, x0, x1) for c in self.model.components]
        boundary = np.zeros(x0.shape, dtype=bool)
        for v in values:
            boundary |= v == 0
        ok = np.ones(x0.shape, dtype=bool)
        outside = np.zeros(x0.shape, dtype=bool)
        for v, k in zip(values, self.required):
            me = self.min_exponents(np.where(v == 0, 1, v))
            outside |= me < _INF_EXP
            ok &= me >= k
        for p in self.check_primes:
            acc = np.zeros(x0.shape, dtype=np.int64)
            touched = np.zeros(x0.shape, dtype=bool)
            for v, w in zip(values, self.int_weights):
                e = self.valuations(np.where(v == 0, 1, v), p)
                acc += w * e
                touched |= e > 0
            outside |= touched
            ok &= ~touched | (acc >= self.scale)
        codes = np.where(ok, CODE[Kind.CAMPANA], CODE[Kind.NON_CAMPANA])
        codes = np.where(ok & ~outside, CODE[Kind.INTEGRAL], codes)
        codes = np.where(boundary, CODE[Kind.ON_BOUNDARY], codes)
        return codes.astype(np.int8)


def classify_points(model: OrbifoldModel, points: Sequence[ProjectivePoint]) -> list[Kind]:
    """Kinds for a list of points; vectorised on P^1, scalar otherwise."""
    if not points:
        return []
    if model.ambient_dim == 1:
        bound = max(p.height for p in points)
        clf = P1Classifier(model, bound)
        x = np.array([p.coords for p in points], dtype=np.int64)
        return [KINDS[c] for c in clf.classify(x[:, 0], x[:, 1])]
    return [is_campana(model, p).kind for p in points]


# -- boundary points on P^1 ---------------------------------------------------------

def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).factors.items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


def boundary_points(model: OrbifoldModel, bound: int) -> list[ProjectivePoint]:
    """All P^1 points of height <= bound lying on some component."""
    found = set()
    for form in model.components:
        for pt in form_zeros_p1(form):
            if pt.height <= bound:
                found.add(pt)
    return sorted(found)


def form_zeros_p1(form) -> list[ProjectivePoint]:
    """Rational zeros (a : b) of a binary form, by the rational root theorem."""
    coeffs = form.binary_coefficients()  # coefficient of x0^(d-k) x1^k at index k
    zeros = set()
    d = len(coeffs) - 1
    # b = 0: the point (1 : 0) is a zero iff the x0^d coefficient vanishes
    if coeffs[0] == 0:
        zeros.add(ProjectivePoint((1, 0)))
    # a = 0: the point (0 : 1) is a zero iff the x1^d coefficient vanishes
    if coeffs[d] == 0:
        zeros.add(ProjectivePoint((0, 1)))
    # a, b both nonzero: dehomogenise t = a / b, strip zero roots and infinity
    nz = [k for k, c in enumerate(coeffs) if c]
    top, bottom = coeffs[nz[0]], coeffs[nz[-1]]
    for a in _divisors(abs(bottom)):
        for b in _divisors(abs(top)):
            for sa in (a, -a):
                if math.gcd(sa, b) == 1 and evaluate(form, (sa, b)) == 0:
                    zeros.add(normalize((sa, b)))
    return sorted(zeros)


# -- reports ------------------------------------------------------------------------

def bucket_edges(bound: int) -> list[int]:
    """Upper edges 1, 2, 4, ..., clipped at bound; bucket k is (edges[k-1], edges[k]]."""
    edges = [1]
    while edges[-1] < bound:
        edges.append(min(edges[-1] * 2, bound))
    return edges


def bucket_index(heights: np.ndarray) -> np.ndarray:
    """ceil(log2 h) as an integer, i.e. the bit length of h - 1."""
    h = np.asarray(heights, dtype=np.int64) - 1
    return np.frexp(h.astype(np.float64))[1].astype(np.int64)


def _fit_exponent(edges, cumulative, per_bucket) -> tuple[float | None, float | None]:
    idx = [k for k in range(len(edges)) if per_bucket[k] >= MIN_FIT_COUNT and cumulative[k] > 0]
    if len(idx) < 2:
        return None, None
    x = np.log(np.array([edges[k] for k in idx], dtype=float))
    y = np.log(np.array([cumulative[k] for k in idx], dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    return round(float(slope), 12), round(float(math.exp(intercept)), 12)


@dataclass
class CountingReport:
    model: dict
    height_bound: int
    edges: list[int]
    tallies: list[dict[str, int]]
    bigness_margin: str
    theta: float | None = None
    coefficient: float | None = None
    total_theta: float | None = None
    method: str = "sweep"
    lines: list[dict] = field(default_factory=list)

    @property
    def cumulative(self) -> list[dict[str, int]]:
        run = dict.fromkeys(TALLY_KEYS, 0)
        out = []
        for t in self.tallies:
            run = {k: run[k] + t[k] for k in TALLY_KEYS}
            out.append(dict(run))
        return out

    @property
    def campana_total(self) -> int:
        """Points satisfying the condition (Integral plus Campana) up to the bound."""
        return sum(t["integral"] + t["campana"] for t in self.tallies)

    def totals(self) -> dict[str, int]:
        return self.cumulative[-1] if self.tallies else dict.fromkeys(TALLY_KEYS, 0)

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "height_bound": self.height_bound,
            "bigness_margin": self.bigness_margin,
            "method": self.method,
            "buckets": [
                {"upper_edge": e, **t, **{f"cum_{k}": c[k] for k in TALLY_KEYS}}
                for e, t, c in zip(self.edges, self.tallies, self.cumulative)
            ],
            "totals": self.totals(),
            "campana_total": self.campana_total,
            "theta": self.theta,
            "coefficient": self.coefficient,
            "total_theta": self.total_theta,
            "lines": self.lines,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["upper_edge", *TALLY_KEYS, *(f"cum_{k}" for k in TALLY_KEYS)])
        for e, t, c in zip(self.edges, self.tallies, self.cumulative):
            w.writerow([e, *(t[k] for k in TALLY_KEYS), *(c[k] for k in TALLY_KEYS)])
        return buf.getvalue()


def _build_report(model, bound, counts: np.ndarray, method: str) -> CountingReport:
    """counts has shape (buckets, 4): integral, campana, non_campana, on_boundary."""
    edges = bucket_edges(bound)
    tallies = []
    for row in counts:
        t = {"integral": int(row[0]), "campana": int(row[1]),
             "non_campana": int(row[2]), "on_boundary": int(row[3])}
        t["total"] = sum(t.values())
        tallies.append({k: t[k] for k in TALLY_KEYS})
    sat = [t["integral"] + t["campana"] for t in tallies]
    cum_sat = np.cumsum(sat).tolist()
    theta, coeff = _fit_exponent(edges, cum_sat, sat)
    tot = [t["total"] for t in tallies]
    total_theta, _ = _fit_exponent(edges, np.cumsum(tot).tolist(), tot)
    return CountingReport(
        model=model.summary(),
        height_bound=bound,
        edges=edges,
        tallies=tallies,
        bigness_margin=str(bigness_margin(model)),
        theta=theta,
        coefficient=coeff,
        total_theta=total_theta,
        method=method,
    )


def _height_chunks(bound: int, parts: int) -> list[tuple[int, int]]:
    # split (0, bound] into ranges of roughly equal point counts (~ h^2)
    cuts = sorted({0, bound, *(int(bound * math.sqrt(i / parts)) for i in range(1, parts))})
    return list(zip(cuts[:-1], cuts[1:]))


def _sweep_range(args) -> np.ndarray:
    model, bound, lo, hi = args
    nb = len(bucket_edges(bound))
    counts = np.zeros((nb, 4), dtype=np.int64)
    if model.ambient_dim == 1:
        clf = P1Classifier(model, bound)
        for x0, x1 in iter_p1_blocks(lo, hi):
            codes = clf.classify(x0, x1)
            b = bucket_index(np.maximum(np.abs(x0), np.abs(x1)))
            counts += np.bincount(b * 4 + codes, minlength=nb * 4).reshape(nb, 4)
    else:
        for pt in points_up_to(model.ambient_dim, bound):
            h = pt.height
            if not lo < h <= hi:
                continue
            k = (h - 1).bit_length()
            counts[k, CODE[is_campana(model, pt).kind]] += 1
    return counts


def _sieve_pair(model: OrbifoldModel):
    """Two linear components with 0 < eps < 1 to generate candidates from, if any."""
    best = None
    for i, j in combinations(range(len(model.components)), 2):
        ci, cj = model.components[i], model.components[j]
        if ci.degree != 1 or cj.degree != 1:
            continue
        if not (0 < ci.weight < 1 and 0 < cj.weight < 1):
            continue
        score = ci.weight + cj.weight
        if best is None or score < best[0]:
            best = (score, i, j)
    return None if best is None else best[1:]


def _allowed_values(clf: P1Classifier, i: int, limit: int) -> np.ndarray:
    table = min_exponent_table(limit, clf.excluded)
    vals = np.flatnonzero(table >= clf.required[i])
    vals = vals[vals > 0].astype(np.int64)
    return np.concatenate([-vals[::-1], vals])


def sieve_candidates(model: OrbifoldModel, bound: int) -> tuple[np.ndarray, np.ndarray]:
    """A superset of the P^1 points of height <= bound satisfying the condition.

    Every such point has F_i(x) in the set of values whose exponents at primes
    outside S and the resultant primes are all >= ceil(1/eps_i); pairs of values
    of two linear components are inverted back to points.
    """
    pair = _sieve_pair(model)
    if pair is None or model.ambient_dim != 1:
        raise ValueError("sieve needs two linear components with weights in (0, 1)")
    clf = P1Classifier(model, bound)
    i, j = pair
    (a, b), (c, d) = (model.components[k].binary_coefficients() for k in (i, j))
    det = a * d - b * c
    us = _allowed_values(clf, i, (abs(a) + abs(b)) * bound)
    vs = _allowed_values(clf, j, (abs(c) + abs(d)) * bound)
    out0, out1 = [], []
    chunk = max(1, (1 << 22) // max(vs.size, 1))
    for s in range(0, us.size, chunk):
        u = us[s : s + chunk, None]
        v = vs[None, :]
        n0 = d * u - b * v
        n1 = a * v - c * u
        keep = (n0 % det == 0) & (n1 % det == 0)
        x0, x1 = n0[keep] // det, n1[keep] // det
        keep = (np.maximum(np.abs(x0), np.abs(x1)) <= bound) & ((x0 > 0) | ((x0 == 0) & (x1 > 0)))
        x0, x1 = x0[keep], x1[keep]
        keep = np.gcd(x0, x1) == 1
        out0.append(x0[keep])
        out1.append(x1[keep])
    x0 = np.concatenate(out0) if out0 else np.zeros(0, dtype=np.int64)
    x1 = np.concatenate(out1) if out1 else np.zeros(0, dtype=np.int64)
    order = np.lexsort((x1, x0, np.maximum(np.abs(x0), np.abs(x1))))
    return x0[order], x1[order]


def _sieve_counts(model: OrbifoldModel, bound: int) -> np.ndarray:
    edges = bucket_edges(bound)
    counts = np.zeros((len(edges), 4), dtype=np.int64)
    x0, x1 = sieve_candidates(model, bound)
    codes = P1Classifier(model, bound).classify(x0, x1)
    b = bucket_index(np.maximum(np.abs(x0), np.abs(x1)))
    for code in (CODE[Kind.INTEGRAL], CODE[Kind.CAMPANA]):
        sel = codes == code
        np.add.at(counts, (b[sel], code), 1)
    for pt in boundary_points(model, bound):
        counts[(pt.height - 1).bit_length(), CODE[Kind.ON_BOUNDARY]] += 1
    per_height = p1_point_counts(bound)
    totals = np.zeros(len(edges), dtype=np.int64)
    np.add.at(totals, bucket_index(np.arange(1, bound + 1)), per_height[1:])
    counts[:, CODE[Kind.NON_CAMPANA]] = totals - counts.sum(axis=1)
    return counts


def choose_method(model: OrbifoldModel, bound: int, method: str = "auto") -> str:
    if method not in ("auto", "sweep", "sieve"):
        raise ValueError(f"unknown method {method!r}")
    sieve_ok = model.ambient_dim == 1 and _sieve_pair(model) is not None
    if method == "sieve" and not sieve_ok:
        raise ValueError("sieve method not applicable to this model")
    if method == "auto":
        return "sieve" if sieve_ok and bound > 2000 else "sweep"
    return method


def count_campana(model: OrbifoldModel, bound: int, threads: int = 1,
                  method: str = "auto") -> CountingReport:
    """Classify every point of height <= bound and tally by dyadic height bucket.

    threads > 1 splits the height range across worker processes; the merge is a sum,
    so the report does not depend on the split.
    """
    require_valid(model)
    if bound < 1:
        raise ValueError("height bound must be >= 1")
    if model.ambient_dim not in (1, 2):
        raise ValueError("counting supports n in {1, 2}")
    method = choose_method(model, bound, method)
    if method == "sieve":
        counts = _sieve_counts(model, bound)
    else:
        parts = max(1, threads)
        jobs = [(model, bound, lo, hi) for lo, hi in _height_chunks(bound, parts)]
        if parts == 1:
            results = [_sweep_range(j) for j in jobs]
        else:
            with ProcessPoolExecutor(max_workers=parts) as ex:
                results = list(ex.map(_sweep_range, jobs))
        counts = sum(results[1:], results[0].copy())
    report = _build_report(model, bound, counts, method)
    if model.ambient_dim == 2:
        report.lines = collinear_lines(campana_points(model, bound), top=5)
    return report


def campana_points(model: OrbifoldModel, bound: int, method: str = "auto",
                   kinds=(Kind.INTEGRAL, Kind.CAMPANA)) -> list[ProjectivePoint]:
    """Points of height <= bound whose class is in `kinds`, ordered by (height, coords)."""
    require_valid(model)
    if not set(kinds) <= {Kind.INTEGRAL, Kind.CAMPANA}:
        method = "sweep"
    method = choose_method(model, bound, method)
    if model.ambient_dim == 1:
        if method == "sieve":
            x0, x1 = sieve_candidates(model, bound)
        else:
            x0, x1 = p1_rows(0, bound)
        codes = P1Classifier(model, bound).classify(x0, x1)
        wanted = np.isin(codes, [CODE[k] for k in kinds])
        pts = [ProjectivePoint((int(a), int(b))) for a, b in zip(x0[wanted], x1[wanted])]
    else:
        pts = [p for p in points_up_to(model.ambient_dim, bound)
               if is_campana(model, p).kind in kinds]
    return sorted(pts, key=lambda p: (p.height, p.coords))


def _normalize_rows(v: np.ndarray) -> np.ndarray:
    g = np.gcd(np.gcd(v[:, 0], v[:, 1]), v[:, 2])
    v = v // g[:, None]
    lead = np.where(v[:, 0] != 0, v[:, 0], np.where(v[:, 1] != 0, v[:, 1], v[:, 2]))
    return v * np.sign(lead)[:, None]


def collinear_lines(points: Sequence[ProjectivePoint], top: int = 5) -> list[dict]:
    """Lines of P^2 through at least 3 of the points, most populated first.

    The line through points i < j is the normalised cross product, so collinearity is
    exact. A line is counted at its first point i, where it shows up once for each
    later point on it.
    """
    pts = np.array([p.coords for p in points], dtype=np.int64).reshape(-1, 3)
    found: dict[tuple[int, ...], int] = {}
    if len(pts) < 3:
        return []
    side = 4 * int(np.abs(pts).max()) ** 2 + 1  # > 2 max abs(cross coordinate)
    packed_ok = side**3 < 2**62
    for i in range(len(pts) - 2):
        cross = _normalize_rows(np.cross(pts[i], pts[i + 1:]))
        if packed_ok:
            keys = ((cross[:, 0] * side) + cross[:, 1]) * side + cross[:, 2]
            uniq, first, counts = np.unique(keys, return_index=True, return_counts=True)
            rows, counts = cross[first[counts >= 2]], counts[counts >= 2]
        else:
            rows, counts = np.unique(cross, axis=0, return_counts=True)
            rows, counts = rows[counts >= 2], counts[counts >= 2]
        for line, c in zip(rows.tolist(), counts.tolist()):
            found.setdefault(tuple(line), c + 1)
    rich = sorted(((n, line) for line, n in found.items()), key=lambda t: (-t[0], t[1]))
    return [{"line": list(line), "points": n} for n, line in rich[:top]]
