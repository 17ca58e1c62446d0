"""Elliptic-curve census: semistability and rational torsion levels.

Full level-m structure cannot be read off public torsion tables, so the census uses
a weaker proxy, "E(Q) has a point of order m" (m divides the largest invariant
factor of the torsion subgroup). Every report carries PROXY_CAVEAT.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import os
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import httpx

from .arith import factorize

log = logging.getLogger(__name__)

CACHE_ENV = "CAMPANA_CACHE_DIR"
PROXY_CAVEAT = (
    "level proxy: a curve counts at level m when E(Q) has a rational point of order m "
    "(m divides the largest torsion invariant factor); this is strictly weaker than a "
    "full level-m structure E[m] ~ Z/m x mu_m"
)

# Mazur: the possible rational torsion subgroups of elliptic curves over Q.
VALID_TORSION = frozenset(
    [(n,) for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)] + [(2, 2 * k) for k in (1, 2, 3, 4)]
)


class CensusNetworkError(RuntimeError):
    pass


@dataclass(frozen=True)
class CurveRecord:
    label: str
    conductor: int
    torsion: tuple[int, ...]
    source: str = "local-file"

    def __post_init__(self) -> None:
        if self.conductor < 1:
            raise ValueError(f"{self.label}: conductor must be positive")
        if self.torsion not in VALID_TORSION:
            raise ValueError(f"{self.label}: torsion {list(self.torsion)} impossible over Q")

    @property
    def exponent(self) -> int:
        """Largest invariant factor, i.e. the maximal order of a rational torsion point."""
        return self.torsion[-1]

    def to_dict(self) -> dict:
        return {"label": self.label, "conductor": self.conductor,
                "torsion": list(self.torsion), "source": self.source}


class CurveBatch(list):
    """A list of CurveRecord that also remembers how many input rows were skipped."""

    def __init__(self, records: Iterable[CurveRecord] = (), skipped: int = 0):
        super().__init__(records)
        self.skipped = skipped


def parse_torsion(text) -> tuple[int, ...]:
    """Torsion invariants from "[5]", "[2, 4]", "[]" or a list. The trivial group is (1,)."""
    if isinstance(text, (list, tuple)):
        items = list(text)
    else:
        s = str(text).strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"malformed torsion field {text!r}")
        body = s[1:-1].strip()
        items = [t.strip() for t in body.split(",")] if body else []
    try:
        factors = tuple(int(t) for t in items)
    except (TypeError, ValueError) as err:
        raise ValueError(f"malformed torsion field {text!r}") from err
    if not factors:
        factors = (1,)
    if len(factors) > 2 or any(f < 1 for f in factors):
        raise ValueError(f"malformed torsion field {text!r}")
    if len(factors) == 2 and factors[1] % factors[0]:
        raise ValueError(f"invariant factors {factors} do not divide in sequence")
    return factors


def _record(label, conductor, torsion, source: str) -> CurveRecord:
    return CurveRecord(str(label), int(conductor), parse_torsion(torsion), source)


def read_curve_csv(path, limit: int | None = None) -> CurveBatch:
    """Records from a CSV with columns label,conductor,torsion; bad rows are skipped."""
    out = CurveBatch()
    if limit == 0:
        return out
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = {"label", "conductor", "torsion"} - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"{path}: missing columns {sorted(missing)}")
        for lineno, row in enumerate(reader, start=2):
            try:
                out.append(_record(row["label"], row["conductor"], row["torsion"], "local-file"))
            except (TypeError, ValueError) as err:
                out.skipped += 1
                log.warning("%s:%d: skipping row: %s", path, lineno, err)
                continue
            if limit is not None and len(out) >= limit:
                break
    return out


def write_curve_csv(records: Iterable[CurveRecord], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["label", "conductor", "torsion"])
        for r in records:
            w.writerow([r.label, r.conductor, json.dumps(list(r.torsion))])


# -- remote source -------------------------------------------------------------------

@dataclass
class RemoteConfig:
    """Paged JSON API. `endpoint` is formatted with offset= and limit=."""

    endpoint: str = (
        "https://www.lmfdb.org/api/ec_curvedata/?_format=json"
        "&_fields=lmfdb_label,conductor,torsion_structure"
        "&_sort=conductor,lmfdb_label&_offset={offset}&_max_count={limit}"
    )
    page_size: int = 100
    rate_limit: float = 1.0  # requests per second; 0 disables throttling
    max_retries: int = 4
    backoff: float = 1.0  # seconds, doubled per retry
    timeout: float = 30.0
    label_field: str = "lmfdb_label"
    conductor_field: str = "conductor"
    torsion_field: str = "torsion_structure"
    extra_headers: dict = field(default_factory=dict)


def cache_dir(path=None) -> Path:
    if path is None:
        path = os.environ.get(CACHE_ENV) or Path.home() / ".cache" / "campana"
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p


def _cache_file(directory: Path, url: str) -> Path:
    return directory / (hashlib.sha256(url.encode()).hexdigest()[:24] + ".jsonl")


def _read_cache(path: Path) -> list[dict]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def _write_cache(path: Path, rows: list[dict]) -> None:
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True) + "\n")
    tmp.replace(path)


def _fetch_page(client: httpx.Client, url: str, cfg: RemoteConfig) -> list[dict]:
    delay = cfg.backoff
    last = None
    for attempt in range(cfg.max_retries + 1):
        try:
            resp = client.get(url, timeout=cfg.timeout, headers=cfg.extra_headers)
            resp.raise_for_status()
            payload = resp.json()
            return payload["data"] if isinstance(payload, dict) else payload
        except (httpx.HTTPError, ValueError, KeyError) as err:
            last = err
            if attempt < cfg.max_retries:
                log.warning("fetch %s failed (%s); retrying in %.1fs", url, err, delay)
                time.sleep(delay)
                delay *= 2
    raise CensusNetworkError(
        f"giving up on {url} after {cfg.max_retries + 1} attempts ({last}); "
        f"populate the cache directory (${CACHE_ENV}) or use a local CSV"
    )


def fetch_remote(limit: int, cfg: RemoteConfig | None = None, client: httpx.Client | None = None,
                 cache: Path | str | None = None) -> CurveBatch:
    """Page through the remote API, caching each page as JSON lines keyed by URL hash.

    Pages already in the cache are never refetched, so reruns work offline.
    """
    cfg = cfg or RemoteConfig()
    directory = cache_dir(cache)
    out = CurveBatch()
    own_client = client is None
    client = client or httpx.Client()
    last_request = 0.0
    try:
        offset = 0
        while len(out) < limit:
            size = min(cfg.page_size, limit - len(out))
            url = cfg.endpoint.format(offset=offset, limit=size)
            path = _cache_file(directory, url)
            if path.exists():
                rows = _read_cache(path)
            else:
                if cfg.rate_limit > 0:
                    wait = last_request + 1.0 / cfg.rate_limit - time.monotonic()
                    if wait > 0:
                        time.sleep(wait)
                last_request = time.monotonic()
                rows = _fetch_page(client, url, cfg)
                _write_cache(path, rows)
            for row in rows:
                try:
                    out.append(_record(row[cfg.label_field], row[cfg.conductor_field],
                                       row[cfg.torsion_field], "remote-api"))
                except (KeyError, TypeError, ValueError) as err:
                    out.skipped += 1
                    log.warning("skipping remote row %r: %s", row, err)
                if len(out) >= limit:
                    break
            if len(rows) < size:
                break
            offset += len(rows)
    finally:
        if own_client:
            client.close()
    return out


def ingest(source, limit: int | None = None, **remote) -> CurveBatch:
    """Load curve records from a local CSV path, or from the remote API if source == "remote"."""
    if limit == 0:
        return CurveBatch()
    if source == "remote":
        return fetch_remote(limit if limit is not None else 1000, **remote)
    return read_curve_csv(source, limit)


# -- analysis ------------------------------------------------------------------------

def is_semistable(conductor: int, s_primes: Iterable[int] = ()) -> bool:
    """Squarefree conductor away from S: multiplicative or good reduction at p outside S."""
    if conductor < 1:
        raise ValueError("conductor must be positive")
    skip = set(s_primes)
    return all(e == 1 for p, e in factorize(conductor).factors.items() if p not in skip)


def max_torsion_level(records: Iterable[CurveRecord], semistable_only: bool = False,
                      s_primes: Iterable[int] = ()) -> dict:
    """Per-level counts of curves with a rational point of order m, and the largest such m."""
    s_primes = tuple(s_primes)
    recs = [r for r in records if not semistable_only or is_semistable(r.conductor, s_primes)]
    levels: Counter = Counter()
    structures: Counter = Counter()
    full_two = 0
    for r in recs:
        structures[str(list(r.torsion))] += 1
        for m in range(2, r.exponent + 1):
            if r.exponent % m == 0:
                levels[m] += 1
        if len(r.torsion) == 2:
            full_two += 1
    return {
        "curves": len(recs),
        "semistable_only": semistable_only,
        "levels": {str(m): levels[m] for m in sorted(levels)},
        "max_level": max(levels) if levels else None,
        "torsion_structures": dict(sorted(structures.items())),
        "full_two_torsion": full_two,
    }


def census_report(records: Iterable[CurveRecord], s_primes: Iterable[int] = ()) -> dict:
    recs = list(records)
    s_primes = tuple(sorted(set(s_primes)))
    semistable = sum(is_semistable(r.conductor, s_primes) for r in recs)
    return {
        "caveat": PROXY_CAVEAT,
        "s_primes": list(s_primes),
        "curves": len(recs),
        "semistable_curves": semistable,
        "all": max_torsion_level(recs, False, s_primes),
        "semistable": max_torsion_level(recs, True, s_primes),
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
