"""Command-line front end.

Exit codes: 0 success, 1 a check failed (verify disagreements, lemma violations),
2 bad model or configuration, 3 point on the boundary, 4 network failure without cache.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .census import CensusNetworkError, RemoteConfig, census_report, ingest, report_json
from .enumeration import TALLY_KEYS, campana_points, count_campana
from .geometry import InvalidModelError, OrbifoldModel, normalize, validate_model
from .heights import (
    bigness_margin,
    counting_N,
    counting_N1,
    divisor_height,
    height_constant,
    log_canonical_degree,
    weil_height,
)
from .modelfile import ModelFileError, load_model, parse_fraction, parse_fraction_list, parse_int_list
from .oracle import ORACLES, OracleNotApplicable, check_applicable, cross_validate
from .predicate import Kind, is_campana

EXIT_OK, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_BOUNDARY, EXIT_NETWORK = 0, 1, 2, 3, 4
DEFAULT_DELTA = Fraction(1, 10)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    model: OrbifoldModel | None = None
    height_bound: int | None = None
    delta: Fraction = DEFAULT_DELTA
    point: tuple[int, ...] | None = None
    out: Path | None = None
    threads: int = 1
    as_json: bool = False
    include_boundary: bool = False
    method: str = "auto"
    oracle: str | None = None
    extra: dict = field(default_factory=dict)


def _model_from_args(args) -> OrbifoldModel:
    if not args.model:
        raise ConfigError("--model is required")
    model = load_model(args.model)
    if getattr(args, "set_s", None) is not None:
        model = model.with_s_primes(parse_int_list(args.set_s))
    if getattr(args, "set_eps", None) is not None:
        model = model.with_weights(parse_fraction_list(args.set_eps))
    report = validate_model(model)
    if not report.ok:
        raise InvalidModelError("; ".join(report.violations))
    return model


def build_config(args) -> RunConfig:
    """Validate every parameter before any computation starts."""
    cfg = RunConfig(command=args.command, as_json=getattr(args, "json", False))
    if args.command != "census":
        cfg.model = _model_from_args(args)
    if getattr(args, "height_bound", None) is not None:
        if args.height_bound < 1:
            raise ConfigError("--height-bound must be >= 1")
        cfg.height_bound = args.height_bound
    if args.command in ("enumerate", "vojta-gap", "verify") and cfg.height_bound is None:
        raise ConfigError("--height-bound is required")
    if cfg.model is not None and cfg.height_bound is not None and cfg.model.ambient_dim not in (1, 2):
        raise ConfigError("enumeration supports ambient_dim 1 or 2")
    if getattr(args, "delta", None) is not None:
        cfg.delta = parse_fraction(args.delta)
        if cfg.delta < 0:
            raise ConfigError("--delta must be >= 0")
    if getattr(args, "point", None) is not None:
        coords = tuple(parse_int_list(args.point))
        if len(coords) != cfg.model.ambient_dim + 1:
            raise ConfigError(f"--point needs {cfg.model.ambient_dim + 1} coordinates")
        if not any(coords):
            raise ConfigError("--point must not be all zero")
        cfg.point = coords
    threads = getattr(args, "threads", None)
    if threads is not None:
        if threads < 1:
            raise ConfigError("--threads must be >= 1")
        cfg.threads = threads
    else:
        cfg.threads = os.cpu_count() or 1
    cfg.out = Path(args.out) if getattr(args, "out", None) else None
    cfg.include_boundary = getattr(args, "include_boundary", False)
    cfg.method = getattr(args, "method", "auto") or "auto"
    cfg.oracle = getattr(args, "oracle", None)
    if args.command == "census":
        if bool(args.csv) == bool(args.remote):
            raise ConfigError("census needs exactly one of --csv PATH or --remote")
        if args.limit is not None and args.limit < 0:
            raise ConfigError("--limit must be >= 0")
        cfg.extra = {
            "csv": args.csv,
            "limit": args.limit,
            "s_primes": parse_int_list(args.set_s) if args.set_s else [],
            "cache": args.cache,
            "remote": _remote_config(args),
        }
    return cfg


def _remote_config(args) -> RemoteConfig:
    cfg = RemoteConfig()
    if args.endpoint:
        if "{offset}" not in args.endpoint or "{limit}" not in args.endpoint:
            raise ConfigError("--endpoint must contain {offset} and {limit}")
        cfg.endpoint = args.endpoint
    for name in ("page_size", "rate_limit", "max_retries"):
        value = getattr(args, name)
        if value is not None:
            if value < 0 or (name == "page_size" and value == 0):
                raise ConfigError(f"--{name.replace('_', '-')} out of range")
            setattr(cfg, name, value)
    return cfg


def _write(path: Path | None, text: str, stdout) -> None:
    if path is None:
        stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


def _write_meta(path: Path | None, started: float, cfg: RunConfig) -> None:
    # timestamps live beside the output, never inside it
    if path is None:
        return
    meta = {
        "command": cfg.command,
        "version": __version__,
        "finished_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "elapsed_seconds": round(time.time() - started, 3),
        "threads": cfg.threads,
    }
    path.with_name(path.name + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n")


# -- subcommands -------------------------------------------------------------------

def run_classify(cfg: RunConfig, stdout) -> int:
    m = cfg.model
    x = normalize(cfg.point)
    cls = is_campana(m, x)
    if cfg.as_json:
        payload = {
            "point": list(x.coords),
            "class": str(cls.kind),
            "witness": cls.witness,
            "component": cls.component,
            "multiplicities": {
                str(p): {"per_component": list(mults), "weighted": str(total)}
                for p, (mults, total) in cls.table.items()
            },
        }
        stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        stdout.write(f"point {x}: {cls}\n")
        if cls.table:
            names = [c.name for c in m.components]
            stdout.write("p\t" + "\t".join(names) + "\tweighted\n")
            for p, (mults, total) in cls.table.items():
                stdout.write(f"{p}\t" + "\t".join(map(str, mults)) + f"\t{total}\n")
    return EXIT_BOUNDARY if cls.kind is Kind.ON_BOUNDARY else EXIT_OK


def _report_payload(report, include_boundary: bool) -> dict:
    d = report.to_dict()
    if not include_boundary:
        for b in d["buckets"]:
            b["total"] -= b.pop("on_boundary")
            b["cum_total"] -= b.pop("cum_on_boundary")
        d["totals"]["total"] -= d["totals"].pop("on_boundary")
    return d


def _report_csv(payload: dict) -> str:
    keys = [k for k in TALLY_KEYS if k in payload["buckets"][0]] if payload["buckets"] else []
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["upper_edge", *keys, *(f"cum_{k}" for k in keys)])
    for b in payload["buckets"]:
        w.writerow([b["upper_edge"], *(b[k] for k in keys), *(b[f"cum_{k}"] for k in keys)])
    return buf.getvalue()


def run_enumerate(cfg: RunConfig, stdout) -> int:
    report = count_campana(cfg.model, cfg.height_bound, threads=cfg.threads, method=cfg.method)
    payload = _report_payload(report, cfg.include_boundary)
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if cfg.out is None:
        if cfg.as_json:
            stdout.write(text)
        else:
            t = payload["totals"]
            stdout.write(
                f"model {cfg.model.name or '?'}  B={cfg.height_bound}  "
                f"bigness_margin={payload['bigness_margin']}\n"
                + "  ".join(f"{k}={t[k]}" for k in t) + "\n"
                + f"campana_total={payload['campana_total']}  theta={payload['theta']}  "
                f"total_theta={payload['total_theta']}\n"
            )
        return EXIT_OK
    base = cfg.out.with_suffix("") if cfg.out.suffix in (".json", ".csv") else cfg.out
    _write(base.with_name(base.name + ".json"), text, stdout)
    _write(base.with_name(base.name + ".csv"), _report_csv(payload), stdout)
    stdout.write(f"wrote {base}.json and {base}.csv\n")
    return EXIT_OK


GAP_COLUMNS = ("point", "height", "h", "N1", "N_eps", "bound", "gap", "chain_holds")


def run_vojta_gap(cfg: RunConfig, stdout) -> int:
    m = cfg.model
    kdeg = log_canonical_degree(m)
    const = height_constant(m)
    violations = 0
    rows = []
    for x in campana_points(m, cfg.height_bound, method=cfg.method):
        h = weil_height(x)
        n1 = counting_N1(m, x)
        n_eps = counting_N(m, x)
        bound = divisor_height(m, x) + const
        holds = n1 <= n_eps and n_eps <= bound
        violations += not holds
        gap = n1 + (cfg.delta - kdeg) * h
        rows.append([" ".join(map(str, x.coords)), x.height, f"{float(h):.12g}",
                     f"{float(n1):.12g}", f"{float(n_eps):.12g}", f"{float(bound):.12g}",
                     f"{float(gap):.12g}", int(holds)])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(GAP_COLUMNS)
    w.writerows(rows)
    summary = {
        "model": m.summary(),
        "height_bound": cfg.height_bound,
        "delta": str(cfg.delta),
        "log_canonical_degree": kdeg,
        "bigness_margin": str(bigness_margin(m)),
        "campana_points": len(rows),
        "lemma_violations": violations,
        "min_gap": min((float(r[6]) for r in rows), default=None),
    }
    if cfg.out is not None:
        _write(cfg.out, buf.getvalue(), stdout)
        _write(cfg.out.with_name(cfg.out.name + ".summary.json"),
               json.dumps(summary, indent=2, sort_keys=True) + "\n", stdout)
    elif not cfg.as_json:
        stdout.write(buf.getvalue())
    if cfg.as_json:
        stdout.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    else:
        stdout.write(f"# {len(rows)} Campana points, lemma violations: {violations}\n")
    return EXIT_OK if violations == 0 else EXIT_CHECK_FAILED


def _pick_oracle(m: OrbifoldModel) -> str:
    for name in ORACLES:
        try:
            check_applicable(m, name)
            return name
        except OracleNotApplicable:
            continue
    raise OracleNotApplicable("no oracle applies to this model")


def run_verify(cfg: RunConfig, stdout) -> int:
    oracle = cfg.oracle or _pick_oracle(cfg.model)
    bad = cross_validate(cfg.model, cfg.height_bound, oracle)
    payload = {
        "model": cfg.model.summary(),
        "height_bound": cfg.height_bound,
        "oracle": oracle,
        "disagreements": len(bad),
        "examples": [
            {"point": list(v.point.coords), "expected": v.expected, "actual": str(v.actual)}
            for v in bad[:20]
        ],
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if cfg.out is not None:
        _write(cfg.out, text, stdout)
    if cfg.as_json:
        stdout.write(text)
    else:
        stdout.write(f"oracle {oracle}, B={cfg.height_bound}: {len(bad)} disagreements\n")
    return EXIT_OK if not bad else EXIT_CHECK_FAILED


def run_census(cfg: RunConfig, stdout) -> int:
    ex = cfg.extra
    if ex["csv"]:
        records = ingest(ex["csv"], ex["limit"])
    else:
        records = ingest("remote", ex["limit"], cfg=ex["remote"], cache=ex["cache"])
    report = census_report(records, ex["s_primes"])
    report["skipped_rows"] = records.skipped
    text = report_json(report)
    if cfg.out is not None:
        _write(cfg.out, text, stdout)
    if cfg.as_json or cfg.out is None:
        stdout.write(text)
    return EXIT_OK


COMMANDS = {
    "classify": run_classify,
    "enumerate": run_enumerate,
    "vojta-gap": run_vojta_gap,
    "verify": run_verify,
    "census": run_census,
}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="campana", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, bound=True):
        p.add_argument("--model", required=True, help="model file (TOML)")
        p.add_argument("--set-s", help="override S, comma-separated primes ('' for empty)")
        p.add_argument("--set-eps", help="override weights, comma-separated fractions")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--out", help="output path")
        if bound:
            p.add_argument("--height-bound", type=int, required=True)
            p.add_argument("--threads", type=int, help="worker processes (default: all cores)")
            p.add_argument("--method", choices=("auto", "sweep", "sieve"), default="auto")

    p = sub.add_parser("classify", help="classify one point")
    common(p, bound=False)
    p.add_argument("--point", required=True, help="comma-separated integer coordinates")

    p = sub.add_parser("enumerate", help="count Campana points up to a height bound")
    common(p)
    p.add_argument("--include-boundary", action="store_true",
                   help="also tally points lying on the boundary")

    p = sub.add_parser("vojta-gap", help="height vs gap table over Campana points")
    common(p)
    p.add_argument("--delta", default=str(DEFAULT_DELTA), help="fraction >= 0 (default 1/10)")

    p = sub.add_parser("verify", help="exhaustive cross-check against a brute-force oracle")
    common(p)
    p.add_argument("--oracle", choices=ORACLES)

    p = sub.add_parser("census", help="elliptic-curve torsion census")
    p.add_argument("--csv", help="local CSV with label,conductor,torsion")
    p.add_argument("--remote", action="store_true", help="fetch from the remote API (cached)")
    p.add_argument("--limit", type=int)
    p.add_argument("--cache", help="cache directory (default: $CAMPANA_CACHE_DIR)")
    p.add_argument("--endpoint", help="URL template with {offset} and {limit}")
    p.add_argument("--page-size", type=int)
    p.add_argument("--rate-limit", type=float, help="requests per second (0: unthrottled)")
    p.add_argument("--max-retries", type=int)
    p.add_argument("--set-s", help="primes allowed bad additive reduction")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    return parser


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_CONFIG if err.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    started = time.time()
    try:
        cfg = build_config(args)
        code = COMMANDS[cfg.command](cfg, stdout)
    except (ConfigError, ModelFileError, InvalidModelError, OracleNotApplicable,
            FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except CensusNetworkError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NETWORK
    _write_meta(cfg.out, started, cfg)
    return code


if __name__ == "__main__":
    sys.exit(main())
