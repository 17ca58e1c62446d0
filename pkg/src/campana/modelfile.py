"""Read and write orbifold model files (TOML).

Grammar::

    name = "halves"            # optional
    ambient_dim = 1
    s_primes = [2, 3]          # finite part of S; may be empty

    [[components]]
    name = "x0"                # optional
    form = [[1, [1, 0]]]       # list of [coefficient, [e0, ..., en]]
    weight = "1/2"             # fraction string; decimals are rejected

Weights are strings of the form "p/q" or "p". Floats, and strings such as "0.5",
are refused so no rounding can enter the Campana predicate.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

import tomli

from .geometry import DivisorComponent, OrbifoldModel

_FRACTION_RE = re.compile(r"^\s*-?\d+\s*(/\s*\d+\s*)?$")


class ModelFileError(ValueError):
    pass


def parse_fraction(text) -> Fraction:
    """Exact rational from a fraction string such as "1/2"."""
    if not isinstance(text, str) or not _FRACTION_RE.match(text):
        raise ModelFileError(f"expected a fraction string like \"1/2\", got {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError as err:
        raise ModelFileError(f"zero denominator in {text!r}") from err


def parse_fraction_list(text: str) -> list[Fraction]:
    return [parse_fraction(t) for t in text.split(",") if t.strip()]


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as err:
        raise ModelFileError(f"expected comma-separated integers, got {text!r}") from err


def model_from_dict(data: dict) -> OrbifoldModel:
    try:
        n = data["ambient_dim"]
        raw_components = data["components"]
    except KeyError as err:
        raise ModelFileError(f"missing key {err.args[0]!r}") from err
    if not isinstance(n, int) or isinstance(n, bool):
        raise ModelFileError("ambient_dim must be an integer")
    s_primes = data.get("s_primes", [])
    if not isinstance(s_primes, list) or not all(isinstance(p, int) for p in s_primes):
        raise ModelFileError("s_primes must be a list of integers")
    comps = []
    for i, raw in enumerate(raw_components):
        if "form" not in raw or "weight" not in raw:
            raise ModelFileError(f"component {i} needs 'form' and 'weight'")
        terms = []
        for term in raw["form"]:
            if (not isinstance(term, list) or len(term) != 2 or not isinstance(term[0], int)
                    or not isinstance(term[1], list)
                    or not all(isinstance(e, int) for e in term[1])):
                raise ModelFileError(f"component {i}: bad term {term!r}")
            terms.append((tuple(term[1]), term[0]))
        comps.append(DivisorComponent(terms, parse_fraction(raw["weight"]), raw.get("name", "")))
    return OrbifoldModel(n, comps, s_primes, data.get("name", ""))


def parse_model(text: str) -> OrbifoldModel:
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as err:
        raise ModelFileError(f"invalid TOML: {err}") from err
    return model_from_dict(data)


def load_model(path) -> OrbifoldModel:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as err:
        raise ModelFileError(f"cannot read model file {path}: {err}") from err
    model = parse_model(text)
    if not model.name:
        model = OrbifoldModel(model.ambient_dim, model.components, model.s_primes, path.stem)
    return model


def dump_model(m: OrbifoldModel) -> str:
    lines = []
    if m.name:
        lines.append(f'name = "{m.name}"')
    lines.append(f"ambient_dim = {m.ambient_dim}")
    lines.append(f"s_primes = [{', '.join(map(str, m.s_primes))}]")
    for c in m.components:
        terms = ", ".join(f"[{coeff}, [{', '.join(map(str, e))}]]" for e, coeff in c.terms)
        lines += ["", "[[components]]", f'name = "{c.name}"', f"form = [{terms}]",
                  f'weight = "{c.weight}"']
    return "\n".join(lines) + "\n"
