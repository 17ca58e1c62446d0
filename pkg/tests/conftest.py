from fractions import Fraction
from pathlib import Path

import pytest

from campana.geometry import OrbifoldModel, coordinate_model, linear_form
from campana.modelfile import load_model

ROOT = Path(__file__).resolve().parents[1]
MODELS = ROOT / "models"
FIXTURE_CSV = ROOT / "data" / "curves_fixture.csv"

HALF = Fraction(1, 2)


def model(name: str) -> OrbifoldModel:
    return load_model(MODELS / f"{name}.toml")


@pytest.fixture
def halves():
    return model("halves")


@pytest.fixture
def five_lines():
    return model("five_lines")


def two_lines(weights=(HALF, HALF), s_primes=()):
    return coordinate_model(1, weights, s_primes)


def lines(coeff_pairs, weight=HALF, s_primes=()):
    return OrbifoldModel(1, [linear_form(c, weight) for c in coeff_pairs], s_primes)
