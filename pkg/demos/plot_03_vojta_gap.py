"""
Counting functions along Campana points
=======================================

For a Campana point the truncated counting function sits below the weighted one,
which sits below the weighted divisor height plus an explicit constant. All three are
exact sums of logarithms, so the chain is checked without rounding.
"""

from fractions import Fraction
from pathlib import Path

from campana import campana_points, load_model
from campana.heights import lemma_chain, vojta_gap

MODELS = Path(__file__).resolve().parents[1] / "models"
m = load_model(MODELS / "three_points.toml")

pts = campana_points(m, 2000)
bad = [x for x in pts if not all(lemma_chain(m, x)[k] for k in ("first_holds", "second_holds"))]
print(len(pts), "Campana points, chain violations:", len(bad))

gaps = sorted((vojta_gap(m, x, Fraction(1, 10)), x.coords) for x in pts)
print("smallest gaps:", gaps[:3])
print("largest gaps:", gaps[-3:])
