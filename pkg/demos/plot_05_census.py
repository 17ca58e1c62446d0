"""
Torsion levels of semistable elliptic curves
============================================

An empirical look at level structures for g = 1, using rational torsion as a proxy.
The fixture was computed offline; see scripts/make_census_fixture.py.
"""

import json
from pathlib import Path

from campana.census import census_report, read_curve_csv

DATA = Path(__file__).resolve().parents[1] / "data" / "curves_fixture.csv"
records = read_curve_csv(DATA)
report = census_report(records)
print(report["caveat"])
print("curves:", report["curves"], " semistable:", report["semistable_curves"])
print("max level, all curves:", report["all"]["max_level"])
print("max level, semistable:", report["semistable"]["max_level"])
print(json.dumps(report["semistable"]["levels"]))
