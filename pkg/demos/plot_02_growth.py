"""
How fast do Campana points grow?
================================

On the half-weighted line the Campana count up to height B grows roughly linearly,
while all rational points grow like B^2. With five half-weighted points the divisor
K + sum (1 - eps_i) D_i is big, and the points should not be dense.
"""

from pathlib import Path

from campana import count_campana, load_model

MODELS = Path(__file__).resolve().parents[1] / "models"

halves = count_campana(load_model(MODELS / "halves.toml"), 100_000)
print("halves   theta =", halves.theta, " total theta =", halves.total_theta)
for edge, cum in zip(halves.edges, halves.cumulative):
    print(f"{edge:>7}  {cum['integral'] + cum['campana']:>7}  {cum['total']:>11}")

five = count_campana(load_model(MODELS / "five_lines.toml"), 20_000)
print("five lines: bigness margin", five.bigness_margin, " Campana points", five.campana_total)

# The report is also a CSV, one row per dyadic height bucket
print(halves.to_csv().splitlines()[0])
