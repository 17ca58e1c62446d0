"""
Classifying points on an orbifold line
======================================

The simplest orbifold is the projective line with half-weights on 0 and infinity.
A point (a : b) is Campana exactly when a and b are both squarefull.
"""

from pathlib import Path

from campana import is_campana, load_model, normalize

MODELS = Path(__file__).resolve().parents[1] / "models"
halves = load_model(MODELS / "halves.toml")
print(halves.summary())

# (8 : 9) has v_2 = 3 and v_3 = 2, so the weighted sums are 3/2 and 1
for raw in [(8, 9), (2, 3), (72, -25), (1, 1)]:
    c = is_campana(halves, normalize(raw))
    print(raw, c.kind, {p: str(total) for p, (_, total) in c.table.items()})

# Points on the boundary are reported, not rejected
print(is_campana(halves, normalize((0, 7))))

# Raising one weight to 1 makes that coordinate unconstrained
lenient = halves.with_weights([1, "1/2"])
print(is_campana(lenient, normalize((2, 9))).kind)
