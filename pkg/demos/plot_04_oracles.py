"""
Checking the classifier against brute force
===========================================

Three cases have an answer that needs no valuations at all: half-weights on two
points (squarefull pairs), all weights 0 (S-units) and all weights 1 (everything).
"""

from pathlib import Path

from campana.modelfile import load_model
from campana.oracle import cross_validate

MODELS = Path(__file__).resolve().parents[1] / "models"

print("squarefull:", len(cross_validate(load_model(MODELS / "halves.toml"), 3000, "squarefull")))

m = load_model(MODELS / "two_points_s23.toml")
print("s-unit:", len(cross_validate(m.with_weights([0, 0]), 1000, "s-unit")))
print("constant-true:", len(cross_validate(m.with_weights([1, 1]), 1000, "constant-true")))
