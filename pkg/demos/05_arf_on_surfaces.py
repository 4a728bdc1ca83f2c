"""Arf invariants of translation surfaces, straight from their polygons.

The invariant is computed from a symplectic system of curves: loops are
realized as chords through the triangulated polygons, winding numbers are
turning degrees (exact rational arithmetic, no angles), and the final sum
q(a_i) q(b_i) mod 2 does not depend on the chosen system.
"""

from pathlib import Path

from limitdiff.homology import (
    arf_invariant,
    find_symplectic_system,
    q_invariant,
    transform_system,
)
from limitdiff.schema import load_path
from limitdiff.surfaces import stratum_of

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

NAMES = (
    "square-torus",
    "octagon",
    "staircase-genus3-odd",
    "cross-genus3-odd",
    "cross-genus3-hyp",
)

print("surface                 genus  orders      arf")
for name in NAMES:
    surface = load_path(str(FIXTURES / f"{name}.json")).value
    system = find_symplectic_system(surface)
    orders = stratum_of(surface) or ("-",)
    print(
        f"{name:22s} {surface.genus:5d}  {str(orders):10s}  {arf_invariant(system)}"
    )

# the two cross-shaped surfaces are the two ways of smoothing one nodal
# model; their Arf values 1 vs 0 show the smoothings land in different
# connected components of the stratum

print()
octagon = load_path(str(FIXTURES / "octagon.json")).value
system = find_symplectic_system(octagon)
print("octagon pair invariants:", [(q_invariant(a), q_invariant(b)) for a, b in system.pairs])

# change basis: swap the first pair, mix the pairs, then b1 -> b1 + a1
word = [("swap", 0), ("cross", 0, 1), ("b_plus_a", 0)]
moved = transform_system(system, word)
print(
    "after a basis change:   ",
    [(q_invariant(a), q_invariant(b)) for a, b in moved.pairs],
)
print("arf before:", arf_invariant(system), " after:", arf_invariant(moved))
