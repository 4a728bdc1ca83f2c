"""Spin parity of limit differentials, and the counting law behind it.

A differential with even zero orders halves into a theta characteristic,
whose parity (h^0 mod 2) is constant in families. On a nodal limit the
parity is computed per component and summed; on elliptic components it
hinges on the torsion order of the zero against the node branch.
"""

from pathlib import Path

from limitdiff.flags import GeometryFlags
from limitdiff.schema import load_path
from limitdiff.spin import SpinResolutionError, count_spin_parities, spin_of_candidate

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

chain = load_path(str(FIXTURES / "elliptic-chain.json")).value
flags = load_path(str(FIXTURES / "elliptic-chain-flags.json")).value

structure = spin_of_candidate(chain, flags)
print("elliptic chain with the declared torsion:")
for v, theta in sorted(structure.theta.items()):
    print(f"  h0 on {v}: {theta.h0()}")
print("  parity:", "odd" if structure.parity() else "even")
print()

# sweep the torsion order of the zero-minus-node class on component 'a';
# orders that do not divide twice the multiplier admit no square root at
# all, and the attempt is refused rather than guessed
print("parity as the torsion order varies:")
for d in (1, 2, 3, 4):
    f = GeometryFlags.build(torsion_order={"a": d})
    try:
        s = spin_of_candidate(chain, f)
    except SpinResolutionError as err:
        print(f"  order {d}: unresolved ({err})")
        continue
    except ValueError as err:
        print(f"  order {d}: no theta characteristic ({err})")
        continue
    print(f"  order {d}: parity {s.parity()}")
print()

# without the flag nothing is guessed
try:
    spin_of_candidate(chain, GeometryFlags.empty())
except SpinResolutionError as err:
    print("no flags:", err)
print()

# the counts of even and odd theta characteristics in genus g
print(" g   even    odd")
for g in range(1, 7):
    even, odd = count_spin_parities(g)
    assert (even, odd) == (2 ** (g - 1) * (2**g + 1), 2 ** (g - 1) * (2**g - 1))
    print(f"{g:2d} {even:6d} {odd:6d}")
