# Which components of a stratum closure contain a given nodal limit?
#
# In genus 3 with a single zero of order 4 the stratum has a hyperelliptic
# and an odd component. For one-node degenerations the answer is a small
# table over declared geometric flags (torsion orders, ramification
# points, conjugate branches). The same point can lie in BOTH closures.

from pathlib import Path

from limitdiff.boundary import classify_g3_odd, cross_check_parity
from limitdiff.curves import DualGraph
from limitdiff.differentials import CandidateDifferential
from limitdiff.flags import GeometryFlags
from limitdiff.rationals import GaussianRational
from limitdiff.schema import load_path

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def show(verdict):
    for tag, m in sorted(verdict.membership.items()):
        print(f"  {tag:4s} {m.status}: {m.reason}")


# zero of order 4 on an elliptic component, genus 2 across the node
graph = DualGraph.build(
    vertices=[("v1", 1), ("v2", 2)], edges=[("e0", "v1", "v2")], legs=[("Z", "v1")]
)
c = CandidateDifferential.build(
    graph=graph,
    leg_order={"Z": 4},
    branch_order={("e0", 0): -4, ("e0", 1): 2},
    residue={("e0", 0): GaussianRational.zero()},
)

print("elliptic side, torsion order undeclared:")
show(classify_g3_odd(c, GeometryFlags.empty()))

print("torsion order 4, facing branch at a ramification point:")
flags = GeometryFlags.build(torsion_order={"v1": 4}, weierstrass={"e0:1": True})
verdict = classify_g3_odd(c, flags)
show(verdict)

# the parity cross-check recomputes the spin parity from the same flags
# and confirms it against the parity of each claimed component
report = cross_check_parity(c, flags, verdict)
print("  cross-check: checked", list(report.checked), "parity", report.parity)

print("torsion order 2, facing branch at a ramification point:")
flags = GeometryFlags.build(torsion_order={"v1": 2}, weierstrass={"e0:1": True})
verdict = classify_g3_odd(c, flags)
show(verdict)
print("  cross-check: checked", list(cross_check_parity(c, flags, verdict).checked))

print()

# the zero collided with a node: a rational bridge over a genus-2
# component, both node branches on the main side conjugate under the
# hyperelliptic involution. This one limit lies in the closure of the
# hyperelliptic AND the odd component at once.
c = load_path(str(FIXTURES / "conjugate-nodes-genus3.json")).value
flags = load_path(str(FIXTURES / "conjugate-nodes-flags.json")).value
print("collided zero over conjugate branch points:")
verdict = classify_g3_odd(c, flags)
show(verdict)
print("  fibre dimension over the stable limit:", verdict.fibre_dimension)
