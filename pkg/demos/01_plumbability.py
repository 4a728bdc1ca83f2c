"""Decide whether a candidate limit differential can be plumbed.

Opening a node into a thin annulus multiplies the differential on one side
by a power of the plumbing scale. Whether all nodes of a curve can be
opened at once is a feasibility question over the cycles of the weighted
dual graph, and it is decided here exactly, with certificates either way.
"""

from pathlib import Path

from limitdiff.differentials import (
    CandidateDifferential,
    component_scalings,
    is_plumbable,
)
from limitdiff.rationals import GaussianRational
from limitdiff.schema import load_path

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def fixture(name):
    return load_path(str(FIXTURES / name)).value


# A two-component curve joined by two nodes, with poles of order 3 and 4
# on the rational side. Feasible: the certificate is a vector of negative
# scaling exponents, one per weighted node.
banana = fixture("banana-plumbable.json")
verdict = is_plumbable(banana)
print("banana graph:", verdict.__class__.__name__)
for edge, x in sorted(verdict.certificate.exponent.items()):
    print(f"  node {edge}: exponent {x}")

# The exponents only matter up to a common shift; pinning one component
# turns them into per-component scaling orders.
scaling = component_scalings(banana, verdict.certificate, "a")
print("component scalings with 'a' pinned:")
for v, x in sorted(scaling.exponent.items()):
    print(f"  {v}: t^{x}")

print()

# A self-node on one component. The loop forces the scale to satisfy
# t^w = 1 with w > 0, impossible for 0 < |t| < 1, and the refusal comes
# with a Farkas row: a nonnegative combination of cycle equations with no
# strictly negative solution.
loop = fixture("loop-obstruction-k1.json")
verdict = is_plumbable(loop)
print("self-node candidate:", verdict.__class__.__name__)
print("  reason:", verdict.reason)
print("  farkas row:", dict(verdict.certificate.farkas_row))

print()

# Simple poles must have opposite residues across each node, and a
# component whose only pole is one simple pole can never carry the
# residue: that is the residue theorem speaking.
bridge = fixture("bridge-residue-obstruction.json")
verdict = is_plumbable(bridge)
print("bridge candidate:", verdict.__class__.__name__)
print("  reason:", verdict.reason)

print()

# Nonzero residues at higher-order poles fall outside the sufficient
# criterion; the answer is then honestly undecided, not guessed.
dirty = CandidateDifferential.build(
    graph=banana.graph,
    leg_order=banana.leg_order,
    branch_order=banana.branch_order,
    residue={("e1", 1): GaussianRational.of(5), ("e2", 1): GaussianRational.of(-5)},
)
verdict = is_plumbable(dirty)
print("dirty residues:", verdict.__class__.__name__)
print("  reason:", verdict.reason)
