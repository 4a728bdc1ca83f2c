# On a compact-type curve (tree dual graph) the limit differential is
# forced: pushing the degree equation inward from the leaves determines
# every branch order at every node. This walks the chain-of-tori example
# and then looks at what survives in the stable limit.

from pathlib import Path

from limitdiff.differentials import (
    polarly_related_components,
    to_stable,
    unique_limit_on_compact_type,
)
from limitdiff.schema import load_path

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

doc = load_path(str(FIXTURES / "compact-type-chain.json"))
graph = doc.value
print("chain:", ", ".join(graph.vertices()), "genus", graph.arithmetic_genus())

# one marked zero of the full degree 2g-2 on the middle component
limit = unique_limit_on_compact_type(graph, {"Z": 2 * graph.arithmetic_genus() - 2})
print("forced branch orders:")
for (edge, end), k in sorted(limit.branch_order.items()):
    print(f"  {edge}:{end} -> {k}")

# the middle component carries the zero AND both double poles, so it is
# the one rescaled to death: the stable limit (at worst simple poles)
# vanishes identically there and restricts to each torus as its
# holomorphic form.
stable = to_stable(limit)
print("components where the stable limit vanishes:", sorted(stable.vanishes) or "none")

print()

# With actual higher-order poles the scaling wipes out components. The
# banana example has poles of orders 3 and 4 on component 'b':
banana = load_path(str(FIXTURES / "banana-plumbable.json")).value
stable = to_stable(banana)
print("banana stable limit vanishes on:", sorted(stable.vanishes))

# Components tied through simple-pole nodes rescale together; the banana's
# two components are NOT polarly related (no simple-pole node), so they
# scale independently.
print("polar classes:", polarly_related_components(banana))
