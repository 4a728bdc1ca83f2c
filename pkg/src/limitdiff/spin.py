"""Spin structures on nodal curves and their parity.

A candidate differential of compact type with even zero and branch orders
determines a theta characteristic on each component: half its divisor there,
node branches included, since twice that half is the canonical class. On the
exceptional lines inserted by blowing up the nodes the bundle is O(1), whose
two sections never change a parity, so the parity of the whole spin
structure is the sum of h^0 over the original components mod 2.

Each component's h^0 is computed by one of exactly three backends:

* rational components, where every theta characteristic is O(-1) and h^0 = 0;
* elliptic components, where the half-divisor is l(P - Q) and h^0 detects
  whether the declared torsion order of P - Q divides l;
* hyperelliptic components, where theta characteristics correspond to
  subsets of the branch points up to complement and h^0 is subset-size
  arithmetic.

Anything else raises :class:`SpinResolutionError`: the combinatorial data
plus declared flags genuinely underdetermine the parity, and the caller is
expected to surface that as an undecided outcome, not a guess.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .curves import DualGraph, half_edge_id, is_compact_type
from .differentials import CandidateDifferential, require_valid
from .flags import GeometryFlags, require_valid_flags


class SpinResolutionError(Exception):
    """No backend resolves a component's theta characteristic.

    Signals missing geometric information (an undeclared torsion order or
    Weierstrass flag, or a half-divisor shape outside the three supported
    families), never a negative verdict.
    """

    def __init__(self, vertex: str, message: str) -> None:
        super().__init__(f"vertex {vertex!r}: {message}")
        self.vertex = vertex


@dataclass(frozen=True)
class RationalTheta:
    """O(-1) on a genus-0 component."""

    def h0(self) -> int:
        return 0


@dataclass(frozen=True)
class EllipticTheta:
    """O(l(P - Q)) on a genus-1 component, P - Q of declared torsion order d.

    Validity as a theta characteristic needs 2l(P - Q) ~ 0, i.e. d | 2l; the
    bundle has a section exactly when it is trivial, i.e. d | l. The trivial
    case is (d, l) = (1, 0).
    """

    torsion_order: int
    multiplier: int

    def __post_init__(self) -> None:
        if self.torsion_order < 1:
            raise ValueError(f"torsion order {self.torsion_order} is not >= 1")
        if (2 * self.multiplier) % self.torsion_order != 0:
            raise ValueError(
                f"order of P - Q is {self.torsion_order}, which does not divide "
                f"2*{self.multiplier}; O({self.multiplier}(P-Q)) is not 2-torsion"
            )

    def h0(self) -> int:
        return 1 if self.multiplier % self.torsion_order == 0 else 0


@dataclass(frozen=True)
class HyperellipticTheta:
    """A theta characteristic on a hyperelliptic component of genus h.

    Identified by the set of branch points appearing with odd multiplicity
    once even multiples of branch points are absorbed into the degree-2
    pencil. Labels are opaque; only the subset size enters h^0. Subsets of
    size s and 2h + 2 - s name the same characteristic.
    """

    genus: int
    branch_subset: frozenset

    def __post_init__(self) -> None:
        if self.genus < 1:
            raise ValueError("hyperelliptic components have genus >= 1")
        if len(self.branch_subset) % 2 != (self.genus + 1) % 2:
            raise ValueError(
                f"subset size {len(self.branch_subset)} has the wrong parity for genus {self.genus}"
            )
        if len(self.branch_subset) > 2 * self.genus + 2:
            raise ValueError("subset exceeds the number of branch points")

    @classmethod
    def of_size(cls, genus: int, size: int) -> "HyperellipticTheta":
        return cls(genus, frozenset(range(size)))

    def h0(self) -> int:
        size = min(len(self.branch_subset), 2 * self.genus + 2 - len(self.branch_subset))
        return (self.genus + 1 - size) // 2


ComponentTheta = RationalTheta | EllipticTheta | HyperellipticTheta


@dataclass(frozen=True)
class SpinStructure:
    """Theta characteristics per component plus the blown-up node count."""

    graph: DualGraph
    theta: Mapping[str, ComponentTheta]
    n_exceptional: int

    def __post_init__(self) -> None:
        g = self.graph.arithmetic_genus()
        total = sum(self.graph.genus_of[v] - 1 for v in self.graph.vertices()) + self.n_exceptional
        if total != g - 1:
            raise ValueError(
                f"component degrees sum to {total}, a spin structure on genus {g} needs {g - 1}"
            )

    def parity(self) -> int:
        """0 for even, 1 for odd. The exceptional O(1)'s contribute h^0 = 2."""
        return sum(t.h0() for t in self.theta.values()) % 2


def _half_divisor(c: CandidateDifferential, vertex: str) -> dict[str, int]:
    half: dict[str, int] = {}
    for leg in c.graph.legs_at(vertex):
        if c.leg_order[leg] != 0:
            half[leg] = c.leg_order[leg] // 2
    for h in c.graph.half_edges_at(vertex):
        if c.branch_order[h] != 0:
            half[half_edge_id(h)] = c.branch_order[h] // 2
    return half


def _resolve_theta(
    vertex: str, genus: int, half: Mapping[str, int], flags: GeometryFlags
) -> ComponentTheta:
    if genus == 0:
        return RationalTheta()

    if genus == 1:
        if not half:
            return EllipticTheta(1, 0)
        if len(half) == 2:
            (p, a), (q, b) = sorted(half.items(), key=lambda kv: -kv[1])
            if a + b == 0 and a > 0:
                d = flags.torsion_order.get(vertex)
                if d is None:
                    raise SpinResolutionError(
                        vertex, f"torsion order of the class of {p!r} - {q!r} is not declared"
                    )
                return EllipticTheta(d, a)
        raise SpinResolutionError(vertex, f"no backend for the half-divisor {dict(sorted(half.items()))}")

    # genus >= 2: hyperelliptic routes only
    if genus >= 3 and not flags.lin_equiv.get(f"hyperelliptic({vertex})", False):
        raise SpinResolutionError(
            vertex, f"genus {genus} component not declared hyperelliptic; no backend applies"
        )

    if all(flags.weierstrass.get(p) for p in half):
        odd_points = frozenset(p for p, m in half.items() if m % 2 != 0)
        return HyperellipticTheta(genus, odd_points)

    if genus == 2 and sorted(half.values()) == [-1, 2]:
        z = next(p for p, m in half.items() if m == 2)
        relation = flags.lin_equiv.get("4Z-2N~K")
        if relation is None:
            raise SpinResolutionError(vertex, 'the relation "4Z-2N~K" is not declared')
        if relation is False:
            raise ValueError(
                f"vertex {vertex!r}: half-divisor 2*{z!r} - N is declared not 2-torsion; "
                "it is no theta characteristic"
            )
        z_weierstrass = flags.weierstrass.get(z)
        if z_weierstrass is None:
            raise SpinResolutionError(vertex, f"whether {z!r} is a Weierstrass point is not declared")
        # A section would mean 2Z ~ N + W for some branch point W. When Z is
        # not a Weierstrass point, |2Z| = {2Z} alone, which forces N = W = Z,
        # a contradiction. When Z is one, N must be too, and O(2Z - N) = O(N).
        return HyperellipticTheta.of_size(2, 1 if z_weierstrass else 3)

    raise SpinResolutionError(
        vertex, f"no backend for the half-divisor {dict(sorted(half.items()))} in genus {genus}"
    )


def spin_of_candidate(c: CandidateDifferential, flags: GeometryFlags) -> SpinStructure:
    """The spin structure induced by a compact-type candidate with even orders.

    Raises ValueError on shape violations (non-tree graph, an odd order,
    inconsistent flags) and :class:`SpinResolutionError` when a component's
    theta characteristic cannot be resolved from the declared flags.
    """
    require_valid(c)
    require_valid_flags(flags, c.graph)
    if not is_compact_type(c.graph):
        raise ValueError("spin structures are induced on compact type (tree) graphs only")
    odd = sorted(l for l, k in c.leg_order.items() if k % 2 != 0)
    if odd:
        raise ValueError(f"legs {odd} carry odd orders; the divisor is not twice anything")
    odd = sorted(half_edge_id(h) for h, o in c.branch_order.items() if o % 2 != 0)
    if odd:
        raise ValueError(f"half-edges {odd} carry odd orders; the divisor is not twice anything")

    theta = {
        v: _resolve_theta(v, c.graph.genus_of[v], _half_divisor(c, v), flags)
        for v in c.graph.vertices()
    }
    return SpinStructure(c.graph, theta, n_exceptional=len(c.graph.edges()))


def parity_of_candidate(c: CandidateDifferential, flags: GeometryFlags) -> int:
    return spin_of_candidate(c, flags).parity()


# -- counting ------------------------------------------------------------------


def elliptic_parity_split() -> tuple[int, int]:
    """(even, odd) over the four 2-torsion theta characteristics of an
    elliptic curve: the trivial bundle has a section, the other three none."""
    thetas = [EllipticTheta(1, 0), EllipticTheta(2, 1), EllipticTheta(2, 1), EllipticTheta(2, 1)]
    odd = sum(t.h0() % 2 for t in thetas)
    return len(thetas) - odd, odd


def hyperelliptic_parity_split(genus: int) -> tuple[int, int]:
    """(even, odd) over all theta characteristics of a hyperelliptic curve.

    Enumerates subsets of the 2g + 2 branch points of the right parity and
    deduplicates complements.
    """
    if genus < 1:
        raise ValueError("needs genus >= 1")
    points = range(2 * genus + 2)
    seen: set[frozenset[int]] = set()
    even = odd = 0
    for size in range((genus + 1) % 2, 2 * genus + 3, 2):
        for subset in itertools.combinations(points, size):
            t = frozenset(subset)
            key = min(t, t ^ frozenset(points), key=sorted)
            if key in seen:
                continue
            seen.add(key)
            if HyperellipticTheta(genus, t).h0() % 2 != 0:
                odd += 1
            else:
                even += 1
    return even, odd


def count_spin_parities(genus: int) -> tuple[int, int]:
    """(even, odd) counts of spin structures in genus g >= 0.

    Computed on a compact-type chain of g elliptic components: a spin
    structure is a free choice of one of the four characteristics per
    component, and its parity is the sum of the parities chosen. The counts
    are deformation invariants, so the chain speaks for every genus-g curve.
    """
    if genus < 0:
        raise ValueError("needs genus >= 0")
    even, odd = 1, 0
    step = elliptic_parity_split()
    for _ in range(genus):
        even, odd = even * step[0] + odd * step[1], even * step[1] + odd * step[0]
    return even, odd
