"""Declared geometric facts about the components of a nodal curve.

Zero orders and residues do not see everything: whether a point is a
Weierstrass point, the torsion order of a degree-zero divisor class on an
elliptic component, whether two node branches are swapped by a hyperelliptic
involution, or a named linear equivalence all live beyond the combinatorial
candidate. Callers declare such facts here; classifiers consume them and
report Undecided when a needed fact is absent rather than guessing.

Point ids are leg names or half-edge ids in the ``"edge:end"`` form.
``conjugate_pairs`` has set semantics: a pair that is absent is declared NOT
conjugate. ``lin_equiv`` holds named facts, e.g. ``"4Z-2N~K"`` for the
divisor relation behind a genus-2 theta characteristic of the form
O(2Z - N), or ``"hyperelliptic(<vertex>)"`` for components of genus >= 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .curves import DualGraph, parse_half_edge_id


@dataclass(frozen=True)
class GeometryFlags:
    weierstrass: Mapping[str, bool] = field(default_factory=dict)
    torsion_order: Mapping[str, int] = field(default_factory=dict)
    conjugate_pairs: frozenset[frozenset[str]] = frozenset()
    lin_equiv: Mapping[str, bool] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        weierstrass: Mapping[str, bool] | None = None,
        torsion_order: Mapping[str, int] | None = None,
        conjugate_pairs: Iterable[Iterable[str]] | None = None,
        lin_equiv: Mapping[str, bool] | None = None,
    ) -> "GeometryFlags":
        pairs = frozenset(frozenset(p) for p in (conjugate_pairs or ()))
        return cls(dict(weierstrass or {}), dict(torsion_order or {}), pairs, dict(lin_equiv or {}))

    @classmethod
    def empty(cls) -> "GeometryFlags":
        return cls()

    def are_conjugate(self, p: str, q: str) -> bool:
        return frozenset((p, q)) in self.conjugate_pairs

    def is_weierstrass(self, point: str) -> bool | None:
        """True/False when declared, None when unknown."""
        return self.weierstrass.get(point)


def resolve_point(graph: DualGraph, point: str) -> str | None:
    """The vertex carrying a point id, or None if the id is unknown."""
    if point in graph.leg_vertex:
        return graph.leg_vertex[point]
    try:
        h = parse_half_edge_id(point)
    except ValueError:
        return None
    if h[0] in graph.edge_ends and h[1] in (0, 1):
        return graph.vertex_of(h)
    return None


def validate_flags(flags: GeometryFlags, graph: DualGraph) -> list[str]:
    """Structural and consistency problems in a flag declaration.

    Beyond id resolution this enforces one cross-field rule: the
    hyperelliptic involution fixes Weierstrass points, so a conjugate pair
    of two points with one declared a Weierstrass point and the other
    declared not is impossible geometry.
    """
    problems: list[str] = []
    for point in flags.weierstrass:
        if resolve_point(graph, point) is None:
            problems.append(f"weierstrass flag on unknown point {point!r}")
    for vertex, order in flags.torsion_order.items():
        if vertex not in graph.genus_of:
            problems.append(f"torsion order on unknown vertex {vertex!r}")
        elif graph.genus_of[vertex] != 1:
            problems.append(f"torsion order on vertex {vertex!r} of genus {graph.genus_of[vertex]}; needs genus 1")
        if order < 1:
            problems.append(f"torsion order {order} on vertex {vertex!r}; orders are >= 1")
    for pair in flags.conjugate_pairs:
        if len(pair) != 2:
            problems.append(f"conjugate pair {sorted(pair)} does not have two distinct points")
            continue
        p, q = sorted(pair)
        vp, vq = resolve_point(graph, p), resolve_point(graph, q)
        if vp is None or vq is None:
            problems.append(f"conjugate pair ({p!r}, {q!r}) names an unknown point")
        elif vp != vq:
            problems.append(f"conjugate pair ({p!r}, {q!r}) spans two components {vp!r}, {vq!r}")
        wp, wq = flags.weierstrass.get(p), flags.weierstrass.get(q)
        if wp is not None and wq is not None and wp != wq:
            problems.append(
                f"conjugate pair ({p!r}, {q!r}) has exactly one declared Weierstrass point; "
                "the involution fixes Weierstrass points"
            )
    return problems


def require_valid_flags(flags: GeometryFlags, graph: DualGraph) -> None:
    problems = validate_flags(flags, graph)
    if problems:
        raise ValueError("inconsistent flags: " + "; ".join(problems))
