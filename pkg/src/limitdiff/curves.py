"""Dual graphs of marked nodal curves.

A vertex is an irreducible component carrying its geometric genus, an edge is
a node, and a leg is a marked point. Half-edges are first class: the two ends
of edge ``e`` are addressed as ``(e, 0)`` and ``(e, 1)``, so that loops (a
component glued to itself) stay unambiguous. All ids are caller-supplied
strings and every output references them verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

HalfEdge = tuple[str, int]


def half_edge_id(h: HalfEdge) -> str:
    """Stable string form of a half-edge, used in flags and reports."""
    return f"{h[0]}:{h[1]}"


def parse_half_edge_id(text: str) -> HalfEdge:
    edge, sep, end = text.rpartition(":")
    if not sep or end not in ("0", "1"):
        raise ValueError(f"malformed half-edge id {text!r}; expected '<edge>:0' or '<edge>:1'")
    return (edge, int(end))


@dataclass(frozen=True)
class VertexValence:
    """Number of special points (node branches plus marked points) at a vertex."""

    vertex: str
    n_special: int


@dataclass(frozen=True)
class DualGraph:
    genus_of: Mapping[str, int]
    edge_ends: Mapping[str, tuple[str, str]]
    leg_vertex: Mapping[str, str]
    exceptional: frozenset[str] = frozenset()

    @classmethod
    def build(
        cls,
        vertices: Iterable[tuple[str, int]],
        edges: Iterable[tuple[str, str, str]] = (),
        legs: Iterable[tuple[str, str]] = (),
        exceptional: Iterable[str] = (),
    ) -> "DualGraph":
        """Construct and validate a dual graph.

        ``vertices`` are (id, genus) pairs, ``edges`` are (id, end0, end1)
        triples (end0 == end1 gives a loop), ``legs`` are (id, vertex) pairs.
        """
        genus_of: dict[str, int] = {}
        for vid, genus in vertices:
            if vid in genus_of:
                raise ValueError(f"duplicate vertex id {vid!r}")
            if genus < 0:
                raise ValueError(f"vertex {vid!r} has negative genus")
            genus_of[vid] = genus
        if not genus_of:
            raise ValueError("a dual graph needs at least one vertex")

        edge_ends: dict[str, tuple[str, str]] = {}
        for eid, a, b in edges:
            if eid in edge_ends:
                raise ValueError(f"duplicate edge id {eid!r}")
            for v in (a, b):
                if v not in genus_of:
                    raise ValueError(f"edge {eid!r} references unknown vertex {v!r}")
            edge_ends[eid] = (a, b)

        leg_vertex: dict[str, str] = {}
        for lid, v in legs:
            if lid in leg_vertex:
                raise ValueError(f"duplicate leg id {lid!r}")
            if v not in genus_of:
                raise ValueError(f"leg {lid!r} references unknown vertex {v!r}")
            leg_vertex[lid] = v

        graph = cls(genus_of, edge_ends, leg_vertex, frozenset(exceptional))
        if not graph.exceptional <= set(genus_of):
            raise ValueError("exceptional flags reference unknown vertices")
        if not graph.is_connected():
            raise ValueError("dual graph is not connected")
        return graph

    # -- basic accessors ---------------------------------------------------

    def vertices(self) -> list[str]:
        return sorted(self.genus_of)

    def edges(self) -> list[str]:
        return sorted(self.edge_ends)

    def legs(self) -> list[str]:
        return sorted(self.leg_vertex)

    def vertex_of(self, h: HalfEdge) -> str:
        return self.edge_ends[h[0]][h[1]]

    def partner(self, h: HalfEdge) -> HalfEdge:
        return (h[0], 1 - h[1])

    def half_edges(self) -> Iterator[HalfEdge]:
        for eid in self.edges():
            yield (eid, 0)
            yield (eid, 1)

    def half_edges_at(self, vertex: str) -> list[HalfEdge]:
        out = []
        for eid in self.edges():
            a, b = self.edge_ends[eid]
            if a == vertex:
                out.append((eid, 0))
            if b == vertex:
                out.append((eid, 1))
        return out

    def legs_at(self, vertex: str) -> list[str]:
        return sorted(l for l, v in self.leg_vertex.items() if v == vertex)

    def valence(self, vertex: str) -> VertexValence:
        n = len(self.half_edges_at(vertex)) + len(self.legs_at(vertex))
        return VertexValence(vertex, n)

    def arithmetic_genus(self) -> int:
        """Sum of component genera plus the first Betti number of the graph."""
        total = sum(self.genus_of.values()) + len(self.edge_ends) - len(self.genus_of) + 1
        if total < 0:
            raise ValueError("arithmetic genus is negative; graph is malformed")
        return total

    def is_connected(self) -> bool:
        verts = self.vertices()
        seen = {verts[0]}
        frontier = [verts[0]]
        while frontier:
            v = frontier.pop()
            for a, b in self.edge_ends.values():
                for u, w in ((a, b), (b, a)):
                    if u == v and w not in seen:
                        seen.add(w)
                        frontier.append(w)
        return len(seen) == len(verts)


# -- operations -------------------------------------------------------------


def arithmetic_genus(g: DualGraph) -> int:
    """Sum of component genera plus the first Betti number of the graph."""
    return g.arithmetic_genus()


def is_stable(g: DualGraph) -> bool:
    """Every genus-0 vertex has at least 3 special points, genus-1 at least 1."""
    for v in g.vertices():
        n = g.valence(v).n_special
        genus = g.genus_of[v]
        if genus == 0 and n < 3:
            return False
        if genus == 1 and n < 1:
            return False
    return True


def is_compact_type(g: DualGraph) -> bool:
    """True iff the graph is a tree (the curve's Jacobian is compact)."""
    return len(g.edge_ends) == len(g.genus_of) - 1


def blow_up_all_nodes(g: DualGraph) -> DualGraph:
    """Subdivide every edge by a fresh genus-0 vertex flagged exceptional.

    Edge ``e`` becomes ``e:a`` and ``e:b`` around the new vertex ``e*``, so
    the operation is deterministic and invertible by :func:`stabilize`.
    """
    vertices = [(v, g.genus_of[v]) for v in g.vertices()]
    edges: list[tuple[str, str, str]] = []
    exceptional = set(g.exceptional)
    for eid in g.edges():
        a, b = g.edge_ends[eid]
        mid = f"{eid}*"
        if mid in g.genus_of:
            raise ValueError(f"vertex id {mid!r} already taken; cannot blow up")
        vertices.append((mid, 0))
        exceptional.add(mid)
        edges.append((f"{eid}:a", a, mid))
        edges.append((f"{eid}:b", mid, b))
    legs = [(l, g.leg_vertex[l]) for l in g.legs()]
    return DualGraph.build(vertices, edges, legs, exceptional)


def _merge_edge_id(e1: str, e2: str) -> str:
    if e1.endswith(":a") and e2.endswith(":b") and e1[:-2] == e2[:-2]:
        return e1[:-2]
    return f"{e1}~{e2}"


def stabilize(g: DualGraph) -> DualGraph:
    """Contract every exceptional vertex (genus 0, two half-edges, no leg).

    Inverse of :func:`blow_up_all_nodes`; idempotent. A genus-0 vertex whose
    two half-edges belong to a single loop has no well-defined contraction
    and is left alone (such a vertex never arises from a blow-up).
    """
    genus_of = dict(g.genus_of)
    edge_ends = dict(g.edge_ends)
    leg_vertex = dict(g.leg_vertex)
    exceptional = set(g.exceptional)

    def contractible() -> str | None:
        for v in sorted(genus_of):
            if genus_of[v] != 0:
                continue
            if any(lv == v for lv in leg_vertex.values()):
                continue
            incident: list[HalfEdge] = []
            for eid in sorted(edge_ends):
                a, b = edge_ends[eid]
                if a == v:
                    incident.append((eid, 0))
                if b == v:
                    incident.append((eid, 1))
            if len(incident) != 2:
                continue
            if incident[0][0] == incident[1][0]:
                continue  # both ends of one loop: no contraction target
            return v
        return None

    while True:
        v = contractible()
        if v is None:
            break
        (e1, end1), (e2, end2) = sorted(
            h for h in ((eid, i) for eid in edge_ends for i in (0, 1)) if edge_ends[h[0]][h[1]] == v
        )
        u1 = edge_ends[e1][1 - end1]
        u2 = edge_ends[e2][1 - end2]
        merged = _merge_edge_id(e1, e2)
        del edge_ends[e1]
        del edge_ends[e2]
        if merged in edge_ends:
            raise ValueError(f"edge id {merged!r} already taken; cannot stabilize")
        edge_ends[merged] = (u1, u2)
        del genus_of[v]
        exceptional.discard(v)

    return DualGraph.build(
        [(v, genus_of[v]) for v in sorted(genus_of)],
        [(e, *edge_ends[e]) for e in sorted(edge_ends)],
        [(l, leg_vertex[l]) for l in sorted(leg_vertex)],
        exceptional,
    )
