"""Translation surfaces from rational polygons with side gluings.

A surface is a finite set of simple ccw polygons with exact rational
vertices and an involutive perfect matching of their directed sides; matched
sides carry opposite vectors, so each identification is a translation.
Building a surface validates all of that, computes the vertex classes by
walking corners around each identified point, measures every cone angle
exactly (by counting sightings of a reference direction inside the corner
sectors, never by approximating angles), and derives the genus from the
Euler characteristic.

Marked node pairs describe proxy models of nodal degenerations: two distinct
vertex classes declared to be glued into a node, with the cylinder direction
recorded. They are excluded from stratum signatures.

:func:`triangulate` refines every polygon by ear clipping, without new
vertices, so that later path constructions can route through triangles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .geometry import (
    Vec,
    choose_reference,
    cross,
    dot,
    in_open_ccw_sector,
    is_zero,
    orient,
    point_in_closed_triangle,
    segments_intersect_closed,
    sub,
    vec,
)

DirEdge = tuple[str, int]
Corner = tuple[str, int]


@dataclass(frozen=True)
class Polygon:
    """Simple polygon, vertices in ccw order, collinear vertices allowed."""

    vertices: tuple[Vec, ...]

    def __post_init__(self) -> None:
        n = len(self.vertices)
        if n < 3:
            raise ValueError("polygons have at least 3 vertices")
        if len(set(self.vertices)) != n:
            raise ValueError("repeated vertex")
        for i in range(n):
            d_in = sub(self.vertices[i], self.vertices[i - 1])
            d_out = sub(self.vertices[(i + 1) % n], self.vertices[i])
            if is_zero(d_out):
                raise ValueError("zero-length side")
            if cross(d_in, d_out) == 0 and dot(d_in, d_out) < 0:
                raise ValueError(f"sides fold back at vertex {i}")
        area2 = sum(cross(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n))
        if area2 <= 0:
            raise ValueError("vertices are not in ccw order")
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    continue
                a, b = self.vertices[i], self.vertices[(i + 1) % n]
                c, d = self.vertices[j], self.vertices[(j + 1) % n]
                if segments_intersect_closed(a, b, c, d):
                    raise ValueError(f"sides {i} and {j} intersect; the polygon is not simple")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def side_vector(self, i: int) -> Vec:
        return sub(self.vertices[(i + 1) % self.n], self.vertices[i])

    def corner_sector(self, i: int) -> tuple[Vec, Vec]:
        """Interior angle at vertex i as a ccw sector (towards-next, towards-prev)."""
        towards_next = sub(self.vertices[(i + 1) % self.n], self.vertices[i])
        towards_prev = sub(self.vertices[i - 1], self.vertices[i])
        return towards_next, towards_prev


def polygon(coords: Iterable) -> Polygon:
    return Polygon(tuple(vec(x, y) for x, y in coords))


@dataclass(frozen=True)
class PointRef:
    polygon: str
    vertex: int


@dataclass(frozen=True)
class NodePair:
    """Two distinct vertex classes declared glued into a node.

    ``direction`` is the (exact) direction of the cylinder that was cut off
    at this node in the proxy model.
    """

    first: PointRef
    second: PointRef
    direction: Vec


@dataclass(frozen=True)
class TranslationSurface:
    polygons: Mapping[str, Polygon]
    gluing: Mapping[DirEdge, DirEdge]
    node_pairs: tuple[NodePair, ...]
    vertex_class: Mapping[Corner, int]
    class_corners: tuple[tuple[Corner, ...], ...]
    cone_multiple: tuple[int, ...]
    genus: int

    def partner(self, e: DirEdge) -> DirEdge:
        return self.gluing[e]

    def side_vector(self, e: DirEdge) -> Vec:
        return self.polygons[e[0]].side_vector(e[1])

    def class_of_ref(self, ref: PointRef) -> int:
        return self.vertex_class[(ref.polygon, ref.vertex)]

    def node_classes(self) -> frozenset[int]:
        out = set()
        for pair in self.node_pairs:
            out.add(self.class_of_ref(pair.first))
            out.add(self.class_of_ref(pair.second))
        return frozenset(out)

    def zero_order(self, cls: int) -> int:
        return self.cone_multiple[cls] - 1


def _corner_walk(
    polygons: Mapping[str, Polygon], gluing: Mapping[DirEdge, DirEdge]
) -> tuple[dict[Corner, int], tuple[tuple[Corner, ...], ...]]:
    def next_corner(c: Corner) -> Corner:
        pid, i = c
        arriving = (pid, (i - 1) % polygons[pid].n)
        q, j = gluing[arriving]
        # the partner side carries the opposite vector, so its start is
        # identified with the arrival point of the incoming side
        return (q, j)

    all_corners = [(pid, i) for pid in sorted(polygons) for i in range(polygons[pid].n)]
    vertex_class: dict[Corner, int] = {}
    classes: list[tuple[Corner, ...]] = []
    for start in all_corners:
        if start in vertex_class:
            continue
        orbit = [start]
        vertex_class[start] = len(classes)
        c = next_corner(start)
        while c != start:
            if c in vertex_class:
                raise ArithmeticError("corner walk is not a permutation; the gluing is broken")
            vertex_class[c] = len(classes)
            orbit.append(c)
            c = next_corner(c)
        classes.append(tuple(orbit))
    return vertex_class, tuple(classes)


def build_surface(
    polygons: Mapping[str, Polygon],
    gluing: Mapping[DirEdge, DirEdge],
    node_pairs: Iterable[NodePair] = (),
) -> TranslationSurface:
    """Validate and assemble a translation surface.

    Checks polygon validity (delegated to Polygon), that the gluing is an
    involutive perfect matching of all sides with opposite side vectors,
    that the surface is connected, and that declared node pairs name
    distinct vertex classes. Computes vertex classes, exact cone angles,
    and the genus.
    """
    polygons = dict(polygons)
    if not polygons:
        raise ValueError("a surface needs at least one polygon")

    # each identification may be given once; the symmetric closure is implied
    full: dict[DirEdge, DirEdge] = {}
    for e, p in gluing.items():
        for a, b in ((e, p), (p, e)):
            if full.get(a, b) != b:
                raise ValueError(f"side {a} glued twice, to {full[a]} and to {b}")
            full[a] = b
    gluing = full

    sides = [(pid, i) for pid in polygons for i in range(polygons[pid].n)]
    if sorted(gluing) != sorted(sides):
        raise ValueError("the gluing does not cover every side exactly once")
    for e in sides:
        p = gluing[e]
        if p not in gluing or gluing[p] != e:
            raise ValueError(f"gluing is not involutive at {e}")
        if p == e:
            raise ValueError(f"side {e} glued to itself")
        ve = polygons[e[0]].side_vector(e[1])
        vp = polygons[p[0]].side_vector(p[1])
        if ve[0] != -vp[0] or ve[1] != -vp[1]:
            raise ValueError(f"sides {e} and {p} do not carry opposite vectors")

    seen = {next(iter(sorted(polygons)))}
    frontier = list(seen)
    while frontier:
        pid = frontier.pop()
        for i in range(polygons[pid].n):
            q = gluing[(pid, i)][0]
            if q not in seen:
                seen.add(q)
                frontier.append(q)
    if len(seen) != len(polygons):
        raise ValueError("the surface is not connected")

    vertex_class, class_corners = _corner_walk(polygons, gluing)

    reference = choose_reference(
        polygons[pid].side_vector(i) for pid in polygons for i in range(polygons[pid].n)
    )
    cone_multiple = []
    for corners in class_corners:
        sightings = 0
        for pid, i in corners:
            a, b = polygons[pid].corner_sector(i)
            if in_open_ccw_sector(a, b, reference):
                sightings += 1
        if sightings < 1:
            raise ArithmeticError("a vertex class with angle below 2pi; the gluing is broken")
        cone_multiple.append(sightings)

    n_classes = len(class_corners)
    n_edges = len(gluing) // 2
    n_faces = len(polygons)
    euler = n_classes - n_edges + n_faces
    if euler % 2 != 0:
        raise ArithmeticError("odd Euler characteristic on a closed oriented surface")
    genus = (2 - euler) // 2
    if genus < 0:
        raise ArithmeticError("negative genus; the gluing is broken")
    total_order = sum(m - 1 for m in cone_multiple)
    if total_order != 2 * genus - 2:
        raise ArithmeticError(
            f"cone angles sum to {total_order} over 2pi-excess, genus {genus} needs {2 * genus - 2}"
        )

    pairs = tuple(node_pairs)
    used_classes: list[int] = []
    for pair in pairs:
        for ref in (pair.first, pair.second):
            if ref.polygon not in polygons or not 0 <= ref.vertex < polygons[ref.polygon].n:
                raise ValueError(f"node pair names unknown corner ({ref.polygon!r}, {ref.vertex})")
            used_classes.append(vertex_class[(ref.polygon, ref.vertex)])
        if vertex_class[(pair.first.polygon, pair.first.vertex)] == vertex_class[
            (pair.second.polygon, pair.second.vertex)
        ]:
            raise ValueError("a node pair must name two distinct vertex classes")
        if is_zero(pair.direction):
            raise ValueError("node pair needs a nonzero direction")
    if len(used_classes) != len(set(used_classes)):
        raise ValueError("node pairs share a vertex class")

    return TranslationSurface(
        polygons, gluing, pairs, vertex_class, class_corners, tuple(cone_multiple), genus
    )


def stratum_of(surface: TranslationSurface) -> tuple[int, ...]:
    """Zero orders of the non-node cone points, largest first."""
    node_classes = surface.node_classes()
    orders = [
        m - 1
        for cls, m in enumerate(surface.cone_multiple)
        if m > 1 and cls not in node_classes
    ]
    return tuple(sorted(orders, reverse=True))


# -- triangulation -------------------------------------------------------------


@dataclass(frozen=True)
class Triangulation:
    """A surface cut into triangles, remembering where everything came from.

    ``corner_origin`` maps triangle corners to the original polygon corner
    at the same point; ``side_origin`` maps triangle sides to the original
    side they lie on, or None for interior diagonals.
    """

    surface: TranslationSurface
    corner_origin: Mapping[Corner, Corner]
    side_origin: Mapping[DirEdge, DirEdge | None]

    def corners_at(self, original: Corner) -> tuple[Corner, ...]:
        return tuple(
            sorted(c for c, origin in self.corner_origin.items() if origin == original)
        )


def _clip_ears(poly: Polygon, pid: str) -> list[tuple[int, int, int]]:
    ring = list(range(poly.n))
    triangles: list[tuple[int, int, int]] = []
    while len(ring) > 3:
        for pos in range(len(ring)):
            ia = ring[pos - 1]
            ib = ring[pos]
            ic = ring[(pos + 1) % len(ring)]
            a, b, c = poly.vertices[ia], poly.vertices[ib], poly.vertices[ic]
            if orient(a, b, c) <= 0:
                continue
            blocked = any(
                point_in_closed_triangle(poly.vertices[j], a, b, c)
                for j in ring
                if j not in (ia, ib, ic)
            )
            if blocked:
                continue
            triangles.append((ia, ib, ic))
            ring.remove(ib)
            break
        else:
            raise ArithmeticError(f"no ear found in polygon {pid!r}; cannot triangulate")
    ia, ib, ic = ring
    if orient(poly.vertices[ia], poly.vertices[ib], poly.vertices[ic]) <= 0:
        raise ArithmeticError(f"degenerate final triangle in polygon {pid!r}")
    triangles.append((ia, ib, ic))
    return triangles


def triangulate(surface: TranslationSurface) -> Triangulation:
    """Ear-clip every polygon; sides are preserved, diagonals glued in pairs."""
    tri_polygons: dict[str, Polygon] = {}
    corner_origin: dict[Corner, Corner] = {}
    side_origin: dict[DirEdge, DirEdge | None] = {}
    gluing: dict[DirEdge, DirEdge] = {}
    original_owner: dict[DirEdge, DirEdge] = {}

    for pid in sorted(surface.polygons):
        poly = surface.polygons[pid]
        pending: dict[tuple[int, int], DirEdge] = {}
        for k, (ia, ib, ic) in enumerate(_clip_ears(poly, pid)):
            tid = f"{pid}/t{k}"
            tri_polygons[tid] = Polygon(
                (poly.vertices[ia], poly.vertices[ib], poly.vertices[ic])
            )
            for s, (iu, iv) in enumerate(((ia, ib), (ib, ic), (ic, ia))):
                corner_origin[(tid, s)] = (pid, iu)
                if (iv - iu) % poly.n == 1:
                    side_origin[(tid, s)] = (pid, iu)
                    original_owner[(pid, iu)] = (tid, s)
                else:
                    side_origin[(tid, s)] = None
                    opposite = pending.pop((iv, iu), None)
                    if opposite is None:
                        pending[(iu, iv)] = (tid, s)
                    else:
                        gluing[(tid, s)] = opposite
                        gluing[opposite] = (tid, s)
        if pending:
            raise ArithmeticError(f"unmatched diagonals in polygon {pid!r}")

    for e, partner in surface.gluing.items():
        gluing[original_owner[e]] = original_owner[partner]

    node_pairs = []
    for pair in surface.node_pairs:
        refs = []
        for ref in (pair.first, pair.second):
            owner = min(
                c for c, origin in corner_origin.items() if origin == (ref.polygon, ref.vertex)
            )
            refs.append(PointRef(owner[0], owner[1]))
        node_pairs.append(NodePair(refs[0], refs[1], pair.direction))

    tri_surface = build_surface(tri_polygons, gluing, node_pairs)
    return Triangulation(tri_surface, corner_origin, side_origin)
