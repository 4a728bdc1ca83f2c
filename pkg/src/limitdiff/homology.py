"""Symplectic homology systems and the Arf invariant on translation surfaces.

The pipeline: triangulate the surface, take the fundamental cycles of a
spanning tree of the triangle adjacency graph as a pool of embedded loops
(they span the homology of the punctured surface), realize them as chords
with globally distinct crossing parameters so that all intersections are
transversal and countable exactly, and reduce the integer intersection form
to symplectic normal form with a tracked unimodular change of basis.

Nodal proxy models add, per declared node, an admissible arc joining the two
marked points and a formal vanishing class v. The vanishing class is never
realized geometrically: the honest representative is the core curve of the
cylinder that was cut off, whose direction is constant, so its winding index
is 0 and its quadratic invariant is 1 by definition. A polygon-metric loop
around the marked point would have winding +-1 instead, which is exactly the
wrong answer; formality is the point, not a shortcut. Vanishing classes
pair +1 against their own arc (arc . v = +1, v . arc = -1) and 0 against
everything else.

The quadratic invariant of a path is

    q = sum over strands (winding + 1) + number of crossings
        + sum of |vanishing coefficients|        (mod 2),

crossings counted between strands and within non-embedded strands. The Arf
invariant of a full system is sum q(a) q(b) over its pairs, and is only
offered when every zero order is even and every node class has cone angle
exactly 2 pi; other surfaces raise :class:`ScopeError`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import Vec, is_zero, proper_crossing_sign, sub, turning_degree
from .surfaces import (
    Corner,
    DirEdge,
    NodePair,
    TranslationSurface,
    Triangulation,
    stratum_of,
    triangulate,
)


class ScopeError(Exception):
    """The surface is outside the regime where the invariant is defined."""


@dataclass(frozen=True)
class Segment:
    polygon: str
    start: Vec
    end: Vec

    def direction(self) -> Vec:
        d = sub(self.end, self.start)
        if is_zero(d):
            raise ValueError("zero-length segment")
        return d


@dataclass(frozen=True)
class Strand:
    """A chain of segments, consecutive ones meeting across gluings."""

    segments: tuple[Segment, ...]
    closed: bool


@dataclass(frozen=True)
class SurfacePath:
    """A homology class with a geometric representative and formal part.

    ``combo`` records the integer combination of pool loops a multicurve
    realizes (empty for arcs and purely formal classes); ``vanishing`` holds
    the coefficients on the formal vanishing classes, one per node.
    ``theta`` is the closing direction for admissible arcs.
    """

    kind: str  # "closed" | "admissible" | "formal_vanishing"
    strands: tuple[Strand, ...]
    node_index: int | None = None
    combo: tuple[int, ...] = ()
    vanishing: tuple[int, ...] = ()
    theta: Vec | None = None


# -- realization ----------------------------------------------------------------


class ParamAllocator:
    """Distinct crossing parameters per unordered arc, avoiding mirrors.

    A point at parameter t on a directed side is the point at 1 - t on its
    partner, so both t and 1 - t are reserved when t is handed out.
    """

    def __init__(self) -> None:
        self._used: dict[tuple[DirEdge, DirEdge], set[Fraction]] = {}
        self._next: dict[tuple[DirEdge, DirEdge], int] = {}

    @staticmethod
    def _key(e: DirEdge, partner: DirEdge) -> tuple[DirEdge, DirEdge]:
        return (e, partner) if e <= partner else (partner, e)

    def fresh(self, e: DirEdge, partner: DirEdge) -> Fraction:
        key = self._key(e, partner)
        used = self._used.setdefault(key, set())
        m = self._next.get(key, 3)
        while True:
            t = Fraction(1, m)
            m += 1
            if t not in used and 1 - t not in used:
                used.add(t)
                used.add(1 - t)
                self._next[key] = m
                return t


@dataclass(frozen=True)
class LoopDescriptor:
    """A cyclic walk through triangles: (triangle, side exited through)."""

    steps: tuple[tuple[str, DirEdge], ...]


def _point_on_side(surface: TranslationSurface, e: DirEdge, t: Fraction) -> Vec:
    start = surface.polygons[e[0]].vertices[e[1]]
    v = surface.side_vector(e)
    return (start[0] + t * v[0], start[1] + t * v[1])


def _realize_loop(
    surface: TranslationSurface, loop: LoopDescriptor, allocator: ParamAllocator
) -> Strand:
    exits: list[tuple[DirEdge, Fraction]] = []
    for tid, side in loop.steps:
        if side[0] != tid:
            raise ValueError("descriptor step exits through a side of another triangle")
        exits.append((side, allocator.fresh(side, surface.partner(side))))
    segments = []
    for m, (side, t) in enumerate(exits):
        prev_side, prev_t = exits[m - 1]
        entry_side = surface.partner(prev_side)
        entry = _point_on_side(surface, entry_side, 1 - prev_t)
        segments.append(Segment(side[0], entry, _point_on_side(surface, side, t)))
    return Strand(tuple(segments), closed=True)


def _reverse_strand(s: Strand) -> Strand:
    return Strand(
        tuple(Segment(seg.polygon, seg.end, seg.start) for seg in reversed(s.segments)),
        s.closed,
    )


# -- crossings and invariants ----------------------------------------------------


def _strand_crossings(a: Strand, b: Strand) -> int:
    """Signed sum of transversal crossings between two strands."""
    total = 0
    for s in a.segments:
        for t in b.segments:
            if s.polygon != t.polygon:
                continue
            total += proper_crossing_sign(s.start, s.end, t.start, t.end)
    return total


def _self_crossings(s: Strand) -> int:
    count = 0
    for i, j in itertools.combinations(range(len(s.segments)), 2):
        a, b = s.segments[i], s.segments[j]
        if a.polygon != b.polygon:
            continue
        count += abs(proper_crossing_sign(a.start, a.end, b.start, b.end))
    return count


def intersection_number(p: SurfacePath, q: SurfacePath) -> int:
    """Algebraic intersection, geometric crossings plus the formal rules."""
    if p is q:
        return 0
    total = 0
    for a in p.strands:
        for b in q.strands:
            total += _strand_crossings(a, b)
    # vanishing classes pair only with their own arc: arc . v = +1
    if q.kind == "admissible" and q.node_index is not None and q.node_index < len(p.vanishing):
        total += p.vanishing[q.node_index] * (-1)
    if p.kind == "admissible" and p.node_index is not None and p.node_index < len(q.vanishing):
        total += q.vanishing[p.node_index] * (+1)
    return total


def _strand_winding(s: Strand, theta: Vec | None) -> int:
    directions = [seg.direction() for seg in s.segments]
    if s.closed:
        return turning_degree(directions)
    if theta is None:
        raise ValueError("an open strand needs a closing direction")
    return turning_degree([theta, *directions])


def winding_index(path: SurfacePath) -> int:
    """Turning number of the representative; mod 2 only for multicurves.

    Closed single-strand paths and admissible arcs have an honest integer
    index (arcs close up through the node's cylinder direction). Formal
    vanishing classes have index 0 by definition. Multicurves only retain
    the mod-2 index, q - 1.
    """
    if path.kind == "formal_vanishing":
        return 0
    if path.kind == "admissible":
        (strand,) = path.strands
        return _strand_winding(strand, path.theta)
    if len(path.strands) == 1 and not any(path.vanishing):
        return _strand_winding(path.strands[0], None)
    return (q_invariant(path) - 1) % 2


def q_invariant(path: SurfacePath) -> int:
    """The mod-2 quadratic invariant of the class of the path."""
    total = 0
    for s in path.strands:
        total += _strand_winding(s, path.theta if path.kind == "admissible" else None) + 1
        total += _self_crossings(s)
    for a, b in itertools.combinations(path.strands, 2):
        # signed sum agrees with the crossing count mod 2
        total += _strand_crossings(a, b)
    total += sum(abs(c) for c in path.vanishing)
    return total % 2


# -- the loop pool ----------------------------------------------------------------


def _adjacency(surface: TranslationSurface) -> dict[str, list[tuple[DirEdge, str]]]:
    out: dict[str, list[tuple[DirEdge, str]]] = {pid: [] for pid in surface.polygons}
    for pid in sorted(surface.polygons):
        for i in range(surface.polygons[pid].n):
            e = (pid, i)
            out[pid].append((e, surface.partner(e)[0]))
    return out


def loop_pool(surface: TranslationSurface) -> tuple[LoopDescriptor, ...]:
    """Fundamental cycles of a spanning tree of the triangle adjacency graph.

    Their classes generate the homology of the surface punctured at all
    vertex classes: rank E - F + 1 = 2g + (number of classes) - 1. Each
    cycle visits any triangle at most once.
    """
    adjacency = _adjacency(surface)
    root = min(surface.polygons)
    parent: dict[str, tuple[str, DirEdge]] = {}  # child -> (parent, side of child towards parent)
    tree_arcs: set[frozenset[DirEdge]] = set()
    order = [root]
    seen = {root}
    for pid in order:
        for e, q in adjacency[pid]:
            if q not in seen:
                seen.add(q)
                parent[q] = (pid, surface.partner(e))
                tree_arcs.add(frozenset((e, surface.partner(e))))
                order.append(q)
    if len(seen) != len(surface.polygons):
        raise ArithmeticError("triangle adjacency graph is disconnected")

    def tree_path(start: str, goal: str) -> list[tuple[str, DirEdge]]:
        """Steps (triangle, exit side) from start to goal inside the tree."""
        chains = {}
        for end in (start, goal):
            chain = [end]
            node = end
            while node != root:
                node = parent[node][0]
                chain.append(node)
            chains[end] = chain
        common = None
        goal_chain = set(chains[goal])
        for node in chains[start]:
            if node in goal_chain:
                common = node
                break
        assert common is not None
        steps: list[tuple[str, DirEdge]] = []
        node = start
        while node != common:
            up_parent, exit_side = parent[node]
            steps.append((node, exit_side))
            node = up_parent
        down: list[tuple[str, DirEdge]] = []
        node = goal
        while node != common:
            up_parent, exit_side = parent[node]
            # descending uses the reversed step: exit the parent towards node
            down.append((up_parent, surface.partner(exit_side)))
            node = up_parent
        return steps + list(reversed(down))

    loops = []
    for pid in sorted(surface.polygons):
        for i in range(surface.polygons[pid].n):
            e = (pid, i)
            p = surface.partner(e)
            if p < e or frozenset((e, p)) in tree_arcs:
                continue
            steps = [(e[0], e)] + tree_path(p[0], e[0])
            loops.append(LoopDescriptor(tuple(steps)))
    return tuple(loops)


# -- symplectic reduction ----------------------------------------------------------


def _apply_basis_op(matrix: list[list[int]], basis: list[list[int]], k: int, m: int, c: int) -> None:
    """basis[k] += c * basis[m], with the congruent matrix update."""
    basis[k] = [x + c * y for x, y in zip(basis[k], basis[m])]
    n = len(matrix)
    for r in range(n):
        matrix[r][k] += c * matrix[r][m]
    for s in range(n):
        matrix[k][s] += c * matrix[m][s]


def symplectic_reduce(gram: Sequence[Sequence[int]]) -> tuple[list[tuple[int, int]], list[list[int]]]:
    """Normalize an integer alternating form by a tracked unimodular change.

    Returns hyperbolic pairs (i, j) of positions in the new basis, with
    pairing exactly +1, and the new basis as integer rows over the old one.
    Positions outside all pairs span the radical. Raises if a hyperbolic
    block has pairing size other than 1, which cannot happen for the
    intersection form of loops on a surface.
    """
    n = len(gram)
    matrix = [list(map(int, row)) for row in gram]
    for i in range(n):
        if matrix[i][i] != 0:
            raise ValueError("not an alternating form")
        for j in range(n):
            if matrix[i][j] != -matrix[j][i]:
                raise ValueError("not an alternating form")
    basis = [[1 if c == r else 0 for c in range(n)] for r in range(n)]
    remaining = list(range(n))
    pairs: list[tuple[int, int]] = []

    while True:
        pivot = None
        best = None
        for i in remaining:
            for j in remaining:
                v = matrix[i][j]
                if v > 0 and (best is None or v < best):
                    best = v
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        while True:
            d = matrix[i][j]
            k_bad = next(
                (k for k in remaining if k not in (i, j) and matrix[i][k] % d != 0), None
            )
            if k_bad is not None:
                # floor division against a positive pivot leaves a remainder
                # in (0, d), so (i, k_bad) is a strictly smaller pivot
                q = matrix[i][k_bad] // d
                _apply_basis_op(matrix, basis, k_bad, j, -q)
                j = k_bad
                continue
            k_bad = next(
                (k for k in remaining if k not in (i, j) and matrix[j][k] % d != 0), None
            )
            if k_bad is not None:
                # here the divisor is -d, the remainder lands in (-d, 0),
                # and the transposed entry gives the positive pivot
                q = matrix[j][k_bad] // matrix[j][i]
                _apply_basis_op(matrix, basis, k_bad, i, -q)
                i = k_bad
                continue
            break
        d = matrix[i][j]
        if d != 1:
            raise ArithmeticError(f"hyperbolic block of size {d}; the form is not unimodular mod radical")
        for k in list(remaining):
            if k in (i, j):
                continue
            if matrix[i][k] != 0:
                _apply_basis_op(matrix, basis, k, j, -matrix[i][k])
            if matrix[j][k] != 0:
                _apply_basis_op(matrix, basis, k, i, matrix[j][k])
        pairs.append((i, j))
        remaining.remove(i)
        remaining.remove(j)

    for r in remaining:
        for s in remaining:
            assert matrix[r][s] == 0
    return pairs, basis


# -- admissible arcs ---------------------------------------------------------------


def _opposite_side(corner: Corner) -> DirEdge:
    """The side of a triangle not touching the given corner."""
    pid, k = corner
    return (pid, (k + 1) % 3)


def _arc_exit_chain(
    surface: TranslationSurface, first_exit: DirEdge, last_entry: DirEdge
) -> list[DirEdge]:
    """Crossing sides from the first hop to the final entry.

    BFS over directed states "side just entered through", never exiting back
    through the entry side, so no chord of the chain can run along a triangle
    side. The chain ends by entering through ``last_entry`` itself.
    """
    start = surface.partner(first_exit)
    if start == last_entry:
        return [first_exit]
    parent: dict[DirEdge, tuple[DirEdge, DirEdge]] = {}
    queue = [start]
    seen = {start}
    while queue:
        s = queue.pop(0)
        for i in range(surface.polygons[s[0]].n):
            u = (s[0], i)
            if u == s:
                continue
            t = surface.partner(u)
            if t in seen:
                continue
            seen.add(t)
            parent[t] = (s, u)
            if t == last_entry:
                queue.clear()
                break
            queue.append(t)
    if last_entry not in parent:
        raise ArithmeticError("no admissible route between the node's branches")
    out = []
    state = last_entry
    while state != start:
        state, u = parent[state]
        out.append(u)
    out.append(first_exit)
    return list(reversed(out))


def _realize_arc(
    surface: TranslationSurface, node: NodePair, allocator: ParamAllocator
) -> Strand:
    """An open chain of chords from the first marked corner to the second.

    The first and last hops leave through the side opposite the corner, so
    no segment ever runs along a triangle side.
    """
    c1: Corner = (node.first.polygon, node.first.vertex)
    c2: Corner = (node.second.polygon, node.second.vertex)
    first_exit = _opposite_side(c1)
    last_entry = _opposite_side(c2)
    exits = _arc_exit_chain(surface, first_exit, last_entry)
    params = [allocator.fresh(e, surface.partner(e)) for e in exits]

    points: list[tuple[str, Vec]] = [(c1[0], surface.polygons[c1[0]].vertices[c1[1]])]
    for e, t in zip(exits, params):
        points.append((e[0], _point_on_side(surface, e, t)))
        entry = surface.partner(e)
        points.append((entry[0], _point_on_side(surface, entry, 1 - t)))
    points.append((c2[0], surface.polygons[c2[0]].vertices[c2[1]]))

    segments = []
    for (pid_a, a), (pid_b, b) in zip(points[::2], points[1::2]):
        if pid_a != pid_b:
            raise ArithmeticError("arc chain left a triangle between chord endpoints")
        segments.append(Segment(pid_a, a, b))
    return Strand(tuple(segments), closed=False)


# -- system assembly ---------------------------------------------------------------


@dataclass(frozen=True)
class AdmissibleSystem:
    """A symplectic system of paths on a (possibly nodal) proxy surface.

    ``pairs`` lists (a, b) with pairing a . b = +1 and all other pairings
    zero; surface pairs come first, then one (arc, vanishing class) pair per
    declared node. The loop pool and allocator are kept so that transformed
    systems can realize fresh multicurves with untouched parameters.
    """

    triangulation: Triangulation
    loops: tuple[LoopDescriptor, ...]
    pool: tuple[SurfacePath, ...]
    pairs: tuple[tuple[SurfacePath, SurfacePath], ...]
    allocator: ParamAllocator

    @property
    def surface(self) -> TranslationSurface:
        return self.triangulation.surface

    @property
    def surface_pair_count(self) -> int:
        return len(self.pairs) - len(self.surface.node_pairs)


def _realize_combo(
    surface: TranslationSurface,
    loops: Sequence[LoopDescriptor],
    allocator: ParamAllocator,
    combo: Sequence[int],
    vanishing: Sequence[int],
) -> SurfacePath:
    strands = []
    for j, c in enumerate(combo):
        for _ in range(abs(c)):
            strand = _realize_loop(surface, loops[j], allocator)
            strands.append(strand if c > 0 else _reverse_strand(strand))
    return SurfacePath(
        kind="closed",
        strands=tuple(strands),
        combo=tuple(combo),
        vanishing=tuple(vanishing),
    )


def _check_standard_pairing(pairs: Sequence[tuple[SurfacePath, SurfacePath]]) -> None:
    flat: list[SurfacePath] = [p for pair in pairs for p in pair]
    for r, p in enumerate(flat):
        for s, q in enumerate(flat):
            expected = 0
            if r // 2 == s // 2:
                expected = {(0, 1): 1, (1, 0): -1}.get((r % 2, s % 2), 0)
            got = intersection_number(p, q)
            if got != expected:
                raise ArithmeticError(
                    f"pairing check failed at ({r}, {s}): expected {expected}, got {got}"
                )


def find_symplectic_system(surface: TranslationSurface) -> AdmissibleSystem:
    """Triangulate, realize a loop pool, and reduce to a symplectic basis.

    Node pairs contribute an admissible arc and its formal vanishing class;
    pool loops and later arcs are corrected by vanishing classes so that the
    full collection pairs as a standard symplectic basis of the nodal model.
    """
    tri = triangulate(surface)
    s = tri.surface
    n_nodes = len(s.node_pairs)
    allocator = ParamAllocator()
    loops = loop_pool(s)

    raw_pool = [
        SurfacePath(
            kind="closed",
            strands=(_realize_loop(s, loop, allocator),),
            combo=tuple(1 if k == j else 0 for k in range(len(loops))),
            vanishing=(0,) * n_nodes,
        )
        for j, loop in enumerate(loops)
    ]

    raw_arcs = [
        SurfacePath(
            kind="admissible",
            strands=(_realize_arc(s, node, allocator),),
            node_index=i,
            vanishing=(0,) * n_nodes,
            theta=node.direction,
        )
        for i, node in enumerate(s.node_pairs)
    ]

    # corrections by vanishing classes kill all pairings against the arcs
    pool = [
        SurfacePath(
            kind="closed",
            strands=path.strands,
            combo=path.combo,
            vanishing=tuple(intersection_number(path, arc) for arc in raw_arcs),
        )
        for path in raw_pool
    ]
    arcs = []
    for k, arc in enumerate(raw_arcs):
        coeffs = [0] * n_nodes
        for i in range(k):
            coeffs[i] = intersection_number(arc, raw_arcs[i])
        arcs.append(
            SurfacePath(
                kind="admissible",
                strands=arc.strands,
                node_index=k,
                vanishing=tuple(coeffs),
                theta=arc.theta,
            )
        )
    vanish = [
        SurfacePath(
            kind="formal_vanishing",
            strands=(),
            node_index=i,
            vanishing=tuple(1 if k == i else 0 for k in range(n_nodes)),
        )
        for i in range(n_nodes)
    ]

    gram = [[intersection_number(p, q) for q in pool] for p in pool]
    pair_idx, basis = symplectic_reduce(gram)
    classes = len(set(s.vertex_class.values()))
    if len(pair_idx) != s.genus:
        raise ArithmeticError(
            f"reduced to {len(pair_idx)} hyperbolic pairs on a genus {s.genus} surface"
        )
    if len(pool) - 2 * len(pair_idx) != classes - 1:
        raise ArithmeticError("radical rank disagrees with the puncture count")

    def combine(row: Sequence[int]) -> SurfacePath:
        vanishing = [0] * n_nodes
        for j, c in enumerate(row):
            for i in range(n_nodes):
                vanishing[i] += c * pool[j].vanishing[i]
        return _realize_combo(s, loops, allocator, row, vanishing)

    pairs = [(combine(basis[i]), combine(basis[j])) for i, j in pair_idx]
    pairs.extend(zip(arcs, vanish))
    system = AdmissibleSystem(tri, loops, tuple(pool), tuple(pairs), allocator)
    _check_standard_pairing(system.pairs)
    return system


# -- the invariant -----------------------------------------------------------------


def arf_invariant(system: AdmissibleSystem) -> int:
    """Sum of q(a) q(b) over the pairs of the system, mod 2.

    Defined only when all zero orders are even and every node sits at a
    marked point with cone angle exactly 2 pi on each branch; anything else
    raises ScopeError rather than returning a number that depends on the
    choice of basis.
    """
    s = system.surface
    orders = stratum_of(s)
    if any(o % 2 for o in orders):
        raise ScopeError(f"zero orders {orders} are not all even")
    node_classes = s.node_classes()
    for cls in sorted(node_classes):
        if s.cone_multiple[cls] != 1:
            raise ScopeError(
                f"node class {cls} has cone angle {2 * s.cone_multiple[cls]} pi, not 2 pi"
            )
    total = 0
    for a, b in system.pairs:
        total += q_invariant(a) * q_invariant(b)
    return total % 2


# -- basis changes -----------------------------------------------------------------


def transform_system(
    system: AdmissibleSystem, ops: Sequence[tuple]
) -> AdmissibleSystem:
    """Apply elementary symplectic moves to the surface pairs and re-realize.

    Supported ops, all acting on surface pairs only:
        ("a_plus_b", t)   a_t <- a_t + b_t
        ("b_plus_a", t)   b_t <- b_t + a_t
        ("swap", t)       a_t <- b_t, b_t <- -a_t
        ("cross", t, u)   a_t <- a_t + a_u, b_u <- b_u - b_t
    Multicurves are rebuilt from the loop pool with fresh parameters, and
    the standard pairing is re-checked on the result.
    """
    n_surface = system.surface_pair_count
    rows = []
    for a, b in system.pairs[:n_surface]:
        rows.append([list(a.combo), list(a.vanishing)])
        rows.append([list(b.combo), list(b.vanishing)])

    def add(dst: int, src: int, sign: int) -> None:
        for part in range(2):
            rows[dst][part] = [
                x + sign * y for x, y in zip(rows[dst][part], rows[src][part])
            ]

    for op in ops:
        name, *idx = op
        for t in idx:
            if not 0 <= t < n_surface:
                raise ValueError(f"op {op} touches a non-surface pair")
        if name == "a_plus_b":
            (t,) = idx
            add(2 * t, 2 * t + 1, +1)
        elif name == "b_plus_a":
            (t,) = idx
            add(2 * t + 1, 2 * t, +1)
        elif name == "swap":
            (t,) = idx
            rows[2 * t], rows[2 * t + 1] = rows[2 * t + 1], [
                [-x for x in part] for part in rows[2 * t]
            ]
        elif name == "cross":
            t, u = idx
            if t == u:
                raise ValueError("cross needs two distinct pairs")
            add(2 * t, 2 * u, +1)
            add(2 * u + 1, 2 * t + 1, -1)
        else:
            raise ValueError(f"unknown op {name!r}")

    s = system.surface
    new_pairs = []
    for t in range(n_surface):
        a = _realize_combo(s, system.loops, system.allocator, rows[2 * t][0], rows[2 * t][1])
        b = _realize_combo(
            s, system.loops, system.allocator, rows[2 * t + 1][0], rows[2 * t + 1][1]
        )
        new_pairs.append((a, b))
    new_pairs.extend(system.pairs[n_surface:])
    out = AdmissibleSystem(
        system.triangulation, system.loops, system.pool, tuple(new_pairs), system.allocator
    )
    _check_standard_pairing(out.pairs)
    return out
