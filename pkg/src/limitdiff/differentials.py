"""Candidate and limit differentials on dual graphs.

A candidate differential assigns a zero order to every marked point and a
node-branch order to every half-edge, with optional exact residues. This
module houses the decision procedures that determine whether such data can
arise as the limit of Abelian differentials on smooth curves: per-edge
compatibility, residue matching at simple-pole nodes, the multiplicative
cycle condition on the weighted dual graph (decided exactly, with
certificates either way), the residue-theorem obstruction, and the
bookkeeping that follows a positive verdict (component scalings, the induced
stable differential, polar classes).

Order conventions. Along an edge, the two branch orders sum to -2 when the
node is smoothable at all ("compatibility"); the edge weight is
``max(orders) + 1 >= 0`` and the edge is directed from the zero side (order
>= 0) to the pole side, except that weight-0 edges, i.e. branch orders
(-1, -1), carry no direction.

On the multiplicative cycle condition. Smoothing parameters are nonzero
complex numbers ``eps_e`` on the weighted edges subject to
``prod eps_e^(alpha w(e)) = 1`` around every closed path. Writing
``x_e = log|eps_e|`` turns the modulus part into the linear system
``sum alpha_i w(e_i) x_i = 0`` per basis cycle with every ``x_e < 0``
(parameters must be small), which :func:`cycle_condition` decides exactly.
The argument part is always solvable once the moduli are: each weight-w
edge's phase enters through its w-th power, so any integer phase defect is
absorbed by multiplying eps_e by a root of unity, cycle by cycle along a
spanning tree. Only the modulus system can obstruct.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .curves import DualGraph, HalfEdge, half_edge_id, is_compact_type, is_stable
from .feasibility import solve_negative_orthant
from .rationals import GaussianRational


@dataclass(frozen=True)
class CandidateDifferential:
    """Orders and residues for a degenerating differential on a dual graph.

    ``leg_order`` maps marked points to zero orders (k >= 1).
    ``branch_order`` maps every half-edge to the order of the differential at
    that node branch (any integer). ``residue`` is partial: required at
    branch order -1, optional at orders <= -2, and must be zero if given at
    orders >= 0.
    """

    graph: DualGraph
    leg_order: Mapping[str, int]
    branch_order: Mapping[HalfEdge, int]
    residue: Mapping[HalfEdge, GaussianRational]

    @classmethod
    def build(
        cls,
        graph: DualGraph,
        leg_order: Mapping[str, int],
        branch_order: Mapping[HalfEdge, int],
        residue: Mapping[HalfEdge, GaussianRational] | None = None,
    ) -> "CandidateDifferential":
        return cls(graph, dict(leg_order), dict(branch_order), dict(residue or {}))

    def order_at(self, h: HalfEdge) -> int:
        return self.branch_order[h]

    def orders_at_vertex(self, vertex: str) -> int:
        total = sum(self.leg_order[l] for l in self.graph.legs_at(vertex) if l in self.leg_order)
        total += sum(self.branch_order[h] for h in self.graph.half_edges_at(vertex) if h in self.branch_order)
        return total

    def stratum_orders(self) -> tuple[int, ...]:
        return tuple(sorted(self.leg_order.values(), reverse=True))


def validate(c: CandidateDifferential) -> list[str]:
    """Return all violations of the degree and residue-presence rules.

    An empty list means the candidate is well formed: every marked point and
    half-edge carries an order, each component's orders sum to its canonical
    degree 2g_v - 2, and residues are present exactly where the order rules
    demand them.
    """
    problems: list[str] = []
    g = c.graph

    for leg in g.legs():
        if leg not in c.leg_order:
            problems.append(f"leg {leg!r} has no order")
        elif c.leg_order[leg] < 1:
            problems.append(f"leg {leg!r} has order {c.leg_order[leg]}; marked zeros need order >= 1")
    for leg in c.leg_order:
        if leg not in g.leg_vertex:
            problems.append(f"order given for unknown leg {leg!r}")

    for h in g.half_edges():
        if h not in c.branch_order:
            problems.append(f"half-edge {half_edge_id(h)} has no branch order")
    for h in c.branch_order:
        if h[0] not in g.edge_ends or h[1] not in (0, 1):
            problems.append(f"branch order given for unknown half-edge {half_edge_id(h)}")

    for h in c.residue:
        if h[0] not in g.edge_ends or h[1] not in (0, 1):
            problems.append(f"residue given for unknown half-edge {half_edge_id(h)}")

    for h in g.half_edges():
        order = c.branch_order.get(h)
        if order is None:
            continue
        res = c.residue.get(h)
        if order == -1 and res is None:
            problems.append(f"half-edge {half_edge_id(h)} has order -1 but no residue")
        if order >= 0 and res is not None and not res.is_zero():
            problems.append(f"half-edge {half_edge_id(h)} has order {order} >= 0 but nonzero residue")

    if not problems:
        for v in g.vertices():
            want = 2 * g.genus_of[v] - 2
            got = c.orders_at_vertex(v)
            if got != want:
                problems.append(f"vertex {v!r}: orders sum to {got}, the canonical degree is {want}")
    return problems


def require_valid(c: CandidateDifferential) -> None:
    problems = validate(c)
    if problems:
        raise ValueError("invalid candidate differential: " + "; ".join(problems))


def check_compatibility(c: CandidateDifferential) -> dict[str, bool]:
    """Per edge: do the two branch orders sum to -2?"""
    out = {}
    for eid in c.graph.edges():
        out[eid] = c.branch_order[(eid, 0)] + c.branch_order[(eid, 1)] == -2
    return out


def check_residue(c: CandidateDifferential) -> dict[str, bool]:
    """Per edge: opposite residues where both branch orders are -1.

    Edges carrying a direction (orders other than (-1,-1)) pass vacuously.
    Raises if a simple-pole branch is missing its residue.
    """
    out = {}
    for eid in c.graph.edges():
        o0, o1 = c.branch_order[(eid, 0)], c.branch_order[(eid, 1)]
        if (o0, o1) != (-1, -1):
            out[eid] = True
            continue
        r0, r1 = c.residue.get((eid, 0)), c.residue.get((eid, 1))
        if r0 is None or r1 is None:
            missing = half_edge_id((eid, 0) if r0 is None else (eid, 1))
            raise ValueError(f"half-edge {missing} has order -1 but no residue")
        out[eid] = (r0 + r1).is_zero()
    return out


@dataclass(frozen=True)
class DifferentialDualGraph:
    """The weighted, partially directed graph induced by a candidate.

    ``zero_end[e]`` is the end index (0 or 1) of the zero-side half-edge of
    edge ``e``, or None when the edge is unoriented (both orders -1,
    equivalently weight 0).
    """

    base: DualGraph
    weight: Mapping[str, int]
    zero_end: Mapping[str, int | None]

    def weighted_edges(self) -> list[str]:
        return [e for e in sorted(self.weight) if self.weight[e] > 0]


def diff_dual_graph(c: CandidateDifferential) -> DifferentialDualGraph:
    compat = check_compatibility(c)
    bad = sorted(e for e, ok in compat.items() if not ok)
    if bad:
        raise ValueError(f"compatibility fails at edges {bad}; no differential dual graph")
    weight: dict[str, int] = {}
    zero_end: dict[str, int | None] = {}
    for eid in c.graph.edges():
        o0, o1 = c.branch_order[(eid, 0)], c.branch_order[(eid, 1)]
        weight[eid] = max(o0, o1) + 1
        zero_end[eid] = None if o0 == o1 == -1 else (0 if o0 > o1 else 1)
    return DifferentialDualGraph(c.graph, weight, zero_end)


# -- cycle condition ---------------------------------------------------------


@dataclass(frozen=True)
class PlumbingCertificate:
    """Exact certificate for the cycle condition.

    When feasible, ``exponent`` maps each weighted edge to a negative
    rational x_e (log-modulus of the smoothing parameter, up to global
    rescale) with every basis-cycle equation sum(alpha w x) = 0 holding
    exactly. When infeasible, ``farkas`` gives rational multipliers on the
    stated ``cycle_basis`` whose combination of cycle equations is a
    componentwise-nonnegative, nonzero row over the weighted edges
    (``farkas_row``), which no strictly negative vector can annihilate.
    """

    feasible: bool
    cycle_basis: tuple[tuple[tuple[str, int], ...], ...]
    exponent: Mapping[str, Fraction] | None = None
    farkas: tuple[Fraction, ...] | None = None
    farkas_row: Mapping[str, Fraction] | None = None


def _spanning_tree(g: DualGraph) -> tuple[set[str], dict[str, list[tuple[str, str, int]]]]:
    """Deterministic spanning tree; edges scanned in sorted id order.

    Returns the set of tree edge ids and an adjacency map
    vertex -> [(edge, neighbour, end index of the neighbour side)].
    """
    parent = {v: v for v in g.vertices()}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    tree: set[str] = set()
    adjacency: dict[str, list[tuple[str, str, int]]] = {v: [] for v in g.vertices()}
    for eid in g.edges():
        a, b = g.edge_ends[eid]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            tree.add(eid)
            adjacency[a].append((eid, b, 1))
            adjacency[b].append((eid, a, 0))
    return tree, adjacency


def _tree_path(
    adjacency: Mapping[str, list[tuple[str, str, int]]], start: str, goal: str
) -> list[tuple[str, int]]:
    """Edges from start to goal in the tree as (edge, +1/-1 traversal).

    +1 means the edge is traversed from its end 0 to its end 1.
    """
    prev: dict[str, tuple[str, str, int]] = {}
    frontier = [start]
    seen = {start}
    while frontier:
        v = frontier.pop()
        if v == goal:
            break
        for eid, w, w_end in adjacency[v]:
            if w not in seen:
                seen.add(w)
                prev[w] = (v, eid, w_end)
                frontier.append(w)
    path: list[tuple[str, int]] = []
    v = goal
    while v != start:
        u, eid, v_end = prev[v]
        path.append((eid, 1 if v_end == 1 else -1))
        v = u
    path.reverse()
    return path


def cycle_basis_of(g: DualGraph) -> tuple[tuple[tuple[str, int], ...], ...]:
    """Fundamental cycles of the deterministic spanning tree.

    Each cycle is a tuple of (edge, alpha) with alpha = +1 when the cycle
    traverses the edge from end 0 to end 1. The cycle of a non-tree edge e
    follows e forward and returns through the tree.
    """
    tree, adjacency = _spanning_tree(g)
    cycles = []
    for eid in g.edges():
        if eid in tree:
            continue
        a, b = g.edge_ends[eid]
        cycle: list[tuple[str, int]] = [(eid, 1)]
        cycle.extend(_tree_path(adjacency, b, a))
        cycles.append(tuple(cycle))
    return tuple(cycles)


def cycle_condition(c: CandidateDifferential) -> PlumbingCertificate:
    """Decide the multiplicative cycle condition, with exact certificates.

    Weight-0 edges are unconstrained (their smoothing parameter never enters
    a cycle equation) and get no exponent. Cycles through them still
    constrain the weighted edges they share a loop with.
    """
    ddg = diff_dual_graph(c)
    basis = cycle_basis_of(c.graph)
    variables = ddg.weighted_edges()
    col = {e: j for j, e in enumerate(variables)}

    matrix: list[list[Fraction]] = []
    for cycle in basis:
        row = [Fraction(0)] * len(variables)
        for eid, alpha in cycle:
            if ddg.weight[eid] > 0:
                row[col[eid]] += Fraction(alpha * ddg.weight[eid])
        matrix.append(row)

    result = solve_negative_orthant(matrix, n_vars=len(variables))
    if result.feasible:
        assert result.solution is not None
        exponent = {e: result.solution[col[e]] for e in variables}
        for cycle in basis:
            acc = Fraction(0)
            for eid, alpha in cycle:
                if ddg.weight[eid] > 0:
                    acc += alpha * ddg.weight[eid] * exponent[eid]
            if acc != 0:
                raise ArithmeticError("cycle equation violated by solution; internal error")
        return PlumbingCertificate(True, basis, exponent=exponent)
    assert result.farkas is not None and result.farkas_row is not None
    row = {e: result.farkas_row[col[e]] for e in variables}
    return PlumbingCertificate(False, basis, farkas=result.farkas, farkas_row=row)


# -- necessary conditions beyond cycles --------------------------------------


@dataclass(frozen=True)
class ObstructionRecord:
    half_edge: HalfEdge
    passed: bool
    reason: str


def residue_theorem_obstruction(c: CandidateDifferential) -> list[ObstructionRecord]:
    """Check higher-order poles with nonzero residue against their neighbours.

    A branch of order <= -2 with residue alpha != 0 forces, on the component
    across the edge, a differential whose pole at the facing branch has
    residue -alpha. If that component has no other node branch, its residues
    cannot sum to zero, so no differential exists there at all.
    """
    records = []
    for h in sorted(c.branch_order, key=half_edge_id):
        if c.branch_order[h] > -2:
            continue
        res = c.residue.get(h)
        if res is None or res.is_zero():
            continue
        partner = c.graph.partner(h)
        v = c.graph.vertex_of(partner)
        others = [k for k in c.graph.half_edges_at(v) if k != partner]
        if others:
            records.append(
                ObstructionRecord(h, True, f"vertex {v!r} has further node branches to balance the residue")
            )
        else:
            records.append(
                ObstructionRecord(
                    h,
                    False,
                    f"vertex {v!r} would need a differential with a single simple pole of residue "
                    f"{-res}, impossible by the residue theorem",
                )
            )
    return records


def weak_global_residue_check(c: CandidateDifferential) -> dict[str, bool]:
    """Advisory per-vertex check: residues toward other components sum to 0.

    Loops are excluded (both branches lie on the same component). This
    condition is reported but never folded into plumbability verdicts: it is
    a plausible global constraint without a proof in the present generality.
    A vertex with an undeclared residue on a higher-order pole branch passes
    vacuously, since its sum is not determined.
    """
    out = {}
    for v in c.graph.vertices():
        total = GaussianRational.zero()
        determined = True
        for h in c.graph.half_edges_at(v):
            a, b = c.graph.edge_ends[h[0]]
            if a == b:
                continue
            order = c.branch_order[h]
            res = c.residue.get(h)
            if res is None:
                if order <= -2:
                    determined = False
                continue  # orders >= 0 carry residue zero
            total = total + res
        out[v] = True if not determined else total.is_zero()
    return out


# -- plumbability ------------------------------------------------------------


@dataclass(frozen=True)
class Plumbable:
    certificate: PlumbingCertificate

    def __str__(self) -> str:
        return "Plumbable"


@dataclass(frozen=True)
class NotPlumbable:
    reason: str
    certificate: PlumbingCertificate | None = None

    def __str__(self) -> str:
        return f"NotPlumbable({self.reason})"


@dataclass(frozen=True)
class Undecided:
    reason: str

    def __str__(self) -> str:
        return f"Undecided({self.reason})"


PlumbabilityVerdict = Plumbable | NotPlumbable | Undecided


def is_plumbable(c: CandidateDifferential) -> PlumbabilityVerdict:
    """Three-valued plumbability.

    When every pole branch of order <= -2 carries residue zero, the
    combination compatibility + residue matching + cycle condition is an
    exact characterization: the verdict is Plumbable or NotPlumbable. When
    some higher-order pole carries a nonzero residue, those conditions plus
    the residue-theorem obstruction remain necessary (any failure is a firm
    NotPlumbable), but no known condition is sufficient, so passing
    everything yields Undecided. The Undecided verdict is deliberate and is
    never coerced to yes or no.
    """
    require_valid(c)

    compat = check_compatibility(c)
    bad = sorted(e for e, ok in compat.items() if not ok)
    if bad:
        return NotPlumbable(f"compatibility fails at edges {bad}")

    residue_ok = check_residue(c)
    bad = sorted(e for e, ok in residue_ok.items() if not ok)
    if bad:
        return NotPlumbable(f"residues are not opposite at simple-pole edges {bad}")

    polar_clean = all(
        c.residue.get(h, GaussianRational.zero()).is_zero()
        for h in c.graph.half_edges()
        if c.branch_order[h] <= -2
    )

    if polar_clean:
        cert = cycle_condition(c)
        if cert.feasible:
            return Plumbable(cert)
        return NotPlumbable("cycle condition infeasible", cert)

    for record in residue_theorem_obstruction(c):
        if not record.passed:
            return NotPlumbable(
                f"residue-theorem obstruction at half-edge {half_edge_id(record.half_edge)}: {record.reason}"
            )
    cert = cycle_condition(c)
    if not cert.feasible:
        return NotPlumbable("cycle condition infeasible", cert)
    return Undecided("some pole of order >= 2 carries a nonzero residue; no sufficient criterion applies")


# -- polar classes and the stable differential --------------------------------


def polarly_related_components(c: "CandidateDifferential | StableDifferential") -> tuple[tuple[str, ...], ...]:
    """Finest vertex partition merging across both-orders-(-1) edges."""
    graph = c.graph
    branch_order = c.branch_order
    parent = {v: v for v in graph.vertices()}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for eid in graph.edges():
        if branch_order[(eid, 0)] == branch_order[(eid, 1)] == -1:
            a, b = graph.edge_ends[eid]
            parent[find(a)] = find(b)
    classes: dict[str, list[str]] = {}
    for v in graph.vertices():
        classes.setdefault(find(v), []).append(v)
    return tuple(tuple(sorted(members)) for _, members in sorted(classes.items()))


@dataclass(frozen=True)
class StableDifferential:
    """A candidate pushed to its stable limit: some components vanish.

    Vertices in ``vanishes`` carry the zero differential; the rest keep
    their orders (all >= -1 there) and residues.
    """

    graph: DualGraph
    vanishes: frozenset[str]
    leg_order: Mapping[str, int]
    branch_order: Mapping[HalfEdge, int]
    residue: Mapping[HalfEdge, GaussianRational]


def to_stable(c: CandidateDifferential) -> StableDifferential:
    """Forget the differential on polar classes containing a pole of order >= 2.

    The branch orders on edges between a kept and a vanished class survive on
    the kept side. Raises when every class would vanish (the zero
    differential is not a stable differential).
    """
    classes = polarly_related_components(c)
    vanishing: set[str] = set()
    for members in classes:
        orders = [
            c.branch_order[h]
            for v in members
            for h in c.graph.half_edges_at(v)
        ]
        if any(o <= -2 for o in orders):
            vanishing.update(members)
    if len(vanishing) == len(c.graph.vertices()):
        raise ValueError("every polar class vanishes; the stable limit would be the zero differential")

    kept_half_edges = [h for h in c.graph.half_edges() if c.graph.vertex_of(h) not in vanishing]
    for h in kept_half_edges:
        if c.branch_order[h] <= -2:
            raise ArithmeticError("kept component retains a higher-order pole; internal error")
    leg_order = {l: k for l, k in c.leg_order.items() if c.graph.leg_vertex[l] not in vanishing}
    branch_order = {h: c.branch_order[h] for h in kept_half_edges}
    residue = {h: r for h, r in c.residue.items() if h in branch_order}
    return StableDifferential(c.graph, frozenset(vanishing), leg_order, branch_order, residue)


# -- component scalings -------------------------------------------------------


@dataclass(frozen=True)
class ScalingAssignment:
    """Relative log-scalings of the components, base vertex pinned to 0.

    Crossing an edge directed i -> j (zero side to pole side) adds
    w(e) * x_e to the exponent; weight-0 edges change nothing.
    """

    base: str
    exponent: Mapping[str, Fraction]


def component_scalings(
    c: CandidateDifferential, cert: PlumbingCertificate, base: str
) -> ScalingAssignment:
    if not cert.feasible or cert.exponent is None:
        raise ValueError("component scalings need a feasible certificate")
    if base not in c.graph.genus_of:
        raise ValueError(f"unknown base vertex {base!r}")
    ddg = diff_dual_graph(c)

    def step(eid: str, from_end: int) -> Fraction:
        w = ddg.weight[eid]
        if w == 0:
            return Fraction(0)
        x = cert.exponent[eid]
        # moving zero side -> pole side adds w x; against it, subtracts
        return Fraction(w) * x if ddg.zero_end[eid] == from_end else -Fraction(w) * x

    exponent: dict[str, Fraction] = {base: Fraction(0)}
    tree, _ = _spanning_tree(c.graph)
    frontier = [base]
    while frontier:
        v = frontier.pop()
        for eid in sorted(tree):
            a, b = c.graph.edge_ends[eid]
            for u, w, from_end in ((a, b, 0), (b, a, 1)):
                if u == v and w not in exponent:
                    exponent[w] = exponent[v] + step(eid, from_end)
                    frontier.append(w)
    for eid in c.graph.edges():
        a, b = c.graph.edge_ends[eid]
        diff = exponent[b] - exponent[a]
        if diff != step(eid, 0):
            raise ArithmeticError(f"scaling inconsistent across edge {eid!r}; certificate is broken")
    return ScalingAssignment(base, exponent)


# -- the forced limit on compact type -----------------------------------------


@dataclass(frozen=True)
class ImpossibleLimit:
    reason: str

    def __str__(self) -> str:
        return f"impossible: {self.reason}"


def unique_limit_on_compact_type(
    graph: DualGraph, leg_order: Mapping[str, int]
) -> CandidateDifferential | ImpossibleLimit:
    """Propagate the forced branch orders inward from the leaves of a tree.

    On compact type the degree equation at each component and compatibility
    across each node determine every branch order from the marked zero
    orders alone. Residues are left unset. Returns the unique candidate, or
    reports impossibility when the final degree equation cannot close.
    """
    if not is_compact_type(graph):
        raise ValueError("unique limits are only forced on compact type (tree) graphs")
    if not is_stable(graph):
        raise ValueError("the input graph must be stable")
    for leg in graph.legs():
        if leg not in leg_order:
            raise ValueError(f"leg {leg!r} has no order")

    branch_order: dict[HalfEdge, int] = {}
    remaining = {v: set(graph.half_edges_at(v)) for v in graph.vertices()}

    progressed = True
    while progressed:
        progressed = False
        for v in graph.vertices():
            unknown = [h for h in remaining[v] if h not in branch_order]
            if len(unknown) != 1:
                continue
            h = unknown[0]
            known = sum(branch_order[k] for k in remaining[v] if k in branch_order)
            legs = sum(leg_order[l] for l in graph.legs_at(v))
            forced = 2 * graph.genus_of[v] - 2 - legs - known
            branch_order[h] = forced
            branch_order[graph.partner(h)] = -2 - forced
            progressed = True

    for v in graph.vertices():
        if any(h not in branch_order for h in remaining[v]):
            raise ArithmeticError("propagation stalled on a tree; internal error")
        legs = sum(leg_order[l] for l in graph.legs_at(v))
        total = legs + sum(branch_order[h] for h in remaining[v])
        if total != 2 * graph.genus_of[v] - 2:
            return ImpossibleLimit(
                f"vertex {v!r}: forced orders sum to {total}, the canonical degree is "
                f"{2 * graph.genus_of[v] - 2}"
            )
    return CandidateDifferential(graph, dict(leg_order), branch_order, {})
