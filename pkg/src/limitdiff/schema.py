"""JSON documents for graphs, differentials, surfaces, flags, and queries.

Every file is an envelope {"kind": ..., "version": 1, "payload": ...} with
an optional free-form "expected" block that round-trips untouched (fixtures
keep their known answers there). Numbers that must stay exact (residues,
polygon coordinates) travel as strings like "3/4"; plain integers are also
accepted. Parse errors carry a JSON-pointer location.

Parsing is structural: unknown ids, bad shapes, and missing residues at
simple poles are caught here, while semantic checks (degree equations,
compatibility across nodes) stay with the validators so that a document
describing an inconsistent candidate can still be loaded and examined.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

from .curves import DualGraph, half_edge_id, parse_half_edge_id
from .differentials import CandidateDifferential
from .flags import GeometryFlags
from .rationals import GaussianRational, as_fraction
from .strata import StratumSignature, TAGS
from .surfaces import NodePair, PointRef, TranslationSurface, build_surface, polygon

KINDS = ("dual_graph", "candidate_differential", "surface", "flags", "stratum_query")
VERSION = 1


class SchemaError(Exception):
    def __init__(self, message: str, location: str = "") -> None:
        super().__init__(f"{location or '/'}: {message}")
        self.message = message
        self.location = location


@dataclass(frozen=True)
class ParsedDocument:
    kind: str
    value: object
    expected: dict | None


# -- small typed readers -------------------------------------------------------


def _obj(x: Any, loc: str) -> dict:
    if not isinstance(x, dict):
        raise SchemaError("expected an object", loc)
    return x


def _arr(x: Any, loc: str) -> list:
    if not isinstance(x, list):
        raise SchemaError("expected an array", loc)
    return x


def _str(x: Any, loc: str) -> str:
    if not isinstance(x, str):
        raise SchemaError("expected a string", loc)
    return x


def _int(x: Any, loc: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError("expected an integer", loc)
    return x


def _bool(x: Any, loc: str) -> bool:
    if not isinstance(x, bool):
        raise SchemaError("expected true or false", loc)
    return x


def _fraction(x: Any, loc: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SchemaError("expected an integer or a rational string like '3/4'", loc)
    try:
        return as_fraction(x)
    except (ValueError, ZeroDivisionError) as err:
        raise SchemaError(f"bad rational: {err}", loc) from None


def _gaussian(x: Any, loc: str) -> GaussianRational:
    node = _obj(x, loc)
    extra = set(node) - {"re", "im"}
    if extra:
        raise SchemaError(f"unexpected keys {sorted(extra)}", loc)
    return GaussianRational(
        _fraction(node.get("re", 0), loc + "/re"),
        _fraction(node.get("im", 0), loc + "/im"),
    )


def _keys(node: dict, loc: str, required: tuple[str, ...], optional: tuple[str, ...] = ()) -> None:
    missing = [k for k in required if k not in node]
    if missing:
        raise SchemaError(f"missing keys {missing}", loc)
    extra = set(node) - set(required) - set(optional)
    if extra:
        raise SchemaError(f"unexpected keys {sorted(extra)}", loc)


# -- payload parsers -------------------------------------------------------------


def parse_dual_graph(payload: Any, loc: str = "/payload") -> DualGraph:
    node = _obj(payload, loc)
    _keys(node, loc, ("vertices", "edges"), ("legs", "exceptional"))
    genus_of = {
        _check_name(v, f"{loc}/vertices"): _int(g, f"{loc}/vertices/{v}")
        for v, g in _obj(node["vertices"], loc + "/vertices").items()
    }
    edges = {}
    for e, ends in _obj(node["edges"], loc + "/edges").items():
        pair = _arr(ends, f"{loc}/edges/{e}")
        if len(pair) != 2:
            raise SchemaError("an edge needs exactly two ends", f"{loc}/edges/{e}")
        for v in pair:
            if _str(v, f"{loc}/edges/{e}") not in genus_of:
                raise SchemaError(f"unknown vertex {v!r}", f"{loc}/edges/{e}")
        edges[_check_name(e, loc + "/edges")] = (pair[0], pair[1])
    legs = {}
    for name, v in _obj(node.get("legs", {}), loc + "/legs").items():
        if _str(v, f"{loc}/legs/{name}") not in genus_of:
            raise SchemaError(f"unknown vertex {v!r}", f"{loc}/legs/{name}")
        legs[_check_name(name, loc + "/legs")] = v
    exceptional = []
    for i, v in enumerate(_arr(node.get("exceptional", []), loc + "/exceptional")):
        if _str(v, f"{loc}/exceptional/{i}") not in genus_of:
            raise SchemaError(f"unknown vertex {v!r}", f"{loc}/exceptional/{i}")
        exceptional.append(v)
    try:
        return DualGraph.build(
            vertices=sorted(genus_of.items()),
            edges=[(e, a, b) for e, (a, b) in sorted(edges.items())],
            legs=sorted(legs.items()),
            exceptional=exceptional,
        )
    except ValueError as err:
        raise SchemaError(str(err), loc) from None


def _check_name(name: object, loc: str) -> str:
    s = _str(name, loc)
    if not s or ":" in s or "/" in s:
        raise SchemaError(f"bad identifier {s!r} (no colons or slashes)", loc)
    return s


def _branch_point(ref: str, graph: DualGraph, loc: str) -> tuple[str, int]:
    try:
        edge, end = parse_half_edge_id(ref)
    except ValueError as err:
        raise SchemaError(str(err), loc) from None
    if edge not in graph.edge_ends:
        raise SchemaError(f"unknown edge {edge!r}", loc)
    return (edge, end)


def parse_candidate(payload: Any, loc: str = "/payload") -> CandidateDifferential:
    node = _obj(payload, loc)
    _keys(node, loc, ("graph", "leg_orders"), ("branch_orders", "residues"))
    graph = parse_dual_graph(node["graph"], loc + "/graph")
    leg_orders = {}
    for name, k in _obj(node["leg_orders"], loc + "/leg_orders").items():
        if name not in graph.leg_vertex:
            raise SchemaError(f"unknown leg {name!r}", f"{loc}/leg_orders/{name}")
        leg_orders[name] = _int(k, f"{loc}/leg_orders/{name}")
    if set(leg_orders) != set(graph.leg_vertex):
        missing = sorted(set(graph.leg_vertex) - set(leg_orders))
        raise SchemaError(f"legs without orders: {missing}", loc + "/leg_orders")
    branch_orders = {}
    for ref, k in _obj(node.get("branch_orders", {}), loc + "/branch_orders").items():
        key = _branch_point(ref, graph, f"{loc}/branch_orders/{ref}")
        branch_orders[key] = _int(k, f"{loc}/branch_orders/{ref}")
    expected_branches = {(e, end) for e in graph.edge_ends for end in (0, 1)}
    if set(branch_orders) != expected_branches:
        missing = sorted(half_edge_id(h) for h in expected_branches - set(branch_orders))
        raise SchemaError(f"branch points without orders: {missing}", loc + "/branch_orders")
    residues = {}
    for ref, value in _obj(node.get("residues", {}), loc + "/residues").items():
        key = _branch_point(ref, graph, f"{loc}/residues/{ref}")
        residues[key] = _gaussian(value, f"{loc}/residues/{ref}")
    for ref, k in branch_orders.items():
        if k == -1 and ref not in residues:
            raise SchemaError(
                f"branch point {half_edge_id(ref)} has a simple pole and needs a declared residue",
                loc + "/residues",
            )
    try:
        return CandidateDifferential.build(
            graph=graph,
            leg_order=leg_orders,
            branch_order=branch_orders,
            residue=residues,
        )
    except ValueError as err:
        raise SchemaError(str(err), loc) from None


def parse_flags(payload: Any, loc: str = "/payload") -> GeometryFlags:
    node = _obj(payload, loc)
    _keys(node, loc, (), ("weierstrass", "torsion_order", "conjugate_pairs", "lin_equiv"))
    weierstrass = {
        _str(k, loc + "/weierstrass"): _bool(v, f"{loc}/weierstrass/{k}")
        for k, v in _obj(node.get("weierstrass", {}), loc + "/weierstrass").items()
    }
    torsion = {
        _str(k, loc + "/torsion_order"): _int(v, f"{loc}/torsion_order/{k}")
        for k, v in _obj(node.get("torsion_order", {}), loc + "/torsion_order").items()
    }
    pairs = []
    for i, pair in enumerate(_arr(node.get("conjugate_pairs", []), loc + "/conjugate_pairs")):
        members = _arr(pair, f"{loc}/conjugate_pairs/{i}")
        if len(members) != 2:
            raise SchemaError("a conjugate pair has two points", f"{loc}/conjugate_pairs/{i}")
        pairs.append(frozenset(_str(m, f"{loc}/conjugate_pairs/{i}") for m in members))
    lin_equiv = {
        _str(k, loc + "/lin_equiv"): _bool(v, f"{loc}/lin_equiv/{k}")
        for k, v in _obj(node.get("lin_equiv", {}), loc + "/lin_equiv").items()
    }
    return GeometryFlags(
        weierstrass=weierstrass,
        torsion_order=torsion,
        conjugate_pairs=frozenset(pairs),
        lin_equiv=lin_equiv,
    )


def _point(x: Any, loc: str) -> tuple[Fraction, Fraction]:
    pair = _arr(x, loc)
    if len(pair) != 2:
        raise SchemaError("a point is [x, y]", loc)
    return (_fraction(pair[0], loc + "/0"), _fraction(pair[1], loc + "/1"))


def _point_ref(x: Any, loc: str) -> PointRef:
    pair = _arr(x, loc)
    if len(pair) != 2:
        raise SchemaError("a corner reference is [polygon, vertex]", loc)
    return PointRef(_str(pair[0], loc + "/0"), _int(pair[1], loc + "/1"))


def parse_surface(payload: Any, loc: str = "/payload") -> TranslationSurface:
    node = _obj(payload, loc)
    _keys(node, loc, ("polygons", "gluing"), ("node_pairs",))
    polygons = {}
    for pid, coords in _obj(node["polygons"], loc + "/polygons").items():
        _check_name(pid, loc + "/polygons")
        pts = [
            _point(p, f"{loc}/polygons/{pid}/{i}")
            for i, p in enumerate(_arr(coords, f"{loc}/polygons/{pid}"))
        ]
        try:
            polygons[pid] = polygon(pts)
        except ValueError as err:
            raise SchemaError(str(err), f"{loc}/polygons/{pid}") from None
    gluing = {}
    for i, entry in enumerate(_arr(node["gluing"], loc + "/gluing")):
        pair = _arr(entry, f"{loc}/gluing/{i}")
        if len(pair) != 2:
            raise SchemaError("a gluing entry joins two sides", f"{loc}/gluing/{i}")
        sides = []
        for j, ref in enumerate(pair):
            r = _arr(ref, f"{loc}/gluing/{i}/{j}")
            if len(r) != 2:
                raise SchemaError("a side is [polygon, index]", f"{loc}/gluing/{i}/{j}")
            pid = _str(r[0], f"{loc}/gluing/{i}/{j}/0")
            if pid not in polygons:
                raise SchemaError(f"unknown polygon {pid!r}", f"{loc}/gluing/{i}/{j}/0")
            k = _int(r[1], f"{loc}/gluing/{i}/{j}/1")
            if not 0 <= k < polygons[pid].n:
                raise SchemaError(f"side index {k} out of range", f"{loc}/gluing/{i}/{j}/1")
            sides.append((pid, k))
        if sides[0] in gluing:
            raise SchemaError(f"side {sides[0]} glued twice", f"{loc}/gluing/{i}")
        gluing[sides[0]] = sides[1]
    node_pairs = []
    for i, entry in enumerate(_arr(node.get("node_pairs", []), loc + "/node_pairs")):
        item = _obj(entry, f"{loc}/node_pairs/{i}")
        _keys(item, f"{loc}/node_pairs/{i}", ("first", "second", "direction"))
        node_pairs.append(
            NodePair(
                first=_point_ref(item["first"], f"{loc}/node_pairs/{i}/first"),
                second=_point_ref(item["second"], f"{loc}/node_pairs/{i}/second"),
                direction=_point(item["direction"], f"{loc}/node_pairs/{i}/direction"),
            )
        )
    try:
        return build_surface(polygons, gluing, node_pairs)
    except (ValueError, ArithmeticError) as err:
        raise SchemaError(str(err), loc) from None


def parse_stratum_query(payload: Any, loc: str = "/payload") -> StratumSignature:
    node = _obj(payload, loc)
    _keys(node, loc, ("genus", "orders"), ("tag",))
    genus = _int(node["genus"], loc + "/genus")
    orders = tuple(
        _int(k, f"{loc}/orders/{i}") for i, k in enumerate(_arr(node["orders"], loc + "/orders"))
    )
    tag = None
    if "tag" in node:
        tag = _str(node["tag"], loc + "/tag")
        if tag not in TAGS:
            raise SchemaError(f"unknown tag {tag!r}, expected one of {list(TAGS)}", loc + "/tag")
    try:
        return StratumSignature(genus=genus, orders=orders, tag=tag)
    except ValueError as err:
        raise SchemaError(str(err), loc) from None


_PARSERS = {
    "dual_graph": parse_dual_graph,
    "candidate_differential": parse_candidate,
    "surface": parse_surface,
    "flags": parse_flags,
    "stratum_query": parse_stratum_query,
}


def parse_document(data: Any) -> ParsedDocument:
    node = _obj(data, "")
    _keys(node, "", ("kind", "version", "payload"), ("expected",))
    kind = _str(node["kind"], "/kind")
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}, expected one of {list(KINDS)}", "/kind")
    if _int(node["version"], "/version") != VERSION:
        raise SchemaError(f"unsupported version {node['version']}", "/version")
    expected = None
    if "expected" in node:
        expected = _obj(node["expected"], "/expected")
    return ParsedDocument(kind, _PARSERS[kind](node["payload"]), expected)


def loads(text: str) -> ParsedDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"not JSON: {err}", "") from None
    return parse_document(data)


def load_path(path: str) -> ParsedDocument:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


# -- serialization ---------------------------------------------------------------


def _frac_json(x: Fraction) -> int | str:
    return int(x) if x.denominator == 1 else str(x)


def graph_to_json(graph: DualGraph) -> dict:
    payload: dict[str, Any] = {
        "vertices": {v: graph.genus_of[v] for v in graph.vertices()},
        "edges": {e: list(graph.edge_ends[e]) for e in graph.edges()},
    }
    if graph.leg_vertex:
        payload["legs"] = dict(sorted(graph.leg_vertex.items()))
    if graph.exceptional:
        payload["exceptional"] = sorted(graph.exceptional)
    return payload


def candidate_to_json(c: CandidateDifferential) -> dict:
    payload: dict[str, Any] = {
        "graph": graph_to_json(c.graph),
        "leg_orders": dict(sorted(c.leg_order.items())),
        "branch_orders": {half_edge_id(h): k for h, k in sorted(c.branch_order.items())},
    }
    if c.residue:
        payload["residues"] = {
            half_edge_id(h): value.to_json() for h, value in sorted(c.residue.items())
        }
    return payload


def flags_to_json(flags: GeometryFlags) -> dict:
    payload: dict[str, Any] = {}
    if flags.weierstrass:
        payload["weierstrass"] = dict(sorted(flags.weierstrass.items()))
    if flags.torsion_order:
        payload["torsion_order"] = dict(sorted(flags.torsion_order.items()))
    if flags.conjugate_pairs:
        payload["conjugate_pairs"] = sorted(sorted(p) for p in flags.conjugate_pairs)
    if flags.lin_equiv:
        payload["lin_equiv"] = dict(sorted(flags.lin_equiv.items()))
    return payload


def surface_to_json(surface: TranslationSurface) -> dict:
    payload: dict[str, Any] = {
        "polygons": {
            pid: [[_frac_json(x), _frac_json(y)] for x, y in poly.vertices]
            for pid, poly in sorted(surface.polygons.items())
        },
        "gluing": sorted(
            [list(e), list(p)] for e, p in surface.gluing.items() if e < p
        ),
    }
    if surface.node_pairs:
        payload["node_pairs"] = [
            {
                "first": [pair.first.polygon, pair.first.vertex],
                "second": [pair.second.polygon, pair.second.vertex],
                "direction": [_frac_json(pair.direction[0]), _frac_json(pair.direction[1])],
            }
            for pair in surface.node_pairs
        ]
    return payload


def signature_to_json(s: StratumSignature) -> dict:
    payload: dict[str, Any] = {"genus": s.genus, "orders": list(s.orders)}
    if s.tag is not None:
        payload["tag"] = s.tag
    return payload


_SERIALIZERS = {
    "dual_graph": graph_to_json,
    "candidate_differential": candidate_to_json,
    "surface": surface_to_json,
    "flags": flags_to_json,
    "stratum_query": signature_to_json,
}


def to_document(value: object, expected: dict | None = None) -> dict:
    for kind, cls in (
        ("candidate_differential", CandidateDifferential),
        ("dual_graph", DualGraph),
        ("surface", TranslationSurface),
        ("flags", GeometryFlags),
        ("stratum_query", StratumSignature),
    ):
        if isinstance(value, cls):
            doc: dict[str, Any] = {
                "kind": kind,
                "version": VERSION,
                "payload": _SERIALIZERS[kind](value),
            }
            if expected is not None:
                doc["expected"] = expected
            return doc
    raise TypeError(f"no document kind for {type(value).__name__}")


def dumps_document(doc: Mapping) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
