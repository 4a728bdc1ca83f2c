"""Document schema round-trips, fixture expectations, and the CLI surface."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from limitdiff import boundary, strata
from limitdiff.cli import main
from limitdiff.differentials import (
    CandidateDifferential,
    NotPlumbable,
    Plumbable,
    Undecided,
    component_scalings,
    is_plumbable,
    unique_limit_on_compact_type,
)
from limitdiff.flags import GeometryFlags
from limitdiff.homology import ScopeError, arf_invariant, find_symplectic_system
from limitdiff.rationals import GaussianRational
from limitdiff.schema import (
    KINDS,
    SchemaError,
    dumps_document,
    load_path,
    loads,
    to_document,
)
from limitdiff.spin import spin_of_candidate
from limitdiff.surfaces import stratum_of

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
ALL_FIXTURES = sorted(FIXTURES.glob("*.json"))


def test_fixture_corpus_is_nonempty():
    assert len(ALL_FIXTURES) >= 30
    kinds = {load_path(str(p)).kind for p in ALL_FIXTURES}
    assert kinds == set(KINDS)


def test_round_trip_all_fixtures():
    for path in ALL_FIXTURES:
        doc = load_path(str(path))
        first = to_document(doc.value, expected=doc.expected)
        again = loads(dumps_document(first))
        assert to_document(again.value, expected=again.expected) == first, path.name


def test_envelope_errors():
    with pytest.raises(SchemaError, match="not JSON"):
        loads("{nope")
    with pytest.raises(SchemaError, match=r"missing keys \['payload'\]"):
        loads('{"kind": "flags", "version": 1}')
    with pytest.raises(SchemaError, match="unknown kind"):
        loads('{"kind": "idk", "version": 1, "payload": {}}')
    with pytest.raises(SchemaError, match="unsupported version"):
        loads('{"kind": "flags", "version": 2, "payload": {}}')
    with pytest.raises(SchemaError, match="unexpected keys"):
        loads('{"kind": "flags", "version": 1, "payload": {}, "answer": 42}')


def _doc(kind, payload):
    return json.dumps({"kind": kind, "version": 1, "payload": payload})


def test_payload_error_locations():
    with pytest.raises(SchemaError) as err:
        loads(_doc("dual_graph", {"vertices": {"a": 0}, "edges": {"e": ["a", "b"]}}))
    assert "unknown vertex 'b'" in err.value.message
    assert err.value.location == "/payload/edges/e"

    with pytest.raises(SchemaError) as err:
        loads(_doc("dual_graph", {"vertices": {"a:b": 0}, "edges": {}}))
    assert "no colons or slashes" in err.value.message

    payload = {
        "graph": {"vertices": {"a": 1}, "edges": {}, "legs": {"Z": "a"}},
        "leg_orders": {},
    }
    with pytest.raises(SchemaError) as err:
        loads(_doc("candidate_differential", payload))
    assert "legs without orders: ['Z']" in err.value.message
    assert err.value.location == "/payload/leg_orders"

    loop = {
        "graph": {"vertices": {"a": 1}, "edges": {"e": ["a", "a"]}, "legs": {"Z": "a"}},
        "leg_orders": {"Z": 2},
        "branch_orders": {"e:0": -1, "e:1": -1},
    }
    with pytest.raises(SchemaError, match="needs a declared residue"):
        loads(_doc("candidate_differential", loop))

    square = [[0, 0], [1, 0], [1, 1], [0, 1]]
    with pytest.raises(SchemaError) as err:
        loads(
            _doc(
                "surface",
                {
                    "polygons": {"A": square},
                    "gluing": [
                        [["A", 0], ["A", 2]],
                        [["A", 0], ["A", 3]],
                        [["A", 1], ["A", 3]],
                    ],
                },
            )
        )
    assert "glued twice" in err.value.message
    assert err.value.location == "/payload/gluing/1"

    with pytest.raises(SchemaError, match="bad rational"):
        loads(_doc("surface", {"polygons": {"A": [[0, "1/0"]]}, "gluing": []}))

    with pytest.raises(SchemaError, match="unknown tag"):
        loads(_doc("stratum_query", {"genus": 3, "orders": [4], "tag": "fancy"}))

    with pytest.raises(SchemaError) as err:
        loads(_doc("stratum_query", {"genus": 3, "orders": [5]}))
    assert "2g - 2" in err.value.message or "sum" in err.value.message


def test_to_document_rejects_foreign_values():
    with pytest.raises(TypeError, match="no document kind"):
        to_document(object())


# -- the expected blocks carried by the fixtures ----------------------------------

HANDLED = {
    "genus",
    "stratum",
    "arf",
    "arf_in_scope",
    "plumbs_to",
    "plumbed_from",
    "plumbable",
    "exponents",
    "component_scalings",
    "farkas_cycle",
    "residue_theorem",
    "unique_limit_orders",
    "parity",
    "parity_with",
    "parity_flags",
    "classify_with",
    "classify_flags",
    "classify_without_flags",
    "membership",
    "fibre_dimension",
    "cross_check_parity",
    "components",
    "projection_dimension",
}


def _classify(c, flags):
    (leg,) = c.graph.legs()
    if c.graph.arithmetic_genus() == 3 and c.leg_order[leg] == 4:
        return boundary.classify_g3_odd(c, flags)
    return boundary.classify_hyp_minimal(c, flags)


def _load_named(name):
    return load_path(str(FIXTURES / name))


def _check_expected(path, doc):
    exp = doc.expected or {}
    unknown = set(exp) - HANDLED
    assert not unknown, f"{path.name}: unhandled expectation keys {sorted(unknown)}"
    v = doc.value

    if "genus" in exp:
        assert v.genus == exp["genus"]
    if "stratum" in exp:
        assert list(stratum_of(v)) == exp["stratum"]
    if "arf" in exp:
        assert arf_invariant(find_symplectic_system(v)) == exp["arf"]
    if "arf_in_scope" in exp:
        assert exp["arf_in_scope"] is False
        with pytest.raises(ScopeError):
            arf_invariant(find_symplectic_system(v))
    for pointer in ("plumbs_to", "plumbed_from"):
        if pointer in exp:
            other = _load_named(exp[pointer])
            assert other.kind == "surface"
            assert arf_invariant(find_symplectic_system(other.value)) == arf_invariant(
                find_symplectic_system(v)
            )

    if "plumbable" in exp:
        verdict = is_plumbable(v)
        if exp["plumbable"]:
            assert isinstance(verdict, Plumbable)
        else:
            assert isinstance(verdict, NotPlumbable)
        if "exponents" in exp:
            got = {e: str(x) for e, x in verdict.certificate.exponent.items()}
            assert got == exp["exponents"]
        if "component_scalings" in exp:
            want = dict(exp["component_scalings"])
            base = want.pop("base")
            scaling = component_scalings(v, verdict.certificate, base)
            assert {u: str(x) for u, x in scaling.exponent.items()} == want
        if "farkas_cycle" in exp:
            row = verdict.certificate.farkas_row
            support = {e for e, x in row.items() if x != 0}
            assert support == set(exp["farkas_cycle"])
        if "residue_theorem" in exp:
            assert exp["residue_theorem"] is True
            assert "residue-theorem" in verdict.reason

    if "unique_limit_orders" in exp:
        (leg,) = v.legs()
        limit = unique_limit_on_compact_type(v, {leg: 2 * v.arithmetic_genus() - 2})
        assert isinstance(limit, CandidateDifferential)
        got = {f"{e}:{end}": k for (e, end), k in limit.branch_order.items()}
        assert got == exp["unique_limit_orders"]

    if "parity_with" in exp:
        target = _load_named(exp["parity_with"])
        structure = spin_of_candidate(target.value, v)
        assert structure.parity() == exp["parity"]
    if "parity_flags" in exp:
        back = _load_named(exp["parity_flags"])
        assert back.expected["parity_with"] == path.name

    if "classify_with" in exp:
        target = _load_named(exp["classify_with"])
        verdict = _classify(target.value, v)
        for tag, status in exp["membership"].items():
            assert str(verdict.status(tag)) == status, (path.name, tag)
        if "fibre_dimension" in exp:
            assert verdict.fibre_dimension == exp["fibre_dimension"]
        if "cross_check_parity" in exp:
            report = boundary.cross_check_parity(target.value, v, verdict)
            assert report.checked
            assert report.parity == exp["cross_check_parity"]
    if "classify_flags" in exp:
        back = _load_named(exp["classify_flags"])
        assert back.expected["classify_with"] == path.name
    if "classify_without_flags" in exp:
        verdict = _classify(v, GeometryFlags.empty())
        want = boundary.Status(exp["classify_without_flags"])
        assert {m.status for m in verdict.membership.values()} == {want}

    if "components" in exp:
        comps = strata.components(v)
        assert [[c.tag, c.spin_parity] for c in comps] == exp["components"]
    if "projection_dimension" in exp:
        assert strata.projection_dimension(v) == exp["projection_dimension"]


def test_every_fixture_expectation_holds():
    checked = 0
    for path in ALL_FIXTURES:
        doc = load_path(str(path))
        if doc.expected:
            _check_expected(path, doc)
            checked += 1
    assert checked == len(ALL_FIXTURES)


# -- command line ------------------------------------------------------------------


def fx(name):
    return str(FIXTURES / name)


def test_cli_check(capsys):
    assert main(["check", "--all-fixtures", "--fixture-dir", str(FIXTURES)]) == 0
    out = capsys.readouterr().out
    assert "banana-plumbable.json" in out
    assert "FAIL" not in out
    assert main(["check"]) == 3
    assert main(["check", fx("octagon.json"), "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["documents"][0]["kind"] == "surface"


def test_cli_plumb(capsys):
    assert main(["plumb", fx("banana-plumbable.json"), "--base", "a", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "Plumbable"
    assert report["exponents"] == {"e1": "-3/2", "e2": "-1"}
    assert report["component_scalings"] == {"a": "0", "b": "-3"}

    assert main(["plumb", fx("loop-obstruction-k1.json")]) == 1
    out = capsys.readouterr().out
    assert "not plumbable" in out and "cycle condition" in out

    assert main(["plumb", fx("bridge-residue-obstruction.json"), "--json"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert "residue-theorem" in report["reason"]


def test_cli_plumb_undecided(tmp_path, capsys):
    base = load_path(fx("banana-plumbable.json")).value
    dirty = CandidateDifferential.build(
        graph=base.graph,
        leg_order=base.leg_order,
        branch_order=base.branch_order,
        residue={("e1", 1): GaussianRational.of(5), ("e2", 1): GaussianRational.of(-5)},
    )
    target = tmp_path / "dirty.json"
    target.write_text(dumps_document(to_document(dirty)))
    assert main(["plumb", str(target)]) == 2
    assert "undecided" in capsys.readouterr().out

    verdict = is_plumbable(dirty)
    assert isinstance(verdict, Undecided)


def test_cli_parity(capsys):
    rc = main(
        ["parity", fx("elliptic-chain.json"), "--flags", fx("elliptic-chain-flags.json")]
    )
    assert rc == 0
    assert "parity: odd" in capsys.readouterr().out
    # without the torsion flag the parity is undetermined
    assert main(["parity", fx("elliptic-chain.json")]) == 2


def test_cli_count_spin(capsys):
    assert main(["count-spin", "3"]) == 0
    assert "(36, 28)" in capsys.readouterr().out
    assert main(["count-spin", "1", "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"even": 3, "odd": 1}


def test_cli_arf(capsys):
    assert main(["arf", fx("octagon.json")]) == 0
    assert "arf = 1" in capsys.readouterr().out
    assert main(["arf", fx("cross-genus3-hyp.json"), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["arf"] == 0
    assert main(["arf", fx("staircase-genus2-nodal.json")]) == 2


def test_cli_stratum(capsys):
    assert main(["stratum", "3", "4", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert [c["tag"] for c in report["components"]] == ["hyp", "odd"]
    assert len(report["kodaira"]) == 2
    assert report["projection_dimension"] == 5

    assert main(["stratum", "5", "2", "2", "2", "2", "--tag", "even"]) == 0
    assert "kodaira [even]" in capsys.readouterr().out

    assert main(["stratum", "--file", fx("stratum-genus5-even.json")]) == 0
    capsys.readouterr()

    assert main(["stratum", "3", "1", "1", "1", "1", "--tag", "even"]) == 3
    assert main(["stratum"]) == 3


def test_cli_classify(capsys):
    rc = main(
        [
            "classify",
            fx("conjugate-nodes-genus3.json"),
            "--flags",
            fx("conjugate-nodes-flags.json"),
            "--json",
        ]
    )
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["membership"]["hyp"]["status"] == "in_closure"
    assert report["membership"]["odd"]["status"] == "in_closure"

    assert main(["classify", fx("elliptic-tail-genus3.json")]) == 2
    capsys.readouterr()
    rc = main(
        ["classify", fx("elliptic-tail-genus3.json"), "--flags", fx("tail-torsion1.json")]
    )
    assert rc == 1
    out = capsys.readouterr().out
    assert "not_in_closure" in out


def test_cli_verify_local_plumbing(capsys):
    assert main(["verify-local-plumbing", "--order", "1", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] is True and len(report["cases"]) == 1
    assert main(["verify-local-plumbing", "--order", "1", "--scale", "abc"]) == 3


def test_cli_bad_inputs(capsys):
    assert main(["plumb", "/nonexistent/file.json"]) == 3
    assert main(["plumb", fx("octagon.json")]) == 3
    err = capsys.readouterr().err
    assert "expected a candidate_differential document" in err
