import pytest

from limitdiff.boundary import (
    BoundaryVerdict,
    Membership,
    Status,
    classify_g3_odd,
    classify_hyp_minimal,
    cross_check_parity,
)
from limitdiff.curves import DualGraph
from limitdiff.differentials import CandidateDifferential
from limitdiff.flags import GeometryFlags, validate_flags
from limitdiff.rationals import GaussianRational


Z0 = GaussianRational.zero()


def delta1_elliptic():
    """Genus 3, order-4 zero on an elliptic component, genus-2 across."""
    g = DualGraph.build(
        vertices=[("v1", 1), ("v2", 2)], edges=[("e0", "v1", "v2")], legs=[("Z", "v1")]
    )
    return CandidateDifferential.build(
        graph=g,
        leg_order={"Z": 4},
        branch_order={("e0", 0): -4, ("e0", 1): 2},
        residue={("e0", 0): Z0},
    )


def delta1_genus2():
    """Genus 3, order-4 zero on a genus-2 component, elliptic tail across."""
    g = DualGraph.build(
        vertices=[("w", 2), ("u", 1)], edges=[("e0", "w", "u")], legs=[("Z", "w")]
    )
    return CandidateDifferential.build(
        graph=g,
        leg_order={"Z": 4},
        branch_order={("e0", 0): -2, ("e0", 1): 0},
        residue={("e0", 0): Z0},
    )


def delta0_smooth(r0, r1):
    """Irreducible genus-3 one-node curve, generic simple poles at the node."""
    g = DualGraph.build(vertices=[("v", 2)], edges=[("e", "v", "v")], legs=[("Z", "v")])
    return CandidateDifferential.build(
        graph=g,
        leg_order={"Z": 4},
        branch_order={("e", 0): -1, ("e", 1): -1},
        residue={("e", 0): GaussianRational.of(r0), ("e", 1): GaussianRational.of(r1)},
    )


def delta0_bridge(exc1, exc2):
    """The zero collided with a node: rational bridge over a genus-2 component."""
    g = DualGraph.build(
        vertices=[("main", 2), ("exc", 0)],
        edges=[("e1", "main", "exc"), ("e2", "main", "exc")],
        legs=[("Z", "exc")],
    )
    residue = {}
    for h, k in ((("e1", 1), exc1), (("e2", 1), exc2)):
        if k == -1:
            residue[h] = GaussianRational.of(1)
            residue[(h[0], 0)] = GaussianRational.of(-1)
    return CandidateDifferential.build(
        graph=g,
        leg_order={"Z": 4},
        branch_order={
            ("e1", 0): -2 - exc1,
            ("e1", 1): exc1,
            ("e2", 0): -2 - exc2,
            ("e2", 1): exc2,
        },
        residue=residue,
    )


def statuses(v: BoundaryVerdict) -> tuple[str, str]:
    return str(v.status("hyp")), str(v.status("odd"))


def test_delta1_elliptic_needs_the_torsion_order():
    v = classify_g3_odd(delta1_elliptic(), GeometryFlags.empty())
    assert statuses(v) == ("undecided", "undecided")
    assert v.membership["odd"].reason == (
        "the torsion order of the zero minus the node branch on 'v1' is undeclared"
    )
    assert v.fibre_dimension == 0


def test_delta1_elliptic_torsion_matrix():
    c = delta1_elliptic()

    v = classify_g3_odd(c, GeometryFlags.build(torsion_order={"v1": 1}))
    assert statuses(v) == ("not_in_closure", "not_in_closure")
    assert "coincide" in v.membership["odd"].reason

    v = classify_g3_odd(c, GeometryFlags.build(torsion_order={"v1": 3}))
    assert statuses(v) == ("not_in_closure", "not_in_closure")
    assert "not principal" in v.membership["hyp"].reason
    assert "declared order 3" in v.membership["hyp"].reason

    # exact 4-torsion: odd candidate, decided by the facing branch
    v = classify_g3_odd(c, GeometryFlags.build(torsion_order={"v1": 4}))
    assert statuses(v) == ("not_in_closure", "undecided")
    assert v.membership["hyp"].reason == "the induced parity is odd"
    v = classify_g3_odd(
        c, GeometryFlags.build(torsion_order={"v1": 4}, weierstrass={"e0:1": True})
    )
    assert statuses(v) == ("not_in_closure", "in_closure")
    assert v.membership["odd"].reason == (
        "exact 4-torsion with the facing branch at a ramification point"
    )
    v = classify_g3_odd(
        c, GeometryFlags.build(torsion_order={"v1": 4}, weierstrass={"e0:1": False})
    )
    assert statuses(v) == ("not_in_closure", "not_in_closure")

    # 2-torsion: even parity, so the hyperelliptic side decides
    v = classify_g3_odd(c, GeometryFlags.build(torsion_order={"v1": 2}))
    assert statuses(v) == ("undecided", "not_in_closure")
    assert "even parity" in v.membership["odd"].reason
    v = classify_g3_odd(
        c, GeometryFlags.build(torsion_order={"v1": 2}, weierstrass={"e0:1": True})
    )
    assert statuses(v) == ("in_closure", "not_in_closure")
    v = classify_g3_odd(
        c, GeometryFlags.build(torsion_order={"v1": 2}, weierstrass={"e0:1": False})
    )
    assert statuses(v) == ("not_in_closure", "not_in_closure")


def test_delta1_genus2_matrix():
    c = delta1_genus2()

    v = classify_g3_odd(c, GeometryFlags.empty())
    assert statuses(v) == ("undecided", "undecided")
    assert '"4Z-2N~K"' in v.membership["odd"].reason

    v = classify_g3_odd(c, GeometryFlags.build(lin_equiv={"4Z-2N~K": False}))
    assert statuses(v) == ("not_in_closure", "not_in_closure")

    v = classify_g3_odd(c, GeometryFlags.build(lin_equiv={"4Z-2N~K": True}))
    assert statuses(v) == ("undecided", "undecided")

    at = GeometryFlags.build(lin_equiv={"4Z-2N~K": True}, weierstrass={"Z": True})
    v = classify_g3_odd(c, at)
    assert statuses(v) == ("in_closure", "not_in_closure")
    assert v.membership["hyp"].reason == (
        "zero and (forced) node branch at ramification points of the genus-2 component"
    )

    away = GeometryFlags.build(lin_equiv={"4Z-2N~K": True}, weierstrass={"Z": False})
    v = classify_g3_odd(c, away)
    assert statuses(v) == ("not_in_closure", "in_closure")
    assert v.membership["odd"].reason == (
        "4Z - 2N canonical with the zero away from the ramification points"
    )

    contradictory = GeometryFlags.build(
        lin_equiv={"4Z-2N~K": True}, weierstrass={"Z": True, "e0:0": False}
    )
    with pytest.raises(ValueError, match="forces the\n?.*node branch"):
        classify_g3_odd(c, contradictory)


def test_delta0_smooth_matrix():
    v = classify_g3_odd(delta0_smooth(1, 1), GeometryFlags.empty())
    assert statuses(v) == ("not_in_closure", "not_in_closure")
    assert "not opposite" in v.membership["odd"].reason

    v = classify_g3_odd(delta0_smooth(0, 0), GeometryFlags.empty())
    assert statuses(v) == ("undecided", "undecided")
    assert "deeper degeneration" in v.membership["hyp"].reason

    c = delta0_smooth(1, -1)
    v = classify_g3_odd(c, GeometryFlags.empty())
    assert statuses(v) == ("undecided", "undecided")

    v = classify_g3_odd(c, GeometryFlags.build(weierstrass={"Z": False}))
    assert statuses(v) == ("not_in_closure", "in_closure")
    assert v.membership["odd"].reason == (
        "one non-separating node, the zero away from the ramification points"
    )

    conj = GeometryFlags.build(
        weierstrass={"Z": True}, conjugate_pairs=[["e:0", "e:1"]]
    )
    v = classify_g3_odd(c, conj)
    assert statuses(v) == ("in_closure", "not_in_closure")

    with pytest.raises(ValueError, match="conjugate"):
        classify_g3_odd(c, GeometryFlags.build(weierstrass={"Z": True}))


def test_delta0_bridge_conjugate_pair_lands_in_both():
    c = delta0_bridge(-3, -3)
    v = classify_g3_odd(c, GeometryFlags.empty())
    assert statuses(v) == ("not_in_closure", "not_in_closure")
    assert "not conjugate" in v.membership["odd"].reason

    conj = GeometryFlags.build(conjugate_pairs=[["e1:0", "e2:0"]])
    v = classify_g3_odd(c, conj)
    assert statuses(v) == ("in_closure", "in_closure")
    assert v.membership["odd"].reason == (
        "conjugate branch points; the two smoothing parameters agree up to sign"
    )
    assert v.membership["hyp"].reason == (
        "the collided-zero hyperelliptic shape with conjugate branch points"
    )
    assert v.fibre_dimension == 0


def test_delta0_bridge_uneven_collision():
    c = delta0_bridge(-4, -2)
    v = classify_g3_odd(c, GeometryFlags.empty())
    assert statuses(v) == ("not_in_closure", "undecided")
    assert "(2, 0)" in v.membership["hyp"].reason

    v = classify_g3_odd(c, GeometryFlags.build(weierstrass={"e2:0": True}))
    assert statuses(v) == ("not_in_closure", "in_closure")
    assert "ramification point" in v.membership["odd"].reason
    v = classify_g3_odd(c, GeometryFlags.build(weierstrass={"e2:0": False}))
    assert statuses(v) == ("not_in_closure", "not_in_closure")


def test_g3_shape_rejections():
    with pytest.raises(ValueError, match="pole orders \\[-5, -1\\]"):
        classify_g3_odd(delta0_bridge(-5, -1), GeometryFlags.empty())

    chain = DualGraph.build(
        vertices=[("a", 1), ("b", 1), ("c", 1)],
        edges=[("e1", "a", "b"), ("e2", "b", "c")],
        legs=[("Z", "a")],
    )
    c = CandidateDifferential.build(
        graph=chain,
        leg_order={"Z": 4},
        branch_order={("e1", 0): -4, ("e1", 1): 2, ("e2", 0): -2, ("e2", 1): 0},
        residue={("e1", 0): Z0, ("e2", 0): Z0},
    )
    with pytest.raises(ValueError, match="blow up higher-order nodes"):
        classify_g3_odd(c, GeometryFlags.empty())

    two_legs = DualGraph.build(
        vertices=[("v", 2)], edges=[("e", "v", "v")], legs=[("Z", "v"), ("W", "v")]
    )
    c = CandidateDifferential.build(
        graph=two_legs,
        leg_order={"Z": 2, "W": 2},
        branch_order={("e", 0): -1, ("e", 1): -1},
        residue={("e", 0): GaussianRational.of(1), ("e", 1): GaussianRational.of(-1)},
    )
    with pytest.raises(ValueError, match="single marked zero"):
        classify_g3_odd(c, GeometryFlags.empty())

    genus4 = hyp_two_components()
    with pytest.raises(ValueError, match="specific to genus 3"):
        classify_g3_odd(genus4, GeometryFlags.empty())


def hyp_two_components():
    """Genus 4: the zero on a genus-3 component, elliptic tail across."""
    g = DualGraph.build(
        vertices=[("zside", 3), ("other", 1)],
        edges=[("n", "zside", "other")],
        legs=[("Z", "zside")],
    )
    return CandidateDifferential.build(
        graph=g,
        leg_order={"Z": 6},
        branch_order={("n", 0): -2, ("n", 1): 0},
        residue={("n", 0): Z0},
    )


def test_hyp_minimal_two_components():
    c = hyp_two_components()
    full = GeometryFlags.build(
        weierstrass={"Z": True, "n:0": True},
        lin_equiv={"hyperelliptic(zside)": True},
    )
    v = classify_hyp_minimal(c, full)
    assert str(v.status("hyp")) == "in_closure"
    assert v.membership["hyp"].reason == (
        "two hyperelliptic components glued at ramification points, the zero at one too"
    )
    assert v.fibre_dimension == 0

    v = classify_hyp_minimal(c, GeometryFlags.empty())
    assert str(v.status("hyp")) == "undecided"
    assert v.membership["hyp"].reason == "whether 'Z' is a ramification point is undeclared"

    bad = GeometryFlags.build(
        weierstrass={"Z": False, "n:0": True},
        lin_equiv={"hyperelliptic(zside)": True},
    )
    v = classify_hyp_minimal(c, bad)
    assert str(v.status("hyp")) == "not_in_closure"
    assert v.membership["hyp"].reason == "'Z' is not a ramification point"

    nonhyp = GeometryFlags.build(
        weierstrass={"Z": True, "n:0": True},
        lin_equiv={"hyperelliptic(zside)": False},
    )
    v = classify_hyp_minimal(c, nonhyp)
    assert str(v.status("hyp")) == "not_in_closure"
    assert "declared non-hyperelliptic" in v.membership["hyp"].reason


def test_hyp_minimal_elliptic_zero_side_uses_torsion():
    g = DualGraph.build(
        vertices=[("zside", 1), ("other", 1)],
        edges=[("n", "zside", "other")],
        legs=[("Z", "zside")],
    )
    c = CandidateDifferential.build(
        graph=g,
        leg_order={"Z": 2},
        branch_order={("n", 0): -2, ("n", 1): 0},
        residue={("n", 0): Z0},
    )
    v = classify_hyp_minimal(c, GeometryFlags.empty())
    assert str(v.status("hyp")) == "undecided"
    assert v.membership["hyp"].reason == "torsion order on 'zside' undeclared"

    v = classify_hyp_minimal(c, GeometryFlags.build(torsion_order={"zside": 2}))
    assert str(v.status("hyp")) == "in_closure"

    v = classify_hyp_minimal(c, GeometryFlags.build(torsion_order={"zside": 3}))
    assert str(v.status("hyp")) == "not_in_closure"
    assert "order 3, not 2" in v.membership["hyp"].reason


def test_hyp_minimal_irreducible():
    g = DualGraph.build(vertices=[("v", 3)], edges=[("e", "v", "v")], legs=[("Z", "v")])
    c = CandidateDifferential.build(
        graph=g,
        leg_order={"Z": 6},
        branch_order={("e", 0): -1, ("e", 1): -1},
        residue={("e", 0): GaussianRational.of(1), ("e", 1): GaussianRational.of(-1)},
    )
    full = GeometryFlags.build(
        weierstrass={"Z": True},
        lin_equiv={"hyperelliptic(v)": True},
        conjugate_pairs=[["e:0", "e:1"]],
    )
    v = classify_hyp_minimal(c, full)
    assert str(v.status("hyp")) == "in_closure"

    with pytest.raises(ValueError, match="conjugate"):
        classify_hyp_minimal(
            c,
            GeometryFlags.build(
                weierstrass={"Z": True}, lin_equiv={"hyperelliptic(v)": True}
            ),
        )

    away = GeometryFlags.build(
        weierstrass={"Z": False},
        lin_equiv={"hyperelliptic(v)": True},
        conjugate_pairs=[["e:0", "e:1"]],
    )
    v = classify_hyp_minimal(c, away)
    assert str(v.status("hyp")) == "not_in_closure"

    # non-generic node orders are sent back for blow-up
    c2 = CandidateDifferential.build(
        graph=g,
        leg_order={"Z": 6},
        branch_order={("e", 0): 0, ("e", 1): -2},
        residue={("e", 1): Z0},
    )
    v = classify_hyp_minimal(c2, GeometryFlags.empty())
    assert str(v.status("hyp")) == "undecided"
    assert "blow up the node" in v.membership["hyp"].reason


def test_hyp_minimal_bridge_any_genus():
    g = DualGraph.build(
        vertices=[("main", 3), ("exc", 0)],
        edges=[("e1", "main", "exc"), ("e2", "main", "exc")],
        legs=[("Z", "exc")],
    )

    def bridge(c1, c2, m1, m2):
        return CandidateDifferential.build(
            graph=g,
            leg_order={"Z": 6},
            branch_order={
                ("e1", 1): c1, ("e2", 1): c2, ("e1", 0): m1, ("e2", 0): m2,
            },
        )

    good = bridge(-4, -4, 2, 2)
    flags = GeometryFlags.build(
        conjugate_pairs=[["e1:0", "e2:0"]], lin_equiv={"hyperelliptic(main)": True}
    )
    v = classify_hyp_minimal(good, flags)
    assert str(v.status("hyp")) == "in_closure"
    assert v.membership["hyp"].reason == (
        "the zero collided with a node of an irreducible hyperelliptic degeneration"
    )

    v = classify_hyp_minimal(bridge(-5, -3, 3, 1), flags)
    assert str(v.status("hyp")) == "not_in_closure"
    assert "(-4, -4)" in v.membership["hyp"].reason


def test_hyp_minimal_rejects_the_tempting_collided_order():
    g = DualGraph.build(
        vertices=[("main", 2), ("exc", 0)],
        edges=[("e1", "main", "exc"), ("e2", "main", "exc")],
        legs=[("Z", "exc")],
    )
    c = CandidateDifferential.build(
        graph=g,
        leg_order={"Z": 8},
        branch_order={("e1", 0): 1, ("e1", 1): -5, ("e2", 0): 1, ("e2", 1): -5},
    )
    v = classify_hyp_minimal(c, GeometryFlags.empty())
    assert str(v.status("hyp")) == "not_in_closure"
    assert "must be 2g-2 = 4" in v.membership["hyp"].reason
    assert v.fibre_dimension is None


def test_hyp_minimal_shape_and_input_guards():
    chain = DualGraph.build(
        vertices=[("a", 2), ("b", 1), ("c", 1)],
        edges=[("e1", "a", "b"), ("e2", "b", "c")],
        legs=[("Z", "a")],
    )
    c = CandidateDifferential.build(
        graph=chain,
        leg_order={"Z": 6},
        branch_order={("e1", 0): -4, ("e1", 1): 4, ("e2", 0): -4, ("e2", 1): 0},
        residue={("e1", 0): Z0, ("e2", 0): Z0},
    )
    v = classify_hyp_minimal(c, GeometryFlags.empty())
    assert str(v.status("hyp")) == "undecided"
    assert "outside the one-node" in v.membership["hyp"].reason

    unstable = DualGraph.build(
        vertices=[("v", 3), ("p", 0)], edges=[("e", "v", "p")], legs=[("Z", "v")]
    )
    c = CandidateDifferential.build(
        graph=unstable,
        leg_order={"Z": 4},
        branch_order={("e", 0): 0, ("e", 1): -2},
        residue={("e", 1): Z0},
    )
    with pytest.raises(ValueError, match="not stable"):
        classify_hyp_minimal(c, GeometryFlags.empty())

    small = DualGraph.build(vertices=[("v", 0)], edges=[("e", "v", "v")], legs=[("Z", "v")])
    c = CandidateDifferential.build(
        graph=small,
        leg_order={"Z": 1},
        branch_order={("e", 0): -2, ("e", 1): -1},
        residue={("e", 0): Z0, ("e", 1): GaussianRational.of(1)},
    )
    with pytest.raises(ValueError, match="genus >= 2"):
        classify_hyp_minimal(c, GeometryFlags.empty())

    wrong_order = DualGraph.build(
        vertices=[("v", 2)], edges=[("e", "v", "v")], legs=[("Z", "v")]
    )
    c = CandidateDifferential.build(
        graph=wrong_order,
        leg_order={"Z": 2},
        branch_order={("e", 0): 0, ("e", 1): 0},
    )
    with pytest.raises(ValueError, match="not 2g-2"):
        classify_hyp_minimal(c, GeometryFlags.empty())


def test_cross_check_confirms_odd_verdicts():
    c = delta1_genus2()
    flags = GeometryFlags.build(lin_equiv={"4Z-2N~K": True}, weierstrass={"Z": False})
    v = classify_g3_odd(c, flags)
    report = cross_check_parity(c, flags, v)
    assert report.checked == ("odd",)
    assert report.parity == 1 and report.skipped == ()


def test_cross_check_confirms_hyp_two_component_verdict():
    c = hyp_two_components()
    flags = GeometryFlags.build(
        weierstrass={"Z": True, "n:0": True},
        lin_equiv={"hyperelliptic(zside)": True},
    )
    report = cross_check_parity(c, flags, classify_hyp_minimal(c, flags))
    assert report.checked == ("hyp",)
    assert report.parity == 0


def test_cross_check_skips_out_of_scope_candidates():
    c = delta0_smooth(1, -1)
    flags = GeometryFlags.build(weierstrass={"Z": False})
    report = cross_check_parity(c, flags, classify_g3_odd(c, flags))
    assert report.checked == ()
    assert report.skipped == (("odd", "not compact type"),)
    assert report.parity is None

    odd_orders = DualGraph.build(
        vertices=[("a", 1), ("b", 1)], edges=[("e", "a", "b")],
        legs=[("Z", "a"), ("W", "b")],
    )
    c = CandidateDifferential.build(
        graph=odd_orders,
        leg_order={"Z": 1, "W": 1},
        branch_order={("e", 0): -1, ("e", 1): -1},
        residue={("e", 0): GaussianRational.of(1), ("e", 1): GaussianRational.of(-1)},
    )
    fake = BoundaryVerdict({"odd": Membership(Status.IN_CLOSURE, "test row")}, 0)
    report = cross_check_parity(c, GeometryFlags.empty(), fake)
    assert report.skipped == (("odd", "odd orders present"),)


def test_cross_check_unresolved_parity_is_reported_not_raised():
    c = delta1_genus2()
    fake = BoundaryVerdict({"odd": Membership(Status.IN_CLOSURE, "test row")}, 0)
    report = cross_check_parity(c, GeometryFlags.empty(), fake)
    assert report.checked == ()
    assert report.skipped[0][0] == "odd"
    assert report.skipped[0][1].startswith("parity unresolved:")


def test_cross_check_raises_on_contradictions():
    c = delta1_genus2()
    killing = GeometryFlags.build(lin_equiv={"4Z-2N~K": False})
    fake = BoundaryVerdict({"odd": Membership(Status.IN_CLOSURE, "test row")}, 0)
    with pytest.raises(ArithmeticError, match="no spin structure exists"):
        cross_check_parity(c, killing, fake)
    # without closure claims the same flags are merely uncheckable
    empty_verdict = BoundaryVerdict(
        {"odd": Membership(Status.NOT_IN_CLOSURE, "test row")}, 0
    )
    report = cross_check_parity(c, killing, empty_verdict)
    assert report.checked == () and report.parity is None

    odd_flags = GeometryFlags.build(
        lin_equiv={"4Z-2N~K": True}, weierstrass={"Z": False}
    )
    wrong = BoundaryVerdict({"hyp": Membership(Status.IN_CLOSURE, "test row")}, 0)
    with pytest.raises(ArithmeticError, match="parity mismatch"):
        cross_check_parity(c, odd_flags, wrong)


def test_flag_validation_catches_impossible_declarations():
    c = delta1_elliptic()
    g = c.graph
    assert validate_flags(GeometryFlags.empty(), g) == []
    problems = validate_flags(
        GeometryFlags.build(weierstrass={"nope": True}), g
    )
    assert any("unknown point" in p for p in problems)
    problems = validate_flags(GeometryFlags.build(torsion_order={"v2": 2}), g)
    assert any("needs genus 1" in p for p in problems)
    problems = validate_flags(GeometryFlags.build(torsion_order={"v1": 0}), g)
    assert any(">= 1" in p for p in problems)
    problems = validate_flags(
        GeometryFlags.build(conjugate_pairs=[["Z", "e0:1"]]), g
    )
    assert any("spans two components" in p for p in problems)
    problems = validate_flags(
        GeometryFlags.build(
            conjugate_pairs=[["Z", "e0:0"]], weierstrass={"Z": True, "e0:0": False}
        ),
        g,
    )
    assert any("involution fixes Weierstrass points" in p for p in problems)
    with pytest.raises(ValueError, match="inconsistent flags"):
        classify_g3_odd(c, GeometryFlags.build(torsion_order={"nope": 2}))
