"""Exact 2D predicates over rational coordinates.

Everything here is decided in Fraction arithmetic: orientation tests,
segment crossings with signs, membership of a direction in an open angular
sector, and the turning degree of a closed sequence of directions. The
turning degree is computed combinatorially, by counting signed passages of a
reference ray, so no angles are ever approximated.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, Fraction]


def vec(x, y) -> Vec:
    return (Fraction(x), Fraction(y))


def sub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def neg(a: Vec) -> Vec:
    return (-a[0], -a[1])


def cross(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def is_zero(a: Vec) -> bool:
    return a[0] == 0 and a[1] == 0


def same_direction(a: Vec, b: Vec) -> bool:
    """Parallel and pointing the same way; zero vectors are rejected."""
    if is_zero(a) or is_zero(b):
        raise ValueError("zero vector has no direction")
    return cross(a, b) == 0 and dot(a, b) > 0


def orient(p: Vec, q: Vec, r: Vec) -> Fraction:
    """Positive when p, q, r make a left turn."""
    return cross(sub(q, p), sub(r, p))


def on_segment(p: Vec, a: Vec, b: Vec) -> bool:
    """Is p on the closed segment [a, b]? Assumes nothing about collinearity."""
    if orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_intersect_closed(a: Vec, b: Vec, c: Vec, d: Vec) -> bool:
    """Do closed segments [a,b] and [c,d] share any point?"""
    d1 = orient(c, d, a)
    d2 = orient(c, d, b)
    d3 = orient(a, b, c)
    d4 = orient(a, b, d)
    if ((d1 > 0) != (d2 > 0) or d1 == 0 or d2 == 0) and ((d3 > 0) != (d4 > 0) or d3 == 0 or d4 == 0):
        if d1 == 0 and on_segment(a, c, d):
            return True
        if d2 == 0 and on_segment(b, c, d):
            return True
        if d3 == 0 and on_segment(c, a, b):
            return True
        if d4 == 0 and on_segment(d, a, b):
            return True
        if d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0:
            return True
    return False


def proper_crossing_sign(p: Vec, q: Vec, r: Vec, s: Vec) -> int:
    """Signed transversal crossing of directed segments p->q and r->s.

    Returns 0 when the closed segments are disjoint, +1/-1 when they cross
    in their interiors (the sign of cross(q - p, s - r)), and raises on any
    degenerate contact: an endpoint on the other segment or collinear
    overlap. Callers are expected to arrange general position.
    """
    d1 = orient(r, s, p)
    d2 = orient(r, s, q)
    d3 = orient(p, q, r)
    d4 = orient(p, q, s)
    if (d1 > 0) != (d2 > 0) and d1 != 0 and d2 != 0 and (d3 > 0) != (d4 > 0) and d3 != 0 and d4 != 0:
        turn = cross(sub(q, p), sub(s, r))
        if turn == 0:
            raise ArithmeticError("transversal crossing of parallel segments; impossible")
        return 1 if turn > 0 else -1
    if segments_intersect_closed(p, q, r, s):
        raise ValueError(
            f"degenerate contact between segments {p}->{q} and {r}->{s}; general position required"
        )
    return 0


def point_in_closed_triangle(p: Vec, a: Vec, b: Vec, c: Vec) -> bool:
    """Membership in the closed triangle abc, which must be ccw."""
    return orient(a, b, p) >= 0 and orient(b, c, p) >= 0 and orient(c, a, p) >= 0


def in_open_ccw_sector(a: Vec, b: Vec, r: Vec) -> bool:
    """Is direction r strictly inside the ccw sector swept from a to b?

    The sweep angle lies in (0, 2pi]: equal directions mean a full turn, not
    an empty sector, and opposite directions mean a half turn.
    """
    for v in (a, b, r):
        if is_zero(v):
            raise ValueError("zero vector has no direction")
    turn = cross(a, b)
    if turn > 0:
        return cross(a, r) > 0 and cross(r, b) > 0
    if turn < 0:
        # complement of the closed cw sector from a to b
        if same_direction(r, a) or same_direction(r, b):
            return False
        return not (cross(b, r) > 0 and cross(r, a) > 0)
    if same_direction(a, b):
        return not same_direction(r, a)
    return cross(a, r) > 0


def reference_directions() -> Iterable[Vec]:
    """Deterministic stream of pairwise non-parallel primitive directions."""
    for total in itertools.count(1):
        for p in range(total + 1):
            q = total - p
            if math.gcd(p, q) != 1:
                continue
            yield (Fraction(p), Fraction(q))
            if p and q:
                yield (Fraction(p), Fraction(-q))


def choose_reference(avoid: Iterable[Vec]) -> Vec:
    """First enumerated direction not parallel (either way) to any avoided one."""
    avoided = [d for d in avoid]
    if any(is_zero(d) for d in avoided):
        raise ValueError("zero vector has no direction")
    for r in reference_directions():
        if all(cross(r, d) != 0 for d in avoided):
            return r
    raise AssertionError("unreachable: the direction stream is infinite")


def turning_degree(directions: Sequence[Vec], reference: Vec | None = None) -> int:
    """Winding number around the origin of a closed direction sequence.

    Consecutive directions (cyclically) must not be antiparallel: each hop
    rotates by less than pi, the short way. The degree counts signed
    passages of the reference ray, which must not be parallel to any listed
    direction; one is chosen deterministically when not supplied.
    """
    if not directions:
        raise ValueError("empty direction sequence")
    r = choose_reference(directions) if reference is None else reference
    if any(cross(r, d) == 0 for d in directions):
        raise ValueError("reference direction is parallel to a listed direction")
    degree = 0
    for u, v in zip(directions, [*directions[1:], directions[0]]):
        turn = cross(u, v)
        if turn == 0:
            if dot(u, v) < 0:
                raise ValueError(f"antiparallel hop {u} -> {v}; rotation direction is ambiguous")
            continue
        if turn > 0:
            if cross(u, r) > 0 and cross(r, v) > 0:
                degree += 1
        else:
            if cross(v, r) > 0 and cross(r, u) > 0:
                degree -= 1
    return degree
