"""Strata of Abelian differentials: components, dimensions, Kodaira type.

A stratum is the space of pairs (curve of genus g, differential with zeros
of prescribed orders). This module records the classification of its
connected components (hyperelliptic and spin-parity components, with the
small-genus exceptions), the dimension of the stratum and of its projection
to the moduli of curves, and the known Kodaira-dimension verdicts for the
projectivized strata. Every verdict here is a table lookup backed by a
theorem; queries outside the tables answer Unknown rather than extrapolate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

TAGS = ("whole", "hyp", "even", "odd", "nonhyp")


@dataclass(frozen=True)
class StratumSignature:
    """Zero orders of a stratum in genus g, optionally naming a component.

    Orders are positive integers summing to 2g - 2, stored sorted
    descending. ``tag`` selects a connected component ("hyp", "even", "odd",
    "nonhyp"), names the full stratum ("whole"), or is None for an untagged
    query.
    """

    genus: int
    orders: tuple[int, ...]
    tag: str | None = None

    def __post_init__(self) -> None:
        if self.genus < 2:
            raise ValueError("strata here have genus >= 2")
        if not self.orders or any(k < 1 for k in self.orders):
            raise ValueError("zero orders are positive integers, at least one of them")
        if sum(self.orders) != 2 * self.genus - 2:
            raise ValueError(
                f"orders sum to {sum(self.orders)}, genus {self.genus} needs {2 * self.genus - 2}"
            )
        object.__setattr__(self, "orders", tuple(sorted(self.orders, reverse=True)))
        if self.tag is not None and self.tag not in TAGS:
            raise ValueError(f"unknown tag {self.tag!r}; use one of {TAGS}")

    @classmethod
    def build(cls, genus: int, orders, tag: str | None = None) -> "StratumSignature":
        return cls(genus, tuple(orders), tag)

    @property
    def n(self) -> int:
        return len(self.orders)

    def is_minimal(self) -> bool:
        return self.n == 1

    def all_even(self) -> bool:
        return all(k % 2 == 0 for k in self.orders)

    def dimension(self, projective: bool = False) -> int:
        dim = 2 * self.genus - 1 + self.n
        return dim - 1 if projective else dim

    def with_tag(self, tag: str | None) -> "StratumSignature":
        return StratumSignature(self.genus, self.orders, tag)

    def __str__(self) -> str:
        body = ",".join(str(k) for k in self.orders)
        return f"H_{self.genus}({body})" + (f"^{self.tag}" if self.tag else "")


@dataclass(frozen=True)
class StratumComponent:
    tag: str
    spin_parity: int | None  # 0 even, 1 odd, None when spin does not apply


def minimal_hyperelliptic_parity(genus: int) -> int:
    """Spin parity of the hyperelliptic component of the minimal stratum.

    The differential has a single zero of order 2g - 2 at a ramification
    point W, so the characteristic is O((g - 1)W) and
    h^0 = floor((g - 1)/2) + 1 by the usual 1, x, ..., x^m section count.
    """
    return (1 + (genus - 1) // 2) % 2


def double_zero_hyperelliptic_parity(genus: int) -> int:
    """Spin parity of the hyperelliptic component of (m, m), m = g - 1 even.

    The two zeros are exchanged by the involution, so Z1 + Z2 is the
    degree-2 pencil and the characteristic is O(m/2 g^1_2) with
    h^0 = m/2 + 1 = (g + 1)/2.
    """
    if genus % 2 == 0:
        raise ValueError("the even double-zero shape (m, m) needs odd genus")
    return ((genus + 1) // 2) % 2


def components(s: StratumSignature) -> tuple[StratumComponent, ...]:
    """Connected components of the stratum, in a stable order.

    Encodes the classification: generic strata are connected; strata with
    all orders even split into even and odd spin components; the minimal and
    double-zero shapes add a hyperelliptic component; and in low genus some
    of these coincide or disappear.
    """
    g = s.genus
    if s.is_minimal():
        if g == 2:
            return (StratumComponent("hyp", 1),)
        if g == 3:
            return (StratumComponent("hyp", 0), StratumComponent("odd", 1))
        return (
            StratumComponent("hyp", minimal_hyperelliptic_parity(g)),
            StratumComponent("even", 0),
            StratumComponent("odd", 1),
        )
    if all(k == 1 for k in s.orders):
        return (StratumComponent("whole", None),)
    if s.n == 2 and s.orders[0] == s.orders[1]:
        m = s.orders[0]
        if m % 2 == 0:
            if g == 3:
                return (StratumComponent("hyp", 0), StratumComponent("odd", 1))
            return (
                StratumComponent("hyp", double_zero_hyperelliptic_parity(g)),
                StratumComponent("even", 0),
                StratumComponent("odd", 1),
            )
        return (StratumComponent("hyp", None), StratumComponent("nonhyp", None))
    if s.all_even():
        return (StratumComponent("even", 0), StratumComponent("odd", 1))
    return (StratumComponent("whole", None),)


def component_tags(s: StratumSignature) -> tuple[str, ...]:
    return tuple(c.tag for c in components(s))


def require_tag_exists(s: StratumSignature) -> None:
    if s.tag is not None and s.tag not in component_tags(s):
        raise ValueError(
            f"stratum {s.with_tag(None)} has components {component_tags(s)}; no component {s.tag!r}"
        )


def projection_dimension(s: StratumSignature) -> int:
    """Dimension of the stratum's image in the moduli of curves.

    Hyperelliptic components project onto the (2g - 1)-dimensional
    hyperelliptic locus whatever the orders. The even component with all
    orders 2 maps to the divisor-like locus of curves with a vanishing
    theta-null section, of dimension 3g - 4. Everything else achieves the
    expected min(2g - 2 + n, 3g - 3). An untagged or whole query reports the
    largest component image.
    """
    require_tag_exists(s)
    g, n = s.genus, s.n
    if s.tag == "hyp":
        return 2 * g - 1
    if s.tag == "even" and set(s.orders) == {2}:
        return 3 * g - 4
    return min(2 * g - 2 + n, 3 * g - 3)


class Kodaira(enum.Enum):
    MINUS_INFINITY = "minus_infinity"
    GENERAL_TYPE = "general_type"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class KodairaResult:
    verdict: Kodaira
    reason: str


def kodaira_dimension(s: StratumSignature) -> KodairaResult:
    """Kodaira dimension class of the projectivized stratum component.

    Only verdicts with a proof are returned; shapes between them answer
    Unknown, deliberately, with no interpolation from neighbouring rows.
    Untagged queries are accepted for connected strata only.
    """
    require_tag_exists(s)
    if s.tag is None and len(components(s)) > 1:
        raise ValueError(f"stratum {s} has several components; tag the one you mean")
    g, n = s.genus, s.n
    all_twos = set(s.orders) == {2}

    if all_twos and s.tag == "even":
        return KodairaResult(
            Kodaira.MINUS_INFINITY, "even component with all orders 2: uniruled in every genus"
        )
    if all_twos and s.tag == "odd":
        if g <= 11:
            return KodairaResult(Kodaira.MINUS_INFINITY, "odd component with all orders 2, genus <= 11: uniruled")
        return KodairaResult(Kodaira.GENERAL_TYPE, "odd component with all orders 2, genus >= 12")
    if s.tag == "hyp" and s.n == 2 and s.orders[0] == s.orders[1] and s.orders[0] % 2 == 0:
        return KodairaResult(
            Kodaira.MINUS_INFINITY, "hyperelliptic component of an even double-zero shape: uniruled"
        )

    # orders >= 2 summing to at most g - 2 forces 1s to fill the degree, and
    # such strata are connected, so the tag is already None or "whole" here
    big = [k for k in s.orders if k >= 2]
    if sum(big) <= g - 2:
        return KodairaResult(
            Kodaira.MINUS_INFINITY,
            "few large zeros (their orders sum to at most g - 2): the stratum is uniruled",
        )
    if s.orders[0] == g - 1 and s.orders.count(1) == n - 1 and n == g:
        if g == 22 or g >= 24:
            return KodairaResult(
                Kodaira.GENERAL_TYPE,
                "one zero of order g - 1 and simple zeros: generically finite over a general-type moduli",
            )
        return KodairaResult(Kodaira.UNKNOWN, "no verdict for this shape in this genus")
    if n == g - 1 and not (all_twos and s.tag == "even"):
        if g == 22 or g >= 24:
            return KodairaResult(
                Kodaira.GENERAL_TYPE,
                "g - 1 zeros: generically finite over a general-type moduli",
            )
        return KodairaResult(Kodaira.UNKNOWN, "no verdict for this shape in this genus")
    return KodairaResult(Kodaira.UNKNOWN, "no verdict for this shape")
