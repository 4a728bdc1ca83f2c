"""Exact Gaussian rational arithmetic.

Residues of differentials at nodes are complex numbers whose real and
imaginary parts are kept as exact fractions, so that verdicts hinging on
"this residue is zero" or "these residues are opposite" are decisions,
never float comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

RationalLike = Union[int, str, Fraction]


def as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot build an exact rational from {value!r}")


@dataclass(frozen=True)
class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", as_fraction(self.re))
        object.__setattr__(self, "im", as_fraction(self.im))

    @classmethod
    def of(cls, re: RationalLike, im: RationalLike = 0) -> "GaussianRational":
        return cls(as_fraction(re), as_fraction(im))

    @classmethod
    def zero(cls) -> "GaussianRational":
        return cls()

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __complex__(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        return f"{self.re}{'+' if self.im > 0 else ''}{self.im}i"

    def to_json(self) -> dict[str, str]:
        return {"re": str(self.re), "im": str(self.im)}

    @classmethod
    def from_json(cls, data: Any) -> "GaussianRational":
        """Parse the {"re": "p/q", "im": "r/s"} wire form.

        Bare strings and integers are accepted as purely real values.
        """
        if isinstance(data, (int, str)):
            return cls.of(data)
        if isinstance(data, dict):
            extra = set(data) - {"re", "im"}
            if extra:
                raise ValueError(f"unknown residue fields: {sorted(extra)}")
            return cls.of(data.get("re", 0), data.get("im", 0))
        raise TypeError(f"cannot parse a Gaussian rational from {data!r}")
