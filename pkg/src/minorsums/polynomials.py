"""Dense univariate polynomials over a :class:`~minorsums.rings.RingSpec`."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .rings import RingSpec, RingValue


def _trim(ring: RingSpec, coeffs: Sequence[RingValue]) -> tuple:
    coeffs = list(coeffs) or [ring.zero]
    while len(coeffs) > 1 and ring.is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Polynomial:
    """Coefficients stored low-to-high: ``coeffs[i]`` multiplies ``x**i``.

    Instances are normalized: trailing zeros are trimmed, keeping at least
    the constant term.
    """

    ring: RingSpec
    coeffs: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(self.ring, self.coeffs))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as 0."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> RingValue:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def top_down(self, n: int) -> list[RingValue]:
        """Coefficients indexed from the top: entry ``i`` multiplies ``x**(n-i)``."""
        return [self.coeff(n - i) for i in range(n + 1)]

    @classmethod
    def from_top_down(cls, ring: RingSpec, values: Sequence[RingValue]) -> Polynomial:
        return cls(ring, tuple(reversed(values)))

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.ring.is_zero(self.coeffs[0])

    def to_json(self) -> list[str]:
        return [self.ring.format(c) for c in self.coeffs]

    def __str__(self) -> str:
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if self.ring.is_zero(c) and len(self.coeffs) > 1:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(f"{self.ring.format(c)}{'*' if mono else ''}{mono}")
        return " + ".join(terms)


class PolynomialRing:
    """The ring ``K[x]``; exposes the same arithmetic surface as RingSpec.

    This lets the generic determinant routines run unchanged over ``K[x]``.
    """

    def __init__(self, base: RingSpec):
        self.base = base
        self.zero = Polynomial(base, (base.zero,))
        self.one = Polynomial(base, (base.one,))
        self.x = Polynomial(base, (base.zero, base.one))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolynomialRing) and other.base == self.base

    def __hash__(self) -> int:
        return hash(("poly", self.base))

    def constant(self, c: RingValue) -> Polynomial:
        return Polynomial(self.base, (c,))

    def add(self, a: Polynomial, b: Polynomial) -> Polynomial:
        r = self.base
        n = max(len(a.coeffs), len(b.coeffs))
        return Polynomial(r, tuple(r.add(a.coeff(i), b.coeff(i)) for i in range(n)))

    def sub(self, a: Polynomial, b: Polynomial) -> Polynomial:
        return self.add(a, self.neg(b))

    def neg(self, a: Polynomial) -> Polynomial:
        return Polynomial(self.base, tuple(self.base.neg(c) for c in a.coeffs))

    def mul(self, a: Polynomial, b: Polynomial) -> Polynomial:
        r = self.base
        out = [r.zero] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, ca in enumerate(a.coeffs):
            if r.is_zero(ca):
                continue
            for j, cb in enumerate(b.coeffs):
                out[i + j] = r.add(out[i + j], r.mul(ca, cb))
        return Polynomial(r, tuple(out))

    def is_zero(self, a: Polynomial) -> bool:
        return a.is_zero()

    def sum(self, values) -> Polynomial:
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc
