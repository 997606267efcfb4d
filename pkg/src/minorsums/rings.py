"""Commutative rings with identity: the integers, the rationals and Z/mZ.

Ring elements are plain Python values (``int`` for integers and residues,
``fractions.Fraction`` for rationals). A :class:`RingSpec` names the ring and
supplies the arithmetic, so elements stay cheap and immutable.

Every integer coefficient used by the library (factorials, binomials, powers
of two, signs) is computed exactly in Z first and then mapped into the ring
through :meth:`RingSpec.from_integer`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Union

RingValue = Union[int, Fraction]

KINDS = ("int", "rat", "mod")


class RingError(ValueError):
    pass


@dataclass(frozen=True)
class RingSpec:
    kind: str
    modulus: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise RingError(f"unknown ring kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "mod":
            if not isinstance(self.modulus, int) or isinstance(self.modulus, bool) or self.modulus < 2:
                raise RingError(f"modulus must be an integer >= 2, got {self.modulus!r}")
        elif self.modulus is not None:
            raise RingError(f"ring kind {self.kind!r} takes no modulus")

    def __str__(self) -> str:
        return {"int": "ZZ", "rat": "QQ"}.get(self.kind) or f"ZZ/{self.modulus}"

    # -- constructors -------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> RingSpec:
        """Parse a command-line ring name: ``int``, ``rat`` or ``mod:<m>``."""
        text = text.strip()
        if text in ("int", "rat"):
            return cls(text)
        if text.startswith("mod:"):
            try:
                m = int(text[4:])
            except ValueError:
                raise RingError(f"bad modulus in {text!r}") from None
            return cls("mod", m)
        raise RingError(f"cannot parse ring {text!r}; use int, rat or mod:<m>")

    @classmethod
    def from_json(cls, obj: Any) -> RingSpec:
        if not isinstance(obj, dict) or "kind" not in obj:
            raise RingError("ring must be an object with a 'kind' field")
        extra = set(obj) - {"kind", "modulus"}
        if extra:
            raise RingError(f"unexpected ring fields {sorted(extra)}")
        return cls(obj["kind"], obj.get("modulus"))

    def to_json(self) -> dict:
        if self.kind == "mod":
            return {"kind": "mod", "modulus": self.modulus}
        return {"kind": self.kind}

    # -- elements -----------------------------------------------------------

    @property
    def zero(self) -> RingValue:
        return Fraction(0) if self.kind == "rat" else 0

    @property
    def one(self) -> RingValue:
        return Fraction(1) if self.kind == "rat" else 1

    def from_integer(self, z: int) -> RingValue:
        if self.kind == "int":
            return int(z)
        if self.kind == "rat":
            return Fraction(int(z))
        return int(z) % self.modulus

    def add(self, a: RingValue, b: RingValue) -> RingValue:
        if self.kind == "mod":
            return (a + b) % self.modulus
        return a + b

    def sub(self, a: RingValue, b: RingValue) -> RingValue:
        if self.kind == "mod":
            return (a - b) % self.modulus
        return a - b

    def mul(self, a: RingValue, b: RingValue) -> RingValue:
        if self.kind == "mod":
            return (a * b) % self.modulus
        return a * b

    def neg(self, a: RingValue) -> RingValue:
        if self.kind == "mod":
            return -a % self.modulus
        return -a

    def sum(self, values: Iterable[RingValue]) -> RingValue:
        total = sum(values, self.zero)
        return total % self.modulus if self.kind == "mod" else total

    def prod(self, values: Iterable[RingValue]) -> RingValue:
        acc = self.one
        for v in values:
            acc = self.mul(acc, v)
        return acc

    def is_zero(self, a: RingValue) -> bool:
        return a == 0

    def sign_power(self, e: int) -> RingValue:
        """``(-1)**e`` read by parity, so negative exponents are fine."""
        return self.neg(self.one) if e % 2 else self.one

    def two_pow(self, e: int) -> RingValue:
        if e < 0:
            raise RingError(f"two_pow needs a nonnegative exponent, got {e}")
        if self.kind == "mod":
            return pow(2, e, self.modulus)
        return self.from_integer(2**e)

    def contains(self, a: Any) -> bool:
        if self.kind == "int":
            return type(a) is int
        if self.kind == "rat":
            return isinstance(a, Fraction)
        return type(a) is int and 0 <= a < self.modulus

    # -- serialization ------------------------------------------------------

    def format(self, a: RingValue) -> str:
        if self.kind == "rat":
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a)

    def parse_element(self, obj: Any) -> RingValue:
        """Read an element from a decimal string, ``"p/q"`` string or bare int."""
        if isinstance(obj, bool):
            raise RingError(f"not a ring element: {obj!r}")
        if isinstance(obj, int):
            return self.from_integer(obj)
        if not isinstance(obj, str):
            raise RingError(f"not a ring element: {obj!r}")
        text = obj.strip()
        if self.kind == "rat":
            try:
                return Fraction(text)
            except (ValueError, ZeroDivisionError):
                raise RingError(f"not a rational: {obj!r}") from None
        try:
            return self.from_integer(int(text))
        except ValueError:
            raise RingError(f"not an integer: {obj!r}") from None


ZZ = RingSpec("int")
QQ = RingSpec("rat")


def Zmod(m: int) -> RingSpec:
    return RingSpec("mod", m)


def from_integer(spec: RingSpec, z: int) -> RingValue:
    return spec.from_integer(z)


def sign_power(spec: RingSpec, e: int) -> RingValue:
    return spec.sign_power(e)


def two_pow(spec: RingSpec, e: int) -> RingValue:
    return spec.two_pow(e)
