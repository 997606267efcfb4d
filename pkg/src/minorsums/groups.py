"""Exhaustive enumeration of permutation matrices and sign matrices.

Convention: the permutation matrix of ``pi`` has a one at ``(i, pi(i))``, so
``minor(P, U, V)`` is nonzero exactly when ``pi(U) = V`` and the inverse
matrix is the transpose.

Enumeration orders are fixed and every item can be rebuilt from its rank,
which lets a sum over the group be split into independent rank ranges.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import factorial
from typing import Any, Iterator

from .exact_matrix import ExactMatrix
from .rings import RingSpec

DEFAULT_PERM_CAP = 8
DEFAULT_SIGN_CAP = 16


class EnumerationCapError(ValueError):
    """Raised instead of starting an enumeration larger than its budget."""


@dataclass(frozen=True)
class Permutation:
    images: tuple  # images[i-1] = pi(i)

    def __post_init__(self) -> None:
        imgs = tuple(self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"{list(imgs)} is not a permutation of 1..{len(imgs)}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, p in enumerate(self.images, 1):
            inv[p - 1] = i
        return Permutation(tuple(inv))

    def sign(self) -> int:
        seen = [False] * self.n
        parity = 0
        for start in range(self.n):
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = self.images[i] - 1
                length += 1
            if length:
                parity += length - 1
        return -1 if parity % 2 else 1

    def to_json(self) -> list[int]:
        return list(self.images)

    @classmethod
    def from_json(cls, obj: Any) -> Permutation:
        if not isinstance(obj, list) or not all(type(x) is int for x in obj):
            raise ValueError(f"permutation must be an array of integers, got {obj!r}")
        return cls(tuple(obj))


@dataclass(frozen=True)
class SignVector:
    signs: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "signs", tuple(self.signs))
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"sign vector entries must be +1 or -1, got {list(self.signs)}")

    @property
    def n(self) -> int:
        return len(self.signs)

    def to_json(self) -> list[int]:
        return list(self.signs)

    @classmethod
    def from_json(cls, obj: Any) -> SignVector:
        if not isinstance(obj, list):
            raise ValueError(f"sign vector must be an array, got {obj!r}")
        return cls(tuple(obj))


def _check_perm_cap(n: int, cap: int) -> None:
    if n < 1:
        raise ValueError(f"permutation degree must be >= 1, got {n}")
    if n > cap:
        raise EnumerationCapError(f"refusing to enumerate {n}! permutations (cap n <= {cap})")


def _check_sign_cap(n: int, cap: int) -> None:
    if n < 1:
        raise ValueError(f"sign vector length must be >= 1, got {n}")
    if n > cap:
        raise EnumerationCapError(f"refusing to enumerate 2^{n} sign vectors (cap {cap} bits)")


def enumerate_permutations(n: int, cap: int = DEFAULT_PERM_CAP) -> Iterator[Permutation]:
    """All n! permutations in lexicographic order of their image lists."""
    _check_perm_cap(n, cap)
    for imgs in permutations(range(1, n + 1)):
        yield Permutation(imgs)


def unrank_permutation(n: int, rank: int) -> Permutation:
    """The permutation at position ``rank`` of :func:`enumerate_permutations`."""
    if not 0 <= rank < factorial(n):
        raise ValueError(f"rank {rank} outside [0, {n}!)")
    pool = list(range(1, n + 1))
    imgs = []
    for i in range(n - 1, -1, -1):
        digit, rank = divmod(rank, factorial(i))
        imgs.append(pool.pop(digit))
    return Permutation(tuple(imgs))


def rank_permutation(p: Permutation) -> int:
    pool = list(range(1, p.n + 1))
    rank = 0
    for i, v in enumerate(p.images):
        digit = pool.index(v)
        rank += digit * factorial(p.n - 1 - i)
        pool.pop(digit)
    return rank


def enumerate_sign_vectors(n: int, cap: int = DEFAULT_SIGN_CAP) -> Iterator[SignVector]:
    """All 2^n sign vectors in binary counting order.

    Position 1 is the most significant bit and bit value 0 stands for +1.
    """
    _check_sign_cap(n, cap)
    for signs in product((1, -1), repeat=n):
        yield SignVector(signs)


def unrank_sign_vector(n: int, rank: int) -> SignVector:
    if not 0 <= rank < 2**n:
        raise ValueError(f"rank {rank} outside [0, 2^{n})")
    return SignVector(tuple(-1 if rank >> (n - 1 - i) & 1 else 1 for i in range(n)))


def perm_matrix(p: Permutation, spec: RingSpec) -> ExactMatrix:
    n = p.n
    zero, one = spec.zero, spec.one
    return ExactMatrix(spec, n, n, tuple(
        tuple(one if j == p.images[i] - 1 else zero for j in range(n)) for i in range(n)))


def inverse_matrix(p: Permutation, spec: RingSpec) -> ExactMatrix:
    return perm_matrix(p.inverse(), spec)


def sign_matrix(q: SignVector, spec: RingSpec) -> ExactMatrix:
    n = q.n
    zero = spec.zero
    return ExactMatrix(spec, n, n, tuple(
        tuple(spec.from_integer(q.signs[i]) if i == j else zero for j in range(n)) for i in range(n)))


def signed_perm_matrix(q: SignVector, p: Permutation, spec: RingSpec) -> ExactMatrix:
    """The product ``Q P``."""
    return sign_matrix(q, spec) @ perm_matrix(p, spec)


def signed_perm_inverse(q: SignVector, p: Permutation, spec: RingSpec) -> ExactMatrix:
    """``(Q P)^{-1} = P^{-1} Q^{-1} = P^{-1} Q``."""
    return inverse_matrix(p, spec) @ sign_matrix(q, spec)
