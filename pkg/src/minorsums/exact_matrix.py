"""Dense matrices over a commutative ring, with minors and compound matrices.

Index sets are 1-based and sorted. A minor ``[A]_{S,T}`` is the determinant
of the submatrix on rows ``S`` and columns ``T`` taken in ascending order;
the empty minor is one.

Determinants never divide, so everything here works over Z/mZ with a
composite modulus. Small matrices (n <= 5) use cofactor expansion memoized
over the set of used columns; larger ones use the Berkowitz recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Iterable, Iterator, Sequence

from .polynomials import Polynomial, PolynomialRing
from .rings import RingError, RingSpec, RingValue

LAPLACE_MAX = 5


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class IndexSet:
    """A sorted subset of ``[universe] = {1, ..., universe}``."""

    elements: tuple
    universe: int

    def __post_init__(self) -> None:
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        if self.universe < 0:
            raise MatrixError(f"negative universe {self.universe}")
        for a, b in zip(els, els[1:]):
            if a >= b:
                raise MatrixError(f"index set {list(els)} is not strictly increasing")
        for e in els:
            if type(e) is not int or not 1 <= e <= self.universe:
                raise MatrixError(f"index {e!r} outside [1, {self.universe}]")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, t: object) -> bool:
        return t in self.elements

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"

    def to_json(self) -> list[int]:
        return list(self.elements)

    @classmethod
    def from_json(cls, obj: Any, universe: int) -> IndexSet:
        if not isinstance(obj, list):
            raise MatrixError(f"index set must be an array, got {obj!r}")
        return cls(tuple(obj), universe)


def subsets(n: int, k: int) -> Iterator[IndexSet]:
    """All k-subsets of [n] in lexicographic order."""
    for c in combinations(range(1, n + 1), k):
        yield IndexSet(c, n)


def _as_indices(S: IndexSet | Sequence[int], bound: int, what: str) -> tuple:
    els = tuple(S.elements if isinstance(S, IndexSet) else S)
    for a, b in zip(els, els[1:]):
        if a >= b:
            raise MatrixError(f"{what} indices {list(els)} are not strictly increasing")
    for e in els:
        if type(e) is not int or not 1 <= e <= bound:
            raise MatrixError(f"{what} index {e!r} outside [1, {bound}]")
    return els


@dataclass(frozen=True, eq=True)
class ExactMatrix:
    ring: RingSpec
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise MatrixError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise MatrixError(f"entries do not form a {self.rows}x{self.cols} grid")

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, ring: RingSpec, grid: Sequence[Sequence[Any]]) -> ExactMatrix:
        """Build from a grid of integers (embedded into the ring) or ring elements."""
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        if any(len(r) != cols for r in grid):
            raise MatrixError("ragged entries grid")
        entries = tuple(tuple(_embed(ring, x) for x in r) for r in grid)
        return cls(ring, rows, cols, entries)

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> ExactMatrix:
        return cls(ring, n, n, tuple(
            tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, ring: RingSpec, rows: int, cols: int) -> ExactMatrix:
        return cls(ring, rows, cols, tuple((ring.zero,) * cols for _ in range(rows)))

    # -- arithmetic ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> RingValue:
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._same_ring(other)
        if self.shape != other.shape:
            raise MatrixError(f"cannot add {self.shape} and {other.shape} matrices")
        add = self.ring.add
        return ExactMatrix(self.ring, self.rows, self.cols, tuple(
            tuple(add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries)))

    def __neg__(self) -> ExactMatrix:
        neg = self.ring.neg
        return ExactMatrix(self.ring, self.rows, self.cols,
                           tuple(tuple(neg(a) for a in r) for r in self.entries))

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + (-other)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        self._same_ring(other)
        if self.cols != other.rows:
            raise MatrixError(f"cannot multiply {self.shape} by {other.shape}")
        return ExactMatrix(self.ring, self.rows, other.cols,
                           _matmul(self.ring, self.entries, other.entries, other.cols))

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(self.ring, self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                           tuple(() for _ in range(self.cols)))

    @property
    def T(self) -> ExactMatrix:
        return self.transpose()

    def submatrix(self, S: IndexSet | Sequence[int], T: IndexSet | Sequence[int]) -> ExactMatrix:
        S = _as_indices(S, self.rows, "row")
        T = _as_indices(T, self.cols, "column")
        return ExactMatrix(self.ring, len(S), len(T),
                           tuple(tuple(self.entries[i - 1][j - 1] for j in T) for i in S))

    def _same_ring(self, other: ExactMatrix) -> None:
        if self.ring != other.ring:
            raise MatrixError(f"ring mismatch: {self.ring} vs {other.ring}")

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        fmt = self.ring.format
        return {"ring": self.ring.to_json(), "rows": self.rows, "cols": self.cols,
                "entries": [[fmt(a) for a in r] for r in self.entries]}

    @classmethod
    def from_json(cls, obj: Any) -> ExactMatrix:
        if not isinstance(obj, dict):
            raise MatrixError("matrix must be a JSON object")
        for key in ("ring", "rows", "cols", "entries"):
            if key not in obj:
                raise MatrixError(f"matrix is missing field {key!r}")
        ring = RingSpec.from_json(obj["ring"])
        rows, cols, grid = obj["rows"], obj["cols"], obj["entries"]
        if type(rows) is not int or type(cols) is not int:
            raise MatrixError("matrix 'rows' and 'cols' must be integers")
        if not isinstance(grid, list) or len(grid) != rows:
            raise MatrixError(f"field 'entries' must hold {rows} rows")
        for i, r in enumerate(grid):
            if not isinstance(r, list) or len(r) != cols:
                raise MatrixError(f"field 'entries' row {i} must hold {cols} values")
        try:
            entries = tuple(tuple(ring.parse_element(x) for x in r) for r in grid)
        except RingError as exc:
            raise MatrixError(f"field 'entries': {exc}") from None
        return cls(ring, rows, cols, entries)


def _embed(ring: RingSpec, x: Any) -> RingValue:
    if ring.contains(x):
        return x
    if type(x) is int:
        return ring.from_integer(x)
    return ring.parse_element(x)


def _matmul(ring, a: tuple, b: tuple, bcols: int) -> tuple:
    mul, add, zero = ring.mul, ring.add, ring.zero
    cols = list(zip(*b)) if b else [() for _ in range(bcols)]
    out = []
    for row in a:
        out_row = []
        for col in cols:
            acc = zero
            for x, y in zip(row, col):
                if x and y:
                    acc = add(acc, mul(x, y))
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


# -- determinants -------------------------------------------------------------
#
# The generic routines take any object with ``zero``, ``one``, ``add``, ``mul``,
# ``neg`` and ``is_zero`` so they run over RingSpec and PolynomialRing alike.


def det_laplace(ring, grid: Sequence[Sequence]) -> Any:
    """Cofactor expansion along successive rows, memoized on used columns."""
    n = len(grid)
    if n == 0:
        return ring.one
    add, mul, neg, is_zero = ring.add, ring.mul, ring.neg, ring.is_zero
    layer = {0: ring.one}
    for i in range(n):
        row = grid[i]
        nxt: dict[int, Any] = {}
        for mask, val in layer.items():
            for c in range(n):
                bit = 1 << c
                if mask & bit or is_zero(row[c]):
                    continue
                term = mul(val, row[c])
                if bin(mask >> (c + 1)).count("1") & 1:
                    term = neg(term)
                key = mask | bit
                nxt[key] = add(nxt[key], term) if key in nxt else term
        if not nxt:
            return ring.zero
        layer = nxt
    return layer.get((1 << n) - 1, ring.zero)


def berkowitz(ring, grid: Sequence[Sequence]) -> list:
    """Coefficients of ``det(xI - A)`` from the top: entry i multiplies x**(n-i).

    Division-free Samuelson-Berkowitz recurrence, O(n^4) ring operations.
    """
    n = len(grid)
    add, mul, neg, zero, one = ring.add, ring.mul, ring.neg, ring.zero, ring.one
    poly = [one]
    for r in range(n):
        # Leading (r+1)x(r+1) block is [[A_r, C], [R, a]].
        a = grid[r][r]
        C = [grid[i][r] for i in range(r)]
        R = [grid[r][j] for j in range(r)]
        toeplitz = [one, neg(a)]
        vec = C
        for _ in range(r):
            dot = zero
            for x, y in zip(R, vec):
                dot = add(dot, mul(x, y))
            toeplitz.append(neg(dot))
            vec = [_dot(ring, grid[i][:r], vec) for i in range(r)]
        new = []
        for i in range(r + 2):
            acc = zero
            for j in range(max(0, i - len(toeplitz) + 1), min(i, r) + 1):
                acc = add(acc, mul(toeplitz[i - j], poly[j]))
            new.append(acc)
        poly = new
    return poly


def _dot(ring, xs, ys):
    acc = ring.zero
    for x, y in zip(xs, ys):
        acc = ring.add(acc, ring.mul(x, y))
    return acc


def det_berkowitz(ring, grid: Sequence[Sequence]) -> Any:
    n = len(grid)
    const = berkowitz(ring, grid)[n]
    return ring.neg(const) if n % 2 else const


def det_generic(ring, grid: Sequence[Sequence]) -> Any:
    if len(grid) <= LAPLACE_MAX:
        return det_laplace(ring, grid)
    return det_berkowitz(ring, grid)


def determinant(A: ExactMatrix) -> RingValue:
    if A.rows != A.cols:
        raise MatrixError(f"determinant of non-square {A.rows}x{A.cols} matrix")
    return det_generic(A.ring, A.entries)


def minor(A: ExactMatrix, S: IndexSet | Sequence[int], T: IndexSet | Sequence[int]) -> RingValue:
    S = _as_indices(S, A.rows, "row")
    T = _as_indices(T, A.cols, "column")
    if len(S) != len(T):
        raise MatrixError(f"minor needs |S| = |T|, got {len(S)} and {len(T)}")
    return minor_raw(A.ring, A.entries, S, T)


def minor_raw(ring: RingSpec, entries: tuple, S: tuple, T: tuple) -> RingValue:
    """Unchecked minor on 1-based index tuples."""
    grid = [[entries[i - 1][j - 1] for j in T] for i in S]
    return det_generic(ring, grid)


def minor_of_product(A: ExactMatrix, B: ExactMatrix,
                     S: IndexSet | Sequence[int], T: IndexSet | Sequence[int]) -> RingValue:
    """Cauchy-Binet: sum over k-subsets U of [A]_{S,U} [B]_{U,T}."""
    if A.cols != B.rows:
        raise MatrixError(f"cannot multiply {A.shape} by {B.shape}")
    A._same_ring(B)
    S = _as_indices(S, A.rows, "row")
    T = _as_indices(T, B.cols, "column")
    k = len(S)
    if k != len(T):
        raise MatrixError(f"minor needs |S| = |T|, got {k} and {len(T)}")
    ring = A.ring
    total = ring.zero
    for U in combinations(range(1, A.cols + 1), k):
        a = minor_raw(ring, A.entries, S, U)
        if ring.is_zero(a):
            continue
        total = ring.add(total, ring.mul(a, minor_raw(ring, B.entries, U, T)))
    return total


def compound(A: ExactMatrix, k: int) -> ExactMatrix:
    """The k-th compound: all k x k minors, subsets in lexicographic order."""
    if not 0 <= k <= min(A.rows, A.cols):
        raise MatrixError(f"compound order {k} outside [0, {min(A.rows, A.cols)}]")
    row_sets = list(combinations(range(1, A.rows + 1), k))
    col_sets = list(combinations(range(1, A.cols + 1), k))
    return ExactMatrix(A.ring, len(row_sets), len(col_sets), tuple(
        tuple(minor_raw(A.ring, A.entries, S, T) for T in col_sets) for S in row_sets))


def principal_minor_sum(A: ExactMatrix, k: int) -> RingValue:
    """``[A]^{(k)}``: the sum of all principal k x k minors."""
    if A.rows != A.cols:
        raise MatrixError("principal minors need a square matrix")
    if not 0 <= k <= A.rows:
        raise MatrixError(f"principal minor order {k} outside [0, {A.rows}]")
    ring = A.ring
    return ring.sum(minor_raw(ring, A.entries, S, S)
                    for S in combinations(range(1, A.rows + 1), k))


def charpoly_coeffs(A: ExactMatrix) -> Polynomial:
    """``det(xI + A)`` as a polynomial, via a determinant over ``K[x]``."""
    if A.rows != A.cols:
        raise MatrixError("characteristic polynomial of a non-square matrix")
    return charpoly_raw(A.ring, A.entries)


def charpoly_raw(ring: RingSpec, entries: Sequence[Sequence]) -> Polynomial:
    px = PolynomialRing(ring)
    n = len(entries)
    grid = [[Polynomial(ring, (entries[i][j], ring.one) if i == j else (entries[i][j],))
             for j in range(n)] for i in range(n)]
    return det_generic(px, grid)


def minor_of_sum_expansion(A: ExactMatrix, D: ExactMatrix,
                           S: IndexSet | Sequence[int], T: IndexSet | Sequence[int]) -> RingValue:
    """Expand ``[A + D]_{S,T}`` as a signed sum of products of minors of A and D.

    Positions U, V range over equal-size subsets of [k] (1-based) and pick
    elements of the sorted S and T; the complements go to D.
    """
    A._same_ring(D)
    if A.shape != D.shape:
        raise MatrixError(f"shape mismatch {A.shape} vs {D.shape}")
    S = _as_indices(S, A.rows, "row")
    T = _as_indices(T, A.cols, "column")
    k = len(S)
    if k != len(T):
        raise MatrixError(f"minor needs |S| = |T|, got {k} and {len(T)}")
    ring = A.ring
    positions = range(1, k + 1)
    total = ring.zero
    for i in range(k + 1):
        for U in combinations(positions, i):
            U_S = tuple(S[u - 1] for u in U)
            Ubar_S = tuple(S[u - 1] for u in positions if u not in U)
            for V in combinations(positions, i):
                a = minor_raw(ring, A.entries, U_S, tuple(T[v - 1] for v in V))
                if ring.is_zero(a):
                    continue
                d = minor_raw(ring, D.entries, Ubar_S,
                              tuple(T[v - 1] for v in positions if v not in V))
                term = ring.mul(ring.sign_power(sum(U) + sum(V)), ring.mul(a, d))
                total = ring.add(total, term)
    return total


def matrix_product(ring: RingSpec, factors: Iterable[ExactMatrix], size: int) -> ExactMatrix:
    """Left-to-right product; an empty product is the size x size identity."""
    acc = None
    for f in factors:
        acc = f if acc is None else acc @ f
    return ExactMatrix.identity(ring, size) if acc is None else acc
