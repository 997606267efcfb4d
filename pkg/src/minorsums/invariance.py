"""Closed forms for minor sums over permutation and sign matrices.

Each identity comes as a pair: a closed form and an exhaustive oracle that
enumerates the group and evaluates every minor. The oracles make no use of
the closed forms, so agreement between the two is a real check.

Three identities are covered:

* pair sums ``sum_P [P]_{S,T} [P^{-1}]_{U,V}`` over n x n permutation matrices;
* cyclic d-tuple products ``prod_j [B_j G_j A_j G_{j+1}^{-1} C_j]_{X_j,Y_j}``
  summed over signed permutations ``G_j = Q_j P_j``;
* the coefficients of ``sum det(xI + M(P, Q))`` where
  ``M = prod_j (G_j A_j G_{j+1}^{-1} + D_j)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import factorial, prod
from typing import Any, Sequence

from .exact_matrix import (
    ExactMatrix,
    IndexSet,
    MatrixError,
    charpoly_coeffs,
    charpoly_raw,
    det_generic,
    matrix_product,
    minor,
    minor_raw,
    principal_minor_sum,
)
from .groups import (
    DEFAULT_PERM_CAP,
    DEFAULT_SIGN_CAP,
    EnumerationCapError,
    Permutation,
    SignVector,
    enumerate_permutations,
    enumerate_sign_vectors,
    inverse_matrix,
    perm_matrix,
    signed_perm_inverse,
    signed_perm_matrix,
    unrank_permutation,
    unrank_sign_vector,
)
from .polynomials import Polynomial
from .rings import RingError, RingSpec, RingValue


class InstanceError(ValueError):
    pass


def _elements(X: IndexSet | Sequence[int]) -> tuple:
    return X.elements if isinstance(X, IndexSet) else tuple(X)


# -- sign statistics ------------------------------------------------------------


def r_stat(t: int, X: IndexSet | Sequence[int]) -> int:
    """Number of elements of X below t; t must belong to X."""
    els = _elements(X)
    if t not in els:
        raise ValueError(f"{t} is not an element of {list(els)}")
    return sum(1 for x in els if x < t)


def s_stat(X: IndexSet | Sequence[int], Y: IndexSet | Sequence[int]) -> int:
    xs, ys = _elements(X), _elements(Y)
    only_x = sum(r_stat(t, xs) for t in xs if t not in ys)
    only_y = sum(r_stat(t, ys) for t in ys if t not in xs)
    return only_x - only_y


# -- permutation pair sums ------------------------------------------------------


@dataclass(frozen=True)
class PairSumInstance:
    n: int
    S: IndexSet
    T: IndexSet
    U: IndexSet
    V: IndexSet
    ring: RingSpec

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InstanceError(f"n must be >= 1, got {self.n}")
        for name in "STUV":
            X = getattr(self, name)
            if not isinstance(X, IndexSet):
                X = IndexSet(tuple(X), self.n)
                object.__setattr__(self, name, X)
            if X.universe != self.n or any(e > self.n for e in X):
                raise InstanceError(f"{name} must be a subset of [{self.n}]")
        sizes = {len(self.S), len(self.T), len(self.U), len(self.V)}
        if len(sizes) != 1:
            raise InstanceError(f"S, T, U, V must share one size, got sizes {sorted(sizes)}")

    @property
    def k(self) -> int:
        return len(self.S)

    def to_json(self) -> dict:
        return {"ring": self.ring.to_json(), "n": self.n, "S": self.S.to_json(),
                "T": self.T.to_json(), "U": self.U.to_json(), "V": self.V.to_json()}

    @classmethod
    def from_json(cls, obj: Any) -> PairSumInstance:
        if not isinstance(obj, dict):
            raise InstanceError("instance must be a JSON object")
        for key in ("ring", "n", "S", "T", "U", "V"):
            if key not in obj:
                raise InstanceError(f"instance is missing field {key!r}")
        n = obj["n"]
        if type(n) is not int:
            raise InstanceError("field 'n' must be an integer")
        sets = {}
        for key in "STUV":
            try:
                sets[key] = IndexSet.from_json(obj[key], n)
            except MatrixError as exc:
                raise InstanceError(f"field {key!r}: {exc}") from None
        return cls(n, ring=RingSpec.from_json(obj["ring"]), **sets)


def perm_pair_sum_closed(inst: PairSumInstance) -> RingValue:
    ring, n, k = inst.ring, inst.n, inst.k
    S, T, U, V = (set(inst.S), set(inst.T), set(inst.U), set(inst.V))
    j = len(S & V)
    if j != len(T & U) or j < k - 1:
        return ring.zero
    # |S u V| = 2k - j <= n, so the factorial argument is nonnegative here.
    coeff = ring.from_integer(factorial(j) * factorial(n - 2 * k + j))
    return ring.mul(coeff, ring.sign_power(s_stat(inst.T, inst.U) + s_stat(inst.S, inst.V)))


@lru_cache(maxsize=16)
def _perm_minor_tables(n: int, ring: RingSpec):
    """Every nonzero minor of every P_pi and P_pi^{-1}, by permutation rank.

    Returns ``(forward, inverse)``: ``forward[(S, T)]`` lists ``(rank, value)``
    for the permutations whose matrix has a nonzero ``(S, T)`` minor, and
    ``inverse[rank]`` maps ``(U, V)`` to the nonzero minors of the inverse.
    """
    forward: dict[tuple, list] = defaultdict(list)
    inverse: list[dict] = []
    sets_by_k = [list(combinations(range(1, n + 1), k)) for k in range(n + 1)]
    for rank, p in enumerate(enumerate_permutations(n, cap=n)):
        P = perm_matrix(p, ring).entries
        Pinv = inverse_matrix(p, ring).entries
        inv_row = {}
        for sets in sets_by_k:
            for S in sets:
                for T in sets:
                    v = minor_raw(ring, P, S, T)
                    if not ring.is_zero(v):
                        forward[(S, T)].append((rank, v))
                    w = minor_raw(ring, Pinv, S, T)
                    if not ring.is_zero(w):
                        inv_row[(S, T)] = w
        inverse.append(inv_row)
    return dict(forward), inverse


def pair_sum_terms(inst: PairSumInstance, start: int = 0, stop: int | None = None,
                   cap: int = DEFAULT_PERM_CAP) -> tuple[RingValue, int | None]:
    """Brute-force pair sum over permutation ranks in ``[start, stop)``.

    Returns the partial sum and the smallest rank whose term is nonzero.
    """
    if inst.n > cap:
        raise EnumerationCapError(f"refusing to enumerate {inst.n}! permutations (cap n <= {cap})")
    ring = inst.ring
    stop = factorial(inst.n) if stop is None else stop
    forward, inverse = _perm_minor_tables(inst.n, ring)
    ST = (inst.S.elements, inst.T.elements)
    UV = (inst.U.elements, inst.V.elements)
    total = ring.zero
    witness = None
    # Ranks whose (S, T) minor vanishes contribute zero terms.
    for rank, v in forward.get(ST, ()):
        if not start <= rank < stop:
            continue
        w = inverse[rank].get(UV)
        if w is None:
            continue
        term = ring.mul(v, w)
        if not ring.is_zero(term):
            total = ring.add(total, term)
            if witness is None:
                witness = rank
    return total, witness


def perm_pair_sum_brute(inst: PairSumInstance, cap: int = DEFAULT_PERM_CAP) -> RingValue:
    return pair_sum_terms(inst, cap=cap)[0]


def perm_pair_sum_naive(inst: PairSumInstance, cap: int = DEFAULT_PERM_CAP) -> RingValue:
    """The pair sum straight from the definition, one matrix per permutation."""
    ring = inst.ring
    total = ring.zero
    for p in enumerate_permutations(inst.n, cap=cap):
        a = minor(perm_matrix(p, ring), inst.S, inst.T)
        b = minor(inverse_matrix(p, ring), inst.U, inst.V)
        total = ring.add(total, ring.mul(a, b))
    return total


# -- cyclic configurations --------------------------------------------------------


@dataclass(frozen=True)
class CycleConfig:
    """Matrices ``A_j`` (n_j x n_{j+1}) wired in a cycle of length d.

    ``B_j`` (p_j x n_j), ``C_j`` (n_{j+1} x r_j) and the index sets
    ``X_j``, ``Y_j`` feed the tuple-product identity; ``D_j`` (same shape as
    ``A_j``) feeds the characteristic polynomial identity. Either group may
    be omitted.
    """

    ring: RingSpec
    A: tuple
    B: tuple | None = None
    C: tuple | None = None
    X: tuple | None = None
    Y: tuple | None = None
    D: tuple | None = None

    def __post_init__(self) -> None:
        for name in ("A", "B", "C", "X", "Y", "D"):
            val = getattr(self, name)
            if val is not None:
                object.__setattr__(self, name, tuple(val))
        d = len(self.A)
        if d < 1:
            raise InstanceError("a cycle needs at least one matrix A_j")
        for j, Aj in enumerate(self.A):
            if Aj.ring != self.ring:
                raise InstanceError(f"A_{j} lives over {Aj.ring}, expected {self.ring}")
            nxt = self.A[(j + 1) % d]
            if Aj.cols != nxt.rows:
                raise InstanceError(f"A_{j} is {Aj.rows}x{Aj.cols} but n_{(j + 1) % d} = {nxt.rows}")
        n = self.dims
        group = [self.B, self.C, self.X, self.Y]
        if any(g is not None for g in group):
            if any(g is None for g in group):
                raise InstanceError("B, C, X and Y must be given together")
            for name in ("B", "C", "X", "Y"):
                if len(getattr(self, name)) != d:
                    raise InstanceError(f"expected {d} entries in {name}, got {len(getattr(self, name))}")
            X = list(self.X)
            Y = list(self.Y)
            for j in range(d):
                Bj, Cj = self.B[j], self.C[j]
                if Bj.ring != self.ring or Cj.ring != self.ring:
                    raise InstanceError(f"B_{j} or C_{j} lives over the wrong ring")
                if Bj.cols != n[j]:
                    raise InstanceError(f"B_{j} must have n_{j} = {n[j]} columns, has {Bj.cols}")
                if Cj.rows != n[(j + 1) % d]:
                    raise InstanceError(f"C_{j} must have {n[(j + 1) % d]} rows, has {Cj.rows}")
                if not isinstance(X[j], IndexSet):
                    X[j] = IndexSet(tuple(X[j]), Bj.rows)
                if not isinstance(Y[j], IndexSet):
                    Y[j] = IndexSet(tuple(Y[j]), Cj.cols)
                if any(e > Bj.rows for e in X[j]) or any(e > Cj.cols for e in Y[j]):
                    raise InstanceError(f"X_{j} or Y_{j} falls outside its matrix")
                if len(X[j]) != len(Y[j]):
                    raise InstanceError(f"|X_{j}| = {len(X[j])} differs from |Y_{j}| = {len(Y[j])}")
                kj = len(X[j])
                if kj > min(Bj.rows, Cj.cols, n[j], n[(j + 1) % d]):
                    raise InstanceError(f"k_{j} = {kj} exceeds min(p_j, r_j, n_j, n_j+1)")
            object.__setattr__(self, "X", tuple(X))
            object.__setattr__(self, "Y", tuple(Y))
        if self.D is not None:
            if len(self.D) != d:
                raise InstanceError(f"expected {d} matrices D_j, got {len(self.D)}")
            for j, (Aj, Dj) in enumerate(zip(self.A, self.D)):
                if Dj.ring != self.ring or Dj.shape != Aj.shape:
                    raise InstanceError(f"D_{j} must be a {Aj.rows}x{Aj.cols} matrix over {self.ring}")

    @property
    def d(self) -> int:
        return len(self.A)

    @property
    def dims(self) -> list[int]:
        return [Aj.rows for Aj in self.A]

    @property
    def k(self) -> list[int] | None:
        return None if self.X is None else [len(x) for x in self.X]

    @property
    def has_tuple_data(self) -> bool:
        return self.B is not None

    def sign_bits(self) -> int:
        return sum(self.dims)

    def to_json(self) -> dict:
        out: dict = {"ring": self.ring.to_json(), "d": self.d, "dims": self.dims}
        if self.k is not None:
            out["k"] = self.k
        mats = {"A": [m.to_json() for m in self.A]}
        for name in ("B", "C", "D"):
            val = getattr(self, name)
            if val is not None:
                mats[name] = [m.to_json() for m in val]
        out["matrices"] = mats
        if self.X is not None:
            out["index_sets"] = {"X": [x.to_json() for x in self.X],
                                 "Y": [y.to_json() for y in self.Y]}
        return out

    @classmethod
    def from_json(cls, obj: Any) -> CycleConfig:
        if not isinstance(obj, dict):
            raise InstanceError("cycle config must be a JSON object")
        for key in ("ring", "d", "dims", "matrices"):
            if key not in obj:
                raise InstanceError(f"cycle config is missing field {key!r}")
        try:
            ring = RingSpec.from_json(obj["ring"])
        except RingError as exc:
            raise InstanceError(f"field 'ring': {exc}") from None
        mats = obj["matrices"]
        if not isinstance(mats, dict) or "A" not in mats:
            raise InstanceError("field 'matrices' must be an object with an 'A' array")
        parsed = {}
        for name in ("A", "B", "C", "D"):
            if name in mats:
                if not isinstance(mats[name], list):
                    raise InstanceError(f"field 'matrices.{name}' must be an array")
                try:
                    parsed[name] = tuple(ExactMatrix.from_json(m) for m in mats[name])
                except (MatrixError, RingError) as exc:
                    raise InstanceError(f"field 'matrices.{name}': {exc}") from None
        if "index_sets" in obj:
            sets = obj["index_sets"]
            if not isinstance(sets, dict) or "X" not in sets or "Y" not in sets:
                raise InstanceError("field 'index_sets' must hold arrays 'X' and 'Y'")
            B, C = parsed.get("B"), parsed.get("C")
            if B is None or C is None:
                raise InstanceError("index sets need matrices B and C")
            if len(sets["X"]) != len(B) or len(sets["Y"]) != len(C):
                raise InstanceError("index_sets lengths must match d")
            try:
                parsed["X"] = tuple(IndexSet.from_json(x, b.rows) for x, b in zip(sets["X"], B))
                parsed["Y"] = tuple(IndexSet.from_json(y, c.cols) for y, c in zip(sets["Y"], C))
            except MatrixError as exc:
                raise InstanceError(f"field 'index_sets': {exc}") from None
        cfg = cls(ring, **parsed)
        if obj["d"] != cfg.d:
            raise InstanceError(f"field 'd' = {obj['d']} but {cfg.d} matrices A_j were given")
        if obj["dims"] != cfg.dims:
            raise InstanceError(f"field 'dims' = {obj['dims']} disagrees with matrix shapes {cfg.dims}")
        if "k" in obj and obj["k"] != cfg.k:
            raise InstanceError(f"field 'k' = {obj['k']} disagrees with index set sizes {cfg.k}")
        return cfg


def _need_tuple_data(cfg: CycleConfig) -> None:
    if not cfg.has_tuple_data:
        raise InstanceError("this operation needs B_j, C_j, X_j and Y_j")


def _need_D(cfg: CycleConfig) -> None:
    if cfg.D is None:
        raise InstanceError("this operation needs the matrices D_j")


def _check_caps(cfg: CycleConfig, perm_cap: int, sign_cap: int) -> None:
    if max(cfg.dims) > perm_cap:
        raise EnumerationCapError(f"dimension {max(cfg.dims)} exceeds permutation cap {perm_cap}")
    if cfg.sign_bits() > sign_cap:
        raise EnumerationCapError(f"{cfg.sign_bits()} sign bits exceed cap {sign_cap}")


@lru_cache(maxsize=64)
def _signed_perms(n: int, ring: RingSpec) -> tuple:
    """All ``(Q P, (Q P)^{-1})`` for degree n, ranked ``perm_rank * 2^n + sign_rank``."""
    out = []
    signs = list(enumerate_sign_vectors(n, cap=n))
    for p in enumerate_permutations(n, cap=n):
        for q in signs:
            out.append((signed_perm_matrix(q, p, ring), signed_perm_inverse(q, p, ring)))
    return tuple(out)


def group_size(n: int) -> int:
    return factorial(n) * 2**n


def group_element(n: int, index: int) -> tuple[Permutation, SignVector]:
    """Decode a slot index into its ``(P, Q)`` pair."""
    p_rank, q_rank = divmod(index, 2**n)
    return unrank_permutation(n, p_rank), unrank_sign_vector(n, q_rank)


def tuple_space_size(cfg: CycleConfig) -> int:
    return prod(group_size(n) for n in cfg.dims)


def unrank_tuple(cfg: CycleConfig, rank: int) -> list[int]:
    """Slot indices of a tuple rank; slot 0 is the most significant digit."""
    sizes = [group_size(n) for n in cfg.dims]
    digits = []
    for s in reversed(sizes):
        rank, r = divmod(rank, s)
        digits.append(r)
    return digits[::-1]


def build_M(cfg: CycleConfig, P: Sequence[Permutation], Q: Sequence[SignVector]) -> ExactMatrix:
    """``prod_j ((Q_j P_j) A_j (Q_{j+1} P_{j+1})^{-1} + D_j)``."""
    _need_D(cfg)
    d, ring = cfg.d, cfg.ring
    if len(P) != d or len(Q) != d:
        raise InstanceError(f"need {d} permutations and sign vectors")
    for j, (p, q) in enumerate(zip(P, Q)):
        if p.n != cfg.dims[j] or q.n != cfg.dims[j]:
            raise InstanceError(f"slot {j} needs degree {cfg.dims[j]}")
    factors = []
    for j in range(d):
        nj = (j + 1) % d
        G = signed_perm_matrix(Q[j], P[j], ring)
        Ginv = signed_perm_inverse(Q[nj], P[nj], ring)
        factors.append(G @ cfg.A[j] @ Ginv + cfg.D[j])
    return matrix_product(ring, factors, cfg.dims[0])


def _cyclic_fold(ring: RingSpec, tables: list, sizes: list[int], start: int, stop: int,
                 visit=None) -> tuple[Any, int | None]:
    """Sum of ``prod_j tables[j][g_j][g_{j+1}]`` over tuples with rank in [start, stop).

    Walks the tuples depth first in rank order and drops a whole subtree as
    soon as a partial product is zero.
    """
    d = len(sizes)
    weights = [prod(sizes[i + 1:]) for i in range(d)]
    total = ring.zero
    witness = None
    mul, add, is_zero = ring.mul, ring.add, ring.is_zero

    def walk(depth: int, base: int, first: int, prev: int, acc) -> None:
        nonlocal total, witness
        w = weights[depth]
        tab = tables[depth - 1]
        last = depth == d - 1
        for g in range(sizes[depth]):
            lo = base + g * w
            if lo + w <= start or lo >= stop:
                continue
            val = tab[prev][g]
            if is_zero(val):
                continue
            part = mul(acc, val)
            if last:
                part = mul(part, tables[d - 1][g][first])
                if not is_zero(part):
                    total = add(total, part)
                    if witness is None:
                        witness = lo
            else:
                walk(depth + 1, lo, first, g, part)

    w0 = weights[0]
    for g0 in range(sizes[0]):
        lo = g0 * w0
        if lo + w0 <= start or lo >= stop:
            continue
        if d == 1:
            val = tables[0][g0][g0]
            if not is_zero(val):
                total = add(total, val)
                if witness is None:
                    witness = lo
        else:
            walk(1, lo, g0, g0, ring.one)
    return total, witness


def _tuple_factor_tables(cfg: CycleConfig) -> list:
    """``tables[j][g][h] = [B_j G_g A_j G_h^{-1} C_j]_{X_j, Y_j}`` for every pair."""
    ring, d, n = cfg.ring, cfg.d, cfg.dims
    tables = []
    for j in range(d):
        nj = (j + 1) % d
        X, Y = cfg.X[j].elements, cfg.Y[j].elements
        k = len(X)
        left = [(cfg.B[j] @ G @ cfg.A[j]).entries for G, _ in _signed_perms(n[j], ring)]
        right = [(Ginv @ cfg.C[j]).entries for _, Ginv in _signed_perms(n[nj], ring)]
        # Minors of a product only see the chosen rows of the left factor
        # and the chosen columns of the right one.
        left = [tuple(L[i - 1] for i in X) for L in left]
        right = [tuple(tuple(row[c - 1] for c in Y) for row in R) for R in right]
        right_t = [tuple(zip(*R)) if R else tuple(() for _ in range(k)) for R in right]
        table = []
        for L in left:
            row = []
            for Rt in right_t:
                grid = [[ring.sum(ring.mul(a, b) for a, b in zip(Lrow, Rcol)) for Rcol in Rt]
                        for Lrow in L]
                row.append(det_generic(ring, grid))
            table.append(row)
        tables.append(table)
    return tables


def tuple_product_terms(cfg: CycleConfig, start: int = 0, stop: int | None = None,
                        perm_cap: int = DEFAULT_PERM_CAP,
                        sign_cap: int = DEFAULT_SIGN_CAP) -> tuple[RingValue, int | None]:
    """Exhaustive tuple-product sum over tuple ranks in ``[start, stop)``.

    Returns the partial sum and the smallest rank with a nonzero term.
    """
    _need_tuple_data(cfg)
    _check_caps(cfg, perm_cap, sign_cap)
    stop = tuple_space_size(cfg) if stop is None else stop
    sizes = [group_size(n) for n in cfg.dims]
    return _cyclic_fold(cfg.ring, _tuple_factor_tables(cfg), sizes, start, stop)


def tuple_product_sum_brute(cfg: CycleConfig, perm_cap: int = DEFAULT_PERM_CAP,
                            sign_cap: int = DEFAULT_SIGN_CAP) -> RingValue:
    return tuple_product_terms(cfg, perm_cap=perm_cap, sign_cap=sign_cap)[0]


def tuple_product_sum_closed(cfg: CycleConfig) -> RingValue:
    _need_tuple_data(cfg)
    ring, d, n, k = cfg.ring, cfg.d, cfg.dims, cfg.k
    if len(set(k)) != 1:
        return ring.zero
    k0 = k[0]
    value = ring.two_pow(sum(n))
    for j in range(d):
        prev = (j - 1) % d
        coeff = ring.from_integer(factorial(k0) * factorial(n[j] - k0))
        BC = cfg.B[j] @ cfg.C[prev]
        value = ring.mul(value, ring.mul(coeff, minor(BC, cfg.X[j], cfg.Y[prev])))
    cycle = matrix_product(ring, cfg.A, n[0])
    return ring.mul(value, principal_minor_sum(cycle, k0))


# -- characteristic polynomial sums -------------------------------------------------


def charpoly_sum_terms(cfg: CycleConfig, start: int = 0, stop: int | None = None,
                       perm_cap: int = DEFAULT_PERM_CAP,
                       sign_cap: int = DEFAULT_SIGN_CAP) -> tuple[Polynomial, list]:
    """Sum of ``det(xI + M(P, Q))`` over tuple ranks in ``[start, stop)``.

    Also returns, per coefficient (low-to-high), the smallest rank whose
    characteristic polynomial is nonzero there.
    """
    _need_D(cfg)
    _check_caps(cfg, perm_cap, sign_cap)
    ring, d, n = cfg.ring, cfg.d, cfg.dims
    stop = tuple_space_size(cfg) if stop is None else stop
    factors = []
    for j in range(d):
        nj = (j + 1) % d
        Aj, Dj = cfg.A[j], cfg.D[j]
        factors.append([[(G @ Aj @ Ginv + Dj) for _, Ginv in _signed_perms(n[nj], ring)]
                        for G, _ in _signed_perms(n[j], ring)])
    size = n[0] + 1
    totals = [ring.zero] * size
    witnesses: list = [None] * size
    for rank in range(start, stop):
        g = unrank_tuple(cfg, rank)
        M = factors[0][g[0]][g[1 % d]]
        for j in range(1, d):
            M = M @ factors[j][g[j]][g[(j + 1) % d]]
        cp = charpoly_raw(ring, M.entries)
        for i in range(size):
            c = cp.coeff(i)
            if not ring.is_zero(c):
                totals[i] = ring.add(totals[i], c)
                if witnesses[i] is None:
                    witnesses[i] = rank
    return Polynomial(ring, tuple(totals)), witnesses


def charpoly_sum_brute(cfg: CycleConfig, perm_cap: int = DEFAULT_PERM_CAP,
                       sign_cap: int = DEFAULT_SIGN_CAP) -> Polynomial:
    return charpoly_sum_terms(cfg, perm_cap=perm_cap, sign_cap=sign_cap)[0]


def _falling(top: int, count: int) -> int:
    """``top * (top - 1) * ... `` with ``count`` factors."""
    return prod(range(top - count + 1, top + 1))


def charpoly_sum_closed(cfg: CycleConfig) -> Polynomial:
    """Coefficients of the characteristic polynomial sum by convolution.

    ``r_k = 2^(sum n_j) * sum_i (prod_j (n_j-k+i)!/(n_j-k)! * (n_j-i)!) p_i q_{k-i}``
    where ``p_i``, ``q_i`` multiply ``x^(n_0-i)`` in ``det(xI + prod A_j)`` and
    ``det(xI + prod D_j)``.
    """
    _need_D(cfg)
    ring, n = cfg.ring, cfg.dims
    n0 = n[0]
    p = charpoly_coeffs(matrix_product(ring, cfg.A, n0)).top_down(n0)
    q = charpoly_coeffs(matrix_product(ring, cfg.D, n0)).top_down(n0)
    # Both cycle products factor through every n_j, so p_i = q_i = 0 for i > min(n).
    nmin = min(n)
    scale = ring.two_pow(sum(n))
    r = []
    for k in range(n0 + 1):
        acc = ring.zero
        for i in range(k + 1):
            if i > nmin or k - i > nmin:
                continue
            # Here n_j - i >= 0 and n_j - k + i >= 0; the falling factorial
            # vanishes by itself when k > n_j.
            coeff = prod(_falling(nj - k + i, i) * factorial(nj - i) for nj in n)
            term = ring.mul(ring.from_integer(coeff), ring.mul(p[i], q[k - i]))
            acc = ring.add(acc, term)
        r.append(ring.mul(scale, acc))
    return Polynomial.from_top_down(ring, r)


@dataclass
class CharpolySumReport:
    """All coefficient lists are indexed from the top (entry i multiplies x^(n_0-i))."""

    p: list
    q: list
    r_closed: list
    r_brute: list
    match: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.match)


def compare_charpoly_sums(cfg: CycleConfig, perm_cap: int = DEFAULT_PERM_CAP,
                          sign_cap: int = DEFAULT_SIGN_CAP) -> CharpolySumReport:
    _need_D(cfg)
    ring, n0 = cfg.ring, cfg.dims[0]
    brute, wit = charpoly_sum_terms(cfg, perm_cap=perm_cap, sign_cap=sign_cap)
    closed = charpoly_sum_closed(cfg)
    rb, rc = brute.top_down(n0), closed.top_down(n0)
    return CharpolySumReport(
        p=charpoly_coeffs(matrix_product(ring, cfg.A, n0)).top_down(n0),
        q=charpoly_coeffs(matrix_product(ring, cfg.D, n0)).top_down(n0),
        r_closed=rc,
        r_brute=rb,
        match=[a == b for a, b in zip(rc, rb)],
        witnesses=[wit[n0 - i] for i in range(n0 + 1)],
    )
