"""Verification suites: closed forms against exhaustive oracles.

Every suite yields one :class:`VerificationReport` per ring. Instances are
generated from string-seeded ``random.Random`` streams, so a given seed
produces the same integer data for every ring and every worker count.
Work is split into tasks whose results are merged in task order; the
number of worker processes therefore never changes a report.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Any, Callable, Iterable, Sequence

from .exact_matrix import (
    ExactMatrix,
    IndexSet,
    charpoly_coeffs,
    compound,
    minor,
    minor_of_product,
    minor_of_sum_expansion,
    principal_minor_sum,
)
from .groups import DEFAULT_PERM_CAP, DEFAULT_SIGN_CAP
from .invariance import (
    CycleConfig,
    PairSumInstance,
    compare_charpoly_sums,
    pair_sum_terms,
    perm_pair_sum_closed,
    tuple_product_sum_closed,
    tuple_product_terms,
)
from .rings import RingSpec

LEMMA1_MAX_N = 6
ENTRY_RANGE = 2


@dataclass
class VerificationReport:
    suite: str
    ring: RingSpec
    instances: int = 0
    passed: int = 0
    failed: int = 0
    counterexamples: list = field(default_factory=list)
    wall_time_ms: float = 0.0

    def record(self, ok: bool, counterexample: dict | None = None) -> None:
        self.instances += 1
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.counterexamples.append(counterexample or {})

    def merge(self, other: VerificationReport) -> None:
        self.instances += other.instances
        self.passed += other.passed
        self.failed += other.failed
        self.counterexamples.extend(other.counterexamples)

    def to_json(self, timings: bool = False) -> dict:
        out = {"suite": self.suite, "ring": self.ring.to_json(), "instances": self.instances,
               "passed": self.passed, "failed": self.failed,
               "counterexamples": self.counterexamples}
        if timings:
            out["wall_time_ms"] = round(self.wall_time_ms, 3)
        return out


def run_tasks(fn: Callable, tasks: Sequence, jobs: int = 1) -> list:
    """``[fn(t) for t in tasks]``, optionally on a process pool; order is kept."""
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def _collect(suite: str, ring: RingSpec, parts: Iterable[VerificationReport],
             started: float) -> VerificationReport:
    report = VerificationReport(suite, ring)
    for part in parts:
        report.merge(part)
    report.wall_time_ms = (time.perf_counter() - started) * 1000
    return report


# -- permutation pair sums ------------------------------------------------------


def lemma1_instance_count(n_max: int) -> int:
    return sum(comb(n, k) ** 4 for n in range(1, n_max + 1) for k in range(n + 1))


def _lemma1_chunk(task: tuple) -> VerificationReport:
    ring, n, k, s_lo, s_hi, cap = task
    part = VerificationReport("lemma1", ring)
    sets = list(combinations(range(1, n + 1), k))
    for S in sets[s_lo:s_hi]:
        for T, U, V in product(sets, repeat=3):
            inst = PairSumInstance(n, IndexSet(S, n), IndexSet(T, n), IndexSet(U, n),
                                   IndexSet(V, n), ring)
            closed = perm_pair_sum_closed(inst)
            brute, witness = pair_sum_terms(inst, cap=cap)
            ok = closed == brute
            part.record(ok, None if ok else {
                "instance": inst.to_json(), "closed": ring.format(closed),
                "brute": ring.format(brute), "witness_rank": witness})
    return part


def verify_lemma1(n_max: int, rings: Sequence[RingSpec], jobs: int = 1,
                  cap: int = DEFAULT_PERM_CAP) -> list[VerificationReport]:
    """Every quadruple (S, T, U, V) of equal-size subsets of [n], all n <= n_max."""
    if not 1 <= n_max <= LEMMA1_MAX_N:
        raise ValueError(f"n_max must lie in [1, {LEMMA1_MAX_N}], got {n_max}")
    if n_max > cap:
        raise ValueError(f"n_max = {n_max} exceeds the permutation cap {cap}")
    reports = []
    for ring in rings:
        started = time.perf_counter()
        tasks = []
        for n in range(1, n_max + 1):
            for k in range(n + 1):
                m = comb(n, k)
                step = max(1, -(-m // max(1, jobs)))
                tasks.extend((ring, n, k, lo, min(m, lo + step), cap) for lo in range(0, m, step))
        reports.append(_collect("lemma1", ring, run_tasks(_lemma1_chunk, tasks, jobs), started))
    return reports


# -- random instance generation ---------------------------------------------------


def _stream(*parts: Any) -> random.Random:
    return random.Random(":".join(str(p) for p in parts))


def _int_grid(rnd: random.Random, rows: int, cols: int) -> list[list[int]]:
    return [[rnd.randint(-ENTRY_RANGE, ENTRY_RANGE) for _ in range(cols)] for _ in range(rows)]


def _subset(rnd: random.Random, n: int, k: int) -> list[int]:
    return sorted(rnd.sample(range(1, n + 1), k))


def tuple_trial_data(seed: int, dims: Sequence[int], trial: int) -> dict:
    """Integer data for one tuple-product trial; ring independent.

    Even trials share one size k across the cycle. Odd trials draw each k_j
    independently and, when the cycle allows it, force a mismatch so the
    vanishing case is always exercised.
    """
    rnd = _stream("lemma3", seed, ",".join(map(str, dims)), trial)
    d = len(dims)
    kmax = [min(dims[j], dims[(j + 1) % d]) for j in range(d)]
    if trial % 2 == 0 or d == 1:
        k0 = rnd.randint(0, min(kmax))
        ks = [k0] * d
    else:
        ks = [rnd.randint(0, m) for m in kmax]
        if len(set(ks)) == 1:
            j = rnd.randrange(d)
            alternatives = [v for v in range(kmax[j] + 1) if v != ks[j]]
            if alternatives:
                ks[j] = rnd.choice(alternatives)
    p = [rnd.randint(max(1, ks[j]), 3) for j in range(d)]
    r = [rnd.randint(max(1, ks[j]), 3) for j in range(d)]
    return {
        "A": [_int_grid(rnd, dims[j], dims[(j + 1) % d]) for j in range(d)],
        "B": [_int_grid(rnd, p[j], dims[j]) for j in range(d)],
        "C": [_int_grid(rnd, dims[(j + 1) % d], r[j]) for j in range(d)],
        "X": [_subset(rnd, p[j], ks[j]) for j in range(d)],
        "Y": [_subset(rnd, r[j], ks[j]) for j in range(d)],
    }


def charpoly_trial_data(seed: int, dims: Sequence[int], trial: int) -> dict:
    rnd = _stream("corollary", seed, ",".join(map(str, dims)), trial)
    d = len(dims)
    return {
        "A": [_int_grid(rnd, dims[j], dims[(j + 1) % d]) for j in range(d)],
        "D": [_int_grid(rnd, dims[j], dims[(j + 1) % d]) for j in range(d)],
    }


def realize(data: dict, ring: RingSpec) -> CycleConfig:
    """Embed integer trial data into ``ring``."""
    mats = {name: [ExactMatrix.from_rows(ring, g) for g in data[name]]
            for name in ("A", "B", "C", "D") if name in data}
    if "X" in data:
        mats["X"] = [IndexSet(tuple(x), b.rows) for x, b in zip(data["X"], mats["B"])]
        mats["Y"] = [IndexSet(tuple(y), c.cols) for y, c in zip(data["Y"], mats["C"])]
    return CycleConfig(ring, **mats)


def all_shapes(d: int, max_dim: int) -> list[tuple[int, ...]]:
    return list(product(range(1, max_dim + 1), repeat=d))


# -- tuple products ---------------------------------------------------------------


def _lemma3_task(task: tuple) -> VerificationReport:
    ring, dims, seed, trial, perm_cap, sign_cap = task
    cfg = realize(tuple_trial_data(seed, dims, trial), ring)
    part = VerificationReport("lemma3", ring)
    closed = tuple_product_sum_closed(cfg)
    brute, witness = tuple_product_terms(cfg, perm_cap=perm_cap, sign_cap=sign_cap)
    ok = closed == brute
    part.record(ok, None if ok else {
        "instance": cfg.to_json(), "closed": ring.format(closed),
        "brute": ring.format(brute), "witness_rank": witness})
    return part


def _check_shapes(shapes: Sequence[Sequence[int]], perm_cap: int, sign_cap: int) -> None:
    for dims in shapes:
        if not dims or min(dims) < 1:
            raise ValueError(f"dimensions must be positive, got {list(dims)}")
        if max(dims) > perm_cap:
            raise ValueError(f"dimension {max(dims)} exceeds the permutation cap {perm_cap}")
        if sum(dims) > sign_cap:
            raise ValueError(f"shape {list(dims)} needs {sum(dims)} sign bits; cap is {sign_cap}")


def verify_lemma3(shapes: Sequence[Sequence[int]], trials: int, seed: int,
                  rings: Sequence[RingSpec], jobs: int = 1,
                  perm_cap: int = DEFAULT_PERM_CAP,
                  sign_cap: int = DEFAULT_SIGN_CAP) -> list[VerificationReport]:
    _check_shapes(shapes, perm_cap, sign_cap)
    reports = []
    for ring in rings:
        started = time.perf_counter()
        tasks = [(ring, tuple(dims), seed, t, perm_cap, sign_cap)
                 for dims in shapes for t in range(trials)]
        reports.append(_collect("lemma3", ring, run_tasks(_lemma3_task, tasks, jobs), started))
    return reports


# -- characteristic polynomial sums -----------------------------------------------


def _corollary_task(task: tuple) -> VerificationReport:
    ring, dims, seed, trial, perm_cap, sign_cap = task
    cfg = realize(charpoly_trial_data(seed, dims, trial), ring)
    part = VerificationReport("corollary", ring)
    rep = compare_charpoly_sums(cfg, perm_cap=perm_cap, sign_cap=sign_cap)
    fmt = ring.format
    part.record(rep.ok, None if rep.ok else {
        "instance": cfg.to_json(),
        "closed": [fmt(c) for c in rep.r_closed],
        "brute": [fmt(c) for c in rep.r_brute],
        "match": rep.match,
        "witness_rank": next((w for w, m in zip(rep.witnesses, rep.match) if not m), None)})
    return part


def verify_corollary(shapes: Sequence[Sequence[int]], trials: int, seed: int,
                     rings: Sequence[RingSpec], jobs: int = 1,
                     perm_cap: int = DEFAULT_PERM_CAP,
                     sign_cap: int = DEFAULT_SIGN_CAP) -> list[VerificationReport]:
    _check_shapes(shapes, perm_cap, sign_cap)
    reports = []
    for ring in rings:
        started = time.perf_counter()
        tasks = [(ring, tuple(dims), seed, t, perm_cap, sign_cap)
                 for dims in shapes for t in range(trials)]
        reports.append(_collect("corollary", ring, run_tasks(_corollary_task, tasks, jobs), started))
    return reports


# -- matrix kernels -----------------------------------------------------------------

KERNEL_SUITES = ("cauchy_binet", "compound_multiplicativity", "charpoly_consistency",
                 "sum_expansion")


def _rand_matrix(rnd: random.Random, ring: RingSpec, rows: int, cols: int) -> ExactMatrix:
    return ExactMatrix.from_rows(ring, _int_grid(rnd, rows, cols))


def _kernel_cauchy_binet(ring: RingSpec, seed: int) -> VerificationReport:
    rnd = _stream("cauchy_binet", seed)
    rep = VerificationReport("cauchy_binet", ring)
    for _ in range(100):
        m, n, p = rnd.randint(1, 4), rnd.randint(1, 4), rnd.randint(1, 4)
        A, B = _rand_matrix(rnd, ring, m, n), _rand_matrix(rnd, ring, n, p)
        k = rnd.randint(0, min(m, p))
        S, T = _subset(rnd, m, k), _subset(rnd, p, k)
        claim, direct = minor_of_product(A, B, S, T), minor(A @ B, S, T)
        rep.record(claim == direct, {"A": A.to_json(), "B": B.to_json(), "S": S, "T": T,
                                     "claim": ring.format(claim), "oracle": ring.format(direct)})
    return rep


def _kernel_compound(ring: RingSpec, seed: int) -> VerificationReport:
    rnd = _stream("compound", seed)
    rep = VerificationReport("compound_multiplicativity", ring)
    for n in range(1, 5):
        for k in range(n + 1):
            for _ in range(3):
                A, B = _rand_matrix(rnd, ring, n, n), _rand_matrix(rnd, ring, n, n)
                lhs, rhs = compound(A @ B, k), compound(A, k) @ compound(B, k)
                rep.record(lhs == rhs, {"A": A.to_json(), "B": B.to_json(), "k": k})
    return rep


def _kernel_charpoly(ring: RingSpec, seed: int) -> VerificationReport:
    rnd = _stream("charpoly", seed)
    rep = VerificationReport("charpoly_consistency", ring)
    for n in range(1, 5):
        for _ in range(5):
            A = _rand_matrix(rnd, ring, n, n)
            coeffs = charpoly_coeffs(A).top_down(n)
            sums = [principal_minor_sum(A, i) for i in range(n + 1)]
            rep.record(coeffs == sums, {"A": A.to_json(),
                                        "charpoly": [ring.format(c) for c in coeffs],
                                        "principal_minor_sums": [ring.format(c) for c in sums]})
    return rep


def _kernel_sum_expansion(ring: RingSpec, seed: int) -> VerificationReport:
    rnd = _stream("sum_expansion", seed)
    rep = VerificationReport("sum_expansion", ring)
    for _ in range(100):
        rows, cols = rnd.randint(1, 4), rnd.randint(1, 4)
        A, D = _rand_matrix(rnd, ring, rows, cols), _rand_matrix(rnd, ring, rows, cols)
        k = rnd.randint(0, min(3, rows, cols))
        S, T = _subset(rnd, rows, k), _subset(rnd, cols, k)
        claim, direct = minor_of_sum_expansion(A, D, S, T), minor(A + D, S, T)
        rep.record(claim == direct, {"A": A.to_json(), "D": D.to_json(), "S": S, "T": T,
                                     "claim": ring.format(claim), "oracle": ring.format(direct)})
    return rep


_KERNELS = {
    "cauchy_binet": _kernel_cauchy_binet,
    "compound_multiplicativity": _kernel_compound,
    "charpoly_consistency": _kernel_charpoly,
    "sum_expansion": _kernel_sum_expansion,
}


def _kernel_task(task: tuple) -> VerificationReport:
    name, ring, seed = task
    started = time.perf_counter()
    rep = _KERNELS[name](ring, seed)
    rep.wall_time_ms = (time.perf_counter() - started) * 1000
    return rep


def verify_kernels(rings: Sequence[RingSpec], seed: int = 0,
                   jobs: int = 1) -> list[VerificationReport]:
    tasks = [(name, ring, seed) for ring in rings for name in KERNEL_SUITES]
    return run_tasks(_kernel_task, tasks, jobs)
