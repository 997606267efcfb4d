"""Command-line verification harness.

Exit status: 0 when every suite passes, 1 when any counterexample was found,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Sequence

from . import harness
from .exact_matrix import (
    ExactMatrix,
    IndexSet,
    MatrixError,
    charpoly_coeffs,
    compound,
    determinant,
    minor,
    minor_of_product,
    minor_of_sum_expansion,
    principal_minor_sum,
)
from .groups import DEFAULT_PERM_CAP, DEFAULT_SIGN_CAP, EnumerationCapError
from .invariance import (
    CycleConfig,
    InstanceError,
    PairSumInstance,
    charpoly_sum_brute,
    charpoly_sum_closed,
    perm_pair_sum_brute,
    perm_pair_sum_closed,
    s_stat,
    tuple_product_sum_brute,
    tuple_product_sum_closed,
)
from .rings import RingError, RingSpec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ring_list(values: list[str] | None, default: Sequence[str]) -> list[RingSpec]:
    if values is None:
        values = list(default)
    names = [part for v in values for part in v.split(",") if part.strip()]
    if not names:
        raise UsageError("at least one ring is required (--ring int|rat|mod:<m>)")
    try:
        return [RingSpec.parse(name) for name in names]
    except RingError as exc:
        raise UsageError(str(exc)) from None


def _dims(text: str) -> list[int]:
    try:
        dims = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension list {text!r}") from None
    if not dims or min(dims) < 1:
        raise argparse.ArgumentTypeError("dimensions must be positive integers")
    return dims


def _shapes(args: argparse.Namespace) -> list[list[int]]:
    if args.max_dim is not None:
        if args.d is None:
            raise UsageError("--max-dim needs --d")
        if args.dims is not None:
            raise UsageError("give either --dims or --max-dim, not both")
        return [list(s) for s in harness.all_shapes(args.d, args.max_dim)]
    dims = args.dims or [2, 2]
    if args.d is not None and args.d != len(dims):
        raise UsageError(f"--d {args.d} disagrees with {len(dims)} dimensions in --dims")
    return [dims]


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _finish(command: str, params: dict, reports: list, args: argparse.Namespace) -> int:
    failed = sum(r.failed for r in reports)
    payload = {
        "command": command,
        "parameters": params,
        "reports": [r.to_json(timings=args.timings) for r in reports],
        "instances": sum(r.instances for r in reports),
        "failed": failed,
    }
    _emit(payload, args.out)
    for r in reports:
        status = "ok" if r.failed == 0 else "FAIL"
        print(f"{r.suite:<28} {str(r.ring):<8} {r.passed}/{r.instances} passed "
              f"[{status}] {r.wall_time_ms:.0f} ms", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_verify_lemma1(args: argparse.Namespace) -> int:
    rings = _ring_list(args.ring, ["int", "mod:5", "mod:2"])
    if not 1 <= args.n_max <= harness.LEMMA1_MAX_N:
        raise UsageError(f"--n-max must lie in [1, {harness.LEMMA1_MAX_N}]")
    if args.n_max > args.cap_perms:
        raise UsageError(f"--n-max {args.n_max} exceeds --cap-perms {args.cap_perms}")
    reports = harness.verify_lemma1(args.n_max, rings, jobs=args.jobs, cap=args.cap_perms)
    params = {"n_max": args.n_max, "rings": [r.to_json() for r in rings]}
    return _finish("verify-lemma1", params, reports, args)


def _cycle_command(args: argparse.Namespace, name: str, default_rings: Sequence[str],
                   runner: Callable) -> int:
    rings = _ring_list(args.ring, default_rings)
    shapes = _shapes(args)
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    try:
        harness._check_shapes(shapes, args.cap_perms, args.cap_signs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    reports = runner(shapes, args.trials, args.seed, rings, jobs=args.jobs,
                     perm_cap=args.cap_perms, sign_cap=args.cap_signs)
    params = {"shapes": shapes, "trials": args.trials, "seed": args.seed,
              "rings": [r.to_json() for r in rings]}
    return _finish(name, params, reports, args)


def cmd_verify_lemma3(args: argparse.Namespace) -> int:
    return _cycle_command(args, "verify-lemma3", ["int", "mod:7", "mod:2"], harness.verify_lemma3)


def cmd_verify_corollary(args: argparse.Namespace) -> int:
    return _cycle_command(args, "verify-corollary", ["int", "mod:7"], harness.verify_corollary)


def cmd_verify_kernels(args: argparse.Namespace) -> int:
    rings = _ring_list(args.ring, ["int", "rat", "mod:6", "mod:7", "mod:2"])
    reports = harness.verify_kernels(rings, seed=args.seed, jobs=args.jobs)
    params = {"seed": args.seed, "rings": [r.to_json() for r in rings]}
    return _finish("verify-kernels", params, reports, args)


# -- eval ---------------------------------------------------------------------------


def _field(obj: dict, key: str) -> Any:
    if not isinstance(obj, dict):
        raise InstanceError("input must be a JSON object")
    if key not in obj:
        raise InstanceError(f"missing field {key!r}")
    return obj[key]


def _matrix(obj: dict, key: str) -> ExactMatrix:
    try:
        return ExactMatrix.from_json(_field(obj, key))
    except (MatrixError, RingError) as exc:
        raise InstanceError(f"field {key!r}: {exc}") from None


def _index_set(obj: dict, key: str, universe: int) -> IndexSet:
    try:
        return IndexSet.from_json(_field(obj, key), universe)
    except MatrixError as exc:
        raise InstanceError(f"field {key!r}: {exc}") from None


def _int_field(obj: dict, key: str) -> int:
    val = _field(obj, key)
    if type(val) is not int:
        raise InstanceError(f"field {key!r} must be an integer")
    return val


def _scalar(ring: RingSpec, value) -> str:
    return ring.format(value)


def _eval_minor(obj):
    A = _matrix(obj, "matrix")
    return _scalar(A.ring, minor(A, _index_set(obj, "S", A.rows), _index_set(obj, "T", A.cols)))


def _eval_minor_of_product(obj):
    A, B = _matrix(obj, "A"), _matrix(obj, "B")
    S, T = _index_set(obj, "S", A.rows), _index_set(obj, "T", B.cols)
    return _scalar(A.ring, minor_of_product(A, B, S, T))


def _eval_minor_of_sum_expansion(obj):
    A, D = _matrix(obj, "A"), _matrix(obj, "D")
    S, T = _index_set(obj, "S", A.rows), _index_set(obj, "T", A.cols)
    return _scalar(A.ring, minor_of_sum_expansion(A, D, S, T))


def _eval_determinant(obj):
    A = _matrix(obj, "matrix")
    return _scalar(A.ring, determinant(A))


def _eval_compound(obj):
    return compound(_matrix(obj, "matrix"), _int_field(obj, "k")).to_json()


def _eval_principal_minor_sum(obj):
    A = _matrix(obj, "matrix")
    return _scalar(A.ring, principal_minor_sum(A, _int_field(obj, "k")))


def _eval_charpoly(obj):
    return charpoly_coeffs(_matrix(obj, "matrix")).to_json()


def _eval_s_stat(obj):
    n = _int_field(obj, "n")
    return str(s_stat(_index_set(obj, "X", n), _index_set(obj, "Y", n)))


def _pair(fn):
    def run(obj):
        inst = PairSumInstance.from_json(obj)
        return _scalar(inst.ring, fn(inst))
    return run


def _cycle_scalar(fn):
    def run(obj):
        cfg = CycleConfig.from_json(obj)
        return _scalar(cfg.ring, fn(cfg))
    return run


def _cycle_poly(fn):
    def run(obj):
        return fn(CycleConfig.from_json(obj)).to_json()
    return run


EVAL_OPS: dict[str, Callable[[Any], Any]] = {
    "determinant": _eval_determinant,
    "minor": _eval_minor,
    "minor_of_product": _eval_minor_of_product,
    "compound": _eval_compound,
    "principal_minor_sum": _eval_principal_minor_sum,
    "charpoly_coeffs": _eval_charpoly,
    "minor_of_sum_expansion": _eval_minor_of_sum_expansion,
    "s_stat": _eval_s_stat,
    "perm_pair_sum_closed": _pair(perm_pair_sum_closed),
    "perm_pair_sum_brute": _pair(perm_pair_sum_brute),
    "tuple_product_sum_closed": _cycle_scalar(tuple_product_sum_closed),
    "tuple_product_sum_brute": _cycle_scalar(tuple_product_sum_brute),
    "charpoly_sum_closed": _cycle_poly(charpoly_sum_closed),
    "charpoly_sum_brute": _cycle_poly(charpoly_sum_brute),
}


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.file}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        result = EVAL_OPS[args.op](obj)
    except (InstanceError, MatrixError, RingError) as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    text = result if isinstance(result, str) else json.dumps(result)
    if args.out is None or args.out == "-":
        print(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return EXIT_OK


# -- parser -------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minorsums",
        description="Check closed forms for minor sums over permutation and sign matrices "
                    "against exhaustive enumeration.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", action="append", metavar="RING",
                        help="int, rat or mod:<m>; repeatable or comma separated")
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    common.add_argument("--out", default=None, help="report path (default: stdout)")
    common.add_argument("--cap-perms", type=_positive, default=DEFAULT_PERM_CAP,
                        help="largest permutation degree to enumerate")
    common.add_argument("--cap-signs", type=_positive, default=DEFAULT_SIGN_CAP,
                        help="largest number of sign bits per instance")
    common.add_argument("--timings", action="store_true",
                        help="include wall times in the report (breaks byte-identical output)")

    p = sub.add_parser("verify-lemma1", parents=[common],
                       help="pair sums over permutation matrices, all quadruples")
    p.add_argument("--n-max", type=_positive, default=5)
    p.set_defaults(func=cmd_verify_lemma1)

    for name, func, trials, text in (
            ("verify-lemma3", cmd_verify_lemma3, 20, "cyclic minor products over signed permutations"),
            ("verify-corollary", cmd_verify_corollary, 10, "summed characteristic polynomials")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--d", type=_positive, default=None, help="cycle length")
        p.add_argument("--dims", type=_dims, default=None, help="comma-separated n_j")
        p.add_argument("--max-dim", type=_positive, default=None,
                       help="sweep every shape with 1 <= n_j <= MAX_DIM")
        p.add_argument("--trials", type=int, default=trials)
        p.set_defaults(func=func)

    p = sub.add_parser("verify-kernels", parents=[common],
                       help="Cauchy-Binet, compound, charpoly and sum-expansion properties")
    p.set_defaults(func=cmd_verify_kernels)

    p = sub.add_parser("eval", help="evaluate one operation on a JSON instance")
    p.add_argument("--file", required=True, help="instance JSON ('-' for stdin)")
    p.add_argument("--op", required=True, choices=sorted(EVAL_OPS))
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, EnumerationCapError) as exc:
        print(f"minorsums {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
