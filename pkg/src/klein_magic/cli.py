"""Command-line interface: ``klein-magic <command> ...``.

Exit status is 0 on success, 1 when a labeling fails a check, and 2 for
usage errors or unmet preconditions.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from typing import Any, Callable, Sequence

from klein_magic.constructions import construct, construct_even, construct_odd
from klein_magic.counting import count_m4, decompose_single_sum, nkbl_lower_bound, pms, predicted_path_sizes, tau
from klein_magic.documents import (
    DocumentError,
    dumps_json,
    labeling_to_csv,
    labeling_to_document,
    load_labeling,
    load_partition,
)
from klein_magic.enumeration import BudgetExceeded, census
from klein_magic.families import (
    FamilyId,
    family_general,
    family_n6_diagonal,
    family_n6_middle,
    family_palindromic,
)
from klein_magic.grid import GridDims, GridError
from klein_magic.labeling import Labeling, LabelingError, is_equatorially_balanced, verify
from klein_magic.search_graph import (
    PartitionError,
    PathPartition,
    admissible_path_partitions,
    build,
    standard_labeling,
)
from klein_magic.symmetry import canonical, group_elements

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

GRID_FAMILIES = ("auto", "prop33", "prop34")
PARTITION_FAMILIES = ("n6_middle", "n6_diagonal", *(f.value for f in FamilyId))


class UsageError(Exception):
    pass


def int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _params(items: Sequence[str] | None) -> dict[str, str]:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--params expects key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def _csv(rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _emit(args: argparse.Namespace, doc: Any, rows: Callable[[], Sequence[Sequence[Any]]] | str) -> None:
    """Write ``doc`` as JSON, or ``rows`` (text, or a thunk giving CSV rows)."""
    if args.format == "json":
        sys.stdout.write(dumps_json(doc))
    elif isinstance(rows, str):
        sys.stdout.write(rows)
    else:
        sys.stdout.write(_csv(rows()))


def _emit_labeling(args: argparse.Namespace, x: Labeling, metadata: dict[str, Any]) -> None:
    _emit(args, labeling_to_document(x, metadata), labeling_to_csv(x))


# -- commands -----------------------------------------------------------------------


def _family_partition(m: int, n: int, family: str, params: dict[str, str]) -> PathPartition:
    if family == "n6_middle":
        if n != 6:
            raise UsageError("family n6_middle lives on m x 6 grids")
        return family_n6_middle(m, int(params.get("b", 3 * m + 1)))
    if family == "n6_diagonal":
        if n != 6:
            raise UsageError("family n6_diagonal lives on m x 6 grids")
        return family_n6_diagonal(m, int(params.get("k", 1)))
    fam = FamilyId(family)
    if fam.group == "P74":
        return family_palindromic(m, n, fam)
    rho = int_list(params["rho"]) if "rho" in params else (1,) * m
    return family_general(m, n, fam, rho)


def cmd_construct(args: argparse.Namespace) -> int:
    params = _params(args.params)
    m, n = args.m, args.n
    meta: dict[str, Any] = {"generator": args.family}
    if args.family in GRID_FAMILIES:
        builder = {"auto": construct, "prop33": construct_odd, "prop34": construct_even}[args.family]
        x = builder(m, n)
    else:
        k = _family_partition(m, n, args.family, params)
        alpha = int_list(params["alpha"]) if "alpha" in params else tuple(range(1, m + 1))
        rho = (int_list(params["rho"]) if "rho" in params else (1,) * m) if k.is_palindromic else None
        x = standard_labeling(k, alpha, rho)
        meta.update(params=params, sequence=list(k.seq))
    meta["verified"] = verify(x).is_magic
    _emit_labeling(args, x, meta)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        x = load_labeling(args.file)
    except LabelingError as exc:
        problem = str(exc)
        _emit(args, {"is_magic": False, "structural_error": problem}, lambda: [["structural_error", problem]])
        return EXIT_FAIL
    report = verify(x)
    violations = [{"face": [list(c) for c in face], "sum": total} for face, total in report.violations]
    doc = {"m": x.dims.m, "n": x.dims.n, "is_magic": report.is_magic, "magic_value": report.magic_value, "violations": violations}
    _emit(
        args,
        doc,
        lambda: [["is_magic", report.is_magic], ["magic_value", report.magic_value]]
        + [["violation", *(f"{c.i}:{c.j}" for c in face), total] for face, total in report.violations],
    )
    return EXIT_OK if report.is_magic else EXIT_FAIL


def cmd_balance(args: argparse.Namespace) -> int:
    x = load_labeling(args.file)
    ok = is_equatorially_balanced(x)
    _emit(args, {"m": x.dims.m, "n": x.dims.n, "balanced": ok}, [["balanced", ok]])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_orbit(args: argparse.Namespace) -> int:
    from klein_magic.symmetry import apply

    x = load_labeling(args.file)
    members = [(str(e), apply(e, x)) for e in group_elements(x.dims)]
    doc = {"m": x.dims.m, "n": x.dims.n, "size": len({y for _, y in members}), "members": [{"element": name, "rows": y.rows} for name, y in members]}
    _emit(args, doc, lambda: [[name, r, *row] for name, y in members for r, row in enumerate(y.rows, start=1)])
    return EXIT_OK


def cmd_canonical(args: argparse.Namespace) -> int:
    x = load_labeling(args.file)
    _emit_labeling(args, canonical(x), {"generator": "canonical"})
    return EXIT_OK


def cmd_partition(args: argparse.Namespace) -> int:
    dims = GridDims(args.m, args.n)
    dims.require_odd_m()
    if args.family:
        parts = [_family_partition(args.m, args.n, args.family, _params(args.params))]
        seq = parts[0].seq
    elif args.seq is not None:
        seq = args.seq
        parts = list(admissible_path_partitions(build(dims, seq)))
    else:
        raise UsageError("partition needs --seq or --family")
    doc = {
        "m": dims.m,
        "n": dims.n,
        "seq": list(seq),
        "palindromic": seq == seq[::-1],
        "count": len(parts),
        "partitions": [k.label_sequences for k in parts],
    }
    _emit(args, doc, lambda: [[i, p, *path] for i, k in enumerate(parts, start=1) for p, path in enumerate(k.label_sequences, start=1)])
    return EXIT_OK


def cmd_standard(args: argparse.Namespace) -> int:
    k = load_partition(args.partition, args.index)
    rho = args.rho
    if rho is None and k.is_palindromic:
        raise UsageError("the sequence is a palindrome, so --rho is required")
    x = standard_labeling(k, args.alpha, rho)
    meta = {"generator": "standard", "sequence": list(k.seq), "alpha": list(args.alpha), "verified": verify(x).is_magic}
    if rho is not None:
        meta["rho"] = list(rho)
    _emit_labeling(args, x, meta)
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    d = decompose_single_sum(args.m, args.a)
    doc: dict[str, Any] = {
        "m": d.m,
        "a": d.a,
        "k": d.k,
        "has_perfect_matching": d.has_perfect_matching,
        "paths": [list(p) for p in d.paths],
        "sizes": {str(s): c for s, c in sorted(d.sizes.items())},
    }
    if 1 <= d.k <= 2 * d.m:
        case, predicted = predicted_path_sizes(d.m, d.k)
        doc["case"] = case
        doc["predicted_sizes"] = {str(s): c for s, c in sorted(predicted.items())}
        doc["matches_prediction"] = predicted == d.sizes
    _emit(args, doc, lambda: [["has_perfect_matching", d.has_perfect_matching]] + [["path", *p] for p in d.paths])
    return EXIT_OK


def cmd_census(args: argparse.Namespace) -> int:
    dims = GridDims(args.m, args.n)
    c = census(dims, budget=args.budget, jobs=args.jobs, pin_one=args.pin_one)
    doc: dict[str, Any] = {
        "m": dims.m,
        "n": dims.n,
        "total_raw": c.total_raw,
        "classes": c.classes,
        "orbit_sizes": {str(s): k for s, k in sorted(c.orbit_sizes.items())},
        "by_sequence": [{"seq": list(s), "classes": k} for s, k in c.by_sequence.items()],
    }
    if args.representatives:
        doc["representatives"] = [x.rows for x in c.representatives]
    _emit(
        args,
        doc,
        lambda: [["total_raw", c.total_raw], ["classes", c.classes]]
        + [["sequence", "-".join(map(str, s)), k] for s, k in c.by_sequence.items()],
    )
    return EXIT_OK


def cmd_count(args: argparse.Namespace) -> int:
    m, n = args.m, args.n
    if n == 4:
        value, kind = count_m4(m), "exact"
        doc = {"m": m, "n": 4, "kind": kind, "count": value, "tau": tau(m), "pms": sorted(pms(m))}
    else:
        value, kind = nkbl_lower_bound(m, n), "lower_bound"
        doc = {"m": m, "n": n, "kind": kind, "count": value}
    if args.format == "json":
        sys.stdout.write(dumps_json(doc))
    else:
        sys.stdout.write(f"{value}\n")
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="klein-magic", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "csv"), default="json", help="output encoding (default json)")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, fn: Callable[[argparse.Namespace], int], help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
        p.set_defaults(func=fn)
        return p

    p = command("construct", cmd_construct, "build a magic labeling")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=GRID_FAMILIES + PARTITION_FAMILIES, default="auto")
    p.add_argument("--params", action="append", metavar="KEY=VALUE", help="b, k, rho or alpha for partition families")

    for name, fn, text in (
        ("verify", cmd_verify, "check every face sum"),
        ("balance", cmd_balance, "check mirrored cells sum to mn + 1"),
        ("orbit", cmd_orbit, "list the images under every symmetry"),
        ("canonical", cmd_canonical, "least image under the symmetry group"),
    ):
        command(name, fn, text).add_argument("file")

    p = command("partition", cmd_partition, "list admissible path partitions")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seq", type=int_list)
    p.add_argument("--family", choices=PARTITION_FAMILIES)
    p.add_argument("--params", action="append", metavar="KEY=VALUE")

    p = command("standard", cmd_standard, "standard labeling of a path partition")
    p.add_argument("--partition", required=True, help="partition document or listing")
    p.add_argument("--index", type=int, default=1, help="entry of a listing, 1-based")
    p.add_argument("--alpha", type=int_list, required=True, help="row permutation, e.g. 1,3,2")
    p.add_argument("--rho", type=int_list, help="orientation per slot, e.g. 1,2,1")

    p = command("decompose", cmd_decompose, "path decomposition of G(a) for n = 4")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=int, required=True)

    p = command("census", cmd_census, "exhaustive count of magic labelings")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, help="largest number of cells to search")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--pin-one", action="store_true", help="fix label 1 to orbit representatives")
    p.add_argument("--representatives", action="store_true", help="include one labeling per class")

    p = command("count", cmd_count, "closed-form count (n = 4) or lower bound (n >= 6)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=4)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BrokenPipeError:
        # reader closed the pipe; silence the flush at interpreter exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except (UsageError, GridError, DocumentError, BudgetExceeded, PartitionError, ValueError, KeyError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"klein-magic {args.command}: {message}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
