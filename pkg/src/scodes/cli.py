"""
Command-line front end: bound queries with provenance trees, code
construction with automatic verification, code-file round-tripping,
best-bound tables, and the divisible-expansion helpers.

Code files (extension .scode) are line oriented, UTF-8, LF:

    SCODE 1
    q=<int> p=<int> e=<int> n=<int> k=<int> d=<int> count=<int> [mod=c0,...,ce]
    <k rows of n whitespace-separated integers in [0,q)>, blank line after
    each codeword; '#' starts a comment line.  Codewords are written in
    canonical order (sorted reduced-row-echelon generators).

Packing data files use the same format with an extra `part=<i>` comment
line opening each section.

Exit codes: 0 ok, 2 parameter error, 3 verification failure, 4 data-file
error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from .bounds import BoundEngine
from .constructions import (
    Cdc,
    DPacking,
    auto_cdc,
    block_inserting_I,
    block_inserting_II,
    coset_construction,
    combine,
    echelon_ferrers,
    find_parallelism,
    generalized_linkage,
    improved_linkage,
    lifted_mrd,
    linkage,
    load_packing,
    partial_spread,
    single_codeword,
    skeleton_greedy,
)
from .divisible import sharp_floor, sqr_expand
from .gfq import GF, field_create
from .rankmetric import RankCode, rect_mrd, restricted_rank_code, two_block_sumrank_code
from .spaces import MatGF, Subspace
from .verify import min_distance

PARAM_ERROR = 2
VERIFY_ERROR = 3
DATA_ERROR = 4


# -- code files ----------------------------------------------------------------


def write_code_file(path: str, code: Cdc) -> None:
    field = GF(code.q)
    lines = ["SCODE 1"]
    header = f"q={code.q} p={field.p} e={field.e} n={code.n} k={code.k} d={code.d} count={len(code.words)}"
    if field.e > 1:
        header += " mod=" + ",".join(str(c) for c in field.modulus)
    lines.append(header)
    for w in sorted(code.words, key=lambda s: s.rref.entries):
        for row in w.rref.entries:
            lines.append(" ".join(str(x) for x in row))
        lines.append("")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_header(line: str) -> dict:
    fields = {}
    for token in line.split():
        key, _, val = token.partition("=")
        fields[key] = val
    return fields


def read_code_file(path: str) -> Cdc:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read().splitlines()
    except OSError as exc:
        raise FileError(str(exc))
    lines = [l for l in raw if not l.startswith("#")]
    if not lines or lines[0].strip() != "SCODE 1":
        raise FileError(f"{path}: missing SCODE 1 magic")
    head = _parse_header(lines[1])
    try:
        q, p, e = int(head["q"]), int(head["p"]), int(head["e"])
        n, k, d, count = int(head["n"]), int(head["k"]), int(head["d"]), int(head["count"])
    except (KeyError, ValueError) as exc:
        raise FileError(f"{path}: bad header ({exc})")
    if p**e != q:
        raise FileError(f"{path}: q != p^e in header")
    if "mod" in head:
        field = field_create(p, e, [int(c) for c in head["mod"].split(",")])
    else:
        field = GF(q)
    words = []
    row_buf: list[list[int]] = []
    for line in lines[2:]:
        stripped = line.strip()
        if not stripped:
            continue
        row = [int(x) for x in stripped.split()]
        if len(row) != n or any(not 0 <= x < q for x in row):
            raise FileError(f"{path}: bad codeword row {stripped!r}")
        row_buf.append(row)
        if len(row_buf) == k:
            words.append(Subspace.from_matrix(MatGF(field, row_buf, n)))
            row_buf = []
    if row_buf:
        raise FileError(f"{path}: trailing incomplete codeword")
    if len(words) != count:
        raise FileError(f"{path}: header declares {count} codewords, found {len(words)}")
    if len(set(words)) != len(words):
        raise FileError(f"{path}: duplicate codewords")
    for w in words:
        if w.k != k:
            raise FileError(f"{path}: codeword of dimension {w.k}, expected {k}")
    return Cdc(q, n, k, d, tuple(words), ("file", (("path", path),)))


def read_packing_file(path: str, d_inner: int) -> DPacking:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read().splitlines()
    except OSError as exc:
        raise FileError(str(exc))
    if not raw or raw[0].strip() != "SCODE 1":
        raise FileError(f"{path}: missing SCODE 1 magic")
    head = _parse_header(raw[1])
    q, n, k = int(head["q"]), int(head["n"]), int(head["k"])
    field = GF(q)
    parts: list[list[Subspace]] = []
    row_buf: list[list[int]] = []
    for line in raw[2:]:
        stripped = line.strip()
        if stripped.startswith("#"):
            if stripped.lstrip("#").strip().startswith("part="):
                parts.append([])
            continue
        if not stripped:
            continue
        row_buf.append([int(x) for x in stripped.split()])
        if len(row_buf) == k:
            if not parts:
                raise FileError(f"{path}: codeword before any part marker")
            parts[-1].append(Subspace.from_matrix(MatGF(field, row_buf, n)))
            row_buf = []
    try:
        return load_packing(q, n, k, d_inner, parts)
    except ValueError as exc:
        raise FileError(f"{path}: {exc}")


class FileError(Exception):
    pass


def _packing_for(q: int, n: int, k: int, d_inner: int) -> DPacking:
    root = os.environ.get("SCODES_PACKINGS")
    if root:
        cand = os.path.join(root, f"parallelism_q{q}_n{n}_k{k}.scode")
        if os.path.exists(cand):
            return read_packing_file(cand, d_inner)
    if (q, n, k) == (2, 4, 2):
        return find_parallelism(q, n, k)
    raise FileError(
        f"no parallelism available for (q,n,k)=({q},{n},{k}); set SCODES_PACKINGS"
    )


# -- construction dispatch -------------------------------------------------------


def _build(name: str, q: int, n: int, k: int, d: int, split: Optional[int],
           skeleton: Optional[str]) -> Cdc:
    if name == "lmrd":
        return lifted_mrd(q, n, k, d)
    if name == "linkage":
        n1 = split if split else k
        n2 = n - n1
        C1 = auto_cdc(q, n1, d, k)
        C2 = auto_cdc(q, n2, d, k)
        return linkage(C1, C2, rect_mrd(q, k, n2, d // 2))
    if name == "improved-linkage":
        n1 = split if split else k
        n2 = n - n1
        C1 = auto_cdc(q, n1, d, k)
        C2 = auto_cdc(q, n2 + k - d // 2, d, k)
        return improved_linkage(C1, C2, rect_mrd(q, k, n2, d // 2))
    if name == "gen-linkage":
        n1 = split if split else n // 2
        n2 = n - n1
        C1 = auto_cdc(q, n1, d, k)
        C2 = auto_cdc(q, n2, d, k)
        M1 = rect_mrd(q, k, n2, d // 2)
        M2 = restricted_rank_code(q, k, n1, d // 2, range(0, k - d // 2 + 1))
        return generalized_linkage(C1, C2, M1, M2)
    if name == "ef":
        if skeleton:
            vectors = [tuple(int(c) for c in v) for v in skeleton.split(",")]
            return echelon_ferrers(vectors, q, d)
        return echelon_ferrers(skeleton_greedy(q, n, k, d), q, d)
    if name == "spread":
        return partial_spread(q, n, k)
    if name == "coset":
        par = _packing_for(q, 4, 2, 4)
        return coset_construction(par, par, rect_mrd(q, 2, 2, 2), 2, 2)
    if name == "insert1":
        C1 = single_codeword(q, 3, 3, 6, position="left")
        zero = RankCode(GF(q), 3, 3, 3, (MatGF.zero(GF(q), 3, 3),))
        from .rankmetric import mrd_coset_partition

        pack = mrd_coset_partition(q, 3, 3, 2, 3)
        return block_inserting_I((3, 3, 3, 3), 2, 4, C1, C1, zero, zero, pack, pack)
    if name == "insert2":
        C1 = single_codeword(q, 3, 3, 6, position="left")
        return block_inserting_II((3, 3, 3, 3), 6, two_block_sumrank_code(q), C1, C1)
    if name == "assemble":
        par = _packing_for(q, 4, 2, 4)
        w1 = lifted_mrd(q, 8, 4, 4)
        w2 = coset_construction(par, par, rect_mrd(q, 2, 2, 2), 2, 2)
        w3 = single_codeword(q, 8, 4, 4, position="right")
        return combine([w1, w2, w3])
    raise ValueError(f"unknown construction {name!r}")


# -- subcommands ------------------------------------------------------------------


def cmd_bound(args) -> int:
    engine = BoundEngine(use_facts=not args.no_facts)
    try:
        if args.dir == "upper":
            res = engine.best_upper(args.q, args.n, args.d, args.k)
        else:
            res = engine.best_lower(args.q, args.n, args.d, args.k)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARAM_ERROR
    print(res.value)
    if args.explain:
        print(res.render())
    return 0


def cmd_construct(args) -> int:
    try:
        code = _build(args.name, args.q, args.n or 0, args.k or 0, args.d or 0,
                      args.split, args.skeleton)
    except FileError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARAM_ERROR
    exact = len(code.words) <= args.verify_cap
    report = min_distance(code, "exact" if exact else "sampled", seed=0)
    if not report.ok():
        print(f"verification FAILED: min distance {report.min_distance} < declared {code.d}",
              file=sys.stderr)
        return VERIFY_ERROR
    write_code_file(args.out, code)
    mode = "exact scan" if exact else f"sampled scan (seed {report.seed}, non-certifying)"
    print(f"{len(code.words)} codewords in GF({code.q})^{code.n}, declared distance {code.d}; "
          f"verified by {mode}; wrote {args.out}")
    return 0


def cmd_verify(args) -> int:
    try:
        code = read_code_file(args.file)
    except FileError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return DATA_ERROR
    exact = len(code.words) <= args.verify_cap and not args.sampled
    report = min_distance(code, "exact" if exact else "sampled",
                          sample_count=args.sampled or 20000, seed=args.seed)
    expected = args.expect_d if args.expect_d is not None else code.d
    dist = report.min_distance
    print(f"{len(code.words)} codewords; computed min distance {dist} "
          f"({report.mode}{'' if report.certifies else ', non-certifying'})")
    if dist != "infinite" and dist < expected:
        print(f"FAIL: {dist} < expected {expected}", file=sys.stderr)
        return VERIFY_ERROR
    return 0


def cmd_table(args) -> int:
    engine = BoundEngine(use_facts=not args.no_facts)
    rows = []
    rules = {}
    for n in range(max(4, args.d), args.n_max + 1):
        for k in range(2, n // 2 + 1):
            if args.d > 2 * k:
                continue
            lo, hi = engine.bounds(args.q, n, args.d, k)
            for r in (lo, hi):
                rules.setdefault(r.rule, r.citation)
            rows.append((n, k, lo, hi))
    if args.format == "csv":
        print("n,k,lower,lower_rule,upper,upper_rule")
        for n, k, lo, hi in rows:
            print(f"{n},{k},{lo.value},{lo.rule},{hi.value},{hi.rule}")
    else:
        print(f"| n | k | lower | upper | rules |")
        print("|---|---|---|---|---|")
        for n, k, lo, hi in rows:
            print(f"| {n} | {k} | {lo.value} | {hi.value} | {lo.rule} / {hi.rule} |")
        print()
        print("Rules used:")
        for rule, cite in sorted(rules.items()):
            print(f"- {rule}: {cite}" if cite else f"- {rule}")
    return 0


def cmd_expand(args) -> int:
    exp = sqr_expand(args.value, args.q, args.r)
    print(" ".join(str(c) for c in exp.coefficients))
    return 0


def cmd_sharpfloor(args) -> int:
    print(sharp_floor(args.a, args.b, args.q, args.r))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scodes",
                                     description="subspace code constructions and bounds")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="best known bound with provenance")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dir", choices=("upper", "lower"), required=True)
    p.add_argument("--explain", action="store_true")
    p.add_argument("--no-facts", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("construct", help="build a code and write it to a file")
    p.add_argument("name", choices=("lmrd", "linkage", "improved-linkage", "gen-linkage",
                                    "ef", "spread", "coset", "insert1", "insert2", "assemble"))
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--split", type=int, help="width of the first column block")
    p.add_argument("--skeleton", help="comma-separated pivot vectors for ef")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--verify-cap", type=int, default=20000)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="recompute a code file's min distance")
    p.add_argument("file")
    p.add_argument("--expect-d", type=int)
    p.add_argument("--sampled", type=int, help="sample this many pairs instead of exact scan")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--verify-cap", type=int, default=20000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="best-bound table")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--format", choices=("md", "csv"), default="md")
    p.add_argument("--no-facts", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("expand", help="base-sequence digit expansion")
    p.add_argument("--value", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("sharpfloor", help="sharpened floor bracket")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_sharpfloor)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return PARAM_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARAM_ERROR


if __name__ == "__main__":
    sys.exit(main())
