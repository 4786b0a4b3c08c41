"""Command-line surface: dimensions, bases, verification suites against
the published tables, and map application.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 internal
invariant violation.  Output is deterministic; identical invocations
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .engine import HitEngine
from .errors import HitForgeError, InvariantViolationError
from .homomorphisms import (
    IndexPair,
    b1_basis,
    b2_basis,
    b3_basis,
    f_sub,
    kameko_down_poly,
    linear_sub,
    p_proj,
    phi,
    phi_families,
    psi_up,
)
from .poly_core import parse_monomial, parse_polynomial
from .steenrod import sq

ORDER_NAME = "omega-sigma-left-lex-v1"

# (row template, s, n, expected dim) for every cell of the published
# (QP_4)_n table with n <= 46
QP4_TABLE_CELLS = [
    ("2^(s+1)-3", 1, 1, 4),
    ("2^(s+1)-3", 2, 5, 15),
    ("2^(s+1)-3", 3, 13, 35),
    ("2^(s+1)-3", 4, 29, 45),
    ("2^(s+1)-2", 1, 2, 6),
    ("2^(s+1)-2", 2, 6, 24),
    ("2^(s+1)-2", 3, 14, 50),
    ("2^(s+1)-2", 4, 30, 70),
    ("2^(s+1)-1", 1, 3, 14),
    ("2^(s+1)-1", 2, 7, 35),
    ("2^(s+1)-1", 3, 15, 75),
    ("2^(s+1)-1", 4, 31, 89),
    ("2^(s+2)+2^(s+1)-3", 1, 9, 46),
    ("2^(s+2)+2^(s+1)-3", 2, 21, 94),
    ("2^(s+2)+2^(s+1)-3", 3, 45, 105),
    ("2^(s+3)+2^(s+1)-3", 1, 17, 87),
    ("2^(s+3)+2^(s+1)-3", 2, 37, 135),
    ("2^(s+4)+2^(s+1)-3", 1, 33, 136),
    ("2^(s+1)+2^s-2", 1, 4, 21),
    ("2^(s+1)+2^s-2", 2, 10, 70),
    ("2^(s+1)+2^s-2", 3, 22, 116),
    ("2^(s+1)+2^s-2", 4, 46, 164),
    ("2^(s+2)+2^s-2", 1, 8, 55),
    ("2^(s+2)+2^s-2", 2, 18, 126),
    ("2^(s+2)+2^s-2", 3, 38, 192),
    ("2^(s+3)+2^s-2", 1, 16, 73),
    ("2^(s+3)+2^s-2", 2, 34, 165),
    ("2^(s+4)+2^s-2", 1, 32, 95),
    ("2^(s+2)+2^(s+1)+2^s-3", 1, 11, 64),
    ("2^(s+2)+2^(s+1)+2^s-3", 2, 25, 120),
    ("2^(s+3)+2^(s+2)+2^s-3", 1, 23, 155),
    ("2^(s+3)+2^(s+1)+2^s-3", 1, 19, 140),
    ("2^(s+3)+2^(s+1)+2^s-3", 2, 41, 225),
    ("2^(s+u+1)+2^(s+1)+2^s-3 (u=3)", 1, 35, 120),
    ("2^(s+u+2)+2^(s+2)+2^s-3 (u=2)", 1, 39, 225),
]

KAMEKO_BOUND_K4 = 315  # (2^1-1)(2^2-1)(2^3-1)(2^4-1)

SUITES = ("qp4-table", "k-le-3", "theorem-1-3", "appendix-45", "kameko-conjecture")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hitforge",
        description="Exact hit-problem computations over F2[x1..xk]",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--cache-dir", help="matrix cache root (default: $HITFORGE_CACHE_DIR or ./cache)")
        p.add_argument("--threads", type=int, default=1, help="worker pool size for suite fan-out")

    p_dim = sub.add_parser("dim", help="dimension of (QP_k)_n")
    p_dim.add_argument("--k", type=int, required=True)
    p_dim.add_argument("--n", type=int, required=True)
    p_dim.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common(p_dim)

    p_basis = sub.add_parser("basis", help="admissible monomial basis of (QP_k)_n")
    p_basis.add_argument("--k", type=int, required=True)
    p_basis.add_argument("--n", type=int, required=True)
    p_basis.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_basis.add_argument("--split", choices=("all", "zero", "plus"), default="all")
    common(p_basis)

    p_verify = sub.add_parser("verify", help="check computed values against the published tables")
    p_verify.add_argument("--suite", choices=SUITES, required=True)
    common(p_verify)

    p_apply = sub.add_parser("apply", help="apply a map to a polynomial")
    group = p_apply.add_mutually_exclusive_group(required=True)
    group.add_argument("--sq", type=int, metavar="I", help="Steenrod square Sq^I")
    group.add_argument("--kameko", action="store_true", help="Kameko down map")
    group.add_argument("--psi", action="store_true", help="up map y -> x1..xk y^2")
    group.add_argument("--phi", metavar="(i;I)", help="lift phi_(i;I): P_{k-1} -> P_k")
    group.add_argument("--p", metavar="(i;I)", help="projection p_(i;I): P_k -> P_{k-1}")
    group.add_argument("--f", type=int, metavar="I", help="variable-skip f_i: P_{k-1} -> P_k")
    group.add_argument("--gl", type=int, metavar="G", help="GL_k generator substitution")
    p_apply.add_argument("input", help="polynomial text")
    p_apply.add_argument("--k", type=int, help="variable count of the input (inferred when omitted)")
    return parser


def resolve_cache_dir(args) -> str | None:
    if getattr(args, "cache_dir", None):
        return args.cache_dir
    return os.environ.get("HITFORGE_CACHE_DIR") or "cache"


def cmd_dim(args, out) -> int:
    engine = HitEngine(cache_dir=resolve_cache_dir(args))
    dim = engine.dim_qp(args.k, args.n)
    if args.format == "json":
        out.write(json.dumps({"k": args.k, "n": args.n, "dim": dim}) + "\n")
    elif args.format == "csv":
        out.write("k,n,dim\n")
        out.write(f"{args.k},{args.n},{dim}\n")
    else:
        out.write(f"{dim}\n")
    return 0


def _selected_basis(report, split: str):
    if split == "zero":
        return report.basis_zero
    if split == "plus":
        return report.basis_plus
    return report.basis


def cmd_basis(args, out) -> int:
    engine = HitEngine(cache_dir=resolve_cache_dir(args))
    report = engine.qp_report(args.k, args.n)
    basis = _selected_basis(report, args.split)
    if args.format == "json":
        payload = {
            "k": args.k,
            "n": args.n,
            "dim": len(basis),
            "order": ORDER_NAME,
            "basis": [list(m.exps) for m in basis],
        }
        out.write(json.dumps(payload) + "\n")
    elif args.format == "csv":
        out.write(",".join(f"e{j}" for j in range(1, args.k + 1)) + "\n")
        for m in basis:
            out.write(",".join(str(e) for e in m.exps) + "\n")
    else:
        for m in basis:
            out.write(f"{m}\n")
    return 0


def _qp4_rows(engine):
    rows = []
    for template, s, n, expected in QP4_TABLE_CELLS:
        rows.append((f"n={n} [{template}, s={s}]", expected, lambda n=n: engine.dim_qp(4, n)))
    return rows


def _k_le_3_rows(engine):
    closed = {1: b1_basis, 2: b2_basis, 3: b3_basis}
    rows = []
    for k in (1, 2, 3):
        for n in range(33):
            def compute(k=k, n=n):
                brute = set(engine.qp_report(k, n).basis)
                formula = set(closed[k](n))
                return len(formula) if brute == formula else "set-mismatch"
            rows.append((f"k={k} n={n} closed-form size", len(closed[k](n)), compute))
    return rows


def _theorem_1_3_rows(engine):
    # instances of dim (QP_k)_n = (2^k - 1) dim (QP_{k-1})_m
    instances = [
        (2, (2,)),
        (2, (4,)),
        (3, (3, 3)),
        (3, (4, 2)),
        (3, (5, 3)),
        (4, (5, 3, 3)),
    ]
    rows = []
    for k, d in instances:
        n = sum((1 << e) - 1 for e in d)
        dk = d[-1]
        m = sum((1 << (e - dk)) - 1 for e in d[:-1])
        def compute(k=k, n=n):
            return engine.dim_qp(k, n)
        def expected(k=k, m=m):
            return ((1 << k) - 1) * engine.dim_qp(k - 1, m)
        rows.append((f"k={k} n={n} = (2^{k}-1)*dim(QP_{k-1})_{m}", expected, compute))
    return rows


def _appendix_45_rows(engine):
    def phi_equals_basis():
        lifted = set(phi_families(b3_basis(45))[2])
        return "equal" if lifted == set(engine.qp_report(4, 45).basis) else "different"

    return [
        ("dim (QP_4)_45", 105, lambda: engine.dim_qp(4, 45)),
        ("dim (QP_3)_3", 7, lambda: engine.dim_qp(3, 3)),
        ("15 * dim (QP_3)_3", 105, lambda: 15 * engine.dim_qp(3, 3)),
        ("|Phi(B_3(45))|", 105, lambda: len(phi_families(b3_basis(45))[2])),
        ("Phi(B_3(45)) vs admissible basis", "equal", phi_equals_basis),
    ]


def _kameko_conjecture_rows(engine):
    rows = []
    for template, s, n, _ in QP4_TABLE_CELLS:
        def compute(n=n):
            return engine.dim_qp(4, n) <= KAMEKO_BOUND_K4
        rows.append((f"n={n} dim <= {KAMEKO_BOUND_K4}", True, compute))
    return rows


def cmd_verify(args, out) -> int:
    engine = HitEngine(cache_dir=resolve_cache_dir(args))
    builders = {
        "qp4-table": _qp4_rows,
        "k-le-3": _k_le_3_rows,
        "theorem-1-3": _theorem_1_3_rows,
        "appendix-45": _appendix_45_rows,
        "kameko-conjecture": _kameko_conjecture_rows,
    }
    rows = builders[args.suite](engine)
    out.write(f"suite {args.suite}\n")
    threads = max(1, args.threads)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            computed = list(pool.map(lambda row: row[2](), rows))
    else:
        computed = [row[2]() for row in rows]
    failures = 0
    for (label, expected, _), got in zip(rows, computed):
        want = expected() if callable(expected) else expected
        status = "ok" if got == want else "FAIL"
        if status == "FAIL":
            failures += 1
        out.write(f"{label}: expected {want}, computed {got}, {status}\n")
    out.write(f"{args.suite}: {len(rows) - failures}/{len(rows)} rows ok\n")
    return 1 if failures else 0


def cmd_apply(args, out) -> int:
    f = parse_polynomial(args.input, args.k)
    if args.sq is not None:
        result = sq(args.sq, f)
    elif args.kameko:
        result = kameko_down_poly(f)
    elif args.psi:
        result = psi_up(f)
    elif args.phi is not None:
        pair = IndexPair.parse(args.phi)
        mono = parse_monomial(args.input, args.k)
        result = phi(pair, mono)
    elif args.p is not None:
        result = p_proj(IndexPair.parse(args.p), f)
    elif args.f is not None:
        result = f_sub(args.f, f)
    else:
        result = linear_sub(args.gl, f)
    out.write(f"{result}\n")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "dim":
            return cmd_dim(args, out)
        if args.command == "basis":
            return cmd_basis(args, out)
        if args.command == "verify":
            return cmd_verify(args, out)
        return cmd_apply(args, out)
    except InvariantViolationError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3
    except (HitForgeError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
