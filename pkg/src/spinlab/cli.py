"""Command-line front end.

Examples:
  spinlab analyze --algebra "L3(1)" --metric identity
  spinlab analyze --algebra "L3(2,-1)" --metric '{"frame_P":{"alpha":1,"beta":0,"gamma":0,"epsilon":1,"zeta":0,"iota":1}}'
  spinlab heisenberg --n 3
  spinlab verify-appendix --samples 100 --seed 1
  spinlab table1 --samples 1000 --seed 1
  spinlab sweep --algebra "L3(6)" --samples 1000 --seed 7
  spinlab selftest

Exit codes: 0 success, 2 domain validation failure, 3 I/O or parse failure.
Output on stdout is byte-deterministic for a fixed seed; timing notes go to
stderr.  The environment variable ``SPINLAB_SEED`` provides a fallback seed.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from pathlib import Path

import numpy as np

from .algebra import FrameChange, check_jacobi, metric_from_frame_change
from .catalog import (
    BianchiFamily,
    HeisenbergParams,
    heisenberg_gk_eigenvalues,
    heisenberg_metric,
    is_symmetric_family,
    make_bianchi,
    make_heisenberg,
    reference_A,
    reference_asymmetry,
    reference_eigenvalues,
)
from .clifford import Spinor
from .errors import FormatError, InvalidParameterError, SpinlabError
from .gks import (
    DEFAULT_GAP_TOL,
    DEFAULT_TOL,
    eigen_analysis,
    explicit_A_3d,
    full_report,
    genericity_sweep,
    solve_endomorphism,
    symmetry_conditions_3d,
)
from .selftest import FAMILY_GRID, run_selftest
from .serialize import (
    algebra_from_obj,
    format_table_float,
    metric_from_obj,
    to_json,
)

_HEISENBERG_RE = re.compile(r"^H\(\s*(\d+)\s*\)$")

TABLE1_ROWS: tuple[tuple[str, tuple[float | None, ...], str], ...] = (
    ("L3(-1)", (None,), ""),
    ("L3(1)", (None,), ""),
    ("L3(2,x)", (-1.0,), "x = -1"),
    ("L3(2,x)", (-0.5, 0.5, 1.0), "x != -1"),
    ("L3(3)", (None,), ""),
    ("L3(4,x)", (0.0,), "x = 0"),
    ("L3(4,x)", (0.5, 1.0, 2.0), "x != 0"),
    ("L3(5)", (None,), ""),
    ("L3(6)", (None,), ""),
)


def _default_seed() -> int:
    env = os.environ.get("SPINLAB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InvalidParameterError(f"SPINLAB_SEED must be an integer, got {env!r}")
    return 1


def _load_json_arg(text: str):
    """Parse an argument that is inline JSON or a path to a JSON file."""
    if text.lstrip().startswith(("{", "[")):
        return json.loads(text)
    return json.loads(Path(text).read_text(encoding="utf-8"))


def _resolve_algebra(name: str, tol: float):
    m = _HEISENBERG_RE.match(name.strip())
    if m:
        dim = int(m.group(1))
        if dim < 3 or dim % 2 == 0:
            raise InvalidParameterError(f"Heisenberg dimension must be odd and >= 3, got {dim}")
        return make_heisenberg((dim - 1) // 2)
    if name.strip().startswith("L3"):
        return make_bianchi(BianchiFamily.parse(name))
    alg = algebra_from_obj(_load_json_arg(name))
    ok, violation = check_jacobi(alg, tol=max(tol, 1e-10))
    if not ok:
        raise SpinlabError(
            f"not a Lie algebra: Jacobi identity fails (violation {violation:.3e})"
        )
    return alg


def _resolve_metric(alg, text: str):
    if text.strip() == "identity":
        return metric_from_obj(alg, "identity")
    return metric_from_obj(alg, _load_json_arg(text))


def _mat_lines(mat, indent: str = "  ") -> list[str]:
    return [
        indent + "  ".join(format_table_float(v).rjust(12) for v in row)
        for row in np.asarray(mat)
    ]


def _render_report_table(rep_dict: dict, dim: int) -> str:
    lines = [f"dim: {dim}"]
    lines.append("A (orthonormal frame):")
    lines += _mat_lines(rep_dict["A"])
    lines.append(f"solve_residual: {format_table_float(rep_dict['solve_residual'])}")
    lines.append(f"symmetric: {rep_dict['symmetric']}")
    if rep_dict["eigenvalues"] is not None:
        eig = ", ".join(format_table_float(v) for v in rep_dict["eigenvalues"])
        lines.append(f"eigenvalues: {eig}  (distinct: {rep_dict['distinct_count']})")
    else:
        lines.append("eigenvalues: n/a (A not symmetric)")
    lines.append(f"dirac_eigenvalue: {format_table_float(rep_dict['dirac_eigenvalue'])}")
    lines.append("ricci:")
    lines += _mat_lines(rep_dict["ricci"])
    lines.append(f"commutator_norm: {format_table_float(rep_dict['commutator_norm'])}")
    gks = rep_dict["gks_space_dim"]
    lines.append(f"gks_space_dim: {gks if gks is not None else 'tested-spinor-only'}")
    return "\n".join(lines)


def cmd_analyze(args) -> tuple[str, int]:
    alg = _resolve_algebra(args.algebra, args.tol)
    mla = _resolve_metric(alg, args.metric)
    report = full_report(mla, tol=args.tol, gap_tol=args.gap_tol)
    payload = report.to_dict()
    if args.format == "json":
        return to_json(payload), 0
    return _render_report_table(payload, mla.dim), 0


def _parse_params(args) -> HeisenbergParams:
    n = args.n
    if n < 1:
        raise InvalidParameterError(f"--n must be >= 1, got {n}")

    def parse_list(text: str | None, default):
        if text is None:
            return default
        try:
            vals = tuple(float(v) for v in text.split(","))
        except ValueError as exc:
            raise InvalidParameterError(f"bad parameter list {text!r}") from exc
        if len(vals) != n:
            raise InvalidParameterError(f"expected {n} comma-separated values, got {len(vals)}")
        return vals

    a = parse_list(args.a, tuple(float(p * p) for p in range(1, n + 1)))
    b = parse_list(args.b, (1.0,) * n)
    return HeisenbergParams(n, a, b, args.c)


def cmd_heisenberg(args) -> tuple[str, int]:
    t0 = time.perf_counter()
    params = _parse_params(args)
    mla = heisenberg_metric(params)
    a_solved, residual = solve_endomorphism(mla, Spinor.one(params.n), args.tol)
    vals, distinct = eigen_analysis(a_solved, args.gap_tol)
    lam, mu = heisenberg_gk_eigenvalues(params)
    payload = {
        "n": params.n,
        "a": list(params.a),
        "b": list(params.b),
        "c": params.c,
        "lambda": lam,
        "mu": mu,
        "eigenvalues": [float(v) for v in vals],
        "distinct_count": distinct,
        "solve_residual": residual,
        "dirac_eigenvalue": float(np.trace(a_solved)),
    }
    elapsed = time.perf_counter() - t0
    print(f"runtime_seconds: {elapsed:.3f}", file=sys.stderr)
    if args.format == "json":
        return to_json(payload), 0
    lines = [
        f"n: {params.n}",
        "lambda: " + ", ".join(format_table_float(v) for v in lam),
        f"mu: {format_table_float(mu)}",
        "eigenvalues: " + ", ".join(format_table_float(v) for v in vals),
        f"distinct_count: {distinct}",
        f"solve_residual: {format_table_float(residual)}",
        f"dirac_eigenvalue: {format_table_float(float(np.trace(a_solved)))}",
    ]
    return "\n".join(lines), 0


def cmd_verify_appendix(args) -> tuple[str, int]:
    if args.samples < 1:
        raise InvalidParameterError("--samples must be >= 1")
    results = []
    for idx, (tag, x) in enumerate(FAMILY_GRID):
        fam = BianchiFamily(tag, x)
        alg = make_bianchi(fam)
        expected_sym = is_symmetric_family(fam)
        rng = np.random.default_rng([args.seed, idx])
        a_dev = asym_dev = explicit_dev = 0.0
        eigen_dev: float | None = None
        verdicts_ok = True
        for _ in range(args.samples):
            p = FrameChange.random(3, rng)
            mla = metric_from_frame_change(alg, p)
            a_solved, _ = solve_endomorphism(mla, Spinor.one(1), args.tol)
            a_ref = reference_A(fam, p)
            scale = max(1.0, float(np.max(np.abs(a_ref))))
            a_dev = max(a_dev, float(np.max(np.abs(a_solved - a_ref))) / scale)
            asym_dev = max(
                asym_dev,
                float(np.max(np.abs((a_solved - a_solved.T) - reference_asymmetry(fam, p)))),
            )
            explicit_dev = max(
                explicit_dev, float(np.max(np.abs(a_solved - explicit_A_3d(mla.ortho_c))))
            )
            observed_sym = float(
                np.max(np.abs(a_solved - a_solved.T))
            ) <= args.tol * max(1.0, float(np.max(np.abs(a_solved))))
            if observed_sym != expected_sym:
                verdicts_ok = False
            if symmetry_conditions_3d(mla.ortho_c, args.tol) != expected_sym:
                verdicts_ok = False
            closed = reference_eigenvalues(fam, p)
            if closed is not None:
                solved_vals, _ = eigen_analysis(a_solved, args.gap_tol)
                ref_vals = np.sort(np.asarray(closed))
                escale = max(1.0, float(np.max(np.abs(ref_vals))))
                dev = float(np.max(np.abs(solved_vals - ref_vals))) / escale
                eigen_dev = dev if eigen_dev is None else max(eigen_dev, dev)
        entry_pass = (
            a_dev <= args.tol
            and asym_dev <= args.tol
            and explicit_dev <= args.tol
            and verdicts_ok
            and (eigen_dev is None or eigen_dev <= args.tol)
        )
        results.append(
            {
                "family": fam.label,
                "samples": args.samples,
                "max_A_deviation": a_dev,
                "max_asymmetry_deviation": asym_dev,
                "max_explicit_A_deviation": explicit_dev,
                "max_eigenvalue_deviation": eigen_dev,
                "symmetry_expected": expected_sym,
                "symmetry_verdicts_ok": verdicts_ok,
                "pass": entry_pass,
            }
        )
    all_pass = all(r["pass"] for r in results)
    payload = {
        "samples": args.samples,
        "seed": args.seed,
        "tol": args.tol,
        "results": results,
        "all_pass": all_pass,
    }
    if args.format == "json":
        return to_json(payload), 0 if all_pass else 2
    lines = [f"{'family':<12} {'max|dA|':>10} {'max|dAsym|':>10} {'sym':>5} {'ok':>4}"]
    for r in results:
        lines.append(
            f"{r['family']:<12} {format_table_float(r['max_A_deviation']):>10} "
            f"{format_table_float(r['max_asymmetry_deviation']):>10} "
            f"{str(r['symmetry_expected']):>5} {('yes' if r['pass'] else 'NO'):>4}"
        )
    lines.append(f"all_pass: {all_pass}")
    return "\n".join(lines), 0 if all_pass else 2


def cmd_sweep(args) -> tuple[str, int]:
    fam = BianchiFamily.parse(args.algebra)
    stats = genericity_sweep(fam, args.samples, args.seed, args.gap_tol, args.tol)
    payload = {"seed": args.seed, "gap_tol": args.gap_tol, **stats}
    if args.format == "json":
        return to_json(payload), 0
    lines = [
        f"family: {stats['family']}",
        f"samples: {stats['samples']}",
        f"symmetric_count: {stats['symmetric_count']}",
        f"modal_r: {stats['modal_r']}",
        "r_counts: " + ", ".join(f"r={k}: {v}" for k, v in stats["r_counts"].items()),
        f"fraction_r_lt_3: {stats['fraction_r_lt_3']}",
    ]
    return "\n".join(lines), 0


def table1_rows(samples: int, seed: int, gap_tol: float, tol: float) -> list[dict]:
    """Eigenvalue-count table per family, via seeded metric sweeps."""
    rows = []
    for row_idx, (tag, xs, case) in enumerate(TABLE1_ROWS):
        sym_counts = []
        modal_rs = []
        below_total = 0
        sym_total = 0
        for x_idx, x in enumerate(xs):
            fam = BianchiFamily(tag, x)
            stats = genericity_sweep(fam, samples, [seed, row_idx, x_idx], gap_tol, tol)
            sym_counts.append(stats["symmetric_count"])
            modal_rs.append(stats["modal_r"])
            sym_total += stats["symmetric_count"]
            if stats["modal_r"] is not None:
                below_total += sum(
                    cnt for r, cnt in stats["r_counts"].items() if int(r) < stats["modal_r"]
                )
        if all(c == samples for c in sym_counts):
            gk_dim = 2
        elif all(c == 0 for c in sym_counts):
            gk_dim = 0
        else:
            raise SpinlabError(
                f"inconsistent symmetry verdicts within row {tag} {case!r}: {sym_counts}"
            )
        if gk_dim == 2:
            if len(set(modal_rs)) != 1:
                raise SpinlabError(f"inconsistent generic r within row {tag}: {modal_rs}")
            r = modal_rs[0]
            degenerate = below_total / sym_total
        else:
            r = None
            degenerate = None
        rows.append(
            {
                "family": tag,
                "case": case,
                "gk_dim": gk_dim,
                "r": r,
                "degenerate_fraction": degenerate,
            }
        )
    return rows


def cmd_table1(args) -> tuple[str, int]:
    rows = table1_rows(args.samples, args.seed, args.gap_tol, args.tol)
    payload = {
        "samples": args.samples,
        "seed": args.seed,
        "gap_tol": args.gap_tol,
        "rows": rows,
    }
    if args.format == "json":
        return to_json(payload), 0
    lines = [f"{'family':<10} {'case':<9} {'dim_GK':>6} {'r':>3} {'degenerate':>11}"]
    for row in rows:
        r = "-" if row["r"] is None else str(row["r"])
        deg = (
            "-"
            if row["degenerate_fraction"] is None
            else format_table_float(row["degenerate_fraction"])
        )
        lines.append(
            f"{row['family']:<10} {row['case']:<9} {row['gk_dim']:>6} {r:>3} {deg:>11}"
        )
    return "\n".join(lines), 0


def cmd_selftest(args) -> tuple[str, int]:
    result = run_selftest(
        tol=args.tol if args.tol_given else None,
        seed=args.seed,
        break_clifford_sign=args.break_clifford_sign,
    )
    code = 0 if result["all_pass"] else 2
    if args.format == "json":
        return to_json(result), code
    lines = []
    for chk in result["checks"]:
        status = "PASS" if chk["pass"] else "FAIL"
        lines.append(
            f"{status}  {chk['name']:<34} deviation {format_table_float(chk['deviation'])}"
            f"  (tol {format_table_float(chk['tol'])})"
        )
    lines.append("all_pass: " + str(result["all_pass"]))
    return "\n".join(lines), code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinlab",
        description="Invariant generalised Killing spinors on metric Lie algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, samples_default=None):
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--gap-tol", dest="gap_tol", type=float, default=DEFAULT_GAP_TOL)
        p.add_argument("--seed", type=int, default=None)
        if samples_default is not None:
            p.add_argument("--samples", type=int, default=samples_default)
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--output", default=None, help="write to file instead of stdout")

    p = sub.add_parser("analyze", help="analyze one algebra + metric")
    p.add_argument("--algebra", required=True, help="catalog name, JSON file, or inline JSON")
    p.add_argument("--metric", default="identity", help='"identity", JSON file, or inline JSON')
    add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("heisenberg", help="Heisenberg-family eigenvalue ladder")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", default=None, help="comma-separated squared norms (default p^2)")
    p.add_argument("--b", default=None, help="comma-separated squared norms (default 1)")
    p.add_argument("--c", type=float, default=1.0)
    add_common(p)
    p.set_defaults(func=cmd_heisenberg)

    p = sub.add_parser("verify-appendix", help="solver vs closed-form family tables")
    add_common(p, samples_default=100)
    p.set_defaults(func=cmd_verify_appendix)

    p = sub.add_parser("sweep", help="eigenvalue-count statistics over random metrics")
    p.add_argument("--algebra", required=True, help="family name, e.g. L3(6)")
    add_common(p, samples_default=1000)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("table1", help="GK-space dimension and generic r per family")
    add_common(p, samples_default=1000)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("selftest", help="run the built-in invariant suite")
    add_common(p)
    p.add_argument(
        "--break-clifford-sign",
        action="store_true",
        dest="break_clifford_sign",
        help=argparse.SUPPRESS,
    )
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    raw = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(raw)
    args.tol_given = any(a == "--tol" or a.startswith("--tol=") for a in raw)
    if args.seed is None:
        try:
            args.seed = _default_seed()
        except SpinlabError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    try:
        text, code = args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON: {exc}", file=sys.stderr)
        return 3
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SpinlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
