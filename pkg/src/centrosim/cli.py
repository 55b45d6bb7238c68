"""Command-line interface: every pipeline on JSON matrix files.

Exit codes: 0 = the requested certification or positive verdict was produced,
2 = the method was inconclusive or the verdict negative (details in the
report), 1 = usage or data error.  Reports are JSON with schema "centrosim/1"
and embed the verbatim residual matrices so failures can be debugged without
rerunning.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import CentrosimError
from .factorization import centro_det_factors, riccati_block_triangularize, riccati_det_factor
from .generators import (PalindromicSpec, alpha_scan, bordered_jacobi_pm,
                         conjugated_periodic_jacobi, linear_toeplitz,
                         periodic_jacobi_pm, toeplitz_scaled_intertwiner,
                         verify_palindromic_factorization, write_alpha_scan_csv)
from .linalg import det
from .matrix import (APPROX, EXACT, blocks_centrosymmetric,
                     commutes_with_exchange, is_centrosymmetric, load_matrix,
                     matrix_to_json_obj, save_matrix, split_blocks)
from .solver import (SearchOptions, find_intertwiner, riccati_residual,
                     singular_certificate)
from .transforms import build_centro_transform, dilate_to_centrosimilar, embed_centro_principal

SCHEMA = "centrosim/1"


def _mat(M):
    return matrix_to_json_obj(M)


def _scalar(v, mode):
    if mode == EXACT:
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return v


def _solution_obj(sol):
    return {
        "X": _mat(sol.X),
        "sylvester_residual": _mat(sol.sylvester_residual),
        "quadratic_residual": _mat(sol.quadratic_residual),
        "rank": sol.rank,
        "invertible": sol.invertible,
    }


def _transform_obj(report):
    return {
        "Q": _mat(report.Q),
        "Q_inv": _mat(report.Q_inv),
        "result": _mat(report.result),
        "certification": report.certification,
    }


def _parity_split(args, n):
    if args.odd:
        s = (n - 1) // 2 if args.split is None else args.split
        return "odd", s
    s = n // 2 if args.split is None else args.split
    return "even", s


def _search_options(args):
    kwargs = {}
    if getattr(args, "d_max", None) is not None:
        kwargs["d_max"] = args.d_max
    if getattr(args, "grid_numer_max", None) is not None:
        kwargs["grid_numer_max"] = args.grid_numer_max
    if getattr(args, "grid_denom_max", None) is not None:
        kwargs["grid_denom_max"] = args.grid_denom_max
    if getattr(args, "max_solutions", None) is not None:
        kwargs["max_solutions"] = args.max_solutions
    if args.tol is not None:
        kwargs["tol"] = args.tol
    return SearchOptions(**kwargs)


def _cmd_check(args):
    M = load_matrix(args.matrix, mode=args.mode)
    tol = args.tol
    entrywise = is_centrosymmetric(M, tol)
    commutes = commutes_with_exchange(M, tol)
    blocks = None
    n = M.rows
    if n >= 2:
        if n % 2 == 0:
            blocks = blocks_centrosymmetric(split_blocks(M, "even", n // 2), tol)
        else:
            blocks = blocks_centrosymmetric(split_blocks(M, "odd", (n - 1) // 2), tol)
    report = {
        "mode": M.mode,
        "matrix": _mat(M),
        "centrosymmetric": entrywise,
        "commutes_with_exchange": commutes,
        "blocks_centrosymmetric": blocks,
    }
    summary = f"centrosymmetric: {entrywise}"
    return (0 if entrywise else 2), report, summary


def _cmd_solve(args):
    M = load_matrix(args.matrix, mode=args.mode)
    parity, s = _parity_split(args, M.rows)
    search = find_intertwiner(M, parity, s, _search_options(args))
    report = {
        "mode": M.mode,
        "matrix": _mat(M),
        "parity": parity,
        "split": s,
        "solutions": [_solution_obj(sol) for sol in search.solutions],
        "sylvester_basis": [_mat(N) for N in search.basis],
        "diagnostic": search.diagnostic,
    }
    if search.discriminant is not None:
        report["discriminant"] = _scalar(Fraction(search.discriminant), EXACT) \
            if M.mode == EXACT else search.discriminant
    if search.best_residual is not None:
        report["best_residual_norm"] = search.best_residual
    ok = any(sol.invertible for sol in search.solutions)
    summary = (f"{len(search.solutions)} exact solution(s), "
               f"invertible: {sum(1 for x in search.solutions if x.invertible)}"
               + (f"; diagnostic: {search.diagnostic}" if search.diagnostic else ""))
    return (0 if ok else 2), report, summary


def _cmd_transform(args):
    M = load_matrix(args.matrix, mode=args.mode)
    parity, s = _parity_split(args, M.rows)
    report = {"mode": M.mode, "matrix": _mat(M), "parity": parity, "split": s}
    if args.x:
        X = load_matrix(args.x, mode=args.mode)
    else:
        search = find_intertwiner(M, parity, s, _search_options(args))
        report["diagnostic"] = search.diagnostic
        invertibles = search.invertible_solutions
        if not invertibles:
            report["solutions"] = [_solution_obj(sol) for sol in search.solutions]
            return 2, report, "method inconclusive: no invertible intertwiner found"
        X = invertibles[0].X
    tr = build_centro_transform(M, parity, s, X, args.tol)
    report["X"] = _mat(X)
    report["transform"] = _transform_obj(tr)
    return 0, report, f"certified: {tr.certification}"


def _cmd_embed(args):
    M = load_matrix(args.matrix, mode=args.mode)
    X = load_matrix(args.x, mode=args.mode)
    s = M.rows // 2 if args.split is None else args.split
    tr = embed_centro_principal(M, s, X, args.tol)
    report = {"mode": M.mode, "matrix": _mat(M), "split": s, "X": _mat(X),
              "transform": _transform_obj(tr)}
    return 0, report, f"certified: {tr.certification}"


def _cmd_dilate(args):
    M = load_matrix(args.matrix, mode=args.mode)
    X = load_matrix(args.x, mode=args.mode)
    s = M.rows // 2 if args.split is None else args.split
    Mhat, Xhat, tr = dilate_to_centrosimilar(M, s, X, args.tol)
    report = {"mode": M.mode, "matrix": _mat(M), "split": s, "X": _mat(X),
              "Mhat": _mat(Mhat), "Xhat": _mat(Xhat),
              "transform": _transform_obj(tr)}
    return 0, report, f"certified: {tr.certification} (dilated size {Mhat.rows})"


def _factor_obj(rep, mode):
    return {
        "factors": [_mat(f) for f in rep.factors],
        "factor_dets": [_scalar(d, mode) for d in rep.factor_dets],
        "product": _scalar(rep.product, mode),
        "direct_det": _scalar(rep.direct_det, mode),
        "match": rep.match,
    }


def _cmd_factor_centro(args):
    M = load_matrix(args.matrix, mode=args.mode)
    rep = centro_det_factors(M, args.tol)
    report = {"mode": M.mode, "matrix": _mat(M), "factorization": _factor_obj(rep, M.mode)}
    summary = f"det = {_scalar(rep.direct_det, M.mode)} = product of factors, match: {rep.match}"
    return (0 if rep.match else 2), report, summary


def _cmd_factor_riccati(args):
    M = load_matrix(args.matrix, mode=args.mode)
    W = load_matrix(args.w, mode=args.mode)
    s = M.rows // 2 if args.split is None else args.split
    witness = riccati_residual(M, s, W, args.orientation, args.tol)
    report = {"mode": M.mode, "matrix": _mat(M), "split": s, "orientation": args.orientation,
              "W": _mat(W), "residual": _mat(witness.residual)}
    if not witness.is_exact(args.tol):
        return 2, report, "nonzero Riccati residual; factorization not applicable"
    tri = riccati_block_triangularize(M, s, W, args.orientation, args.tol)
    rep = riccati_det_factor(M, s, W, args.orientation, args.tol)
    report["triangularized"] = _mat(tri)
    report["factorization"] = _factor_obj(rep, M.mode)
    return (0 if rep.match else 2), report, \
        f"det = {_scalar(rep.direct_det, M.mode)}, factors match: {rep.match}"


def _cmd_certify_singular(args):
    M = load_matrix(args.matrix, mode=args.mode)
    W = load_matrix(args.w, mode=args.mode)
    s = M.rows // 2 if args.split is None else args.split
    holds = singular_certificate(M, s, W, args.system, args.tol)
    report = {"mode": M.mode, "matrix": _mat(M), "split": s, "system": args.system, "W": _mat(W),
              "certificate_holds": holds}
    if holds:
        d = det(M)
        report["det"] = _scalar(d, M.mode)
        summary = f"system {args.system} holds; det(M) = {_scalar(d, M.mode)}"
        return 0, report, summary
    return 2, report, f"system {args.system} does not hold for this witness"


def _parse_rational_list(text):
    return tuple(Fraction(part.strip()) for part in text.split(","))


def _cmd_gen(args):
    if args.family == "toeplitz":
        M = linear_toeplitz(Fraction(args.alpha), args.size)
        report = {"family": "toeplitz", "alpha": str(Fraction(args.alpha)),
                  "size": args.size, "matrix": _mat(M)}
        if args.size in (4, 6):
            xt, delta = toeplitz_scaled_intertwiner(args.size, Fraction(args.alpha))
            report["scaled_intertwiner"] = {"Xtilde": _mat(xt), "delta": _scalar(delta, EXACT)}
    else:
        sign = 1 if args.sign == "+" else -1
        spec = PalindromicSpec(t=Fraction(args.t), c=_parse_rational_list(args.c), sign=sign)
        M = periodic_jacobi_pm(spec) if args.family == "jacobi-a" else bordered_jacobi_pm(spec)
        report = {"family": args.family, "t": str(spec.t),
                  "c": [str(v) for v in spec.c], "sign": args.sign, "matrix": _mat(M)}
    if args.output:
        save_matrix(M, args.output)
        return 0, report, f"wrote {M.rows}x{M.cols} matrix to {args.output}"
    return 0, report, f"generated {M.rows}x{M.cols} matrix"


def _cmd_verify_corollary(args):
    family = args.family.upper()
    c = _parse_rational_list(args.c)
    sign = 1 if args.sign == "+" else -1
    samples = args.samples if args.samples is not None else len(c) + 2
    ok = verify_palindromic_factorization(family, c, sign, samples=samples)
    spec = PalindromicSpec(t=Fraction(1), c=c, sign=sign)
    if family == "A":
        conj_centro = is_centrosymmetric(conjugated_periodic_jacobi(spec))
    else:
        conj_centro = is_centrosymmetric(bordered_jacobi_pm(spec))
    report = {"family": family, "c": [str(v) for v in c], "sign": args.sign,
              "samples": samples, "identity_certified": ok,
              "centrosymmetric_form_check": conj_centro}
    summary = f"determinant identity certified at {samples} points: {ok}"
    return (0 if ok and conj_centro else 2), report, summary


def _cmd_alpha_scan(args):
    alphas = []
    a = args.start
    while a <= args.stop + 1e-12:
        alphas.append(a)
        a += args.step
    rows = alpha_scan(args.size, alphas, tol=args.tol)
    report = {"size": args.size, "count": len(rows),
              "columns": ["alpha", "size", "best_residual_norm",
                          "intertwiner_found", "invertible"],
              "rows": [list(r) for r in rows]}
    if args.output:
        write_alpha_scan_csv(rows, args.output)
        summary = f"scanned {len(rows)} alphas, CSV written to {args.output}"
    else:
        summary = f"scanned {len(rows)} alphas"
    return 0, report, summary


def _add_common(p, split=True):
    p.add_argument("--mode", choices=[EXACT, APPROX], default=None,
                   help="force scalar mode (default: inferred from the JSON)")
    p.add_argument("--tol", type=float, default=None,
                   help="relative tolerance for approximate mode (default 1e-9)")
    p.add_argument("-o", "--output", default=None, help="write the JSON report here")
    if split:
        p.add_argument("--split", type=int, default=None,
                       help="split index s (default: center split)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="centrosim",
        description="Decide, construct and verify similarity to centrosymmetric matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="centrosymmetry predicates for one matrix")
    p.add_argument("matrix")
    _add_common(p, split=False)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("solve", help="search for an intertwiner X with XA=DX, C=XBX")
    p.add_argument("matrix")
    _add_common(p)
    p.add_argument("--odd", action="store_true", help="use the odd (center row/column) split")
    p.add_argument("--d-max", type=int, default=None)
    p.add_argument("--grid-numer-max", type=int, default=None)
    p.add_argument("--grid-denom-max", type=int, default=None)
    p.add_argument("--max-solutions", type=int, default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("transform", help="conjugate to a centrosymmetric matrix")
    p.add_argument("matrix")
    _add_common(p)
    p.add_argument("--odd", action="store_true")
    p.add_argument("--x", default=None, help="JSON file with the intertwiner X")
    p.add_argument("--d-max", type=int, default=None)
    p.add_argument("--grid-numer-max", type=int, default=None)
    p.add_argument("--grid-denom-max", type=int, default=None)
    p.add_argument("--max-solutions", type=int, default=None)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("embed", help="embed a centrosymmetric principal block (rank-deficient X)")
    p.add_argument("matrix")
    _add_common(p)
    p.add_argument("--x", required=True)
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("dilate", help="dilate to a centro-similar matrix (full-rank rectangular X)")
    p.add_argument("matrix")
    _add_common(p)
    p.add_argument("--x", required=True)
    p.set_defaults(func=_cmd_dilate)

    p = sub.add_parser("factor-centro", help="centrosymmetric determinant factorization")
    p.add_argument("matrix")
    _add_common(p, split=False)
    p.set_defaults(func=_cmd_factor_centro)

    p = sub.add_parser("factor-riccati", help="Riccati block triangularization and factorization")
    p.add_argument("matrix")
    _add_common(p)
    p.add_argument("--w", required=True, help="JSON file with the witness X or Y")
    p.add_argument("--orientation", choices=["lower", "upper"], required=True)
    p.set_defaults(func=_cmd_factor_riccati)

    p = sub.add_parser("certify-singular", help="zero-determinant certificate systems (1)-(4)")
    p.add_argument("matrix")
    _add_common(p)
    p.add_argument("--w", required=True)
    p.add_argument("--system", type=int, choices=[1, 2, 3, 4], required=True)
    p.set_defaults(func=_cmd_certify_singular)

    p = sub.add_parser("gen", help="generate a matrix from a named family")
    p.add_argument("family", choices=["toeplitz", "jacobi-a", "jacobi-b"])
    p.add_argument("--alpha", default="0", help="toeplitz: diagonal value")
    p.add_argument("--size", type=int, default=4, help="toeplitz: matrix size")
    p.add_argument("--t", default="0", help="jacobi: diagonal value")
    p.add_argument("--c", default=None, help="jacobi: comma-separated couplings c0,...,cn")
    p.add_argument("--sign", choices=["+", "-"], default="+")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_gen, mode=None, tol=None)

    p = sub.add_parser("verify-corollary", help="certify a palindromic determinant identity")
    p.add_argument("--family", choices=["a", "b", "A", "B"], required=True)
    p.add_argument("--c", required=True, help="comma-separated couplings c0,...,cn")
    p.add_argument("--sign", choices=["+", "-"], default="+")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_verify_corollary, mode=None, tol=None)

    p = sub.add_parser("alpha-scan", help="numeric sweep of the Toeplitz alpha parameter")
    p.add_argument("--size", type=int, default=4)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--step", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_alpha_scan, mode=APPROX)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload, summary = args.func(args)
    except (CentrosimError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = {"schema": SCHEMA, "command": args.command,
              "mode": getattr(args, "mode", None) or "exact",
              "exit_code": code}
    report.update(payload)
    text = json.dumps(report, indent=1, default=str)
    if getattr(args, "output", None) and args.command not in ("gen", "alpha-scan"):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(summary)
    elif args.command in ("gen", "alpha-scan") and getattr(args, "output", None):
        print(summary)
    else:
        print(summary, file=sys.stderr)
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
