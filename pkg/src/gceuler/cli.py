"""Command-line interface: tables, oracles, homology, asymptotics, quadrature.

Exit codes: 0 success, 1 verification failure, 2 usage error.  All exact
outputs are deterministic given the flags; chi values are written as decimal
strings (they outgrow 64 bits quickly).  Report commands render a PNG next
to the CSV unless --no-plot is given.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import mpmath as mp

from . import asymptotics, chain_homology, graph_enum, plots, quadrature
from .cache import ResultCache
from .euler_series import (
    ComplexKind,
    chi_disconnected,
    chi_table,
    euler_product_roundtrip,
)

VERIFY_RANK_RANGE = (2, 3, 4)


def _parse_kind(s: str) -> ComplexKind:
    try:
        return ComplexKind(s)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"kind must be one of {[k.value for k in ComplexKind]}, got {s!r}"
        ) from None


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _cached_chi_table(kind: ComplexKind, gmax: int, args) -> "EulerTable":
    if getattr(args, "no_cache", False):
        return chi_table(kind, gmax)
    cache = ResultCache(args.cache_dir)
    key = {"command": "chi", "kind": kind.value, "gmax": gmax}
    table = cache.get_table(key)
    if table is None:
        table = chi_table(kind, gmax)
        cache.put_table(key, table)
    return table


def cmd_chi(args) -> int:
    table = _cached_chi_table(args.kind, args.gmax, args)
    if args.out:
        _write_csv(
            args.out,
            ["g", "chi", "method"],
            [(g, str(v), table.method) for g, v in sorted(table.values.items())],
        )
        print(f"wrote {args.out}")
    else:
        for g, v in sorted(table.values.items()):
            print(f"{g},{v}")
    if args.verify:
        if args.kind is ComplexKind.AGC:
            print("error: no enumeration oracle exists for the associative complex")
            return 2
        parity = "even" if args.kind is ComplexKind.GC_EVEN else "odd"
        for g in VERIFY_RANK_RANGE:
            if g > args.gmax:
                break
            oracle = graph_enum.chi_connected_oracle(g, parity)
            if oracle != table.values[g]:
                print(f"VERIFY FAIL: g={g} oracle={oracle} table={table.values[g]}")
                return 1
            print(f"verify g={g}: oracle agrees ({oracle})")
    return 0


def cmd_chi_disconnected(args) -> int:
    table = chi_disconnected(args.parity, args.nmax)
    if args.out:
        _write_csv(
            args.out,
            ["n", "chi", "method"],
            [(n, str(v), table.method) for n, v in sorted(table.values.items())],
        )
        print(f"wrote {args.out}")
    else:
        for n, v in sorted(table.values.items()):
            print(f"{n},{v}")
    if args.roundtrip:
        report = euler_product_roundtrip(args.parity, args.nmax)
        for n, lhs, rhs in report.rows:
            if lhs != rhs:
                print(f"ROUNDTRIP FAIL: n={n} exp-form={lhs} product-form={rhs}")
        if not report.all_equal:
            return 1
        print(f"euler-product roundtrip: all {args.nmax + 1} coefficients agree")
    return 0


def cmd_oracle(args) -> int:
    if (args.g is None) == (args.n is None):
        print("error: pass exactly one of --g (connected) or --n (disconnected)")
        return 2
    try:
        if args.g is not None:
            value = graph_enum.chi_connected_oracle(args.g, args.parity)
            label = f"chi_connected(g={args.g}, {args.parity})"
        else:
            value = graph_enum.chi_disconnected_oracle(args.n, args.parity)
            label = f"chi_disconnected(n={args.n}, {args.parity})"
    except graph_enum.ResourceCapError as exc:
        print(f"error: {exc}")
        return 2
    print(f"{label} = {value}")
    if args.check:
        if args.g is not None:
            kind = ComplexKind.GC_EVEN if args.parity == "even" else ComplexKind.GC_ODD
            series = _cached_chi_table(kind, max(args.g, 2), args).values[args.g]
        else:
            series = chi_disconnected(args.parity, args.n).values[args.n]
        if series != value:
            print(f"CHECK FAIL: series value {series} != oracle {value}")
            return 1
        print("series value agrees")
    return 0


def cmd_homology(args) -> int:
    try:
        complex_ = chain_homology.build_complex(args.g, args.parity)
    except graph_enum.ResourceCapError as exc:
        print(f"error: {exc}")
        return 2
    if not chain_homology.verify_d_squared(complex_):
        print("FAIL: d^2 != 0")
        return 1
    betti = chain_homology.betti_numbers(complex_)
    chi_b = sum((-1) ** d * b for d, b in betti.items())
    chi_dim = complex_.chi_from_dimensions()
    rows = [
        (d, complex_.dim(d), chain_homology.integer_rank(complex_.boundaries[d]), betti[d])
        for d in complex_.degrees
    ]
    if args.out:
        _write_csv(args.out, ["degree", "dim", "boundary_rank", "betti"], rows)
        print(f"wrote {args.out}")
    else:
        print("degree,dim,boundary_rank,betti")
        for row in rows:
            print(",".join(str(x) for x in row))
    print(f"d^2 = 0 verified; chi from betti = {chi_b}, from dimensions = {chi_dim}")
    if args.dump_matrices:
        Path(args.dump_matrices).write_text(chain_homology.dump_boundaries(complex_))
        print(f"wrote {args.dump_matrices}")
    if chi_b != chi_dim:
        print("FAIL: chi mismatch between betti numbers and chain dimensions")
        return 1
    if not chain_homology.homology_support_ok(args.parity, args.g, betti):
        print("FAIL: homology support outside the admissible degree window")
        return 1
    return 0


def cmd_asym(args) -> int:
    table = _cached_chi_table(args.kind, args.gmax, args)
    rows = asymptotics.ratio_table(args.kind, table)
    out_rows = []
    for r in rows:
        ratio_minus_1 = (
            mp.nstr(r.ratio - 1, 10) if r.ratio is not None else "nan"
        )
        out_rows.append(
            (
                r.g,
                str(r.chi),
                r.asym.sign,
                mp.nstr(r.asym.log10_mag, 12) if r.asym.sign else "-inf",
                ratio_minus_1,
            )
        )
    if args.out:
        _write_csv(
            args.out,
            ["g", "chi_exact", "asym_sign", "asym_log10", "ratio_minus_1"],
            out_rows,
        )
        print(f"wrote {args.out}")
        if args.plot:
            print(f"wrote {plots.plot_ratio(rows, args.out, args.kind.value)}")
    else:
        print("g,chi_exact,asym_sign,asym_log10,ratio_minus_1")
        for row in out_rows:
            print(",".join(str(x) for x in row))
    return 0


def cmd_cos_bound(args) -> int:
    report = asymptotics.cos_lower_bound_scan(args.gmax, args.mu_star)
    print(
        f"odd g <= {args.gmax}, mu* = {args.mu_star}: "
        f"{len(report.violations)} violations; clean from g = {report.clean_from}"
    )
    for g, c, bound in report.violations:
        print(f"  violation at g={g}: |cos| = {mp.nstr(c, 8)} < {mp.nstr(bound, 8)}")
    if args.out:
        with mp.workprec(asymptotics.DEFAULT_PREC_BITS):
            stride = 2 * max(1, (args.gmax // 2) // 2000)  # at most ~2000 sample points
            gs = list(range(3, args.gmax + 1, stride))
            cos_vals = [abs(mp.cos(asymptotics.cos_argument(g))) for g in gs]
            bounds = [mp.mpf(g) ** (mp.mpf("0.5") - mp.mpf(args.mu_star)) for g in gs]
        _write_csv(
            args.out,
            ["g", "abs_cos", "bound"],
            [(g, mp.nstr(c, 12), mp.nstr(b, 12)) for g, c, b in zip(gs, cos_vals, bounds)],
        )
        print(f"wrote {args.out}")
        if args.plot:
            print(f"wrote {plots.plot_cos_scan(gs, cos_vals, bounds, args.out)}")
    return 0


def cmd_quad(args) -> int:
    if args.quad_command == "stirling":
        worst = mp.mpf(0)
        for z in args.z:
            rep = quadrature.stirling_identity_check(z, mp.mpf(args.tol) / 10)
            worst = max(worst, rep["abs_diff"])
            print(
                f"z={z}: lhs={mp.nstr(rep['lhs'], 15)} rhs={mp.nstr(rep['rhs'], 15)} "
                f"|diff|={mp.nstr(rep['abs_diff'], 4)} (window {mp.nstr(rep['window'], 4)})"
            )
        if worst > mp.mpf(args.tol):
            print(f"FAIL: worst deviation {mp.nstr(worst, 4)} > tol {args.tol}")
            return 1
        return 0
    if args.quad_command == "q":
        rows = quadrature.q_residual_scan(args.z, xi=args.xi)
        prev = None
        ok = True
        for z, q, res in rows:
            note = ""
            if prev is not None:
                shrink = prev / res
                note = f"  shrink x{mp.nstr(shrink, 5)}"
                if shrink < 8:
                    ok = False
            print(f"z={z}: Q- = {mp.nstr(q, 14)}, residual = {mp.nstr(res, 5)}{note}")
            prev = res
        if args.out:
            _write_csv(
                args.out,
                ["z", "q_value", "residual"],
                [(z, mp.nstr(q, 25), mp.nstr(r, 8)) for z, q, r in rows],
            )
            print(f"wrote {args.out}")
            if args.plot:
                print(f"wrote {plots.plot_q_residuals(rows, args.out)}")
        if len(rows) >= 2 and not ok:
            print("FAIL: residual shrink below 8x per doubling")
            return 1
        return 0
    if args.quad_command == "jres":
        chi = chi_disconnected(args.parity, max(args.n // 12, 0)).values
        rows = quadrature.jres_scan(args.parity, args.n, args.z, chi)
        out_rows = []
        prev = None
        decreasing = True
        for r in rows:
            if prev is not None and r["delta"] >= prev:
                decreasing = False
            prev = r["delta"]
            out_rows.append(
                (
                    mp.nstr(r["z"], 10),
                    mp.nstr(mp.re(r["j"]), 20),
                    mp.nstr(mp.im(mp.mpc(r["j"])), 20),
                    mp.nstr(r["partial_sum"], 20),
                    mp.nstr(r["delta"], 12),
                    mp.nstr(r["delta_normalized"], 12),
                )
            )
            print(
                f"z={mp.nstr(r['z'], 8)}: delta={mp.nstr(r['delta'], 10)} "
                f"normalized={mp.nstr(r['delta_normalized'], 8)}"
            )
        if args.out:
            _write_csv(
                args.out,
                ["z", "J_real", "J_imag", "partial_sum", "delta", "delta_normalized"],
                out_rows,
            )
            print(f"wrote {args.out}")
            if args.plot:
                print(f"wrote {plots.plot_jres(rows, args.out, args.parity)}")
        if len(rows) >= 2:
            print(f"delta strictly decreasing: {decreasing}")
            if not decreasing:
                return 1
        return 0
    print("error: unknown quad subcommand")
    return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gceuler",
        description="Euler characteristics of commutative/associative graph complexes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_cache_flags(p):
        p.add_argument("--cache-dir", default=None, help="cache directory override")
        p.add_argument("--no-cache", action="store_true", help="bypass the result cache")

    p = sub.add_parser("chi", help="connected chi(g) table from the generating function")
    p.add_argument("--kind", type=_parse_kind, default=ComplexKind.GC_EVEN)
    p.add_argument("--gmax", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--verify", action="store_true", help="cross-check small g by enumeration")
    add_cache_flags(p)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("chi-disconnected", help="disconnected chi_n by Euler degree")
    p.add_argument("--parity", choices=["even", "odd"], required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--roundtrip", action="store_true", help="check the Euler-product form")
    p.set_defaults(func=cmd_chi_disconnected)

    p = sub.add_parser("oracle", help="brute-force enumeration oracles")
    p.add_argument("--parity", choices=["even", "odd"], required=True)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--disconnected", action="store_true")
    p.add_argument("--g", type=int, default=None, help="rank for the connected oracle")
    p.add_argument("--n", type=int, default=None, help="Euler degree for the disconnected oracle")
    p.add_argument("--check", action="store_true", help="compare against the series value")
    add_cache_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("homology", help="small-rank chain complex and Betti numbers")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--parity", choices=["even", "odd"], required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--dump-matrices", default=None)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("asym", help="closed-form asymptotics vs the exact table")
    p.add_argument("--kind", type=_parse_kind, default=ComplexKind.GC_EVEN)
    p.add_argument("--gmax", type=int, required=True)
    p.add_argument("--ratio", action="store_true", help="(default output already includes ratios)")
    p.add_argument("--out", default=None)
    p.add_argument("--plot", action=argparse.BooleanOptionalAction, default=True)
    add_cache_flags(p)
    p.set_defaults(func=cmd_asym)

    p = sub.add_parser("cos-bound", help="cosine lower-bound scan over odd g")
    p.add_argument("--gmax", type=int, required=True)
    p.add_argument("--mu-star", type=float, default=7.5)
    p.add_argument("--out", default=None)
    p.add_argument("--plot", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_cos_bound)

    p = sub.add_parser("quad", help="quadrature validations")
    qsub = p.add_subparsers(dest="quad_command", required=True)

    q = qsub.add_parser("stirling", help="action integral vs Gamma ratio")
    q.add_argument("--z", type=float, action="append", required=True)
    q.add_argument("--tol", type=float, default=1e-8)
    q.set_defaults(func=cmd_quad)

    q = qsub.add_parser("q", help="Q^- residual against the Bernoulli exp form")
    q.add_argument("--z", type=int, action="append", required=True)
    q.add_argument("--xi", type=float, default=8.0)
    q.add_argument("--out", default=None)
    q.add_argument("--plot", action=argparse.BooleanOptionalAction, default=True)
    q.set_defaults(func=cmd_quad)

    q = qsub.add_parser("jres", help="windowed product vs the exact partial sum")
    q.add_argument("--n", type=int, default=12)
    q.add_argument("--parity", choices=["even", "odd"], required=True)
    q.add_argument("--z", type=int, action="append", required=True)
    q.add_argument("--out", default=None)
    q.add_argument("--plot", action=argparse.BooleanOptionalAction, default=True)
    q.set_defaults(func=cmd_quad)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
