"""Command-line surface: verification suites, computations, and solvers.

Exit codes: 0 all checks pass, 1 any check failure, 2 usage or config
errors (argparse's own convention for bad flags).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import reports
from .rationals import rat


def _json_dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _parse_weight(text):
    return [rat(v) for v in text.split(",")]


def _parse_window(text):
    a, b = text.split(":")
    return int(a), int(b)


def _add_common(p):
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--seed", type=int, help="seed for randomized checks")
    p.add_argument("--figures", dest="figures", action="store_true",
                   default=True, help="render figures next to outputs (default)")
    p.add_argument("--no-figures", dest="figures", action="store_false")


def _collect_config(args):
    overrides = {}
    if getattr(args, "config", None):
        overrides.update(reports.parse_config_file(args.config))
    for key in ("n", "nilpotent", "zeta", "cap", "depth", "seed", "nu"):
        val = getattr(args, key, None)
        if val is not None:
            overrides[key] = val
    return overrides


def cmd_check(args) -> int:
    overrides = _collect_config(args)
    try:
        report = reports.run_suite(args.suite, overrides)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return 2
    text = reports.report_json(report)
    if args.report:
        out = Path(args.report)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
        if args.figures:
            from .figures import render_report_figure

            render_report_figure(report, out.with_suffix(".png"))
    sys.stdout.write(text)
    for check in report["checks"]:
        print(f"[{check['status']:>4}] {report['suite']}::{check['name']}",
              file=sys.stderr)
    return 0 if report["summary"]["fail"] == 0 else 1


def cmd_compute(args) -> int:
    needs = {"character": ["lam"], "whittaker": ["lam"], "star": ["x", "y"],
             "walgebra-basis": []}
    missing = [f for f in needs[args.what] if getattr(args, f) is None]
    if missing:
        flags = ", ".join("--lambda" if f == "lam" else f"--{f}"
                          for f in missing)
        print(f"error: compute {args.what} requires {flags}", file=sys.stderr)
        return 2
    outdir = Path(args.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    if args.what == "character":
        from .highest_weight import character, verma_truncation

        lam = _parse_weight(args.lam)
        if args.n is not None and args.n != len(lam):
            raise ValueError(f"lambda has length {len(lam)} but --n is {args.n}")
        M = verma_truncation(lam, args.depth, variant=args.variant)
        ch = character(M)
        (outdir / "character.csv").write_text(ch.to_csv(), encoding="utf-8")
        data = ch.to_json()
        (outdir / "character.json").write_text(_json_dump(data), encoding="utf-8")
        if args.figures:
            from .figures import render_character_figure

            render_character_figure(data, outdir / "character.png")
        print(f"wrote {outdir}/character.csv ({len(data['weights'])} rows)")
        return 0
    if args.what == "whittaker":
        return _whittaker_solve(args, outdir)
    if args.what == "walgebra-basis":
        return _walgebra_build(args, outdir / "walgebra-basis.json")
    if args.what == "star":
        from . import starprod as sp
        from .superalgebra import parse_element

        ctx = sp.poly_context_qn(args.n or 2)
        data = {"schema": "qwk-star/1", "product": "gutt"}
        factors = []
        for text in (args.x, args.y):
            elem = parse_element(ctx.n, text)
            poly = sp.PolyElement(ctx, {})
            for g, c in elem.terms.items():
                poly = poly + c * sp.poly_generator(ctx, g)
            factors.append(poly)
        prod = sp.gutt(factors[0], factors[1], cap=args.cap)
        data["x"], data["y"] = args.x, args.y
        data["result"] = prod.to_text()
        (outdir / "star.json").write_text(_json_dump(data), encoding="utf-8")
        print(data["result"])
        return 0
    print(f"unknown computation {args.what!r}", file=sys.stderr)
    return 2


def _whittaker_solve(args, outdir) -> int:
    from .highest_weight import verma_truncation
    from .whittaker import gamma_window, make_character, whittaker_vectors

    lam = _parse_weight(args.lam)
    n = len(lam)
    zeta = make_character(n, _parse_weight(args.zeta) if args.zeta else [])
    window = _parse_window(args.window)
    depth = args.depth if args.depth is not None else window[1]
    M = verma_truncation(lam, depth)
    if args.generalized:
        sol = gamma_window(M, zeta, window)
    else:
        sol = whittaker_vectors(M, zeta, window, strict=args.strict)
    data = sol.to_json()
    path = Path(outdir) / "whittaker.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_json_dump(data), encoding="utf-8")
    if args.figures:
        from .figures import render_window_figure

        render_window_figure(data, path.with_suffix(".png"))
    sys.stdout.write(_json_dump(data))
    return 0


def _walgebra_build(args, report_path) -> int:
    from . import walgebra as wa
    from .superalgebra import gen_name, parse_element

    n = args.n or 2
    nil = args.E or "principal"
    if nil in ("principal", "minimal"):
        datum = wa.nilpotent_datum(n, nil)
    else:
        datum = wa.nilpotent_datum(n, parse_element(n, nil))
    grading_report = wa.good_grading_check(datum.grading, datum.chi)
    symp = wa.build_symplectic(datum)
    m = wa.build_m(datum, symp)
    W = wa.w_invariants(datum, m, args.cap)
    want = {k: v for k, v in wa.sgE_kazhdan_dims(datum, args.cap).items() if v}
    data = {
        "schema": "qwk-walgebra/1",
        "n": n,
        "E": datum.E.to_text(),
        "cap": args.cap,
        "grading_blocks": {str(k): [gen_name(n, g) for g in v]
                           for k, v in datum.grading.blocks().items()},
        "axioms": {ax: grading_report[ax]["ok"] for ax in "abc"},
        "lagrangian": [gen_name(n, g) for g in symp.lagrangian],
        "gram": [[r, c, str(symp.gram_value(a, b))]
                 for r, a in enumerate(symp.space)
                 for c, b in enumerate(symp.space) if symp.gram_value(a, b)],
        "m_basis": [gen_name(n, g) for g in m.basis],
        "graded_dims": {str(k): v for k, v in W.graded_dims().items()},
        "sgE_dims": {str(k): v for k, v in want.items()},
        "certified": {
            "good_grading": grading_report["ok"],
            "invariance_verified": True,
            "dims_match_sgE": W.graded_dims() == want,
        },
        "basis": [b.to_json() for b in W.basis],
    }
    report_path = Path(report_path)
    report_path.parent.mkdir(parents=True, exist_ok=True)
    report_path.write_text(_json_dump(data), encoding="utf-8")
    if args.figures:
        from .figures import render_dims_figure

        render_dims_figure(data["graded_dims"],
                           f"W-algebra graded dims (n={n}, cap={args.cap})",
                           report_path.with_suffix(".png"))
    print(f"wrote {report_path} (basis size "
          f"{sum(W.graded_dims().values())}, certified "
          f"{data['certified']['dims_match_sgE']})")
    return 0 if data["certified"]["dims_match_sgE"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwk",
        description="Exact computer algebra for the queer Lie superalgebra "
                    "q(n): verification suites, characters, Whittaker "
                    "solvers, and truncated finite W-algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run a named verification suite")
    p.add_argument("suite", choices=sorted(reports.SUITES))
    p.add_argument("--n", type=int)
    p.add_argument("--E", dest="nilpotent",
                   help="nilpotent: principal, minimal, or element text")
    p.add_argument("--zeta", help="comma-separated values on e(i,i+1)")
    p.add_argument("--cap", type=int, help="Kazhdan degree cap")
    p.add_argument("--depth", type=int, help="weight truncation depth")
    p.add_argument("--nu", help="dominant-weight metadata recorded in the report")
    p.add_argument("--report", help="write the JSON report here")
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("compute", help="computation commands")
    p.add_argument("what",
                   choices=["character", "whittaker", "walgebra-basis", "star"])
    p.add_argument("--lambda", dest="lam", help="weight, e.g. 1,0")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--variant", choices=["Verma", "N"], default="Verma")
    p.add_argument("--zeta")
    p.add_argument("--window", default="0:3", help="height range a:b")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--generalized", action="store_true",
                   help="generalized-eigenvector window solve")
    p.add_argument("--n", type=int)
    p.add_argument("--E")
    p.add_argument("--cap", type=int, default=4)
    p.add_argument("--x", help="first factor for star products")
    p.add_argument("--y", help="second factor for star products")
    p.add_argument("--out", help="output directory")
    _add_common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("whittaker", help="Whittaker window solver")
    wsub = p.add_subparsers(dest="action", required=True)
    ps = wsub.add_parser("solve")
    ps.add_argument("--lambda", dest="lam", required=True)
    ps.add_argument("--zeta")
    ps.add_argument("--window", default="0:3")
    ps.add_argument("--strict", action="store_true")
    ps.add_argument("--generalized", action="store_true")
    ps.add_argument("--depth", type=int)
    ps.add_argument("--out", default=".")
    _add_common(ps)
    ps.set_defaults(func=lambda a: _whittaker_solve(a, Path(a.out)))

    p = sub.add_parser("walgebra", help="W-algebra builder")
    wsub = p.add_subparsers(dest="action", required=True)
    pb = wsub.add_parser("build")
    pb.add_argument("--n", type=int, required=True)
    pb.add_argument("--E", required=True,
                    help="odd nilpotent: principal, minimal, or element text")
    pb.add_argument("--cap", type=int, default=4)
    pb.add_argument("--report", default="walgebra.json")
    _add_common(pb)
    pb.set_defaults(func=lambda a: _walgebra_build(a, a.report))

    return parser


def main(argv=None) -> int:
    from .superalgebra import QwkError

    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, QwkError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
