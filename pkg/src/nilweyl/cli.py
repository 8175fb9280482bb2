"""Command-line entry point: ``nilweyl run CHECK``, ``nilweyl verify FILE``, ``nilweyl export NAME``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import bimodule as bm
from . import config
from .checks import check_names, run_check
from .report import dumps, verify_report

EXPORTABLE = {
    "A": lambda n: bm.regular_bimodule(bm.alg.nil(n), name=f"A_{n}"),
    "X": bm.X_bimodule,
    "D": bm.D_bimodule,
    "I": bm.I_bimodule,
    "P": bm.projective_module,
    "L": bm.simple_module,
    "Apsi": bm.psi_twisted,
}


def _sizes(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilweyl",
                                     description="Exact checks for nilCoxeter algebras and the categorified Weyl algebra.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a named check")
    run.add_argument("check", choices=check_names() + ["all"])
    run.add_argument("--n", type=int, help="single block size (weyl, graded-weyl, wreath-weyl)")
    run.add_argument("--n-max", type=int, help="largest block size to sweep")
    run.add_argument("--k", type=int, help="nilpotency order of z (wreath-weyl)")
    run.add_argument("--block", type=_sizes, help="explicit block sizes, e.g. 1,1,1,1")
    run.add_argument("--bound", type=int, help="dimension bound for indecomposable / wreath-frobenius")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--format", choices=["text", "json"], default="text")
    run.add_argument("--max-dim", type=int, help=f"refuse algebras larger than this "
                                                 f"(default {config.DEFAULT_MAX_DIM}, env NILWEYL_MAX_DIM)")
    run.add_argument("--no-certificate", action="store_true", help="omit certificate matrices from JSON")
    run.add_argument("-o", "--output", help="write the report here instead of stdout")

    ver = sub.add_parser("verify", help="re-verify the certificates in a JSON report")
    ver.add_argument("report")

    exp = sub.add_parser("export", help="print a bimodule in the text fixture format")
    exp.add_argument("name", choices=sorted(EXPORTABLE))
    exp.add_argument("n", type=int)

    sub.add_parser("list", help="list registered checks")
    return parser


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_run(args) -> int:
    if args.max_dim is not None:
        config.set_max_dim(args.max_dim)
    try:
        reports = run_check(args.check, n=args.n, n_max=args.n_max, k=args.k, block=args.block,
                            seed=args.seed, bound=args.bound)
    except config.DimensionLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        _emit(dumps(reports, with_certificate=not args.no_certificate), args.output)
    else:
        lines = [r.to_text() for r in reports]
        passed = sum(r.passed for r in reports)
        lines.append(f"{passed}/{len(reports)} checks passed")
        _emit("\n".join(lines), args.output)
    return 0 if all(r.passed for r in reports) else 1


def cmd_verify(args) -> int:
    with open(args.report) as fh:
        doc = json.load(fh)
    docs = doc if isinstance(doc, list) else [doc]
    status = 0
    for d in docs:
        ok, problems = verify_report(d)
        nmaps = len(d.get("certificate", {}).get("maps", []))
        label = f"{d.get('check')}({', '.join(f'{k}={v}' for k, v in d.get('params', {}).items())})"
        if ok:
            print(f"[OK] {label}: {nmaps} certificate map(s) re-verified; verdict {d.get('verdict')}")
        else:
            status = 1
            print(f"[BAD] {label}: " + "; ".join(problems))
        if d.get("verdict") != "pass":
            status = 1
    return status


def cmd_export(args) -> int:
    print(bm.to_text(EXPORTABLE[args.name](args.n)), end="")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args)
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "export":
        return cmd_export(args)
    print("\n".join(check_names()))
    return 0


if __name__ == "__main__":
    sys.exit(main())
