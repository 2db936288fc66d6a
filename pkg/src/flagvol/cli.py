"""Command-line front end.

Verbs: compute, dual, verify, gen, selftest. Exit codes: 0 success,
1 validation or property failure, 2 degenerate decoration or exhausted
retries, 3 unparseable input, 64 usage.
"""

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    BranchMismatchError,
    DegenerateError,
    NonFiniteError,
    ParseError,
    ValidationError,
)
from .invariants import compute_invariants, dual_decoration, relation_report
from .ptolemy import Decoration, ptolemy_all
from .flags import tetrahedron_from_decoration
from .selftest import run_selftest
from .triangulation import (
    check_decoration_consistency,
    gen_boundary_4simplex,
    gen_random_single,
    parse,
    serialize,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_DEGENERATE = 2
EXIT_PARSE = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="flagvol",
                     description="Invariants of decorated triangulations.")
    sub = parser.add_subparsers(dest="verb", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("compute", help="compute invariants of a complex")
    p.add_argument("file", type=Path)
    p.add_argument("--invariant", choices=["bfg", "gtz", "cchat", "all"],
                   default="all")
    p.add_argument("--json", action="store_true", dest="as_json")

    p = sub.add_parser("dual", help="apply an involution to all decorations")
    p.add_argument("file", type=Path)
    p.add_argument("--involution", choices=["cartan", "transpose-inverse"],
                   required=True)
    p.add_argument("-o", "--output", type=Path, required=True)

    p = sub.add_parser("verify", help="run validations on a complex")
    p.add_argument("file", type=Path)
    p.add_argument("--checks", default="gluing,coset,degenerate,relations")

    p = sub.add_parser("gen", help="generate a test complex")
    p.add_argument("--kind", choices=["boundary4simplex", "single"],
                   required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", type=Path, required=True)

    p = sub.add_parser("selftest", help="run the property battery")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--trials", type=int, default=1000)

    return parser


def _read_complex(path: Path):
    try:
        data = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse(data)


def _cmd_compute(args) -> int:
    report = compute_invariants(_read_complex(args.file))
    if args.as_json:
        doc = report.to_dict()
        if args.invariant != "all":
            keep = {"bfg": "vol_bfg", "gtz": "vol_gtz", "cchat": "cchat"}
            key = keep[args.invariant]
            doc = {key: doc[key], "cchat_lattice": doc["cchat_lattice"]} \
                if args.invariant == "cchat" else {key: doc[key]}
        print(json.dumps(doc, indent=1))
        return EXIT_OK
    if args.invariant == "bfg":
        print(f"{report.vol_bfg:.17g}")
    elif args.invariant == "gtz":
        print(f"{report.vol_gtz:.17g}")
    elif args.invariant == "cchat":
        print(f"{report.cchat.real:.17g} {report.cchat.imag:+.17g}i "
              f"(mod {report.cchat_lattice:.17g})")
    else:
        print(f"vol_bfg: {report.vol_bfg:.15g}")
        print(f"vol_gtz: {report.vol_gtz:.15g}")
        print(f"cchat: {report.cchat.real:.15g} {report.cchat.imag:+.15g}i "
              f"(mod {report.cchat_lattice:.15g})")
        print(f"residual |vol_bfg + vol_gtz/4|: {report.residual_quarter:.3e}")
        print("per-tetrahedron:")
        for t in report.per_tet:
            derived = " (bfg derived)" if t.bfg_derived else ""
            print(f"  id {t.id} orient {t.orientation:+d}: "
                  f"vol_bfg={t.vol_bfg:.15g} vol_gtz={t.vol_gtz:.15g} "
                  f"cchat={t.cchat.real:.15g}{t.cchat.imag:+.15g}i{derived}")
        for msg in report.flags:
            print(f"note: {msg}")
    return EXIT_OK


def _cmd_dual(args) -> int:
    c = _read_complex(args.file)
    kind = args.involution.replace("-", "_")
    out = dual_decoration(c, kind)
    args.output.write_text(serialize(out), encoding="utf-8")
    print(f"wrote {args.output}")
    return EXIT_OK


def _check_degenerate(c) -> list:
    problems = []
    for t in c.tetrahedra:
        try:
            if isinstance(t.payload, Decoration):
                ptolemy_all(t.payload)
                tetrahedron_from_decoration(t.payload.matrices)
        except DegenerateError as exc:
            problems.append(f"tetrahedron {t.id}: {exc}")
    return problems


def _cmd_verify(args) -> int:
    wanted = [w.strip() for w in args.checks.split(",") if w.strip()]
    known = {"gluing", "coset", "degenerate", "relations"}
    unknown = [w for w in wanted if w not in known]
    if unknown:
        raise ValidationError(f"unknown checks: {unknown}")

    try:
        c = _read_complex(args.file)
    except ValidationError as exc:
        # Structure itself is broken; report it as the gluing check failing.
        print(f"FAIL gluing: {exc}")
        return EXIT_FAIL

    failures = 0
    if "gluing" in wanted:
        print("PASS gluing: structural invariants hold")
    if "coset" in wanted:
        if c.all_matrix_payloads():
            rep = check_decoration_consistency(c)
            if rep.consistent:
                print(f"PASS coset: {rep.checked_pairs} vertex pairs consistent")
            else:
                failures += 1
                print(f"FAIL coset: {len(rep.violations)} violation(s)")
                for v in rep.violations:
                    print(f"  gluing {v.gluing}: vertex {v.vertex_a} vs "
                          f"{v.vertex_b} not coset-equivalent")
        else:
            print("PASS coset: skipped (coordinate payloads)")
    if "degenerate" in wanted:
        problems = _check_degenerate(c)
        if problems:
            failures += 1
            print("FAIL degenerate:")
            for msg in problems:
                print(f"  {msg}")
        else:
            print("PASS degenerate: all tetrahedra nondegenerate")
    if "relations" in wanted:
        if c.all_matrix_payloads():
            rep = relation_report(c)
            for chk in rep.checks:
                status = "PASS" if chk.passed else "FAIL"
                print(f"{status} relations/{chk.name}: residual "
                      f"{chk.residual:.3e} (tol {chk.tol:.1e})")
            if not rep.all_passed:
                failures += 1
        else:
            print("PASS relations: skipped (coordinate payloads)")
    return EXIT_FAIL if failures else EXIT_OK


def _cmd_gen(args) -> int:
    if args.kind == "boundary4simplex":
        c = gen_boundary_4simplex(args.seed)
    else:
        c = gen_random_single(args.seed)
    args.output.write_text(serialize(c), encoding="utf-8")
    print(f"wrote {args.output}")
    return EXIT_OK


def _cmd_selftest(args) -> int:
    report = run_selftest(tol=args.tol, trials=args.trials)
    for line in report.lines():
        print(line)
    if report.passed:
        print("selftest: all properties within tolerance")
        return EXIT_OK
    failing = [r.name for r in report.results if not r.passed]
    print(f"selftest: FAILED properties: {', '.join(failing)}")
    return EXIT_FAIL


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "compute": _cmd_compute,
        "dual": _cmd_dual,
        "verify": _cmd_verify,
        "gen": _cmd_gen,
        "selftest": _cmd_selftest,
    }
    try:
        return handlers[args.verb](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (DegenerateError, BranchMismatchError, NonFiniteError) as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
