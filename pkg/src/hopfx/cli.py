"""``hopfx`` command line: build, validate and check the constructions on JSON algebra files.

Exit status is 0 when every requested check holds, 1 when one fails and 2 on
usage or input errors.  The JSON report goes to stdout, a readable summary to
stderr.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .braided_dual import build_braided_dual, check_k_reflection
from .doubles import (
    build_elliptic,
    build_heisenberg,
    check_elliptic_relation,
    check_T_hexagons,
    elliptic_witness,
)
from .exactfield import Field
from .hopf import (
    InternalConventionError,
    NotAGroup,
    cyclic_group,
    dual_hopf,
    example_drinfeld_double,
    example_group_algebra,
    example_sweedler,
    symmetric_group,
    trivial_R,
    validate_hopf,
)
from .quasitriangular import QTStructure, find_ribbon, validate_qt
from .report import Report
from .reps import (
    NoRibbon,
    NotFactorizable,
    build_braid_rep,
    build_mcg_action,
    check_fourier,
    check_mcg_relations,
    check_presentation,
    fourier_transform,
)
from .schema import SchemaError, dump_algebra, dump_hopf, dump_matrix, load_hopf, read_json, write_json
from .tensorcore import NotInvertible

DEEP_DIM = 4


class UsageError(Exception):
    pass


class Refused(Exception):
    """Input failed validation; carries the validation report."""

    def __init__(self, report: Report):
        super().__init__("input failed validation")
        self.report = report


def _group_table(args):
    if args.cyclic is not None:
        return cyclic_group(args.cyclic), f"Z{args.cyclic}"
    if args.symmetric is not None:
        return symmetric_group(args.symmetric), f"S{args.symmetric}"
    raise UsageError("give --cyclic N or --symmetric N")


def _load(args) -> tuple[QTStructure, Report]:
    data = read_json(args.file)
    H, R, ribbon = load_hopf(data)
    rep = validate_hopf(H)
    if R is None:
        R = trivial_R(H)
    Q = None
    if rep.ok:
        try:
            Q = QTStructure.build(H, R, ribbon)
        except NotInvertible:
            rep.add("R_invertible", ())
        else:
            rep.extend(validate_qt(Q))
    if not rep.ok and args.command != "validate":
        # --force-report carries on past R-matrix failures; a broken Hopf structure stops here
        if Q is None or not args.force_report:
            names = ", ".join(c.name for c in rep.failures())
            print(f"hopfx: {args.file} fails validation ({names})", file=sys.stderr)
            raise Refused(rep)
    return Q, rep


def _need_deep(Q: QTStructure, args, what: str) -> None:
    if Q.dim > DEEP_DIM and not args.deep:
        raise UsageError(f"{what} for dimension {Q.dim} is gated behind --deep")


def _samples(args) -> int:
    return 10_000 if args.deep else 2_000


def cmd_validate(args) -> Report:
    _, rep = _load(args)
    return rep


def cmd_example(args) -> Report:
    F = Field(args.conductor)
    ribbon = None
    if args.kind == "group":
        table, name = _group_table(args)
        H = example_group_algebra(table, F, name=f"Q[{name}]")
        R = trivial_R(H)
    elif args.kind == "sweedler":
        H, R = example_sweedler(F.parse(args.lam), F)
    else:
        table, name = _group_table(args)
        H, R = example_drinfeld_double(table, F, name=f"D({name})")
    Q = QTStructure.build(H, R)
    if args.ribbon:
        ribbon = find_ribbon(Q)
    text = write_json(dump_hopf(H, R, ribbon), args.output)
    if args.output is None:
        sys.stdout.write(text)
        args.stdout_taken = True
    rep = validate_hopf(H)
    rep.extend(validate_qt(Q))
    return rep


def cmd_build(args) -> Report:
    Q, rep = _load(args)
    if args.what == "dual":
        D = dual_hopf(Q.H)
        out = dump_hopf(D)
        rep.extend(validate_hopf(D), "dual.")
    elif args.what == "braided-dual":
        B = build_braided_dual(Q, args.k)
        out = dump_algebra(B.algebra)
        rep.extend(check_k_reflection(Q, args.k, B))
    elif args.what == "elliptic":
        E = build_elliptic(Q, args.k, samples=_samples(args), seed=args.seed)
        rep.add(f"elliptic_associativity[k={args.k}]", None)
        rep.extend(check_elliptic_relation(E))
        out = dump_algebra(E)
    else:
        Dh = build_heisenberg(Q, samples=_samples(args), seed=args.seed)
        rep.add("heisenberg_associativity", None)
        rep.add("coideal", None)
        rep.add("heisenberg_elliptic_relation", elliptic_witness(Q, Dh.X, Dh.Y))
        out = dump_algebra(Dh)
    if args.output:
        write_json(out, args.output)
    return rep


def cmd_check(args) -> Report:
    Q, rep = _load(args)
    if args.what == "reflection":
        rep.extend(check_k_reflection(Q, args.k))
    elif args.what == "elliptic":
        E = build_elliptic(Q, args.k, samples=_samples(args), seed=args.seed)
        rep.add(f"elliptic_associativity[k={args.k}]", None)
        rep.extend(check_elliptic_relation(E))
    elif args.what == "hexagons":
        rep.extend(check_T_hexagons(Q))
    else:
        _need_deep(Q, args, "braid representations")
        E = build_elliptic(Q, args.k, samples=_samples(args), seed=args.seed)
        rep.extend(check_presentation(build_braid_rep(Q, E, args.n)), f"n={args.n}.")
    return rep


def cmd_rep(args) -> Report:
    Q, rep = _load(args)
    _need_deep(Q, args, "braid representations")
    E = build_elliptic(Q, args.k, samples=_samples(args), seed=args.seed)
    br = build_braid_rep(Q, E, args.n)
    rep.extend(check_presentation(br))
    if args.output:
        F = Q.H.field
        mats = {}
        for i, m in enumerate(br.X, 1):
            mats[f"X{i}"] = dump_matrix(m, F, f"X{i}")
        for i, m in enumerate(br.Y, 1):
            mats[f"Y{i}"] = dump_matrix(m, F, f"Y{i}")
        for i, m in enumerate(br.sigma, 1):
            mats[f"sigma{i}"] = dump_matrix(m, F, f"sigma{i}")
        write_json(mats, args.output)
    return rep


def cmd_mcg(args) -> Report:
    Q, rep = _load(args)
    _need_deep(Q, args, "the SL2(Z)~ action")
    act = build_mcg_action(Q)
    if args.action == "verify":
        rep.extend(check_mcg_relations(act))
    else:
        if args.which not in ("A", "B"):
            raise UsageError("mcg apply takes A or B")
        M = act.A if args.which == "A" else act.B
        mat = dump_matrix(M, Q.H.field, args.which)
        if args.output:
            write_json(mat, args.output)
        else:
            sys.stdout.write(write_json(mat))
            args.stdout_taken = True
        rep.add(f"{args.which}_bijective", None if M.rank() == M.dst_dim else (M.rank(),))
    return rep


def cmd_fourier(args) -> Report:
    Q, rep = _load(args)
    _need_deep(Q, args, "the Fourier transform")
    if Q.ribbon is None:
        Q.ribbon = find_ribbon(Q)
    try:
        data = fourier_transform(Q)
    except (NotFactorizable, NoRibbon) as e:
        rep.add("fourier_preconditions", (type(e).__name__,))
        return rep
    rep.extend(check_fourier(data))
    if args.output:
        write_json(dump_matrix(data.F, Q.H.field, "F"), args.output)
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopfx", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"hopfx {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--deep", action="store_true", help="allow the expensive checks on large inputs")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled associativity checks")
    common.add_argument("--force-report", action="store_true", help="report on inputs that fail validation")
    common.add_argument("--timings", action="store_true", help="include timings in the JSON report")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="run the Hopf and R-matrix validators")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("example", parents=[common], help="write a built-in example as JSON")
    s.add_argument("kind", choices=["group", "sweedler", "double"])
    s.add_argument("--cyclic", type=int)
    s.add_argument("--symmetric", type=int)
    s.add_argument("--lambda", dest="lam", default="0")
    s.add_argument("--conductor", type=int, default=1)
    s.add_argument("--ribbon", action="store_true", help="search for and store a ribbon element")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_example)

    s = sub.add_parser("build", parents=[common], help="build a derived algebra and export it")
    s.add_argument("what", choices=["dual", "braided-dual", "elliptic", "heisenberg"])
    s.add_argument("file")
    s.add_argument("-k", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("check", parents=[common], help="check one family of identities")
    s.add_argument("what", choices=["reflection", "elliptic", "hexagons", "presentation"])
    s.add_argument("file")
    s.add_argument("-k", type=int, default=0)
    s.add_argument("-n", type=int, default=2)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("rep", parents=[common], help="braid group representations")
    s.add_argument("kind", choices=["braid"])
    s.add_argument("file")
    s.add_argument("-n", type=int, default=2)
    s.add_argument("-k", type=int, default=0)
    s.add_argument("--module", choices=["regular"], default="regular")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_rep)

    s = sub.add_parser("mcg", parents=[common], help="the SL2(Z)~ action on E^(1)")
    s.add_argument("action", choices=["apply", "verify"])
    s.add_argument("which", nargs="?")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_mcg)

    s = sub.add_parser("fourier", parents=[common], help="quantum Fourier transform on the Heisenberg double")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_fourier)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "mcg" and args.action == "verify" and args.which is not None:
        # "mcg verify FILE" parses FILE into ``which``
        parser.error("mcg verify takes only a file")
    try:
        rep = args.func(args)
    except (UsageError, SchemaError, NotAGroup, FileNotFoundError, ValueError) as e:
        print(f"hopfx: error: {e}", file=sys.stderr)
        return 2
    except Refused as e:
        rep = e.report
    except (InternalConventionError, NotInvertible) as e:
        print(f"hopfx: check failed: {e}", file=sys.stderr)
        rep = Report()
        rep.add(type(e).__name__, (str(e),))
    if not getattr(args, "stdout_taken", False):
        sys.stdout.write(rep.to_json(timings=args.timings) + "\n")
    print(rep.summary(), file=sys.stderr)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
