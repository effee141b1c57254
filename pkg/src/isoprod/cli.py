"""Command-line interface: exact checks, JSON or text reports, stable output.

Commands:

    classify        enumerate quotient families for target invariants
    orbits          braid/automorphism orbits of genus-0 generating vectors
    curve check     certify one explicit curve family member
    xiao            the ruled-model Diophantine case solver
    plane-model     certify the ruled branch model and its plane decomposition
    resolve         canonical resolution of a branch model from a JSON file
    accola          check the partition identity on supplied genera
    zeuthen-segre   solve c2 = (2g-2) sum(1 - 1/n_i)
    reproduce-paper run every headline computation and emit one report

Exit status: 0 on success, 1 when a requested certificate fails, 2 on usage
errors.  JSON output is canonical (sorted keys, no timestamps), so identical
inputs give byte-identical reports for any worker count.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import families, genvec, hurwitzmoves, isoclass
from .doublecover import (AmbientModel, BranchCurveModel, SingularityNode,
                          bicanonical_ledger, branch_class_solver,
                          canonical_resolution, plane_model_certificate,
                          select_feasible_i, xiao_case_solver)
from .genvec import Signature
from .smallgroups import DEFAULT_ORDER_CAP, build_group

SCHEMA = "isoprod.report/1"


@dataclass
class RunConfig:
    fmt: str = "json"
    workers: int = 1
    group_cap: int = DEFAULT_ORDER_CAP
    orbit_cap: int = 10 ** 6
    seed: int = 0


class UsageError(ValueError):
    pass


def _render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2)
    lines: list[str] = []
    _render_text(payload, lines, 0)
    return "\n".join(lines)


def _render_text(value, lines: list[str], depth: int, label: str = "") -> None:
    pad = "  " * depth
    head = f"{pad}{label}: " if label else pad
    if isinstance(value, dict):
        if label:
            lines.append(f"{pad}{label}:")
        for key in sorted(value):
            _render_text(value[key], lines, depth + (1 if label else 0), str(key))
    elif isinstance(value, list):
        if label:
            lines.append(f"{pad}{label}:")
        for item in value:
            if isinstance(item, (dict, list)):
                _render_text(item, lines, depth + 1)
                lines.append("")
            else:
                lines.append(f"{pad}  - {item}")
        while lines and lines[-1] == "":
            lines.pop()
    else:
        lines.append(f"{head}{value}")


def _emit(payload: dict, cfg: RunConfig) -> None:
    print(_render(payload, cfg.fmt))


# -- command implementations -----------------------------------------------------


def _cmd_classify(args, cfg: RunConfig) -> int:
    result = isoclass.classify(args.pg, args.q, args.k2,
                               bicanonical_deg2=args.bicanonical_deg2,
                               group_cap=cfg.group_cap, workers=cfg.workers,
                               orbit_cap=cfg.orbit_cap)
    payload = {"schema": SCHEMA, "command": "classify", **result.as_dict()}
    _emit(payload, cfg)
    return 0 if result.passed else 1


def _cmd_orbits(args, cfg: RunConfig) -> int:
    group = build_group(args.group, cap=cfg.group_cap)
    sig = Signature.parse(args.signature)
    exclude = frozenset(group.index(name) for name in args.exclude)
    vectors = genvec.enumerate_vectors(group, sig, exclude=exclude)
    report = hurwitzmoves.hurwitz_orbits(vectors, use_aut=args.aut,
                                         workers=cfg.workers, orbit_cap=cfg.orbit_cap)
    payload = {
        "schema": SCHEMA,
        "command": "orbits",
        "group": group.spec,
        "signature": str(sig),
        "excluded": sorted(group.names[i] for i in exclude),
        "vector_count": len(vectors),
        "aut_used": report.aut_used,
        "orbit_count": report.orbit_count,
        "orbit_sizes": report.orbit_sizes,
        "closure_sizes": report.closure_sizes,
        "representatives": [v.names() for v in report.representatives],
        "move_log_available": report.move_log_available,
    }
    _emit(payload, cfg)
    return 0


def _parse_params(pairs: list[str]) -> dict[str, Fraction]:
    out = {}
    for pair in pairs:
        key, _, val = pair.partition("=")
        if not key or not val:
            raise UsageError(f"--param expects name=value, got {pair!r}")
        try:
            out[key] = Fraction(val)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"parameter {key} is not rational: {val!r}") from exc
    return out


def _cmd_curve(args, cfg: RunConfig) -> int:
    if args.curve_command != "check":
        raise UsageError("curve supports the single subcommand 'check'")
    params = _parse_params(args.param)
    cert = families.certify_family(args.family, **params)
    payload = {"schema": SCHEMA, "command": "curve check", **cert.as_dict()}
    _emit(payload, cfg)
    return 0 if cert.passed else 1


def _cmd_xiao(args, cfg: RunConfig) -> int:
    sols = xiao_case_solver(args.case, args.k2, args.delta, args.i)
    payload = {
        "schema": SCHEMA,
        "command": "xiao",
        "case": args.case,
        "solutions": [s.as_dict() for s in sols],
    }
    if args.case == "A3" and args.i is None:
        payload["feasible_i"] = select_feasible_i(args.k2, args.delta)
    _emit(payload, cfg)
    return 0


def _cmd_plane_model(args, cfg: RunConfig) -> int:
    cert = plane_model_certificate(args.family, args.e)
    payload = {"schema": SCHEMA, "command": "plane-model", **cert.as_dict()}
    _emit(payload, cfg)
    return 0 if cert.passed else 1


def _node_from_json(data: dict, inherited: int = 0) -> SingularityNode:
    """Node from either the even coefficient ``b`` (taken literally) or the raw
    curve ``multiplicity``.  A raw odd multiplicity leaves one residual branch
    component on the exceptional curve, so immediately infinitely-near raw
    multiplicities are raised by one: a [5,5]-point entered as 5 over 5 gets
    coefficients (4, 6)."""
    if "b" in data:
        b = int(data["b"])
        child_carry = 0
    elif "multiplicity" in data:
        m = int(data["multiplicity"]) + inherited
        b = m - (m % 2)
        child_carry = m % 2
    else:
        raise UsageError("singularity nodes need a 'b' or 'multiplicity' field")
    return SingularityNode(
        b=b,
        children=[_node_from_json(c, child_carry) for c in data.get("children", [])],
        tangent_to_fiber=bool(data.get("tangent_to_fiber", False)),
    )


def _cmd_resolve(args, cfg: RunConfig) -> int:
    try:
        data = json.loads(open(args.branch).read())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read branch model {args.branch}: {exc}") from exc
    amb = data.get("ambient", {})
    ambient = AmbientModel(amb.get("kind", ""), e=int(amb.get("e", 0)))
    cls = data.get("class", {})
    model = BranchCurveModel(
        ambient=ambient,
        k=int(cls.get("k", 0)),
        l=int(cls.get("l", 0)),
        degree=int(cls.get("degree", 0)),
        singularities=[_node_from_json(n) for n in data.get("singularities", [])],
    )
    ledger = canonical_resolution(model)
    payload = {"schema": SCHEMA, "command": "resolve", "ledger": ledger.as_dict()}
    _emit(payload, cfg)
    return 0


def _cmd_accola(args, cfg: RunConfig) -> int:
    parts = []
    for chunk in args.parts.split(","):
        n, _, g = chunk.partition(":")
        try:
            parts.append((int(n), int(g)))
        except ValueError as exc:
            raise UsageError(f"--parts expects n:g pairs, got {chunk!r}") from exc
    report = genvec.accola_check(args.genus, parts, args.n0, args.g0)
    payload = {
        "schema": SCHEMA,
        "command": "accola",
        "lhs": report.lhs,
        "rhs": report.rhs,
        "pass": report.passed,
    }
    _emit(payload, cfg)
    return 0 if report.passed else 1


def _cmd_zeuthen_segre(args, cfg: RunConfig) -> int:
    sols = isoclass.multiple_fiber_solutions(args.c2, args.g_min, args.g_max)
    payload = {
        "schema": SCHEMA,
        "command": "zeuthen-segre",
        "c2": args.c2,
        "solutions": [{"g": s.g_f, "multiplicities": list(s.orders)} for s in sols],
    }
    _emit(payload, cfg)
    return 0


def _cmd_reproduce(args, cfg: RunConfig) -> int:
    payload = paper_report(cfg)
    _emit(payload, cfg)
    return 0 if payload["pass"] else 1


def paper_report(cfg: RunConfig) -> dict:
    """Run every headline computation and aggregate one pass/fail report."""
    checks: list[dict] = []

    def check(name: str, passed: bool, detail: str) -> None:
        checks.append({"check": name, "pass": bool(passed), "detail": detail})

    # 1. the multiple-fiber solutions pinning g(F)
    sols = isoclass.multiple_fiber_solutions(4, 3)
    expected = [(3, (2, 2)), (4, (3,)), (5, (2,))]
    check("fiber-solutions", [(s.g_f, s.orders) for s in sols] == expected,
          f"c2=4, g>=3 gives {[(s.g_f, list(s.orders)) for s in sols]}")

    # 2. the classification
    result = isoclass.classify(1, 1, 8, bicanonical_deg2=True,
                               group_cap=cfg.group_cap, workers=cfg.workers,
                               orbit_cap=cfg.orbit_cap)
    triples = [(f.group_spec, f.g_f) for f in result.families]
    check("three-families", triples == [("C2^2", 3), ("S3", 4), ("D4", 5)],
          f"families {triples}")
    excluded = {e[0] for e in result.exclusion_log}
    check("exclusions", {"C4", "C6", "Q8"} <= excluded,
          f"excluded {sorted(excluded)}")
    check("connected-families", all(f.f_side_orbit_count == 1 for f in result.families),
          f"orbit counts {[f.f_side_orbit_count for f in result.families]}")
    dims = [f.dimension for f in result.families]
    check("moduli-dimensions", dims == [5, 4, 4], f"dimensions {dims}")

    # 3. curve certificates, plus the dihedral partition identities on the
    # genus-0-side curves of families II and III
    curve_reports = {}
    for label in families.FAMILIES:
        cert = families.certify_family(label)
        curve_reports[label] = cert.as_dict()
        check(f"curve-{label}", cert.passed,
              f"curve certificate for family {label}")
    fam2 = result.families[1]
    vf2 = fam2.example_pair.vec_f
    g2 = vf2.group
    g_r = genvec.quotient_genus(vf2, g2.cyclic_subgroup(g2.index("(123)")))
    g_1 = genvec.quotient_genus(vf2, g2.cyclic_subgroup(g2.index("(12)")))
    rep = genvec.accola_dihedral(4, 0, 3, g_r, g_1)
    check("partition-identity-II", rep.passed and (g_r, g_1) == (2, 1),
          f"4 + 0 = {g_r} + 2*{g_1}")
    fam3 = result.families[2]
    vf3 = fam3.example_pair.vec_f
    g3 = vf3.group
    g_r3 = genvec.quotient_genus(vf3, g3.cyclic_subgroup(g3.index("r")))
    g_s = genvec.quotient_genus(vf3, g3.cyclic_subgroup(g3.index("s")))
    g_rs = genvec.quotient_genus(vf3, g3.cyclic_subgroup(g3.index("rs")))
    rep3 = genvec.accola_dihedral(5, 0, 4, g_r3, g_rs, g_s)
    check("partition-identity-III", rep3.passed and g_r3 == 2 and {g_s, g_rs} == {1, 2},
          f"5 + 0 = {g_r3} + {g_rs} + {g_s}")

    # 4. ruled-model case analysis
    a3 = select_feasible_i(8, 0)
    check("ruled-case-filter", a3 == [5], f"feasible fiber parameter(s): {a3}")
    xiao_table = {
        case: [s.as_dict() for s in xiao_case_solver(case, 8 if case != "A4" else 3, 0)]
        for case in ("A1", "A2", "A3", "A4")
    }
    a1 = xiao_table["A1"][0]
    check("ruled-case-A1", a1["beta_extra"] == [2, 2] and a1["r_prime_sq"] == 6,
          f"A1 forces two extra even points, (R')^2 = {a1['r_prime_sq']}")

    # 5. plane models and the involution ledger
    plane_reports = {}
    for label in families.FAMILIES:
        cert = plane_model_certificate(label, 1)
        plane_reports[label] = cert.as_dict()
        check(f"plane-model-{label}", cert.passed, f"ruled model certificate, family {label}")
    ledger = bicanonical_ledger(8, -4, 1, 8)
    check("involution-ledger", ledger.t == 12 and ledger.r_prime_sq == 0
          and ledger.cross_check_passed,
          f"t = {ledger.t}, (R')^2 = {ledger.r_prime_sq}")
    classes = branch_class_solver("plane-degree")
    check("plane-branch-degrees", classes["solutions"] == [4, 5],
          f"smooth plane branch degrees 2n with n in {classes['solutions']}")
    dp = branch_class_solver("quadric-or-delpezzo")
    check("del-pezzo-exclusion", not dp["integral"]
          and dp["solutions"] == [("5/2", "3"), ("7/2", "1")],
          f"non-integral branch classes {dp['solutions']}")

    return {
        "schema": SCHEMA,
        "command": "reproduce-paper",
        "classification": result.as_dict(),
        "curves": curve_reports,
        "plane_models": plane_reports,
        "xiao": xiao_table,
        "fiber_solutions": [{"g": s.g_f, "multiplicities": list(s.orders)} for s in sols],
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }


# -- argument parsing -------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    # global flags are accepted both before and after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"),
                        default=argparse.SUPPRESS)
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS)
    common.add_argument("--group-cap", type=int, default=argparse.SUPPRESS)
    common.add_argument("--orbit-cap", type=int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="recorded for reproducibility; commands are deterministic")

    parser = argparse.ArgumentParser(
        prog="isoprod",
        description="Exact classification checks for quotient surfaces of a "
                    "product of curves",
        parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_command(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_command("classify", help="enumerate families with target invariants")
    p.add_argument("--pg", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--bicanonical-deg2", action="store_true")
    p.set_defaults(run=_cmd_classify)

    p = add_command("orbits", help="braid/automorphism orbits of generating vectors")
    p.add_argument("--group", required=True)
    p.add_argument("--signature", required=True)
    p.add_argument("--exclude", action="append", default=[],
                   help="element name banned as a branch image (repeatable)")
    p.add_argument("--aut", action="store_true",
                   help="quotient by group automorphisms as well")
    p.set_defaults(run=_cmd_orbits)

    p = add_command("curve", help="curve family certificates")
    p.add_argument("curve_command", choices=("check",))
    p.add_argument("--family", required=True, choices=families.FAMILIES)
    p.add_argument("--param", action="append", default=[],
                   help="family parameter, e.g. --param a=4 (repeatable)")
    p.set_defaults(run=_cmd_curve)

    p = add_command("xiao", help="ruled-model Diophantine case solver")
    p.add_argument("--case", required=True, choices=("A1", "A2", "A3", "A4"))
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--delta", type=int, default=0)
    p.add_argument("--i", type=int, default=None)
    p.set_defaults(run=_cmd_xiao)

    p = add_command("plane-model", help="certify the ruled branch model")
    p.add_argument("--family", required=True, choices=families.FAMILIES)
    p.add_argument("--e", type=int, required=True)
    p.set_defaults(run=_cmd_plane_model)

    p = add_command("resolve", help="canonical resolution from a JSON branch model")
    p.add_argument("--branch", required=True, help="path to the branch model file")
    p.set_defaults(run=_cmd_resolve)

    p = add_command("accola", help="check the partition identity")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--n0", type=int, required=True)
    p.add_argument("--g0", type=int, required=True)
    p.add_argument("--parts", required=True, help="comma list of order:genus pairs")
    p.set_defaults(run=_cmd_accola)

    p = add_command("zeuthen-segre", help="solve the multiple-fiber equation")
    p.add_argument("--c2", type=int, required=True)
    p.add_argument("--g-min", type=int, default=2)
    p.add_argument("--g-max", type=int, default=None)
    p.set_defaults(run=_cmd_zeuthen_segre)

    p = add_command("reproduce-paper",
                       help="run every headline computation and report")
    p.set_defaults(run=_cmd_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(fmt=getattr(args, "format", "json"),
                    workers=max(1, getattr(args, "workers", 1)),
                    group_cap=getattr(args, "group_cap", DEFAULT_ORDER_CAP),
                    orbit_cap=getattr(args, "orbit_cap", 10 ** 6),
                    seed=getattr(args, "seed", 0))
    try:
        return args.run(args, cfg)
    except (UsageError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
