"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (rejected characteristic,
unsupported case, failed verification), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .jantzen import jantzen_sum
from .linkage import strongly_linked, up, upup
from .rootdata import (
    AlgebraSpecError, CharacteristicError, RootSystem, SuperlinkageError, UnsupportedCase,
    check_characteristic, root_system,
)
from .superweyl import (
    SizeGuardError, distinguished_element, enumerate_borels, expected_length, generators,
    group_order, verify_distinguished,
)
from .weights import Weight


class UsageError(Exception):
    pass


def _render(data, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)
    return "\n".join(_text_lines(data))


def _text_lines(data, indent: str = "") -> list[str]:
    out = []
    if isinstance(data, dict):
        for k in sorted(data):
            v = data[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                out.append(f"{indent}{k}:")
                out += _text_lines(v, indent + "  ")
            else:
                out.append(f"{indent}{k}: {_scalar(v)}")
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)) and not _flat(v):
                out.append(f"{indent}-")
                out += _text_lines(v, indent + "  ")
            else:
                out.append(f"{indent}- {_scalar(v)}")
    else:
        out.append(f"{indent}{_scalar(data)}")
    return out


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) or
                                       (isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x))
                                       for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


def _algebra(text: str) -> RootSystem:
    try:
        return root_system(text)
    except AlgebraSpecError as e:
        raise UsageError(str(e)) from e


def _weight(rs: RootSystem, text: str) -> Weight:
    try:
        w = Weight.parse(text)
    except ValueError as e:
        raise UsageError(f"bad weight {text!r}: {e}") from e
    if w.rank != rs.rank:
        raise UsageError(f"weight {text!r} has {w.rank} coordinates, {rs.spec.label} needs {rs.rank}")
    return w


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from e


def _root_json(rs: RootSystem, r) -> dict:
    return {"root": r.weight.strings(), "parity": r.parity, "kind": r.kind}


# --- subcommands -----------------------------------------------------------------

def cmd_roots(args) -> dict:
    rs = _algebra(args.algebra)
    rho0, rho1, rho = rs.weyl_vectors()
    out = {
        "algebra": rs.spec.label,
        "rank": rs.rank,
        "delta_size": rs.delta_size,
        "form": [[str(x) for x in row] for row in rs.form],
        "positive": [_root_json(rs, r) for r in rs.positive_sorted()],
        "simple": [r.weight.strings() for r in rs.simple],
        "extended_simple": [r.weight.strings() for r in rs.extended],
        "rho0": rho0.strings(),
        "rho1": rho1.strings(),
        "rho": rho.strings(),
    }
    if args.p is not None:
        check_characteristic(rs.spec, args.p)
        out["p"] = args.p
    return out


def cmd_borels(args) -> dict:
    rs = _algebra(args.algebra)
    atlas = enumerate_borels(rs)
    charts = atlas.charts if args.limit is None else atlas.charts[: args.limit]
    return {
        "algebra": rs.spec.label,
        "count": len(atlas),
        "charts": [{"index": i + 1, "simple": [r.weight.strings() for r in c.simple]}
                   for i, c in enumerate(charts)],
    }


def cmd_weyl(args) -> dict:
    rs = _algebra(args.algebra)
    atlas = enumerate_borels(rs)
    gens = generators(rs, atlas)
    out = {
        "algebra": rs.spec.label,
        "charts": len(atlas),
        "generators": [{"root": g.word[0].root.weight.strings(), "flavor": g.word[0].flavor,
                        "cycles": g.cycle_string()} for g in gens],
    }
    try:
        out["group_order"] = group_order(rs, atlas, gens, max_order=args.max_order)
    except SizeGuardError as e:
        out["group_order"] = None
        out["group_order_note"] = str(e)
    w0 = distinguished_element(rs, atlas)
    report = verify_distinguished(rs, w0)
    out["w0"] = {
        "word": [t.weight.strings() for t in w0.reduced.thetas],
        "length": len(w0.reduced),
        "expected_length": expected_length(rs),
        "cycles": w0.cycle_string(),
        "verified": report.ok,
    }
    return out


def cmd_jantzen(args) -> dict:
    rs = _algebra(args.algebra)
    lam = _weight(rs, args.weight)
    if args.depth_factor < 1:
        raise UsageError("--depth-factor must be at least 1")
    res = jantzen_sum(rs, args.p, lam, depth_factor=args.depth_factor)
    out = res.to_json()
    out.update({"algebra": rs.spec.label, "p": args.p, "weight": lam.strings(),
                "depth_factor": args.depth_factor})
    return out


def cmd_linkage(args) -> dict:
    rs = _algebra(args.algebra)
    lam = _weight(rs, getattr(args, "from"))
    mu = _weight(rs, args.to)
    if args.relation == "up":
        res = up(rs, args.p, mu, lam)
    elif args.relation == "strong":
        res = strongly_linked(rs, args.p, mu, lam)
    else:
        res = upup(rs, args.p, mu, lam, radius=args.radius)
    out = res.to_json()
    out.update({"algebra": rs.spec.label, "p": args.p, "relation": args.relation,
                "mu": mu.strings(), "lambda": lam.strings()})
    if res.witness is not None:
        out["validated"] = not res.witness.validate(rs, args.p)
    return out


def _suite_rankone(args) -> tuple[list[dict], bool]:
    from .rankone.modules import CASES, verify_base_change, verify_case_lemma
    primes = _int_list(args.p) if args.p else [3, 5]
    cases = _int_list(args.cases) if args.cases else list(CASES)
    rows, ok = [], True
    for p in primes:
        for case in cases:
            if case not in CASES:
                raise UsageError(f"unknown case {case}; expected 1, 2 or 3")
            for d in range(p):
                reports = [("lemma", verify_case_lemma(case, p, d))]
                reports += [(f"base-change c={c}", verify_base_change(case, p, d, c)) for c in (1, 2)]
                for kind, rep in reports:
                    row = {"suite": kind, "case": case, "p": p, "d": d, "pass": rep.ok}
                    if not rep.ok:
                        ok = False
                        row["failures"] = rep.failures()
                        row["dumps"] = rep.dumps
                    rows.append(row)
    return rows, ok


def _suite_distinguished(args) -> tuple[list[dict], bool]:
    names = args.algebra or ["gl(1|1)", "gl(1|2)", "gl(2|1)", "osp(1|2)", "spo(2|3)"]
    rows, ok = [], True
    for name in names:
        rs = _algebra(name)
        rep = verify_distinguished(rs, distinguished_element(rs))
        row = {"algebra": rs.spec.label, "pass": rep.ok}
        if not rep.ok:
            ok = False
            row["failures"] = rep.failures()
        rows.append(row)
    return rows, ok


def _suite_filtration(args) -> tuple[list[dict], bool]:
    from .rankone.filtration import compute_rank_one_filtration
    primes = _int_list(args.p) if args.p else [3, 5]
    rows, ok = [], True
    for name in ("gl(1|1)", "osp(1|2)"):
        rs = _algebra(name)
        for p in primes:
            for a in range(p):
                lam = Weight.of([a] + [0] * (rs.rank - 1))
                f = compute_rank_one_filtration(rs, p, lam)
                res = jantzen_sum(rs, p, lam)
                checks = {"sum": f.positive_sum() == res.character,
                          "depth": f.depth() == res.n_lambda,
                          "simple_top": f.top_quotient_is_simple()}
                good = all(checks.values())
                ok &= good
                rows.append({"algebra": rs.spec.label, "p": p, "weight": lam.strings(),
                             "pass": good, "checks": checks})
    return rows, ok


SUITES = {"rankone": _suite_rankone, "distinguished": _suite_distinguished,
          "filtration": _suite_filtration}


def cmd_verify(args) -> dict:
    rows, ok = SUITES[args.suite](args)
    return {"suite": args.suite, "pass": ok, "results": rows}


def _verify_text(data: dict) -> str:
    lines = []
    for row in data["results"]:
        status = "PASS" if row["pass"] else "FAIL"
        label = ", ".join(f"{k}={row[k]}" for k in sorted(row)
                          if k not in ("pass", "failures", "dumps", "checks"))
        lines.append(f"{status}  {label}")
        for f in row.get("failures", []):
            lines.append(f"      {f}")
        for name, dump in sorted(row.get("dumps", {}).items()):
            lines.append(f"      {name}:")
            lines += [f"        {x}" for x in dump.splitlines()]
    lines.append(f"suite {data['suite']}: {'PASS' if data['pass'] else 'FAIL'}")
    return "\n".join(lines)


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superlinkage",
        description="Root data, super Weyl groups, Jantzen sum formulas and linkage "
                    "for basic classical Lie superalgebras in characteristic p.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, algebra=True):
        if algebra:
            sp.add_argument("algebra", help="gl(m|n), sl(m|n), osp(M|N), D(2,1,a=<int>), F(4) or G(3)")
        sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = sub.add_parser("roots", help="roots, simple systems and Weyl vectors")
    common(sp)
    sp.add_argument("--p", type=int, help="also validate this characteristic")
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("borels", help="enumerate Borel charts")
    common(sp)
    sp.add_argument("--limit", type=int, help="print at most this many charts")
    sp.set_defaults(func=cmd_borels)

    sp = sub.add_parser("weyl", help="super Weyl group and its distinguished element")
    common(sp)
    sp.add_argument("--max-order", type=int, default=10**6, help="size guard for the group closure")
    sp.set_defaults(func=cmd_weyl)

    sp = sub.add_parser("jantzen", help="sum formula for a baby Verma module")
    common(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--weight", required=True, help="comma-separated coordinates, e.g. 1,-1/2,0")
    sp.add_argument("--depth-factor", type=int, default=1)
    sp.set_defaults(func=cmd_jantzen)

    sp = sub.add_parser("linkage", help="search for a chain descending from --from to --to")
    common(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--from", required=True, help="the upper weight lambda")
    sp.add_argument("--to", required=True, help="the lower weight mu")
    sp.add_argument("--relation", choices=("up", "upup", "strong"), default="strong")
    sp.add_argument("--radius", type=int, default=3, help="shift radius for --relation upup")
    sp.set_defaults(func=cmd_linkage)

    sp = sub.add_parser("verify", help="run a verification suite")
    common(sp, algebra=False)
    sp.add_argument("--suite", choices=sorted(SUITES), required=True)
    sp.add_argument("--p", help="comma-separated primes")
    sp.add_argument("--cases", help="comma-separated rank-one cases (1, 2, 3)")
    sp.add_argument("--algebra", action="append", help="algebra for the distinguished suite (repeatable)")
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        data = args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (CharacteristicError, UnsupportedCase, SizeGuardError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (SuperlinkageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.command == "verify" and args.format == "text":
        print(_verify_text(data))
    else:
        print(_render(data, args.format))
    if args.command == "verify" and not data["pass"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
