"""Command-line frontend.

Verbs: stats, index, verify, formula, bounds, density, limits.  Every
numeric result is printed as an exact rational plus a 15-significant-digit
decimal; ``--json`` and ``--csv`` switch the output format.

Exit codes: 0 success / EQUAL / PASS; 1 usage or parse error; 2 cap or
feasibility error; 3 verification DIFFER / FAIL.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from . import constructions, density, formulas, groupstats
from .constructions import (
    EvenWrNode,
    WreathNode,
    elaborate,
    parse_group_expr,
    symmetric,
    wreath_imprimitive,
)
from .errors import (
    CapExceeded,
    DegenerateDelta,
    DegreeOverflow,
    EpsilonTooSmall,
    ExpressionError,
    NotNormal,
    NotTransitive,
    WreathlabError,
)
from .exactmath import RationalPoly
from .permcore import Coset, DEFAULT_ENUM_CAP, PermGroup

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p"; decimal literals are rejected to keep runs exact."""
    if not _RATIONAL_RE.match(text.strip()):
        raise WreathlabError(
            f"not a rational literal: {text!r} (use p/q; decimals are rejected)")
    return Fraction(text.strip())


def dec15(x: Fraction) -> str:
    """Decimal string correctly rounded to 15 significant digits."""
    with localcontext() as ctx:
        ctx.prec = 15
        return str(Decimal(x.numerator) / Decimal(x.denominator))


class Report:
    """Accumulates named rational results plus free-form text lines."""

    def __init__(self, command: str, inputs: Dict[str, object]):
        self.command = command
        self.inputs = inputs
        self.results: List[Tuple[str, Fraction]] = []
        self.lines: List[str] = []
        self.status = "ok"

    def add(self, name: str, value) -> None:
        self.results.append((name, Fraction(value)))

    def note(self, line: str) -> None:
        self.lines.append(line)

    def emit(self, mode: str) -> None:
        if mode == "json":
            payload = {
                "command": self.command,
                "inputs": self.inputs,
                "results": [
                    {
                        "name": name,
                        "rational": {"num": v.numerator, "den": v.denominator},
                        "decimal": dec15(v),
                    }
                    for name, v in self.results
                ],
                "status": self.status,
            }
            print(json.dumps(payload, indent=2))
        elif mode == "csv":
            w = csv.writer(sys.stdout)
            w.writerow(["name", "num", "den", "decimal"])
            for name, v in self.results:
                w.writerow([name, v.numerator, v.denominator, dec15(v)])
        else:
            for line in self.lines:
                print(line)
            for name, v in self.results:
                print(f"{name} = {v} = {dec15(v)}")


def _output_mode(args) -> str:
    if args.json:
        return "json"
    if args.csv:
        return "csv"
    return "text"


def _cap_from(args) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get("WREATHLAB_CAP")
    if env:
        return int(env)
    return DEFAULT_ENUM_CAP


def _build(expr_text: str, cap: int,
           degree_cap: Optional[int]) -> Union[PermGroup, Coset]:
    node = parse_group_expr(expr_text)
    obj = elaborate(node)
    if degree_cap is not None and obj.degree > degree_cap:
        raise DegreeOverflow(
            f"degree {obj.degree} exceeds --degree-cap {degree_cap}")
    if isinstance(obj, Coset):
        sub = PermGroup(obj.subgroup.degree, obj.subgroup.generators, cap=cap)
        return Coset(sub, obj.representative)
    return PermGroup(obj.degree, obj.generators, cap=cap)


def _poly_str(p: RationalPoly) -> str:
    parts = [f"({c})x^{i}" for i, c in enumerate(p.coeffs) if c != 0]
    return " + ".join(parts) if parts else "0"


# -- verbs ----------------------------------------------------------------

def cmd_stats(args) -> int:
    cap = _cap_from(args)
    obj = _build(args.expr, cap, args.degree_cap)
    rep = Report("stats", {"expr": args.expr})
    spec = groupstats.fix_spectrum(obj)
    if isinstance(obj, Coset):
        rep.note(f"coset of order-{obj.size} subgroup, degree {obj.degree}")
        rep.add("size", obj.size)
    else:
        rep.note(f"group of degree {obj.degree}")
        rep.add("order", obj.order)
        rep.add("orbits", len(obj.orbits()))
        transitive = obj.is_transitive()
        rep.note(f"transitive: {transitive}")
        if transitive:
            rep.add("rank", obj.rank())
    for k, c in enumerate(spec.counts):
        if c or k == 0:
            rep.add(f"delta_{k}", spec.delta(k))
    ccv = groupstats.cycle_count_vector(obj)
    for l in range(1, obj.degree + 1):
        if ccv.stir(l):
            rep.add(f"stir_{l}", ccv.stir(l))
    rep.note("P(x) = " + _poly_str(groupstats.fix_pgf(obj)))
    rep.note("C(x) = " + _poly_str(groupstats.cycle_pgf(obj)))
    if args.cycle_index:
        zi = groupstats.cycle_index(obj)
        for mvec, coeff in sorted(zi.terms.items()):
            mono = " ".join(
                f"a{i + 1}^{e}" for i, e in enumerate(mvec) if e)
            rep.note(f"Z term: ({coeff}) {mono or '1'}")
    rep.emit(_output_mode(args))
    return 0


def cmd_index(args) -> int:
    cap = _cap_from(args)
    obj = _build(args.expr, cap, args.degree_cap)
    rep = Report("index", {"expr": args.expr})
    zi = groupstats.cycle_index(obj)
    for mvec, coeff in sorted(zi.terms.items()):
        mono = "*".join(f"a{i + 1}^{e}" for i, e in enumerate(mvec) if e)
        rep.add(f"[{mono or '1'}]", coeff)
    rep.emit(_output_mode(args))
    return 0


_VERIFY_MODES = ("wrI", "wrP", "prodI", "prodP")


def cmd_verify(args) -> int:
    cap = _cap_from(args)
    A = _build(args.left, cap, args.degree_cap)
    B = _build(args.right, cap, args.degree_cap)
    if isinstance(A, Coset) or isinstance(B, Coset):
        raise WreathlabError("verify operates on groups, not cosets")
    mode = args.mode
    if mode == "wrI":
        G = constructions.wreath_imprimitive(A, B)
    elif mode == "wrP":
        G = constructions.wreath_power(A, B)
    elif mode == "prodI":
        G = constructions.direct_product_intransitive([A, B])
    else:
        G = constructions.direct_product_product([A, B])
    G = PermGroup(G.degree, G.generators, cap=cap)
    oracle = groupstats.fix_spectrum(G)
    dA = groupstats.delta_vector(A)
    if mode == "wrI":
        dB = groupstats.delta_vector(B)
        form = lambda k: formulas.imprimitive_delta_k(dA, dB, k)
    elif mode == "wrP":
        stirB = groupstats.cycle_count_vector(B)
        form = lambda k: formulas.power_delta_k(dA, stirB, k)
    else:
        dB = groupstats.delta_vector(B)
        if mode == "prodI":
            form = lambda k: formulas.intransitive_delta_k([dA, dB], k)
        else:
            form = lambda k: formulas.product_action_delta_k([dA, dB], k)
    ks = range(G.degree + 1) if args.all_k else [args.k if args.k is not None else 0]
    rep = Report("verify", {"mode": mode, "left": args.left, "right": args.right})
    any_differ = False
    for k in ks:
        fv = form(k)
        ov = oracle.delta(k)
        verdict = "EQUAL" if fv == ov else "DIFFER"
        if fv != ov:
            any_differ = True
        rep.note(f"k={k}: formula={fv} oracle={ov} {verdict}")
        rep.add(f"formula_delta_{k}", fv)
        rep.add(f"oracle_delta_{k}", ov)
    rep.status = "differ" if any_differ else "ok"
    rep.emit(_output_mode(args))
    return 3 if any_differ else 0


def cmd_formula(args) -> int:
    name = args.name
    rep = Report("formula", {"name": name})
    if name == "sharply":
        rep.add("delta", formulas.sharply_transitive_delta_k(args.n, args.t, args.k or 0))
    elif name == "sharply-recursive":
        rep.add("delta", formulas.sharply_transitive_delta_recursive(args.n, args.t))
    elif name == "symmetric":
        s, a, c = formulas.symmetric_family_delta_k(args.n, args.k or 0)
        rep.add("symmetric", s)
        rep.add("alternating", a)
        rep.add("odd_coset", c)
    elif name == "power-cyclic":
        rep.add("delta", formulas.power_delta_cyclic(parse_rational(args.deltaA), args.n))
    elif name == "power-fullsym":
        rep.add("delta", formulas.power_delta_full_symmetric(
            parse_rational(args.deltaA), args.n))
    elif name == "power-lower-bound":
        val = formulas.power_symmetric_lower_bound(parse_rational(args.deltaA), args.n)
        rep.add("bound", Fraction(val).limit_denominator(10 ** 15))
        rep.note(f"float bound: {val!r}")
    else:
        raise WreathlabError(f"unknown formula {name!r}")
    rep.emit(_output_mode(args))
    return 0


def cmd_bounds(args) -> int:
    cap = _cap_from(args)
    obj = _build(args.expr, cap, args.degree_cap)
    if isinstance(obj, Coset):
        raise WreathlabError("bounds operates on groups, not cosets")
    rep = Report("bounds", {"expr": args.expr})
    d0 = groupstats.delta_k(obj, 0)
    rep.add("delta", d0)
    failed = False
    if not args.no_rank:
        r = obj.rank()  # raises NotTransitive for intransitive groups
        lo, hi = formulas.rank_bounds(r, obj.degree)
        inside = lo < d0 < hi
        rep.add("rank", r)
        rep.add("rank_lower", lo)
        rep.add("rank_upper", hi)
        rep.note(f"rank bounds ({lo}, {hi}): {'PASS' if inside else 'FAIL'}")
        failed = failed or not inside
    if args.sandwich:
        if not args.sandwich.startswith("C="):
            raise WreathlabError("--sandwich expects C=EXPR")
        node = parse_group_expr(args.expr)
        if isinstance(node, EvenWrNode):
            ambient = symmetric(node.m)
            top = elaborate(node.top)
        elif isinstance(node, WreathNode):
            ambient = elaborate(node.left)
            top = elaborate(node.right)
        else:
            raise WreathlabError(
                "--sandwich needs a wreath-shaped expression (wrI/wrP/evenWr)")
        if isinstance(ambient, Coset) or isinstance(top, Coset):
            raise WreathlabError("sandwich components must be groups")
        C = _build(args.sandwich[2:], cap, args.degree_cap)
        if isinstance(C, Coset):
            raise WreathlabError("sandwich subgroup must be a group")
        dl, du = formulas.coset_delta_extrema(ambient, C)
        stir = groupstats.cycle_count_vector(top)
        lo, hi = formulas.sandwich_bounds(dl, du, stir)
        inside = lo <= d0 <= hi
        rep.add("sandwich_lower", lo)
        rep.add("sandwich_upper", hi)
        rep.note(f"sandwich [{lo}, {hi}]: {'PASS' if inside else 'FAIL'}")
        failed = failed or not inside
    rep.status = "fail" if failed else "ok"
    rep.emit(_output_mode(args))
    return 3 if failed else 0


def cmd_density(args) -> int:
    target = parse_rational(args.target)
    eps = parse_rational(args.eps)
    rep = Report("density", {"mode": args.mode, "target": str(target),
                             "eps": str(eps)})
    if args.mode == "imprimitive":
        w = density.density_search_imprimitive(
            parse_rational(args.deltaA), target, eps)
    elif args.mode == "cyclic":
        w = density.density_search_power_regular(
            parse_rational(args.deltaA), target, eps)
    elif args.mode == "primitive":
        cap = _cap_from(args)
        top = _build(args.top, cap, args.degree_cap)
        if isinstance(top, Coset):
            raise WreathlabError("--top must be a group")
        w = density.density_search_power_primitive(top, target, eps)
    else:
        raise WreathlabError(f"unknown density mode {args.mode!r}")
    if isinstance(w, density.Infeasible):
        print(json.dumps(w.to_json(), indent=2))
        return 2
    payload = w.to_json()
    if args.verify_oracle and args.mode == "imprimitive" and args.base:
        payload["oracle"] = _oracle_check_imprimitive(w, args)
    print(json.dumps(payload, indent=2))
    return 0


def _oracle_check_imprimitive(w, args) -> Dict[str, object]:
    cap = _cap_from(args)
    G = _build(args.base, cap, args.degree_cap)
    if isinstance(G, Coset):
        raise WreathlabError("--base must be a group")
    q = w.parameters["q"]
    r = w.parameters["r"]
    try:
        for _ in range(r):
            G = wreath_imprimitive(G, constructions.agl1(q))
            G = PermGroup(G.degree, G.generators, cap=cap)
        d0 = groupstats.delta_k(G, 0)
        return {
            "checked": True,
            "oracle_value": {"num": d0.numerator, "den": d0.denominator},
            "equal": d0 == w.value,
        }
    except (CapExceeded, DegreeOverflow) as exc:
        return {"checked": False, "reason": str(exc)}


def cmd_limits(args) -> int:
    d0 = parse_rational(args.deltaA)
    n = args.n
    rep = Report("limits", {"n": n, "deltaA": str(d0)})
    exact = formulas.imprimitive_full_symmetric_delta(d0, n)
    rep.add("imprimitive_symmetric_delta", exact)
    gap = formulas.limit_gap_imprimitive_symmetric(n, d0)
    rep.note(f"gap to exp(delta - 1): {gap!r}")
    rep.add("gap", Fraction(gap))
    full = formulas.power_delta_full_symmetric(d0, n)
    rep.add("power_full_symmetric_delta", full)
    lb = formulas.power_symmetric_lower_bound(d0, n)
    rep.note(f"power lower bound 1 - n^(-delta): {lb!r}")
    rep.emit(_output_mode(args))
    return 0


# -- wiring ---------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--degree-cap", type=int, default=None, dest="degree_cap")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="wreathlab",
        description="Exact fixed-point statistics of permutation groups "
                    "and wreath/direct products.")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("stats", help="order, spectrum, cycle statistics")
    p.add_argument("expr")
    p.add_argument("--cycle-index", action="store_true", dest="cycle_index")
    _add_common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("index", help="full cycle index polynomial")
    p.add_argument("expr")
    _add_common(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("verify", help="closed form vs enumeration oracle")
    p.add_argument("mode", choices=_VERIFY_MODES)
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--all-k", action="store_true", dest="all_k")
    p.add_argument("--k", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("formula", help="evaluate a closed form directly")
    p.add_argument("name", choices=[
        "sharply", "sharply-recursive", "symmetric",
        "power-cyclic", "power-fullsym", "power-lower-bound"])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--deltaA", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("bounds", help="rank and sandwich bounds with PASS/FAIL")
    p.add_argument("expr")
    p.add_argument("--sandwich", default=None, metavar="C=EXPR")
    p.add_argument("--no-rank", action="store_true", dest="no_rank")
    _add_common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("density", help="witness search near a target proportion")
    p.add_argument("mode", choices=["imprimitive", "cyclic", "primitive"])
    p.add_argument("--deltaA", default=None)
    p.add_argument("--target", required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--top", default=None)
    p.add_argument("--base", default=None)
    p.add_argument("--verify-oracle", action="store_true", dest="verify_oracle")
    _add_common(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("limits", help="convergence monitoring at finite n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--deltaA", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_limits)

    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except (ExpressionError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CapExceeded, DegreeOverflow, EpsilonTooSmall, DegenerateDelta) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotTransitive, NotNormal, WreathlabError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
