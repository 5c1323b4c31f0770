"""Command-line front end: ``freealg <group> <command> [options]``.

Results go to stdout (JSON by default).  Domain errors exit 1 with a
``{code, message, context}`` object on stderr; usage errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import bimodule, endo, estimate, malcev
from .errors import AlgebraError, BasisExhausted
from .fields import Field, field_from_selector
from .parsing import alphabet_names, format_word, parse_poly
from .poly import NEG_INF, Polynomial, commutator


@dataclass
class RunConfig:
    field: Field
    alphabet: int = 2
    seed: int = 0
    output: str = "json"


DEFAULT_FIELD = {"mn": "fp:2", "repro theorem9": "fp:2"}


def _num(v):
    if v is None or isinstance(v, bool):
        return v
    if v == NEG_INF:
        return "-inf"
    if isinstance(v, Fraction):
        return str(v)
    return v


# helpers


def _poly(cfg: RunConfig, text: str, alphabet: int | None = None) -> Polynomial:
    return parse_poly(text, cfg.field, alphabet or 2)


def _endo(cfg, fx, fy) -> endo.Endomorphism:
    return endo.Endomorphism(_poly(cfg, fx), _poly(cfg, fy))


def _word(cfg, text: str) -> tuple:
    text = text.strip()
    if text in ("", "1"):
        return ()
    p = parse_poly(text, cfg.field, cfg.alphabet)
    if len(p.terms) != 1 or p.leading_coeff() != 1:
        raise AlgebraError(f"{text!r} is not a single word", text=text)
    return p.leading_word()


def _poly_out(p: Polynomial) -> dict:
    return {"poly": str(p), "degree": _num(p.degree)}


def _series_input(cfg, args) -> malcev.TruncatedSeries:
    if getattr(args, "g", None):
        return malcev.parse_series(args.g, cfg.field)
    return malcev.build_theorem9_input(args.k, args.s_variant, cfg.field)


# poly


def cmd_poly_binary(cfg, args):
    a = _poly(cfg, args.a, cfg.alphabet)
    b = _poly(cfg, args.b, cfg.alphabet)
    op = {"add": lambda: a + b, "mul": lambda: a * b, "comm": lambda: commutator(a, b)}
    return _poly_out(op[args.command]())


def cmd_poly_deg(cfg, args):
    return {"degree": _num(_poly(cfg, args.p, cfg.alphabet).degree)}


def cmd_poly_wdeg(cfg, args):
    weights = [int(w) for w in args.weights.split(",")]
    return {"weighted_degree": _num(_poly(cfg, args.p, cfg.alphabet).weighted_degree(weights))}


def cmd_poly_subst(cfg, args):
    p = _poly(cfg, args.p, cfg.alphabet)
    images = [_poly(cfg, t, cfg.alphabet) for t in args.image]
    return _poly_out(p.substitute(images))


def cmd_poly_parse(cfg, args):
    p = _poly(cfg, args.p, cfg.alphabet)
    names = alphabet_names(cfg.alphabet)
    out = _poly_out(p)
    out["terms"] = [[format_word(w, names), cfg.field.format(c)] for w, c in p.sorted_terms()]
    return out


# degest


def cmd_degest_check(cfg, args):
    rep = estimate.check_estimate(_poly(cfg, args.f), _poly(cfg, args.g), _poly(cfg, args.p))
    return rep.to_json()


def cmd_degest_counterexample(cfg, args):
    fam = estimate.build_counterexample(args.k, cfg.field)
    out = fam.summary()
    out.update(f=str(fam.f), g=str(fam.g))
    return out


def cmd_degest_conjecture(cfg, args):
    res = estimate.check_conjecture_inequality(_poly(cfg, args.f), _poly(cfg, args.g))
    return {"min_deg": res.min_deg, "comm_deg": res.comm_deg, "violated": res.violated}


def cmd_degest_lemma4(cfg, args):
    return {"holds": estimate.check_lemma4(_poly(cfg, args.p), args.deg_f, args.deg_g)}


def cmd_degest_lemma5(cfg, args):
    return {"holds": estimate.check_lemma5(_poly(cfg, args.f), _poly(cfg, args.g), _poly(cfg, args.p))}


def cmd_degest_lemma6(cfg, args):
    rows = estimate.check_lemma6(_poly(cfg, args.f), _poly(cfg, args.g), args.kmax)
    return {"rows": [{"k": k, "comm_degree": _num(d), "holds": ok} for k, d, ok in rows]}


def cmd_degest_harness(cfg, args):
    reports = estimate.estimate_harness(args.cases, cfg.seed, cfg.field)
    violations = [
        {"f": str(f), "g": str(g), "P": str(P), "report": r.to_json()}
        for f, g, P, r in reports
        if not r.inequality_holds
    ]
    return {"cases": len(reports), "seed": cfg.seed, "violations": violations}


# endo


def cmd_endo_apply(cfg, args):
    return _poly_out(_endo(cfg, args.fx, args.fy).apply(_poly(cfg, args.p)))


def cmd_endo_compose(cfg, args):
    return _endo(cfg, args.fx, args.fy).compose(_endo(cfg, args.gx, args.gy)).to_json()


def cmd_endo_decompose(cfg, args):
    return endo.decompose_tame(_endo(cfg, args.fx, args.fy)).to_json()


def cmd_endo_invert(cfg, args):
    return endo.invert(_endo(cfg, args.fx, args.fy)).to_json()


def cmd_endo_is_retraction(cfg, args):
    return {"retraction": endo.is_retraction(_endo(cfg, args.fx, args.fy))}


def cmd_endo_iterate(cfg, args):
    res = endo.iterate_to_retraction(_endo(cfg, args.fx, args.fy), _poly(cfg, args.p), args.max_iter)
    return {"m": res.m, "retraction": res.retraction.to_json()}


def cmd_endo_retract_gen(cfg, args):
    r = endo.retract_generator(_endo(cfg, args.fx, args.fy), args.require_idempotent)
    return {"generator": str(r)}


def cmd_endo_orbit_witness(cfg, args):
    return endo.orbit_witness(_endo(cfg, args.fx, args.fy), _poly(cfg, args.r), args.cap).to_json()


def cmd_endo_coordinate(cfg, args):
    return endo.coordinate_certify(_poly(cfg, args.p), args.search_bound).to_json()


# mn


def cmd_mn_sqrt(cfg, args):
    g = _series_input(cfg, args)
    res = malcev.mn_nth_root(g, 2, args.window, args.basis_rounds)
    return _root_out(res)


def cmd_mn_nth_root(cfg, args):
    g = _series_input(cfg, args)
    return _root_out(malcev.mn_nth_root(g, args.n, args.window, args.basis_rounds))


def _root_out(res: malcev.RootResult) -> dict:
    out = res.root.to_json()
    out["steps"] = res.steps
    out["leading_word"] = malcev.format_group_word(res.leading_word)
    return out


def cmd_mn_frac_pow(cfg, args):
    g = _series_input(cfg, args)
    return malcev.mn_fractional_power(g, args.m, args.n, args.window, args.basis_rounds).to_json()


def cmd_mn_witness(cfg, args):
    g = _series_input(cfg, args)
    fp = malcev.mn_fractional_power(g, args.m, args.n, args.window, args.basis_rounds)
    w = malcev.negative_power_witness(fp.value)
    return {
        "witness": None if w is None else malcev.format_group_word(w),
        "witness_degree": None if w is None else malcev.gw_degree(w),
        "power": fp.to_json(),
    }


def cmd_mn_build(cfg, args):
    return malcev.build_theorem9_input(args.k, args.s_variant, cfg.field).to_json()


# bimod


def cmd_bimod_classify(cfg, args):
    u, t = _word(cfg, args.u), _word(cfg, args.t)
    return bimodule.classify_monomial(u, t).to_json(alphabet_names(cfg.alphabet))


def cmd_bimod_solve(cfg, args):
    sol = bimodule.solve_commutator_equation(_word(cfg, args.u), args.m, args.n, args.bound, cfg.field)
    return sol.to_json()


# repro


def _k_range(text: str) -> range:
    lo, _, hi = text.partition("..")
    try:
        return range(int(lo), int(hi or lo) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None


def cmd_repro_theorem8(cfg, args):
    rows = []
    for k in args.k_range:
        fam = estimate.build_counterexample(k, cfg.field)
        rows.append(
            {
                "k": k,
                "deg_f": fam.f.degree,
                "deg_g": fam.g.degree,
                "deg_comm": fam.comm_degree,
                "ratio": str(fam.ratio),
                "expected": f"{2 * k + 5}/{4 * k + 2}",
                "conjecture_violated": fam.violates_conjecture,
            }
        )
    ok = all(
        r["deg_f"] == 6 * r["k"] + 3 and r["deg_g"] == 4 * r["k"] + 2 and r["deg_comm"] == 2 * r["k"] + 5
        for r in rows
    )
    return {"field": cfg.field.selector, "rows": rows, "matches_formula": ok}


def cmd_repro_theorem9(cfg, args):
    g = malcev.build_theorem9_input(args.k, args.s_variant, cfg.field)
    out = {"k": args.k, "field": cfg.field.selector, "s_variant": args.s_variant, "g": g.to_json()}
    try:
        res = malcev.mn_nth_root(g, 2, args.window, args.basis_rounds)
        out["sqrt"] = {"window_requested": args.window, "window_reached": args.window, "root": _root_out(res)}
    except BasisExhausted as exc:
        out["sqrt"] = {"window_requested": args.window, "error": exc.to_dict()}
    try:
        fp = malcev.mn_fractional_power(g, 3, 2, 0, args.basis_rounds)
        w = malcev.negative_power_witness(fp.value)
        out["frac_pow_3_2"] = {
            "positive_part": [t for t in fp.value.to_json()["terms"] if t[2] > 0],
            "floor": _num(fp.value.floor),
            "witness": None if w is None else malcev.format_group_word(w),
        }
    except AlgebraError as exc:
        out["frac_pow_3_2"] = {"error": exc.to_dict()}
    return out


# parser


def _common_flags(suppress: bool) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common.add_argument("--field", default=d(None), help='"q" or "fp:<prime>"')
    common.add_argument("--alphabet", type=int, default=d(2), help="number of variables for poly commands")
    common.add_argument("--seed", type=int, default=d(0))
    common.add_argument("--output", choices=["json", "text"], default=d("json"))
    return common


def build_parser() -> argparse.ArgumentParser:
    leaf_common = _common_flags(suppress=True)
    top = argparse.ArgumentParser(
        prog="freealg", description=__doc__.splitlines()[0], parents=[_common_flags(suppress=False)]
    )
    groups = top.add_subparsers(dest="group", required=True)

    def leaf(sub, name, handler, **kw):
        p = sub.add_parser(name, parents=[leaf_common], **kw)
        p.set_defaults(handler=handler)
        return p

    # poly
    poly = groups.add_parser("poly", help="polynomial arithmetic").add_subparsers(dest="command", required=True)
    for name in ("add", "mul", "comm"):
        p = leaf(poly, name, cmd_poly_binary)
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)
    leaf(poly, "deg", cmd_poly_deg).add_argument("--p", required=True)
    p = leaf(poly, "wdeg", cmd_poly_wdeg)
    p.add_argument("--p", required=True)
    p.add_argument("--weights", required=True, help="comma separated, e.g. 2,3")
    p = leaf(poly, "subst", cmd_poly_subst)
    p.add_argument("--p", required=True)
    p.add_argument("--image", action="append", required=True, help="one per variable, in order")
    leaf(poly, "parse", cmd_poly_parse).add_argument("--p", required=True)

    # degest
    de = groups.add_parser("degest", help="degree estimate checks").add_subparsers(dest="command", required=True)
    p = leaf(de, "check", cmd_degest_check)
    for a in ("--f", "--g", "--p"):
        p.add_argument(a, required=True)
    leaf(de, "counterexample", cmd_degest_counterexample).add_argument("--k", type=int, required=True)
    p = leaf(de, "conjecture", cmd_degest_conjecture)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p = leaf(de, "lemma4", cmd_degest_lemma4)
    p.add_argument("--p", required=True)
    p.add_argument("--deg-f", type=int, required=True)
    p.add_argument("--deg-g", type=int, required=True)
    p = leaf(de, "lemma5", cmd_degest_lemma5)
    for a in ("--f", "--g", "--p"):
        p.add_argument(a, required=True)
    p = leaf(de, "lemma6", cmd_degest_lemma6)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--kmax", type=int, default=4)
    leaf(de, "harness", cmd_degest_harness).add_argument("--cases", type=int, default=200)

    # endo
    en = groups.add_parser("endo", help="endomorphisms and automorphisms").add_subparsers(dest="command", required=True)

    def images(p):
        p.add_argument("--fx", required=True, help="image of x")
        p.add_argument("--fy", required=True, help="image of y")
        return p

    images(leaf(en, "apply", cmd_endo_apply)).add_argument("--p", required=True)
    p = images(leaf(en, "compose", cmd_endo_compose, help="(fx, fy) after (gx, gy)"))
    p.add_argument("--gx", required=True)
    p.add_argument("--gy", required=True)
    images(leaf(en, "decompose", cmd_endo_decompose))
    images(leaf(en, "invert", cmd_endo_invert))
    images(leaf(en, "is-retraction", cmd_endo_is_retraction))
    p = images(leaf(en, "iterate-retraction", cmd_endo_iterate))
    p.add_argument("--p", required=True, help="polynomial fixed by the map")
    p.add_argument("--max-iter", type=int, default=16)
    images(leaf(en, "retract-gen", cmd_endo_retract_gen)).add_argument(
        "--require-idempotent", action="store_true"
    )
    p = images(leaf(en, "orbit-witness", cmd_endo_orbit_witness))
    p.add_argument("--r", required=True)
    p.add_argument("--cap", type=int)
    p = leaf(en, "coordinate", cmd_endo_coordinate)
    p.add_argument("--p", required=True)
    p.add_argument("--search-bound", type=int)

    # mn
    mn = groups.add_parser("mn", help="truncated Mal'tsev-Neumann series").add_subparsers(dest="command", required=True)

    def series_in(p, window_default=10):
        p.add_argument("--g", help="series text; overrides --k")
        p.add_argument("--k", type=int, default=2)
        p.add_argument("--s-variant", choices=["lemma10", "theorem9"], default="lemma10")
        p.add_argument("--window", type=int, default=window_default)
        p.add_argument("--basis-rounds", type=int, default=3)
        return p

    series_in(leaf(mn, "sqrt", cmd_mn_sqrt))
    series_in(leaf(mn, "nth-root", cmd_mn_nth_root)).add_argument("--n", type=int, required=True)
    for name, handler in (("frac-pow", cmd_mn_frac_pow), ("witness", cmd_mn_witness)):
        p = series_in(leaf(mn, name, handler), window_default=0)
        p.add_argument("--m", type=int, default=3)
        p.add_argument("--n", type=int, default=2)
    p = leaf(mn, "build", cmd_mn_build)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--s-variant", choices=["lemma10", "theorem9"], default="lemma10")

    # bimod
    bi = groups.add_parser("bimod", help="bimodule classification").add_subparsers(dest="command", required=True)
    p = leaf(bi, "classify", cmd_bimod_classify)
    p.add_argument("--u", required=True)
    p.add_argument("--t", required=True, help='word, or "1" for the empty word')
    p = leaf(bi, "solve", cmd_bimod_solve)
    p.add_argument("--u", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)

    # repro
    rp = groups.add_parser("repro", help="reproduce the counterexample results").add_subparsers(dest="command", required=True)
    leaf(rp, "theorem8", cmd_repro_theorem8).add_argument("--k-range", type=_k_range, default=_k_range("2..6"))
    p = leaf(rp, "theorem9", cmd_repro_theorem9)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--window", type=int, default=10)
    p.add_argument("--basis-rounds", type=int, default=3)
    p.add_argument("--s-variant", choices=["lemma10", "theorem9"], default="lemma10")
    return top


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(
            _text(v, indent) if isinstance(v, dict) else f"{pad}- {_scalar(v)}" for v in obj
        )
    return pad + _scalar(obj)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(a) for a in v) + "]"
    if v is None:
        return "none"
    return str(v).lower() if isinstance(v, bool) else str(v)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.alphabet < 1:
        parser.error("--alphabet must be a positive integer")
    try:
        selector = (
            args.field
            or DEFAULT_FIELD.get(f"{args.group} {args.command}")
            or DEFAULT_FIELD.get(args.group, "q")
        )
        cfg = RunConfig(field_from_selector(selector), args.alphabet, args.seed, args.output)
        result = args.handler(cfg, args)
    except AlgebraError as exc:
        sys.stderr.write(json.dumps(exc.to_dict(), default=str) + "\n")
        return 1
    if cfg.output == "json":
        sys.stdout.write(json.dumps(result, indent=2, default=str) + "\n")
    else:
        sys.stdout.write(_text(result) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
