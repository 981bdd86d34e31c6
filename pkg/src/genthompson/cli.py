"""Command-line front end."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import morphisms as M
from .errors import ParseError, ThompsonError
from .nadic import NAdic, mu_orbit, phi_frac
from .outerpl import torsion_table
from .plmap import PeriodicPLMap, PLMap, membership, pi_map, rho, to_window
from .plot import emit_plot
from .subdivision import plmap_to_pair
from .words import _peel, avoids, from_plmap, parse, reduced, seminormal, to_plmap

GROUPS = ("A", "B", "F", "Finf", "Fminf", "F0", "F00", "closed", "bounded")


# -- input readers --------------------------------------------------------

def _read_payload(text: str) -> str:
    if text == "-":
        return sys.stdin.read()
    if text.startswith("@"):
        return Path(text[1:]).read_text()
    return text


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc.msg}", column=exc.colno) from exc


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}", column=1) from exc


def parse_map(text: str, n: int | None):
    """A PL map from JSON (plain or periodic), ``@file``, ``-``, or a word."""
    text = _read_payload(text).strip()
    if text.startswith("{"):
        obj = _load_json(text)
        if "period" in obj:
            pts = [(Fraction(p["x"]["num"], p["x"]["den"]), Fraction(p["y"]["num"], p["y"]["den"]))
                   for p in obj["points"]]
            return PeriodicPLMap.from_points(int(obj["n"]), int(obj["period"]), pts)
        return PLMap.from_json(obj)
    if n is None:
        raise ParseError("a word needs -n", column=1)
    return to_plmap(parse(text, n))


def parse_auto(text: str, n: int | None) -> M.GenAuto:
    """An automorphism from JSON or ``;``-separated images of g_0, g_1, ..."""
    text = _read_payload(text).strip()
    if text.startswith("{"):
        return M.GenAuto.from_json(_load_json(text))
    if n is None:
        raise ParseError("image list needs -n", column=1)
    return M.GenAuto.from_strings(n, [s.strip() for s in text.split(";")])


def _need_n(args) -> int:
    if args.n is None:
        raise ParseError("missing -n", column=1)
    return args.n


def _plain_map(f, args) -> PLMap:
    if isinstance(f, PeriodicPLMap):
        a, b = args.window or (0, f.period)
        return to_window(f, a, b)
    return f


# -- subcommands --------------------------------------------------------------

def cmd_eval(args):
    f = parse_map(args.map, args.n)
    x = parse_rational(args.x)
    y = f.eval(x)
    return {"x": str(x), "y": str(y)}, str(y)


def cmd_compose(args):
    from .plmap import compose
    maps = [_plain_map(parse_map(t, args.n), args) for t in args.maps]
    f = compose(*maps)
    return f.to_json(), str(f)


def cmd_normalize(args):
    n = _need_n(args)
    w = parse(args.word, n)
    sn = seminormal(w)
    out = {"seminormal": str(sn), "P": str(sn.P), "N": str(sn.N), "tP": sn.tP, "tN": sn.tN}
    if not w.has_t():
        f = to_plmap(w)
        _, _, core = _peel(f, "Finf")
        pair = plmap_to_pair(core)
        out["reduced"] = str(reduced(w))
        out["pair"] = {"domain": pair.domain.to_json(), "range": pair.range.to_json()}
    return out, str(sn)


def cmd_member(args):
    f = _plain_map(parse_map(args.map, args.n), args)
    names = [args.group] if args.group else list(GROUPS)
    res = {g: membership(f, g) for g in names}
    return res, "\n".join(f"{g}: {'yes' if v else 'no'}" for g, v in res.items())


def cmd_phi(args):
    if "*" in args.value:
        x = NAdic.parse(args.value, canonicalize_input=True)
        q, n = x.to_fraction(), x.n
    else:
        n = _need_n(args)
        q = parse_rational(args.value)
        x = NAdic.from_fraction(q, n)
    r = phi_frac(q, n)
    out = {"n": n, "value": str(q), "residue": r}
    if args.orbit:
        out["orbit"] = [str(o.to_fraction()) for o in mu_orbit(x)]
    return out, str(r)


def cmd_rho(args):
    f = _plain_map(parse_map(args.map, args.n), args)
    r = rho(f)
    return {"n": f.n, "rho": r.value}, str(r.value)


def cmd_pi(args):
    f = parse_map(args.map, args.n)
    aff = pi_map(f)
    perm = " ".join(str(v) for v in aff.permutation())
    return aff.to_json(), f"r -> {aff.mult}*r + {aff.shift}  [{perm}]"


def cmd_word2map(args):
    f = to_plmap(parse(args.word, _need_n(args)))
    return f.to_json(), str(f)


def cmd_map2word(args):
    f = _plain_map(parse_map(args.map, args.n), args)
    w = from_plmap(f, args.flavor)
    return w.to_json(), str(w)


def cmd_lift(args):
    a = M.verified(parse_auto(args.auto, args.m))
    b = M.theta_lift(a, args.n) if args.kind == "theta" else M.lambda_lift(a, args.n)
    return b.to_json(), _auto_text(b)


def cmd_rotate(args):
    a = M.verified(parse_auto(args.auto, args.n))
    b = M.rotate(a, args.j)
    return b.to_json(), _auto_text(b)


def cmd_verify_auto(args):
    a = parse_auto(args.auto, args.n)
    ok = M.verify(a)
    out = {"verified": ok}
    if ok and a.period == a.n - 1:
        out["pi"] = list(M.pi_of_auto(M.verified(a)))
    return out, "PASS" if ok else "FAIL"


def cmd_inner_check(args):
    a = parse_auto(args.auto, args.n)
    ws = [parse(t, a.n) for t in args.witness]
    res = M.inner_check(a, ws[0] if len(ws) == 1 else ws)
    return res, f"{res['status']} {' '.join(map(str, res['indices']))}".strip()


def cmd_avoids(args):
    ok = avoids(parse(args.word, _need_n(args)), args.j)
    return {"avoids": ok}, "yes" if ok else "no"


def cmd_torsion_demo(args):
    rows = M.torsion_ledger(args.base)
    lines = [f"{'PASS' if ok else 'FAIL'} ({tag}) {text}" for tag, ok, text in rows]
    payload = {"n": args.base, "checks": [{"tag": t, "ok": ok, "text": s} for t, ok, s in rows],
               "ok": all(ok for _, ok, _ in rows)}
    return payload, "\n".join(lines)


def cmd_outpl(args):
    rows = torsion_table(args.base)
    fmt = lambda o: "inf" if o == float("inf") else str(o)  # noqa: E731
    payload = [{"a": a, "s": s, "order": fmt(o)} for a, s, o in rows]
    return payload, "\n".join(f"({a}, {s}): order {fmt(o)}" for a, s, o in rows)


def cmd_plot(args):
    f = parse_map(args.map, args.n)
    if isinstance(f, PeriodicPLMap):
        window = args.window or (0, f.period)
        f = to_window(f, window[0] - f.period, window[1] + f.period)
    else:
        window = args.window or (0, 1)
    svg = emit_plot(f, window)
    return {"svg": svg}, svg.rstrip("\n")


def _auto_text(a: M.GenAuto) -> str:
    return "\n".join(f"g{i} -> {w}" for i, w in enumerate(a.images))


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, help="base")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--window", nargs=2, type=parse_rational, metavar=("A", "B"))
    common.add_argument("--out", help="write output to this file")

    p = argparse.ArgumentParser(prog="genthompson", description="Generalized Thompson group toolkit")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("eval", cmd_eval, "evaluate a map at a point")
    sp.add_argument("map")
    sp.add_argument("x")
    sp = add("compose", cmd_compose, "compose maps left to right")
    sp.add_argument("maps", nargs="+")
    sp = add("normalize", cmd_normalize, "semi-normal form and reduced pair of a word")
    sp.add_argument("word")
    sp = add("member", cmd_member, "group membership predicates")
    sp.add_argument("map")
    sp.add_argument("--group", choices=GROUPS)
    sp = add("phi", cmd_phi, "residue of a point")
    sp.add_argument("value")
    sp.add_argument("--orbit", action="store_true", help="also print the mu orbit")
    sp = add("rho", cmd_rho, "residue displacement")
    sp.add_argument("map")
    sp = add("pi", cmd_pi, "residue permutation of a map")
    sp.add_argument("map")
    sp = add("word2map", cmd_word2map, "PL map of a word")
    sp.add_argument("word")
    sp = add("map2word", cmd_map2word, "word for a PL map")
    sp.add_argument("map")
    sp.add_argument("--flavor", default="Finf", choices=("F", "Finf", "F0", "Fminf"))
    sp = add("lift", cmd_lift, "lift an automorphism from base m to base n")
    sp.add_argument("auto")
    sp.add_argument("-m", type=int, required=True, help="source base")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--theta", dest="kind", action="store_const", const="theta")
    g.add_argument("--lambda", dest="kind", action="store_const", const="lambda")
    sp = add("rotate", cmd_rotate, "rotate an automorphism")
    sp.add_argument("auto")
    sp.add_argument("-j", type=int, default=1)
    sp = add("verify-auto", cmd_verify_auto, "check relations on generator images")
    sp.add_argument("auto")
    sp = add("inner-check", cmd_inner_check, "compare with conjugation by a periodic witness")
    sp.add_argument("auto")
    sp.add_argument("--witness", action="append", required=True)
    sp = add("avoids", cmd_avoids, "whether a word avoids a residue class of subscripts")
    sp.add_argument("word")
    sp.add_argument("j", type=int)
    sp = add("torsion-demo", cmd_torsion_demo, "verify the order n-2 outer automorphism")
    sp.add_argument("base", type=int)
    sp = add("outpl", cmd_outpl, "torsion table of the PL outer classes")
    sp.add_argument("base", type=int)
    sp = add("plot", cmd_plot, "SVG plot of a map")
    sp.add_argument("map")
    return p


def _emit(text: str, args):
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, text = args.fn(args)
    except ParseError as exc:
        _report(exc.to_json(), str(exc), args)
        return 2
    except ThompsonError as exc:
        _report(exc.to_json(), str(exc), args)
        return 1
    except (ValueError, KeyError, OSError) as exc:
        # malformed input that slipped past the typed errors
        _report({"error": "parse_error", "message": str(exc)}, str(exc), args)
        return 2
    _emit(json.dumps(payload, sort_keys=True) if args.json else text, args)
    if args.cmd == "torsion-demo" and not payload["ok"]:
        return 1
    return 0


def _report(obj: dict, msg: str, args):
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(f"error: {msg}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
