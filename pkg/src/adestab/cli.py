"""Command line front end.

Exit status: 0 on success, 1 when a certification or check fails, 2 on
malformed input (a JSON diagnostic is written to stderr).
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from fractions import Fraction

from . import io
from .charge import (
    ChargeParams,
    beta_margin_bound,
    certify_negative_definite,
    certify_negative_definite_X,
    charge,
    find_beta,
    phase_float,
    q_form,
    validate_params,
)
from .errors import AdeStabError, NotDefinite
from .exact import fmt_q, matvec, to_q
from .exceptional import decompose, phase_chain_check, simple_classes, skyscraper_filtration
from .lattice import lift, pr_kernel
from .root_data import build_ade, inverse_negativity_check
from .scanner import Box, Interval, charge_at, enumerate_candidates, scan_walls


class CertificationFailed(Exception):
    def __init__(self, payload):
        super().__init__("certification failed")
        self.payload = payload


def _q(text: str) -> Fraction:
    try:
        return to_q(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _spec(args):
    return io.spec_from_json(io.load_json(args.spec))


def _params(args):
    return io.params_from_json(io.load_json(args.params))


# -- subcommands ------------------------------------------------------------------

def cmd_ade_info(args):
    data = build_ade(args.type)
    cert = inverse_negativity_check(data)
    out = io.ade_to_json(data)
    out["inverse"] = [io.qs(r) for r in cert.inverse]
    out["inverse_all_negative"] = cert.all_negative
    return out


def cmd_beta_find(args):
    spec = _spec(args)
    beta = find_beta(spec, args.t)
    params = ChargeParams(beta, args.z)
    ade = spec.ade
    return {
        "t": fmt_q(args.t if args.t is not None else beta_margin_bound(spec)),
        "beta": io.qs(beta),
        "beta_dot_e": io.qs(matvec(ade.gram_q, beta)),
        "beta_dot_fund": fmt_q(ade.pair(beta, ade.fund_cycle)),
        "beta_square": fmt_q(ade.pair(beta, beta)),
        "params": io.params_to_json(params),
        "violations": validate_params(spec, params, require_positive_z=True),
    }


def cmd_charge_eval(args):
    spec = _spec(args)
    params = _params(args)
    v = io.class_from_json(io.load_json(args.cls), spec)
    z = charge(spec, params, v)
    return {**io.charge_to_json(z), "phase": round(phase_float(z), 12),
            "violations": validate_params(spec, params)}


def cmd_certify_support(args):
    spec = _spec(args)
    params = _params(args)
    out = {"A": fmt_q(args.A), "B": fmt_q(args.B), "violations": validate_params(spec, params)}
    failed = bool(out["violations"])
    for key, fn in (("resolution", lambda: certify_negative_definite(spec, params, args.A, args.B)),
                    ("singular", lambda: certify_negative_definite_X(spec, params, args.A))):
        try:
            out[key] = io.certificate_to_json(fn())
        except NotDefinite as exc:
            failed = True
            w = exc.witness
            out[key] = {"negative_definite": False, "inertia": list(exc.inertia),
                        "witness": io.class_to_json(w) if key == "resolution" else io.pushed_to_json(w),
                        "witness_value": fmt_q(exc.value)}
    sc = simple_classes(spec)
    values = {name: q_form(spec, params, args.A, args.B, v)
              for name, v in [("opi", sc.opi), *((f"s_{i}", s) for i, s in enumerate(sc.s, 1))]}
    out["simple_classes_q"] = {k: fmt_q(v) for k, v in values.items()}
    out["simple_classes_nonnegative"] = all(v >= 0 for v in values.values())
    failed = failed or not out["simple_classes_nonnegative"]
    out["ok"] = not failed
    if failed:
        raise CertificationFailed(out)
    return out


def cmd_lift(args):
    spec = _spec(args)
    w = io.pushed_from_json(io.load_json(args.pushed), spec)
    offset = [to_q(x) for x in args.offset.split(",")] if args.offset else None
    v = lift(spec, w, offset)
    a, _ = pr_kernel(spec, v)
    return {"lifted": io.class_to_json(v), "kernel_coefficients": io.qs(a)}


def cmd_decompose(args):
    spec = _spec(args)
    v = io.class_from_json(io.load_json(args.cls), spec)
    res = decompose(spec, v)
    if res is None:
        return {"decomposable": False}
    n0, ns = res
    return {"decomposable": True, "opi": n0, "s": list(ns)}


def cmd_filtration(args):
    spec = _spec(args)
    report = skyscraper_filtration(spec, args.target)
    out = io.filtration_to_json(report)
    if args.check_phases:
        if args.params:
            params = _params(args)
        else:
            params = ChargeParams(find_beta(spec, args.t), args.z)
        params = params.with_(epsilon=args.eps, eta=args.eta)
        chain = phase_chain_check(spec, params, report)
        out["params"] = io.params_to_json(params)
        out["phase_chain"] = io.phase_chain_to_json(chain)
        if not chain.ok:
            raise CertificationFailed(out)
    return out


def _box(text: str) -> Box:
    fields = {}
    for part in text.split(","):
        key, _, rng = part.partition("=")
        lo, _, hi = rng.partition(":")
        fields[key.strip()] = (int(lo), int(hi or lo))
    return Box(**fields)


def cmd_walls(args):
    spec = _spec(args)
    params = _params(args)
    v = io.class_from_json(io.load_json(args.cls), spec)
    if args.candidates:
        raw = io.load_json(args.candidates)
        cands = [io.class_from_json(d, spec) for d in raw]
    elif args.box:
        cands = enumerate_candidates(spec, params, v, _box(args.box), args.A, args.B)
    else:
        sc = simple_classes(spec)
        cands = [sc.opi, *sc.s, sc.ox]
    lo, hi = args.range
    report = scan_walls(spec, params, v, cands, args.param, Interval(lo, hi))
    return {"_walls": report, "_spec": spec, "_params": params}


def _walls_json(res) -> dict:
    report = res["_walls"]
    return {
        "parameter": report.parameter,
        "range": str(report.interval),
        "class": io.class_to_json(report.v),
        "walls": [{"value": _value_str(w.value), "witnesses": [io.class_to_json(x) for x in w.witnesses]}
                  for w in report.walls],
        "segments": [{"range": str(s.interval), "witness": io.class_to_json(s.witness)}
                     for s in report.segments],
    }


def _value_str(x) -> str:
    return fmt_q(x) if isinstance(x, Fraction) else str(x)


def _walls_csv(res) -> str:
    report, spec, params = res["_walls"], res["_spec"], res["_params"]
    buf = _io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["parameter_value", "witness_class", "phase_num", "phase_den"])

    def row(value, w, lam):
        # phase recorded as the slope -Re Z(v) / Im Z(v) at the wall
        z = charge_at(spec, params, report.parameter, lam, report.v) if lam is not None else None
        num = fmt_q(-z.re) if z else ""
        den = fmt_q(z.im) if z else ""
        wr.writerow([value, json.dumps(io.class_to_json(w), separators=(",", ":")), num, den])

    for wall in report.walls:
        lam = wall.value if isinstance(wall.value, Fraction) else None
        for w in wall.witnesses:
            row(_value_str(wall.value), w, lam)
    for seg in report.segments:
        row(str(seg.interval), seg.witness, (seg.interval.lo + seg.interval.hi) / 2)
    return buf.getvalue()


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def _csv_generic(obj) -> str:
    buf = _io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["key", "value"])
    for k, v in _flatten(obj):
        wr.writerow([k, json.dumps(v) if isinstance(v, bool) or v is None else v])
    return buf.getvalue()


def filtration_text(out: dict) -> str:
    """Text rendering of the skyscraper filtration: ``O_Pi -> O_D1 -> ... -> O_x``."""
    lines = []
    divs = [out["fund_cycle"], *(s["divisor"] for s in out["steps"])]

    def name(d):
        terms = [f"{c}C{i}" if c > 1 else f"C{i}" for i, c in enumerate(d, 1) if c]
        return "O_{" + "+".join(terms) + "}"

    chain = [name(d) for d in divs] + ["O_x"]
    quots = [f"K{k}[1] = s_{s['curve']}^{s['multiplicity']}" for k, s in enumerate(out["steps"], 1)]
    quots.append(f"K{len(out['steps']) + 1}[1] = s_{out['target']}^1")
    lines.append("0 -> " + " -> ".join(chain))
    for q_ in quots:
        lines.append("    " + q_)
    lines.append("factors: " + ", ".join(f"{k}x{v}" for k, v in out["factors"].items()))
    lines.append(f"telescoping_ok: {str(out['telescoping_ok']).lower()}")
    if "phase_chain" in out:
        pc = out["phase_chain"]
        lines.append(f"phase chain: {'ok' if pc['ok'] else 'FAILED: ' + str(pc['violation'])}")
        for c in pc["charges"]:
            lines.append(f"  {c['name']:>6}  Z = {c['re']} + i*{c['im']}  phase ~ {c['phase']}")
    return "\n".join(lines) + "\n"


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adestab", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("-o", "--output", help="write the report to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    ade = sub.add_parser("ade").add_subparsers(dest="sub", required=True)
    a = ade.add_parser("info", help="Gram matrix, adjacency and fundamental cycle")
    a.add_argument("type")
    a.set_defaults(func=cmd_ade_info)

    beta = sub.add_parser("beta").add_subparsers(dest="sub", required=True)
    b = beta.add_parser("find", help="beta with beta.e_i = t for every curve")
    b.add_argument("spec")
    b.add_argument("--t", type=_q, default=None)
    b.add_argument("--z", type=_q, default=Fraction(1))
    b.set_defaults(func=cmd_beta_find)

    ch = sub.add_parser("charge").add_subparsers(dest="sub", required=True)
    c = ch.add_parser("eval", help="evaluate the central charge of a class")
    c.add_argument("spec")
    c.add_argument("params")
    c.add_argument("cls", metavar="class")
    c.set_defaults(func=cmd_charge_eval)

    cert = sub.add_parser("certify").add_subparsers(dest="sub", required=True)
    s = cert.add_parser("support", help="certify the support-property forms")
    s.add_argument("spec")
    s.add_argument("params")
    s.add_argument("--A", type=_q, default=Fraction(0))
    s.add_argument("--B", type=_q, default=Fraction(0))
    s.set_defaults(func=cmd_certify_support)

    li = sub.add_parser("lift", help="lift a class from the singular surface")
    li.add_argument("spec")
    li.add_argument("pushed", metavar="pushed-class")
    li.add_argument("--offset", help="comma-separated exceptional offset, e.g. 1/2,0")
    li.set_defaults(func=cmd_lift)

    f = sub.add_parser("filtration", help="Jordan-Holder filtration of a skyscraper")
    f.add_argument("spec")
    f.add_argument("--target", type=int, required=True)
    f.add_argument("--check-phases", action="store_true")
    f.add_argument("--params", help="charge params; defaults to find_beta output with z")
    f.add_argument("--t", type=_q, default=None)
    f.add_argument("--z", type=_q, default=Fraction(1))
    f.add_argument("--eps", type=_q, default=Fraction(1))
    f.add_argument("--eta", type=_q, default=Fraction(1, 10))
    f.set_defaults(func=cmd_filtration)

    w = sub.add_parser("walls", help="locate walls along the epsilon or s path")
    w.add_argument("spec")
    w.add_argument("params")
    w.add_argument("--class", dest="cls", required=True)
    w.add_argument("--param", choices=("epsilon", "s"), required=True)
    w.add_argument("--range", nargs=2, type=_q, default=None, metavar=("LO", "HI"))
    w.add_argument("--candidates", help="JSON list of candidate classes")
    w.add_argument("--box", help="enumerate candidates, e.g. ch0=-1:1,e=-2:2,ch2=-2:2")
    w.add_argument("--A", type=_q, default=Fraction(0))
    w.add_argument("--B", type=_q, default=Fraction(0))
    w.set_defaults(func=cmd_walls)

    d = sub.add_parser("decompose", help="Jordan-Holder multiplicities of an exceptional class")
    d.add_argument("spec")
    d.add_argument("cls", metavar="class")
    d.set_defaults(func=cmd_decompose)
    return p


def _render(args, result) -> str:
    if isinstance(result, dict) and "_walls" in result:
        return _walls_csv(result) if args.format == "csv" else io.dumps(_walls_json(result))
    if args.format == "csv":
        return _csv_generic(result)
    if args.format == "text":
        if args.command != "filtration":
            raise ValueError("--format text is only available for 'filtration'")
        return filtration_text(result)
    return io.dumps(result)


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if getattr(args, "command", None) == "walls" and args.range is None:
        args.range = (Fraction(0), Fraction(1)) if args.param == "epsilon" else (Fraction(1), Fraction(100))
    try:
        result = args.func(args)
        _emit(args, _render(args, result))
        return 0
    except CertificationFailed as exc:
        _emit(args, _render(args, exc.payload))
        return 1
    except (AdeStabError, ValueError, TypeError, KeyError, OSError, ZeroDivisionError,
            json.JSONDecodeError) as exc:
        diag = {"error": type(exc).__name__, "message": str(exc)}
        sys.stderr.write(json.dumps(diag) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
