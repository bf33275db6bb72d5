"""JSON wire formats.  Rationals are written as ``"p/q"`` strings; ints and
strings are both accepted on input."""
from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any

from .charge import ChargeParams, ChargeValue, DefinitenessCertificate
from .exact import fmt_q, to_q
from .exceptional import FiltrationReport, PhaseChain, WalkTrace
from .lattice import NumClass, PushedClass, SurfaceSpec
from .root_data import AdeData, build_ade


def load_json(source: str) -> Any:
    """Read JSON from a file path, ``-`` (stdin) or an inline JSON literal."""
    if source == "-":
        return json.load(sys.stdin)
    stripped = source.lstrip()
    if stripped.startswith(("{", "[")):
        return json.loads(source)
    return json.loads(Path(source).read_text(encoding="utf-8"))


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def q(x) -> str:
    return fmt_q(x)


def qs(xs) -> list[str]:
    return [fmt_q(x) for x in xs]


def _require(d: dict, key: str, what: str):
    if not isinstance(d, dict) or key not in d:
        raise ValueError(f"{what}: missing field {key!r}")
    return d[key]


def spec_from_json(d: dict) -> SurfaceSpec:
    ade = build_ade(str(_require(d, "ade", "surface spec")))
    h_square = _require(d, "h_square", "surface spec")
    eg = d.get("extra_gram")
    spec = SurfaceSpec.make(ade, to_q(h_square), [[to_q(x) for x in row] for row in eg] if eg else None)
    if "extra_rank" in d and int(d["extra_rank"]) != spec.r:
        raise ValueError(f"extra_rank {d['extra_rank']} does not match extra_gram size {spec.r}")
    return spec


def spec_to_json(spec: SurfaceSpec) -> dict:
    return {
        "ade": str(spec.ade.type),
        "h_square": q(spec.h_square),
        "extra_rank": spec.r,
        "extra_gram": [qs(row) for row in spec.extra_gram],
    }


def class_from_json(d: dict, spec: SurfaceSpec) -> NumClass:
    ch1 = d.get("ch1", {}) or {}
    if not isinstance(ch1, dict):
        raise ValueError("ch1 must be an object with keys h, x, e")
    return spec.make_class(
        to_q(d.get("ch0", 0)),
        to_q(ch1.get("h", 0)),
        [to_q(x) for x in ch1.get("x", [0] * spec.r)],
        [to_q(x) for x in ch1.get("e", [0] * spec.n)],
        to_q(d.get("ch2", 0)),
    )


def class_to_json(v: NumClass) -> dict:
    return {"ch0": q(v.ch0), "ch1": {"h": q(v.h), "x": qs(v.x), "e": qs(v.e)}, "ch2": q(v.ch2)}


def pushed_from_json(d: dict, spec: SurfaceSpec) -> PushedClass:
    ch1 = d.get("ch1", {}) or {}
    h = ch1.get("H", ch1.get("h", 0))
    x = [to_q(v) for v in ch1.get("x", [0] * spec.r)]
    if len(x) != spec.r:
        raise ValueError(f"pushed class needs {spec.r} extra coordinates")
    return PushedClass(to_q(d.get("ch0", 0)), to_q(h), x, to_q(d.get("ch2", 0)))


def pushed_to_json(w: PushedClass) -> dict:
    return {"ch0": q(w.ch0), "ch1": {"H": q(w.h), "x": qs(w.x)}, "ch2": q(w.ch2)}


def params_from_json(d: dict) -> ChargeParams:
    return ChargeParams(
        beta=[to_q(b) for b in _require(d, "beta", "charge params")],
        z=to_q(_require(d, "z", "charge params")),
        s=to_q(d.get("s", 1)),
        epsilon=to_q(d.get("epsilon", 1)),
        eta=to_q(d.get("eta", 0)),
        alpha=to_q(d.get("alpha", 0)),
    )


def params_to_json(p: ChargeParams) -> dict:
    return {"beta": qs(p.beta), "z": q(p.z), "s": q(p.s), "epsilon": q(p.epsilon),
            "eta": q(p.eta), "alpha": q(p.alpha)}


def charge_to_json(c: ChargeValue) -> dict:
    return {"re": q(c.re), "im": q(c.im)}


def ade_to_json(data: AdeData) -> dict:
    return {
        "type": str(data.type),
        "rank": data.n,
        "gram": [list(r) for r in data.gram],
        "adjacency": [list(e) for e in data.adjacency],
        "fund_cycle": list(data.fund_cycle),
    }


def certificate_to_json(c: DefinitenessCertificate) -> dict:
    return {
        "lattice": c.lattice,
        "negative_definite": c.negative_definite,
        "inertia": list(c.inertia),
        "pivots": qs(c.pivots),
        "kernel_basis": [qs(b) for b in c.kernel_basis],
    }


def filtration_to_json(r: FiltrationReport) -> dict:
    return {
        "target": r.target,
        "fund_cycle": list(r.fund_cycle),
        "steps": [{"curve": s.curve, "multiplicity": s.multiplicity, "divisor": list(s.divisor)}
                  for s in r.steps],
        "factors": dict(r.factors),
        "telescoping_ok": r.telescoping_ok,
    }


def phase_chain_to_json(p: PhaseChain) -> dict:
    from .charge import phase_float

    return {
        "ok": p.ok,
        "violation": p.violation,
        "charges": [{"name": n, **charge_to_json(c), "phase": round(phase_float(c), 12)}
                    for n, c in p.charges],
    }


def walk_to_json(w: WalkTrace) -> dict:
    return {
        "start": class_to_json(w.start),
        "steps": [{"op": s.op, "curve": s.curve, "class": class_to_json(s.cls)} for s in w.steps],
        "end": class_to_json(w.end),
    }

