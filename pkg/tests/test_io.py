from __future__ import annotations

import json
from fractions import Fraction

import pytest

from adestab import io
from adestab.charge import ChargeParams
from adestab.errors import BadSignature
from adestab.lattice import PushedClass, SurfaceSpec


def test_spec_roundtrip():
    spec = SurfaceSpec.make("A2", 2, [[2, 1], [1, -2]])
    d = io.spec_to_json(spec)
    again = io.spec_from_json(json.loads(json.dumps(d)))
    assert again.gram == spec.gram and again.r == 1


def test_spec_errors():
    with pytest.raises(ValueError):
        io.spec_from_json({"ade": "A1"})
    with pytest.raises(BadSignature):
        io.spec_from_json({"ade": "A1", "h_square": 0})
    with pytest.raises(ValueError):
        io.spec_from_json({"ade": "A1", "h_square": 2, "extra_rank": 3})


def test_class_and_params_roundtrip():
    spec = SurfaceSpec.make("A2")
    v = spec.make_class(2, 1, e=(Fraction(1, 2), -3), ch2=Fraction(7, 3))
    assert io.class_from_json(io.class_to_json(v), spec) == v
    p = ChargeParams((Fraction(-1, 3), Fraction(-1, 3)), 1, s=2, eta=Fraction(1, 10))
    assert io.params_from_json(io.params_to_json(p)) == p
    w = PushedClass(1, 2, (), 3)
    assert io.pushed_from_json(io.pushed_to_json(w), spec) == w
    assert io.pushed_from_json({"ch0": 1, "ch1": {"h": 2}, "ch2": 3}, spec) == w


def test_load_json_sources(tmp_path):
    f = tmp_path / "x.json"
    f.write_text('{"a": 1}')
    assert io.load_json(str(f)) == {"a": 1}
    assert io.load_json('{"a": 2}') == {"a": 2}
    assert io.load_json("[1, 2]") == [1, 2]


def test_floats_rejected():
    spec = SurfaceSpec.make("A1")
    with pytest.raises(TypeError):
        io.class_from_json({"ch0": 0.5}, spec)
