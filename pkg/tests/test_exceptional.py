from __future__ import annotations

import random
from fractions import Fraction

import pytest

from adestab.charge import ChargeParams, find_beta
from adestab.errors import IndexOutOfRange, NotExceptionalClass
from adestab.exceptional import (
    decompose,
    normalize_walk,
    phase_chain_check,
    simple_classes,
    skyscraper_filtration,
    walk_target,
)
from adestab.lattice import SurfaceSpec, lift, pr_kernel, pushforward
from _gen import TYPES, random_class

F = Fraction
A1 = SurfaceSpec.make("A1")
A2 = SurfaceSpec.make("A2")
D4 = SurfaceSpec.make("D4")


def test_simple_classes_examples():
    sc = simple_classes(A1)
    assert sc.opi == A1.make_class(e=(1,), ch2=1)
    assert sc.s == (A1.curve(1, -1),)
    assert sc.opi + sc.s[0] == sc.ox
    sc = simple_classes(D4)
    assert sc.opi + 2 * sc.s[0] + sc.s[1] + sc.s[2] + sc.s[3] == sc.ox


def test_decompose_examples():
    assert decompose(A1, A1.make_class(ch2=1)) == (1, (1,))
    assert decompose(A1, A1.make_class(e=(1,), ch2=2)) == (2, (1,))
    assert decompose(A1, A1.make_class(e=(3,), ch2=2)) is None
    assert decompose(D4, D4.make_class(ch2=1)) == (1, (2, 1, 1, 1))
    with pytest.raises(NotExceptionalClass):
        decompose(A1, A1.make_class(1))


def test_filtration_examples():
    r = skyscraper_filtration(A2, 2)
    assert [(s.curve, s.multiplicity, s.divisor) for s in r.steps] == [(1, 1, (0, 1))]
    assert r.factors == {"opi": 1, "s_1": 1, "s_2": 1} and r.telescoping_ok
    r = skyscraper_filtration(A1, 1)
    assert r.steps == () and r.factors == {"opi": 1, "s_1": 1}
    r = skyscraper_filtration(D4, 2)
    assert sum(s.multiplicity for s in r.steps if s.curve == 1) == 2
    assert r.multiplicities(4) == (2, 1, 1, 1)
    with pytest.raises(IndexOutOfRange):
        skyscraper_filtration(A2, 3)


@pytest.mark.parametrize("name", TYPES)
def test_filtration_all_targets(name):
    spec = SurfaceSpec.make(name)
    n0, ns = decompose(spec, simple_classes(spec).ox)
    for target in range(1, spec.n + 1):
        r = skyscraper_filtration(spec, target)
        assert r.telescoping_ok
        assert r.factors["opi"] == n0 == 1
        assert r.multiplicities(spec.n) == ns == spec.ade.fund_cycle
        for dv in r.divisors():
            # every intermediate O_D keeps D^2 = -2, hence ch2 = 1 after the Todd shift
            assert spec.ade.pair(dv, dv) == -2
            assert dv[target - 1] >= 1


def test_phase_chain_examples():
    p = ChargeParams([F(-1, 4)], 1, eta=F(1, 10))
    assert phase_chain_check(A1, p, skyscraper_filtration(A1, 1)).ok
    p2 = ChargeParams(find_beta(A2, F(1, 3)), 1, eta=F(1, 10))
    chain = phase_chain_check(A2, p2, skyscraper_filtration(A2, 2))
    assert chain.ok
    assert [n for n, _ in chain.charges][:3] == ["opi", "O_D1", "ox"]
    flat = phase_chain_check(A2, p2.with_(eta=0), skyscraper_filtration(A2, 2))
    assert not flat.ok and flat.violation


@pytest.mark.parametrize("name", ["A3", "D5", "E6"])
def test_phase_chain_with_epsilon(name):
    spec = SurfaceSpec.make(name)
    p = ChargeParams(find_beta(spec), 1)
    for eps in (F(1), F(1, 2), F(1, 64)):
        for eta in (F(1, 10), F(1, 1000)):
            for target in range(1, spec.n + 1):
                r = skyscraper_filtration(spec, target)
                assert phase_chain_check(spec, p.with_(epsilon=eps, eta=eta), r).ok


def test_walk_examples():
    v = A2.make_class(2, 1, e=(2, 1), ch2=3)
    trace = normalize_walk(A2, v)
    assert len(trace.steps) == 3 and trace.end == A2.make_class(2, 1, ch2=3)
    assert [s.op for s in trace.steps] == ["add"] * 3
    assert normalize_walk(A2, A2.make_class(1, 1)).steps == ()
    t1 = normalize_walk(A1, A1.curve(1, -1))
    assert len(t1.steps) == 1 and t1.end == A1.zero()


@pytest.mark.parametrize("name", TYPES)
def test_walk_reaches_lift(name, rng: random.Random):
    spec = SurfaceSpec.make(name)
    sc = simple_classes(spec)
    for _ in range(40):
        v = random_class(spec, rng, bound=5)
        trace = normalize_walk(spec, v)
        end = trace.end
        assert end == lift(spec, pushforward(spec, v)) == walk_target(spec, v)
        assert all(0 <= a < 1 for a in pr_kernel(spec, end)[0])
        prev = v
        for st in trace.steps:
            step = sc.s[st.curve - 1]
            assert st.cls == (prev + step if st.op == "add" else prev - step)
            prev = st.cls


def test_walk_fractional_offset():
    v = A2.make_class(0, 1, e=(F(5, 2), F(-1, 3)), ch2=0)
    end = normalize_walk(A2, v).end
    assert all(0 <= a < 1 for a in pr_kernel(A2, end)[0])
    assert end == walk_target(A2, v)
