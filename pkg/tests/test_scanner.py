from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from adestab.charge import ChargeParams, charge, find_beta, q_form
from adestab.errors import BoxTooLarge, EmptyRange
from adestab.exceptional import simple_classes
from adestab.lattice import SurfaceSpec
from adestab.scanner import (
    Box,
    Interval,
    QuadSurd,
    enumerate_candidates,
    scan_walls,
    solve_quadratic,
    verify_wall,
)
from _gen import random_class, random_params

F = Fraction
A1 = SurfaceSpec.make("A1")
A2 = SurfaceSpec.make("A2")
P1 = ChargeParams([F(-1, 4)], 1)

coef = st.integers(-12, 12)


@settings(max_examples=300, deadline=None)
@given(coef, coef, coef)
def test_solve_quadratic_against_sympy(c0, c1, c2):
    x = sympy.Symbol("x")
    got = solve_quadratic(F(c0), F(c1), F(c2))
    if c0 == c1 == c2 == 0:
        assert got is None
        return
    expected = sorted(r for r in sympy.Poly(c0 + c1 * x + c2 * x**2, x).real_roots())
    assert len(got) == len(set(expected))
    for g, e in zip(got, sorted(set(expected))):
        if isinstance(g, Fraction):
            assert sympy.Rational(g.numerator, g.denominator) == e
        else:
            assert abs(float(g) - float(e)) < 1e-12
            assert g.sign() == sympy.sign(e)


@settings(max_examples=300, deadline=None)
@given(coef, coef, st.integers(2, 50))
def test_surd_sign(a, b, r):
    if sympy.sqrt(r).is_rational:
        return
    s = QuadSurd(F(a), F(b), F(r))
    assert s.sign() == sympy.sign(a + b * sympy.sqrt(r))


def test_interval():
    iv = Interval(0, 1)
    assert not iv.contains(F(0)) and iv.contains(F(1)) and iv.contains(F(1, 2))
    with pytest.raises(EmptyRange):
        Interval(1, 0)
    with pytest.raises(EmptyRange):
        Interval(1, 1)
    assert Interval(1, 1, lo_closed=True).contains(F(1))


def test_wall_examples():
    sc = simple_classes(A1)
    rep = scan_walls(A1, P1, sc.ox, [sc.opi, *sc.s], "epsilon")
    assert rep.walls == ()
    assert {seg.witness for seg in rep.segments} == {sc.opi, *sc.s}
    v = A1.make_class(1, 1)
    rep = scan_walls(A1, P1, v, [A1.curve(1)], "epsilon")
    assert rep.walls == () and rep.segments == ()
    rep = scan_walls(A1, P1, v, [v, v], "s", (1, 10))
    assert rep.walls == () and rep.segments == ()


def _as_sympy(x):
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    q = lambda f: sympy.Rational(f.numerator, f.denominator)  # noqa: E731
    return q(x.a) + q(x.b) * sympy.sqrt(q(x.r))


def _sympy_walls(spec, p, v, w, parameter, lo, hi):
    """Independent wall computation: symbolic charge in the path parameter."""
    lam = sympy.Symbol("lam", real=True)
    R = lambda x: sympy.Rational(x.numerator, x.denominator)  # noqa: E731

    def z(c):
        eps = lam if parameter == "epsilon" else R(p.epsilon)
        s = lam if parameter == "s" else R(p.s)
        b = sum(R(p.beta[i]) * R(sum(spec.ade.gram[i][j] * c.e[j] for j in range(spec.n))) for i in range(spec.n))
        hd = R(spec.h_square) * R(c.h) + sum(R(spec.extra_gram[0][1 + j]) * R(c.x[j]) for j in range(spec.r))
        re = -R(c.ch2) + eps * b + s * R(p.z) * R(c.ch0)
        im = hd - R(p.alpha) * R(c.ch0) + R(p.eta) * b
        return re, im

    (rv, iv), (rw, iw) = z(v), z(w)
    cross = sympy.expand(rw * iv - rv * iw)
    if cross == 0:
        return None
    roots = sympy.Poly(cross, lam).real_roots()
    out = set()
    for r in roots:
        if R(lo) < r <= R(hi) and (rv * rw + iv * iw).subs(lam, r) > 0:
            out.add(r)
    return out


@pytest.mark.parametrize("name,parameter,rng_", [("A1", "epsilon", (0, 1)), ("A2", "s", (1, 12)),
                                                  ("D4", "epsilon", (0, 1)), ("A3", "s", (1, 40))])
def test_walls_against_symbolic_oracle(name, parameter, rng_, rng: random.Random):
    spec = SurfaceSpec.make(name)
    found = 0
    for _ in range(30):
        p = random_params(spec, rng, eta=rng.choice([F(0), F(1, 7)]))
        v = random_class(spec, rng, bound=3)
        cands = [random_class(spec, rng, bound=3) for _ in range(40)]
        rep = scan_walls(spec, p, v, cands, parameter, rng_)
        got: dict = {}
        for wall in rep.walls:
            assert verify_wall(spec, p, parameter, wall, v)
            for w in wall.witnesses:
                got.setdefault(w, set()).add(_as_sympy(wall.value))
        seg = {s.witness for s in rep.segments}
        for w in dict.fromkeys(cands):
            if w == v:
                continue
            exp = _sympy_walls(spec, p, v, w, parameter, *rng_)
            if exp is None:
                continue
            assert w not in seg
            mine = got.get(w, set())
            assert {r for r in mine if r.is_Rational} == {r for r in exp if r.is_Rational}
            assert sorted(float(r) for r in mine) == pytest.approx(sorted(float(r) for r in exp), abs=1e-12)
            found += len(exp)
    assert found > 0, "the draws never produced a wall; the comparison was vacuous"

def test_threaded_scan_matches_serial(monkeypatch, rng: random.Random):
    spec = SurfaceSpec.make("D5")
    p = random_params(spec, rng)
    v = random_class(spec, rng, bound=3)
    cands = [random_class(spec, rng, bound=3) for _ in range(60)]
    serial = scan_walls(spec, p, v, cands, "epsilon")
    monkeypatch.setenv("ADESTAB_THREADS", "4")
    threaded = scan_walls(spec, p, v, cands, "epsilon")
    assert serial == threaded


def _brute_candidates(spec, p, v, ranges, A, B, h_range=range(-40, 41)):
    im_v = charge(spec, p, v).im
    out = set()
    for ch0 in ranges["ch0"]:
        for es in itertools.product(ranges["e"], repeat=spec.n):
            for ch2 in ranges["ch2"]:
                for h in h_range:
                    w = spec.make_class(ch0, h, (), es, ch2)
                    if w == spec.zero():
                        continue
                    im = charge(spec, p, w).im
                    if 0 <= im <= im_v and q_form(spec, p, A, B, w) >= 0:
                        out.add(w)
    return out


@pytest.mark.parametrize("A,B", [(0, 0), (1, 0), (0, 18)])
def test_enumeration_against_brute_force(A, B):
    p = ChargeParams(find_beta(A2, F(1, 3)), 1)
    v = A2.make_class(1, 1)
    box = Box(ch0=(-1, 1), e=(-2, 2), ch2=(-2, 2))
    got = enumerate_candidates(A2, p, v, box, A, B)
    assert len(got) == len(set(got))
    ranges = {"ch0": range(-1, 2), "e": range(-2, 3), "ch2": range(-2, 3)}
    assert set(got) == _brute_candidates(A2, p, v, ranges, A, B)


def test_enumeration_examples():
    sc = simple_classes(A1)
    got = set(enumerate_candidates(A1, P1, sc.ox, Box(e=(-1, 1), ch2=(0, 1)), 0, 8))
    assert {sc.ox, sc.opi, *sc.s} <= got
    # Im Z(v) = 0 and a box whose classes all have Im != 0
    v = A1.make_class(ch2=1)
    assert enumerate_candidates(A1, P1.with_(alpha=1), v, Box(ch0=(1, 1), ch2=(0, 1))) == []
    with pytest.raises(BoxTooLarge):
        enumerate_candidates(A2, P1.with_(beta=find_beta(A2)), v.__class__(0, 0, (), (0, 0), 1),
                             Box(ch0=(-50, 50), e=(-50, 50), ch2=(-50, 50)))
