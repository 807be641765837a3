"""The compiled kernels and the pure-Python fallback must agree exactly."""

import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from chowlab import _core, _core_py

ext = pytest.importorskip("chowlab._core_ext")

ints = st.integers(-2**70, 2**70)
small = st.integers(-2**20, 2**20)


@given(st.lists(st.one_of(ints, small), max_size=40), st.lists(st.one_of(small, ints), max_size=40))
def test_poly_mul(a, b):
    assert ext.poly_mul(tuple(a), tuple(b)) == _core_py.poly_mul(tuple(a), tuple(b))


@given(st.lists(small, min_size=1, max_size=64), st.lists(small, min_size=1, max_size=64))
def test_poly_mul_fast_path_boundary(a, b):
    assert ext.poly_mul(tuple(a), tuple(b)) == _core_py.poly_mul(tuple(a), tuple(b))


rows = st.lists(st.lists(st.tuples(st.integers(0, 11), st.integers(-5, 5)), max_size=6), max_size=14)


def _clean(row):
    d = {}
    for c, v in row:
        d[c] = d.get(c, 0) + v
    cols = sorted(c for c in d if d[c])
    return cols, [d[c] for c in cols]


@settings(max_examples=200)
@given(rows, st.lists(st.tuples(st.integers(0, 11), st.integers(-9, 9)), max_size=6))
def test_echelon(raw, probe):
    es = [ext.Echelon(12), _core_py.Echelon(12)]
    for r in raw:
        cols, vals = _clean(r)
        if cols:
            assert es[0].add_row(cols, vals) == es[1].add_row(cols, vals)
    for e in es:
        e.finalize()
    assert es[0].rank == es[1].rank and es[0].pivots() == es[1].pivots()
    cols, vals = _clean(probe)
    assert es[0].reduce(cols, vals) == es[1].reduce(cols, vals)


@settings(max_examples=100)
@given(rows, st.lists(st.tuples(st.integers(0, 11), st.integers(-9, 9)), max_size=6))
def test_echelon_reduce_is_normal_form(raw, probe):
    from fractions import Fraction
    e = _core_py.Echelon(12)
    for r in raw:
        cols, vals = _clean(r)
        if cols:
            e.add_row(cols, vals)
    cols, vals = _clean(probe)
    rc, rv, den = e.reduce(cols, vals)
    assert not set(rc) & set(e.pivots())
    # probe - normal form lies in the row space
    diff = dict(zip(cols, map(Fraction, vals)))
    for c, v in zip(rc, rv):
        diff[c] = diff.get(c, 0) - Fraction(v, den)
    ints = {c: v for c, v in diff.items() if v}
    before = e.rank
    if ints:
        lcm = 1
        for v in ints.values():
            lcm = lcm * v.denominator // __import__("math").gcd(lcm, v.denominator)
        cs = sorted(ints)
        assert not e.add_row(cs, [int(ints[c] * lcm) for c in cs])
    assert e.rank == before


def test_inc_mul_parity():
    from chowlab.matroid import uniform_matroid
    from chowlab.poset import characteristic, poset_of_flats, zeta
    P = poset_of_flats(uniform_matroid(3, 4))
    a, b = characteristic(P).entries, zeta(P).entries
    assert ext.inc_mul(P.triples, a, b) == _core_py.inc_mul(P.triples, a, b)


def test_backend_selection():
    assert _core.BACKEND == "cython"
    env = dict(os.environ, CHOWLAB_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from chowlab import BACKEND, chow_polynomial, "
                          "boolean_matroid; print(BACKEND, chow_polynomial(boolean_matroid(4)))"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python 1 + 11x + 11x^2 + x^3"
