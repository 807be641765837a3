"""Checks of the decomposition identities, with JSON-lines reports.

Hilbert-level checks use only the incidence-algebra side (no ring models):
Chow polynomials of minors are read off intervals in lattices of flats.
Explicit checks delegate to :mod:`chowlab.maps`.
"""

from __future__ import annotations

import itertools
import json
import os
import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from . import maps
from .chow import build_model
from .matroid import (Matroid, MatroidError, boolean_matroid, direct_sum, from_json,
                      is_coloop, restriction, uniform_matroid)
from .poly import IntPolynomial, X
from .poset import (PosetInvariants, characteristic, chow_function, identity, inc_inverse,
                    is_kernel, kls_left, kls_right, mobius, poset_of_flats, product_poset,
                    reduced_kernel, rev, tensor, zeta)

DEFAULT_MAX_RANK = 6
DEFAULT_EXPLICIT_RANK = 4


@dataclass
class VerificationReport:
    identity: str
    instance: str
    left: object
    right: object
    passed: bool
    seconds: float = 0.0
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        def enc(v):
            if isinstance(v, IntPolynomial):
                return v.to_list()
            if isinstance(v, (list, tuple)):
                return [enc(w) for w in v]
            return v
        out = {"identity": self.identity, "instance": self.instance,
               "left": enc(self.left), "right": enc(self.right),
               "pass": self.passed, "seconds": round(self.seconds, 4)}
        if self.detail:
            out["detail"] = self.detail
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _report(name, instance, left, right, t0, detail=None) -> VerificationReport:
    return VerificationReport(name, instance, left, right, left == right,
                              time.perf_counter() - t0, detail or {})


# -- corpus -------------------------------------------------------------------------


def default_corpus() -> dict[str, Matroid]:
    out = {f"B{n}": boolean_matroid(n) for n in range(1, 5)}
    for r, n in ((1, 2), (2, 3), (2, 4), (3, 4)):
        out[f"U{r},{n}"] = uniform_matroid(r, n)
    return out


def load_corpus(path: str) -> dict[str, Matroid]:
    """A JSON object {name: matroid} or a list of matroids (named by position)."""
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, list):
        data = {f"m{k}": v for k, v in enumerate(data)}
    if not isinstance(data, dict):
        raise MatroidError("corpus file must hold a JSON object or list")
    return {name: from_json(v) for name, v in data.items()}


def max_rank(default: int = DEFAULT_MAX_RANK) -> int:
    raw = os.environ.get("CHOWLAB_MAX_RANK")
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"CHOWLAB_MAX_RANK must be an integer, got {raw!r}") from None


def corpus_pairs(corpus: dict, bound: int):
    """Ordered pairs of corpus matroids with rank sum at most ``bound``."""
    names = list(corpus)
    return [(a, b) for a in names for b in names if corpus[a].rank + corpus[b].rank <= bound]


# -- interval data of lattices of flats -------------------------------------------------


class FlatFunctions:
    """Chow and augmented Chow polynomials of all intervals of one lattice of flats."""

    def __init__(self, M: Matroid):
        self.matroid = M
        self.poset = poset_of_flats(M)
        self.index = {F: k for k, F in enumerate(self.poset.labels)}
        kernel = characteristic(self.poset)
        self.H = chow_function(kernel)
        self.G = rev(kls_left(kernel)) * self.H

    def h(self, lo: int, hi: int) -> IntPolynomial:
        return self.H[self.index[lo], self.index[hi]]

    def g(self, lo: int, hi: int) -> IntPolynomial:
        return self.G[self.index[lo], self.index[hi]]

    def chow(self) -> IntPolynomial:
        return self.h(0, self.matroid.full)

    def aug(self) -> IntPolynomial:
        return self.g(0, self.matroid.full)


@lru_cache(maxsize=256)
def flat_functions(M: Matroid) -> FlatFunctions:
    return FlatFunctions(M)


def _sum_data(M, N):
    S = direct_sum(M, N)
    return S, flat_functions(M), flat_functions(N), flat_functions(S), M.ground_size


# -- Hilbert-level decomposition checks ------------------------------------------------------


def thm1_rhs(M: Matroid, N: Matroid) -> IntPolynomial:
    S, dm, dn, ds, m = _sum_data(M, N)
    total = IntPolynomial(0)
    for F in M.flats:
        for G in N.flats:
            if F and G:
                total = total + ds.h(F | G << m, S.full) * dm.h(0, F) * dn.h(0, G)
    return dm.chow() * dn.chow() + X * total


def thm2_rhs(M: Matroid, N: Matroid) -> IntPolynomial:
    S, dm, dn, ds, m = _sum_data(M, N)
    total = IntPolynomial(0)
    for F in M.proper_flats():
        for G in N.proper_flats():
            total = total + ds.h(0, F | G << m) * dm.h(F, M.full) * dn.h(G, N.full)
    return dm.chow() * dn.chow() + X * total


def aug_rhs(M: Matroid, N: Matroid) -> IntPolynomial:
    S, dm, dn, ds, m = _sum_data(M, N)
    total = IntPolynomial(0)
    for F in M.proper_flats():
        for G in N.proper_flats():
            total = total + ds.g(0, F | G << m) * dm.h(F, M.full) * dn.h(G, N.full)
    return dm.aug() * dn.aug() + X * total


def _flag_weights(M: Matroid) -> dict[int, IntPolynomial]:
    """Sum over flags 0 < F1 < ... < Fk <= M of H[0,F1] H[F1,F2] ... H[Fk,M], by length k."""
    d = flat_functions(M)
    out: dict[int, IntPolynomial] = {}

    def walk(last, k, weight):
        if k:
            out[k] = out.get(k, IntPolynomial(0)) + weight * d.h(last, M.full)
        if last == M.full:
            return
        for F in M.flats:
            if F != last and F & last == last:
                walk(F, k + 1, weight * d.h(last, F))

    walk(0, 0, IntPolynomial(1))
    return out


def corirred_rhs(M: Matroid, N: Matroid) -> IntPolynomial:
    wm, wn = _flag_weights(M), _flag_weights(N)
    total = flat_functions(M).chow() * flat_functions(N).chow()
    for k in sorted(set(wm) & set(wn)):
        total = total + (wm[k] * wn[k]).shift(k)
    return total


def _instance(M, N, names=None):
    if names:
        return f"{names[0]}+{names[1]}"
    return f"{M!r}+{N!r}"


def check_thm1_hilbert(M, N, names=None) -> VerificationReport:
    t0 = time.perf_counter()
    lhs = flat_functions(direct_sum(M, N)).chow()
    return _report("thm1-hilbert", _instance(M, N, names), lhs, thm1_rhs(M, N), t0)


def check_thm2_hilbert(M, N, names=None) -> VerificationReport:
    t0 = time.perf_counter()
    lhs = flat_functions(direct_sum(M, N)).chow()
    return _report("thm2-hilbert", _instance(M, N, names), lhs, thm2_rhs(M, N), t0)


def check_aug_hilbert(M, N, names=None) -> VerificationReport:
    t0 = time.perf_counter()
    lhs = flat_functions(direct_sum(M, N)).aug()
    return _report("aug-hilbert", _instance(M, N, names), lhs, aug_rhs(M, N), t0)


def check_corirred(M, N, names=None) -> VerificationReport:
    t0 = time.perf_counter()
    lhs = flat_functions(direct_sum(M, N)).chow()
    return _report("flag-sum", _instance(M, N, names), lhs, corirred_rhs(M, N), t0)


# -- Eulerian polynomials --------------------------------------------------------------


@lru_cache(maxsize=None)
def eulerian_by_descents(n: int) -> IntPolynomial:
    """Count permutations of [n] by number of descents (brute force)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    counts = [0] * max(n, 1)
    for p in itertools.permutations(range(n)):
        counts[sum(p[k] > p[k + 1] for k in range(n - 1))] += 1
    return IntPolynomial(counts)


@lru_cache(maxsize=None)
def eulerian_by_recurrence(n: int) -> IntPolynomial:
    """A(n,k) = (k+1) A(n-1,k) + (n-k) A(n-1,k-1)."""
    if n <= 1:
        return IntPolynomial(1)
    prev = eulerian_by_recurrence(n - 1)
    return IntPolynomial([(k + 1) * prev[k] + (n - k) * prev[k - 1] if k else prev[0]
                          for k in range(n)])


BRUTE_FORCE_LIMIT = 8


def eulerian(n: int) -> IntPolynomial:
    if n <= BRUTE_FORCE_LIMIT:
        return eulerian_by_descents(n)
    return eulerian_by_recurrence(n)


def euler_rhs(n: int, m: int) -> IntPolynomial:
    total = IntPolynomial(0)
    for r in range(1, n + 1):
        for s in range(1, m + 1):
            total = total + eulerian(r) * eulerian(s) * eulerian(n + m - r - s) * (comb(n, r) * comb(m, s))
    return eulerian(n) * eulerian(m) + X * total


def check_euler_recursion(n: int, m: int) -> VerificationReport:
    if n < 1 or m < 1 or n + m > 10:
        raise ValueError("need n, m >= 1 and n + m <= 10")
    t0 = time.perf_counter()
    return _report("eulerian-recursion", f"n={n},m={m}", eulerian(n + m), euler_rhs(n, m), t0)


def check_eulerian_boolean(n: int, explicit: bool = False) -> VerificationReport:
    """Descent counting against the Chow polynomial of the boolean lattice (and the ring model)."""
    t0 = time.perf_counter()
    B = boolean_matroid(n)
    right = [flat_functions(B).chow()]
    if explicit:
        right.append(build_model(B, "chow").hilbert())
    left = [eulerian_by_descents(n)] * len(right)
    return _report("eulerian-boolean", f"n={n}", left, right, t0)


# -- coloops ----------------------------------------------------------------------


def check_coloop_decomposition(M: Matroid, i: int, name=None) -> list[VerificationReport]:
    """Coloop identities for the coloop ``i``.

    The Chow identity needs rank at least 2: at rank 1 the shifted copy of
    ch(M minus i) would sit above the top degree of ch(M) = Q, so only the
    augmented identity is reported there.
    """
    if not is_coloop(M, i):
        raise MatroidError(f"element {i} is not a coloop")
    t0 = time.perf_counter()
    rest = M.full & ~(1 << i)
    d = flat_functions(M)
    dr = flat_functions(restriction(M, rest))
    chow_terms = IntPolynomial(0)
    aug_terms = IntPolynomial(0)
    for F in M.flats:
        if F & rest != F or F == rest:
            continue
        lower = d.h(F | 1 << i, M.full)
        aug_terms = aug_terms + d.g(0, F) * lower
        if F:
            chow_terms = chow_terms + lower * d.h(0, F)
    inst = f"{name or repr(M)} coloop {i}"
    chow_rhs = dr.chow() + X * dr.chow() + X * chow_terms
    aug_rhs_ = dr.aug() + X * dr.aug() + X * aug_terms
    out = [_report("coloop-aug", inst, d.aug(), aug_rhs_, t0)]
    if M.rank >= 2:
        out.insert(0, _report("coloop-chow", inst, d.chow(), chow_rhs, t0))
    return out


# -- product posets ---------------------------------------------------------------


def product_identities(P1, P2, instance: str = "") -> list[VerificationReport]:
    """Relations between Chow-type functions of a product poset and its factors."""
    out = []
    t0 = time.perf_counter()
    P = product_poset(P1, P2)
    k1, k2 = characteristic(P1), characteristic(P2)
    inv1, inv2 = PosetInvariants.of(P1, k1), PosetInvariants.of(P2, k2)
    kernel = tensor(k1, k2, P)
    out.append(VerificationReport("tensor-kernel", instance, is_kernel(kernel), True,
                                  is_kernel(kernel), time.perf_counter() - t0))
    inv = PosetInvariants.of(P, kernel)
    I, I1, I2 = identity(P), identity(P1), identity(P2)
    x, xm1 = X, X - 1

    t0 = time.perf_counter()
    r1, r2 = reduced_kernel(k1), reduced_kernel(k2)
    rhs = (tensor(r1, r2, P) * xm1 + tensor(r1, I2, P) * x + tensor(I1, r2, P) * x + I * x)
    out.append(_cmp("reduced-kernel-product", instance, reduced_kernel(kernel), rhs, t0))

    H, H1, H2 = inv.H, inv1.H, inv2.H
    HH, IH, HI = tensor(H1, H2, P), tensor(I1, H2, P), tensor(H1, I2, P)
    t0 = time.perf_counter()
    rhs = HH + (H * HH) * x - (H * IH) * x - (H * HI) * x + H * x
    out.append(_cmp("chow-product-left", instance, H, rhs, t0))
    t0 = time.perf_counter()
    rhs = HH + (HH * H) * x - (IH * H) * x - (HI * H) * x + H * x
    out.append(_cmp("chow-product-right", instance, H, rhs, t0))

    t0 = time.perf_counter()
    F = inv.F
    rhs = tensor(inv1.F, inv2.F, P) + (HH * F) * x - (IH * F) * x - (HI * F) * x + F * x
    out.append(_cmp("aug-right-product", instance, F, rhs, t0))
    t0 = time.perf_counter()
    G = inv.G
    rhs = tensor(inv1.G, inv2.G, P) + (G * HH) * x - (G * IH) * x - (G * HI) * x + G * x
    out.append(_cmp("aug-left-product", instance, G, rhs, t0))

    t0 = time.perf_counter()
    out.append(_cmp("kls-right-tensor", instance, inv.f, tensor(inv1.f, inv2.f, P), t0))
    t0 = time.perf_counter()
    out.append(_cmp("kls-left-tensor", instance, inv.g, tensor(inv1.g, inv2.g, P), t0))
    return out


def _cmp(name, instance, a, b, t0) -> VerificationReport:
    diff = a - b
    bad = sorted(diff.entries)[:5]
    return VerificationReport(name, instance, len(a.entries), len(b.entries), not diff.entries,
                              time.perf_counter() - t0,
                              {"mismatched_entries": [list(k) for k in bad]} if bad else {})


def lattice_properties(M: Matroid, instance: str = "") -> list[VerificationReport]:
    """Kernel identity for the characteristic function and Mobius inversion."""
    t0 = time.perf_counter()
    P = poset_of_flats(M)
    chi = characteristic(P)
    out = [_cmp("characteristic-kernel", instance, inc_inverse(chi), rev(chi), t0)]
    t0 = time.perf_counter()
    mu, z = mobius(P), zeta(P)
    out.append(_cmp("mobius-left", instance, mu * z, identity(P), t0))
    out.append(_cmp("mobius-right", instance, z * mu, identity(P), t0))
    return out


# -- explicit maps ----------------------------------------------------------------


def check_thm1_explicit(M, N, variant: str = "thm1", names=None) -> VerificationReport:
    t0 = time.perf_counter()
    A = maps.assemble_phi(M, N, variant)
    left = [r.rank for r in A.rows]
    right = [r.codomain_dim for r in A.rows]
    rep = VerificationReport(f"explicit-{variant}", _instance(M, N, names), left, right,
                             A.is_isomorphism, time.perf_counter() - t0, A.report())
    return rep


# -- suites ------------------------------------------------------------------------


SUITES = ("thm1", "thm2", "aug", "corirred", "euler", "coloop", "explicit", "all")


def run_suite(suite: str, corpus: dict = None, bound: int = None,
              explicit_bound: int = None) -> list[VerificationReport]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    corpus = corpus if corpus is not None else default_corpus()
    bound = bound if bound is not None else max_rank()
    explicit_bound = explicit_bound if explicit_bound is not None else min(bound, DEFAULT_EXPLICIT_RANK)
    if suite == "all":
        return [r for s in SUITES[:-1] for r in run_suite(s, corpus, bound, explicit_bound)]
    out = []
    if suite in ("thm1", "thm2", "aug", "corirred"):
        check = {"thm1": check_thm1_hilbert, "thm2": check_thm2_hilbert,
                 "aug": check_aug_hilbert, "corirred": check_corirred}[suite]
        for a, b in corpus_pairs(corpus, bound):
            out.append(check(corpus[a], corpus[b], (a, b)))
    elif suite == "euler":
        for n in range(1, 6):
            out.append(check_eulerian_boolean(n))
        for n in range(1, 8):
            for m in range(1, 9 - n):
                out.append(check_euler_recursion(n, m))
    elif suite == "coloop":
        for name, M in corpus.items():
            for i in range(M.ground_size):
                if is_coloop(M, i):
                    out.extend(check_coloop_decomposition(M, i, name))
    elif suite == "explicit":
        for a, b in corpus_pairs(corpus, explicit_bound):
            for variant in maps.VARIANTS:
                out.append(check_thm1_explicit(corpus[a], corpus[b], variant, (a, b)))
    return out


def summarize(reports) -> dict:
    failed = [r for r in reports if not r.passed]
    return {"checks": len(reports), "failed": len(failed),
            "failures": [f"{r.identity} {r.instance}" for r in failed]}


__all__ = [
    "VerificationReport", "default_corpus", "load_corpus", "corpus_pairs", "max_rank",
    "check_thm1_hilbert", "check_thm2_hilbert", "check_aug_hilbert", "check_corirred",
    "eulerian", "eulerian_by_descents", "eulerian_by_recurrence", "check_euler_recursion",
    "check_eulerian_boolean", "check_coloop_decomposition", "check_thm1_explicit",
    "product_identities", "lattice_properties", "run_suite", "summarize",
]
