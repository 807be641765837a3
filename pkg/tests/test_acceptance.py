"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line (visible without -s) before asserting.
"""

import random
import time

import pytest

from chowlab import linalg, maps
from chowlab import verify as V
from chowlab.chow import AUGMENTED, CHOW, build_model, poincare_matrix
from chowlab.matroid import boolean_matroid, uniform_matroid
from chowlab.poly import IntPolynomial
from chowlab.poset import IncidenceFunction, poset_of_flats, product_poset, rev

CORPUS = V.default_corpus()


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, seconds, detail=""):
        with capsys.disabled():
            extra = f" {detail}" if detail else ""
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {title} ({seconds:.2f}s){extra}")
        return ok
    return emit


def test_criterion_1_ring_models_match_chow_functions(report):
    t0 = time.perf_counter()
    bad = []
    for name, M in CORPUS.items():
        ff = V.flat_functions(M)
        if build_model(M, CHOW, cache=False).hilbert() != ff.chow():
            bad.append(f"{name}/chow")
        if build_model(M, AUGMENTED, cache=False).hilbert() != ff.aug():
            bad.append(f"{name}/aug")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    report(1, "ring Hilbert series equal H and G on the corpus", ok, dt, " ".join(bad))
    assert not bad and dt < 60


def test_criterion_2_eulerian_cross_check(report):
    t0 = time.perf_counter()
    bad = [n for n in range(1, 6)
           if V.eulerian_by_descents(n) != V.flat_functions(boolean_matroid(n)).chow()]
    a4 = V.eulerian_by_descents(4) == IntPolynomial([1, 11, 11, 1])
    dt = time.perf_counter() - t0
    report(2, "descent counts equal boolean Chow polynomials, A_4 = 1 + 11x + 11x^2 + x^3",
           not bad and a4, dt, str(bad) if bad else "")
    assert not bad and a4


def test_criterion_3_eulerian_recursion(report):
    t0 = time.perf_counter()
    reps = [V.check_euler_recursion(n, m) for n in range(1, 8) for m in range(1, 9 - n)]
    dt = time.perf_counter() - t0
    failed = [r.instance for r in reps if not r.passed]
    ok = not failed and dt < 10
    report(3, f"Eulerian product recursion for n + m <= 8 ({len(reps)} cases)", ok, dt, " ".join(failed))
    assert len(reps) == 28 and not failed and dt < 10


def test_criterion_4_product_identities(report):
    t0 = time.perf_counter()
    names = ["B1", "B2", "B3", "U2,3"]
    lattices = {n: poset_of_flats(CORPUS[n]) for n in names}
    required = {"reduced-kernel-product", "chow-product-left", "chow-product-right",
                "aug-right-product", "aug-left-product"}
    failed, seen = [], set()
    for a in names:
        for b in names:
            for r in V.product_identities(lattices[a], lattices[b], f"{a}x{b}"):
                seen.add(r.identity)
                if r.identity in required and not r.passed:
                    failed.append(f"{r.identity}@{r.instance}")
    dt = time.perf_counter() - t0
    ok = not failed and required <= seen
    report(4, "product-lattice identities for Chow, reduced-kernel and augmented functions",
           ok, dt, " ".join(failed))
    assert ok


def test_criterion_5_hilbert_decompositions(report):
    t0 = time.perf_counter()
    pairs = list(V.corpus_pairs(CORPUS, 6))
    failed = []
    for a, b in pairs:
        M, N = CORPUS[a], CORPUS[b]
        for check in (V.check_thm1_hilbert, V.check_thm2_hilbert, V.check_aug_hilbert, V.check_corirred):
            r = check(M, N, (a, b))
            if not r.passed:
                failed.append(f"{r.identity}@{r.instance}")
    dt = time.perf_counter() - t0
    report(5, f"Hilbert decompositions and flag sum on {len(pairs)} pairs with rank sum <= 6",
           not failed, dt, " ".join(failed))
    assert pairs and not failed


def test_criterion_6_explicit_isomorphisms(report):
    t0 = time.perf_counter()
    pairs = list(V.corpus_pairs(CORPUS, 4))
    failed, count = [], 0
    for a, b in pairs:
        for variant in ("thm1", "thm2", "aug"):
            A = maps.assemble_phi(CORPUS[a], CORPUS[b], variant)
            count += 1
            if not (A.full_rank and A.hilbert_equal):
                failed.append(f"{variant}@{a}+{b}")
    dt = time.perf_counter() - t0
    ok = not failed and dt < 300
    report(6, f"assembled maps are isomorphisms in every degree ({count} cases)", ok, dt, " ".join(failed))
    assert count and not failed and dt < 300


def _random_jrk(P, rng):
    entries = {}
    for s, t in P.pairs:
        if rng.random() < 0.7:
            entries[s, t] = [rng.randint(-5, 5) for _ in range(rng.randint(0, P.rank[s, t]) + 1)]
    return IncidenceFunction(P, entries)


def test_criterion_7_property_suites(report):
    t0 = time.perf_counter()
    failed = []
    for name, M in CORPUS.items():
        failed += [f"{r.identity}@{name}" for r in V.lattice_properties(M, name) if not r.passed]

    rng = random.Random(20261016)
    lattices = [poset_of_flats(M) for M in CORPUS.values()]
    for i in range(100):
        a = _random_jrk(rng.choice(lattices), rng)
        if not a.in_jrk() or rev(rev(a)) != a:
            failed.append(f"rev-involution#{i}")

    small = {n: poset_of_flats(CORPUS[n]) for n in ("B1", "B2", "U2,3")}
    for a in small:
        for b in small:
            failed += [f"{r.identity}@{r.instance}"
                       for r in V.product_identities(small[a], small[b], f"{a}x{b}")
                       if r.identity in ("kls-right-tensor", "kls-left-tensor") and not r.passed]

    for name, M in CORPUS.items():
        for kind in (CHOW, AUGMENTED):
            model = build_model(M, kind)
            for k in range(model.top + 1):
                if linalg.rank(poincare_matrix(model, k), model.dim(model.top - k)) != model.dim(k):
                    failed.append(f"poincare@{name}/{kind}/{k}")

    B1, B2 = boolean_matroid(1), boolean_matroid(2)
    sign_checked = 0
    for M, N in ((B1, B1), (B2, B1)):
        for variant in ("thm1", "aug"):
            A = maps.assemble_phi(M, N, variant)
            if maps.orthogonality_violations(A):
                failed.append(f"orthogonality@{variant}")
            full_m = (1 << M.ground_size) - 1
            full_n = A.matroid.full & ~full_m
            for s in A.summands:
                c = maps.pairing_constant(A, s)
                if s.name == "iota":
                    expected = 1 if variant == "aug" else None
                else:
                    F, G = s.flats
                    lemma = variant == "aug" or (F not in (0, full_m) and G not in (0, full_n))
                    expected = -1 if lemma else c
                    sign_checked += lemma
                if c != expected:
                    failed.append(f"pairing@{variant}/{s.name}")
    if not sign_checked:
        failed.append("pairing-vacuous")
    dt = time.perf_counter() - t0
    report(7, "kernel, rev, Mobius, tensor-KLS, Poincare rank, orthogonality and pairing sign",
           not failed, dt, " ".join(failed[:10]))
    assert not failed
