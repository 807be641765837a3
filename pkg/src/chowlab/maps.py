"""Decomposition maps between explicit ring models.

Every map here has the shape ``a1 (x) a2 (x) ... -> c * s1(a1) * s2(a2) * ...``
where ``c`` is 1 or a generator ``x_E`` of the target ring and each ``si``
substitutes generators by linear forms of the target.  A factor either
embeds its flats directly (``x_K -> x_{K}`` seen in the big ground set) or
is *partnered* with a second matroid P, in which case
``x_K -> sum over flats G' of P of x_{K + G'}``.  The inclusion of
``ch(M) (x) ch(N)`` into ``ch(M + N)`` and every summand map in the
decompositions are of this shape.

All matroids passed in carry their embedding into the ground set of the
direct sum (see ``Matroid.lift``), so minors are always taken from the sum.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .chow import AUGMENTED, CHOW, ModelError, TensorModel, build_model
from .matroid import Matroid, bits, contraction, direct_sum, minor, restriction

VARIANTS = ("thm1", "thm2", "aug")


@dataclass
class Factor:
    matroid: Matroid
    kind: str = CHOW
    partner: Matroid = None

    @property
    def model(self):
        return build_model(self.matroid, self.kind)


def _flat_name(mask: int) -> str:
    return "{" + ",".join(map(str, bits(mask))) + "}"


@dataclass
class Summand:
    """One block of a decomposition map, with its images in the target."""

    name: str
    factors: list
    multiplier: int = None      # root flat E for the factor x_E, or None
    shift: int = 0
    flats: tuple = ()
    domain: TensorModel = field(init=False, repr=False)
    images: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        self.domain = TensorModel([f.model for f in self.factors])

    def hilbert_shifted(self):
        return self.domain.hilbert().shift(self.shift)

    def images_at(self, k: int) -> list:
        """Image columns landing in target degree k."""
        return self.images.get(k - self.shift, [])


def _substitution(factor: Factor, target) -> list[dict]:
    R, P = factor.matroid, factor.partner
    forms = []
    for kind, v in factor.model.gens:
        if kind == "y":
            forms.append({target.gen(("y", R.labels[v])): 1})
        elif P is None:
            forms.append({target.gen(("x", R.lift(v))): 1})
        else:
            form = {}
            K = R.lift(v)
            for G in P.flats:
                g = target.gen(("x", K | P.lift(G)))
                form[g] = form.get(g, 0) + 1
            forms.append(form)
    return forms


def _start(summand: Summand, target):
    if summand.multiplier is None:
        return target.one()
    return target.monomial((target.gen(("x", summand.multiplier)),))


def _apply(target, elem, forms, mono):
    for g in mono:
        elem = target.times_linear(elem, forms[g])
    return elem


def evaluate(summand: Summand, target) -> None:
    """Fill ``summand.images`` with the target coordinates of each domain basis element."""
    subs = [_substitution(f, target) for f in summand.factors]
    start = _start(summand, target)
    summand.images = {}
    for k in range(summand.domain.top + 1):
        cols = []
        for b in summand.domain.basis(k):
            elem = start
            for forms, mono in zip(subs, summand.domain.monomials(b)):
                elem = _apply(target, elem, forms, mono)
            cols.append(list(elem.coords))
        summand.images[k] = cols


def relation_defects(summand: Summand, target) -> list[str]:
    """Ideal generators of the domain factors whose image is nonzero (should be none)."""
    bad = []
    start = _start(summand, target)
    for pos, f in enumerate(summand.factors):
        model = f.model
        forms = _substitution(f, target)
        for form in model.linear_forms:
            acc = None
            for g, c in form.items():
                term = target.times_linear(start, forms[g]).scaled(c)
                acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                bad.append(f"{summand.name}: factor {pos} linear relation")
        for a, b in model.monomial_relations:
            elem = _apply(target, start, forms, (a, b))
            if not elem.is_zero():
                bad.append(f"{summand.name}: factor {pos} monomial "
                           f"{model.monomial_str((a, b))}")
    return bad


# -- the maps themselves ----------------------------------------------------------


def _parts(S: Matroid, m: int):
    full_m = (1 << m) - 1
    return full_m, S.full & ~full_m


def iota_summand(S: Matroid, m: int, kind: str = CHOW) -> Summand:
    """ch(M) (x) ch(N) -> ch(M + N), or the augmented version (y_i sent to y_i)."""
    full_m, full_n = _parts(S, m)
    A, B = restriction(S, full_m), restriction(S, full_n)
    return Summand("iota", [Factor(A, kind, B), Factor(B, kind, A)], None, 0, ())


def _psi_full(S: Matroid, m: int, name: str, flats: tuple) -> Summand:
    # multiplication by x_M from ch(S_M) (x) ch(S^M) = ch(N) (x) ch(M)
    full_m = _parts(S, m)[0]
    return Summand(name, [Factor(contraction(S, full_m)), Factor(restriction(S, full_m))],
                   full_m, 1, flats)


def summands(M: Matroid, N: Matroid, variant: str) -> tuple[Matroid, list[Summand]]:
    """The summands of the decomposition of ch(M + N) (or ach) for one variant."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    S = direct_sum(M, N)
    m = M.ground_size
    full_m, full_n = _parts(S, m)
    kind = AUGMENTED if variant == "aug" else CHOW
    out = [iota_summand(S, m, kind)]
    if variant == "thm1":
        for F in M.flats:
            for G in N.flats:
                if not F or not G:
                    continue
                Gs = G << m
                E = F | Gs
                name = f"u[{_flat_name(F)}|{_flat_name(Gs)}]"
                if E == S.full:
                    out.append(_psi_full(S, m, name, (F, Gs)))
                    continue
                A, B = restriction(S, F), restriction(S, Gs)
                out.append(Summand(name, [Factor(contraction(S, E)), Factor(A, CHOW, B),
                                          Factor(B, CHOW, A)], E, 1, (F, Gs)))
    else:
        for F in M.proper_flats():
            for G in N.proper_flats():
                Gs = G << m
                E = F | Gs
                name = f"u[{_flat_name(F)}|{_flat_name(Gs)}]"
                if variant == "thm2" and E == 0:
                    out.append(_psi_full(S, m, name, (F, Gs)))
                    continue
                A, B = minor(S, F, full_m), minor(S, Gs, full_n)
                out.append(Summand(name, [Factor(restriction(S, E), kind), Factor(A, CHOW, B),
                                          Factor(B, CHOW, A)], E, 1, (F, Gs)))
    return S, out


@dataclass
class DegreeRow:
    degree: int
    domain_dim: int
    codomain_dim: int
    rank: int

    @property
    def ok(self) -> bool:
        return self.domain_dim == self.codomain_dim == self.rank


@dataclass
class PhiAssembly:
    variant: str
    matroid: Matroid
    target: object
    summands: list
    rows: list
    defects: list
    seconds: float

    @property
    def full_rank(self) -> bool:
        return all(r.rank == r.domain_dim for r in self.rows)

    @property
    def hilbert_equal(self) -> bool:
        return all(r.domain_dim == r.codomain_dim for r in self.rows)

    @property
    def is_isomorphism(self) -> bool:
        return not self.defects and all(r.ok for r in self.rows)

    def matrix(self, k: int) -> list[list]:
        """Target-degree-k block matrix, columns ordered by summand then basis."""
        cols = [c for s in self.summands for c in s.images_at(k)]
        return linalg.transpose(cols) if cols else []

    def report(self) -> dict:
        return {
            "variant": self.variant,
            "degrees": [{"degree": r.degree, "domain": r.domain_dim,
                         "codomain": r.codomain_dim, "rank": r.rank} for r in self.rows],
            "summands": len(self.summands),
            "defects": list(self.defects),
            "isomorphism": self.is_isomorphism,
        }


def assemble_phi(M: Matroid, N: Matroid, variant: str = "thm1", check: bool = True) -> PhiAssembly:
    """Build the full decomposition map degree by degree and row-reduce it."""
    t0 = time.perf_counter()
    S, parts = summands(M, N, variant)
    target = build_model(S, AUGMENTED if variant == "aug" else CHOW)
    defects = []
    for s in parts:
        evaluate(s, target)
        if check:
            defects.extend(relation_defects(s, target))
    rows = []
    for k in range(target.top + 1):
        cols = [c for s in parts for c in s.images_at(k)]
        dom = sum(s.domain.dim(k - s.shift) for s in parts)
        rows.append(DegreeRow(k, dom, target.dim(k), linalg.rank(cols, target.dim(k))))
    return PhiAssembly(variant, S, target, parts, rows, defects, time.perf_counter() - t0)


def iota(M: Matroid, N: Matroid, kind: str = CHOW):
    """The inclusion as a summand with images filled in, plus its target model."""
    S = direct_sum(M, N)
    target = build_model(S, kind)
    s = iota_summand(S, M.ground_size, kind)
    evaluate(s, target)
    return s, target


def psi_pushforward(S: Matroid, E: int, kind: str = CHOW):
    """Multiplication by x_E from ch(S_E) (x) ch(S^E) (or ach(S^E)) into ch(S) (or ach(S))."""
    if not S.is_flat(E) or E == S.full or (kind == CHOW and E == 0):
        raise ModelError(f"{_flat_name(E)} is not a usable flat for the pushforward")
    target = build_model(S, kind)
    s = Summand(f"psi[{_flat_name(E)}]",
                [Factor(contraction(S, E)), Factor(restriction(S, E), kind)], E, 1, (E,))
    evaluate(s, target)
    return s, target


# -- pairing checks -------------------------------------------------------------------


def _gram(target, U: Summand, V: Summand, k: int):
    P = target.poincare_matrix(k)
    A = U.images_at(k)
    B = V.images_at(target.top - k)
    out = []
    for a in A:
        aP = [sum(a[i] * P[i][j] for i in range(len(a)) if a[i]) for j in range(len(P[0]) if P else 0)]
        out.append([sum(x * y for x, y in zip(aP, b) if x and y) for b in B])
    return out


def cross_gram_nonzero(assembly: PhiAssembly) -> list[tuple[str, str]]:
    """Pairs of distinct summands whose images pair nontrivially."""
    target = assembly.target
    hits = []
    for U, V in itertools.combinations(assembly.summands, 2):
        for k in range(target.top + 1):
            if not linalg.is_zero_matrix(_gram(target, U, V, k)):
                hits.append((U.name, V.name))
                break
    return hits


def must_be_orthogonal(assembly: PhiAssembly, U: Summand, V: Summand) -> bool:
    """Whether the decomposition claims the images of U and V are orthogonal.

    Chow case (first decomposition): a summand whose two flats are both
    nonempty and proper is orthogonal to everything else; one with exactly
    one full flat is orthogonal to everything except the summand for the
    pair of full flats.  Augmented case: all summands, the inclusion
    included, are pairwise orthogonal.  No claim is made otherwise.
    """
    if assembly.variant == "aug":
        return True
    if assembly.variant != "thm1":
        return False
    S = assembly.matroid
    full_m = next(s.multiplier for s in assembly.summands if len(s.factors) == 2 and s.shift)
    full_n = S.full & ~full_m

    def full_count(s):
        if s.name == "iota":
            return None
        F, G = s.flats
        return (F == full_m) + (G == full_n)

    cu, cv = full_count(U), full_count(V)
    if cu == 0 or cv == 0:
        return True
    if cu == 1 and cv == 1:
        return True
    if 1 in (cu, cv):
        return 2 not in (cu, cv)
    return False


def orthogonality_violations(assembly: PhiAssembly) -> list[tuple[str, str]]:
    """Nonzero pairings between summands claimed to be orthogonal."""
    by_name = {s.name: s for s in assembly.summands}
    return [(a, b) for a, b in cross_gram_nonzero(assembly)
            if must_be_orthogonal(assembly, by_name[a], by_name[b])]


def pairing_constant(assembly: PhiAssembly, summand: Summand):
    """The scalar c with target pairing = c * domain pairing on this summand's images.

    Returns None when the degrees do not match up (the summand is not a
    pairing-compatible embedding) and raises if no single scalar works.
    """
    target = assembly.target
    dom = summand.domain
    if dom.top + 2 * summand.shift != target.top:
        return None
    const = None
    for j in range(dom.top + 1):
        G_dom = dom.poincare_matrix(j)
        G_cod = _gram(target, summand, summand, j + summand.shift)
        for row_d, row_c in zip(G_dom, G_cod):
            for d, c in zip(row_d, row_c):
                if d == 0:
                    if c != 0:
                        raise ModelError(f"{summand.name}: pairing not proportional")
                    continue
                r = Fraction(c) / d
                if const is None:
                    const = r
                elif r != const:
                    raise ModelError(f"{summand.name}: pairing not proportional")
    return const


# -- projection formula ---------------------------------------------------------------


def _local(R: Matroid, root_mask: int) -> int:
    table = {R.lift(K): K for K in R.flats}
    return table[root_mask]


def tensor_product(tm: TensorModel, a: dict, da: int, b: dict, db: int) -> dict:
    """Multiply two elements of a tensor model given as {basis index: coeff}."""
    out = {}
    k = da + db
    if k > tm.top:
        return out
    index = {bb: i for i, bb in enumerate(tm.basis(k))}
    ba, bb_ = tm.basis(da), tm.basis(db)
    for i, ca in a.items():
        for j, cb in b.items():
            partial = [{(): Fraction(1)}]
            for f_idx, ((ka, ia), (kb, ib)) in enumerate(zip(ba[i], bb_[j])):
                f = tm.factors[f_idx]
                if ka + kb > f.top:
                    partial = []
                    break
                prod = f.monomial(f.basis(ka)[ia] + f.basis(kb)[ib])
                nxt = []
                for p in partial:
                    for (key, c) in p.items():
                        q = {}
                        for t, v in enumerate(prod.coords):
                            if v:
                                q[key + ((ka + kb, t),)] = c * v
                        nxt.append(q)
                partial = nxt
            for p in partial:
                for key, c in p.items():
                    t = index[key]
                    out[t] = out.get(t, 0) + ca * cb * c
    return {t: c for t, c in out.items() if c}


def pullback_generators(S: Matroid, F: int, domain: TensorModel, contr: Matroid, restr: Matroid,
                        pivot_in: int = None, pivot_out: int = None) -> list[dict]:
    """Images of the generators x_K of ch(S) in ch(S_F) (x) ch(S^F), degree one.

    Uses the quoted pullback: flats above F go to the contraction, flats
    below to the restriction, incomparable flats to zero, and x_F itself to
    minus the sum of x_K over K below F containing a fixed i in F, minus the
    sum over K above F avoiding a fixed j outside F.
    """
    i = pivot_in if pivot_in is not None else bits(F)[0]
    j = pivot_out if pivot_out is not None else bits(S.full & ~F)[0]
    mc, mr = domain.factors

    def upper(K):
        return _expand(domain, 0, mc.monomial((mc.gen(("x", _local(contr, K))),)))

    def lower(K):
        return _expand(domain, 1, mr.monomial((mr.gen(("x", _local(restr, K))),)))

    out = []
    target = build_model(S, CHOW)
    for kind, K in target.gens:
        if K & F == F and K != F:
            out.append(upper(K))
        elif K & F == K and K != F:
            out.append(lower(K))
        elif K == F:
            acc = {}
            for L in S.proper_flats(nonempty=True):
                if L & F == L and L != F and L >> i & 1:
                    for t, c in lower(L).items():
                        acc[t] = acc.get(t, 0) - c
                if L & F == F and L != F and not L >> j & 1:
                    for t, c in upper(L).items():
                        acc[t] = acc.get(t, 0) - c
            out.append({t: c for t, c in acc.items() if c})
        else:
            out.append({})
    return out


def _expand(domain: TensorModel, which: int, elem) -> dict:
    """Embed a degree-one element of one factor into the tensor model's degree one."""
    index = {b: t for t, b in enumerate(domain.basis(1))}
    out = {}
    for t, c in enumerate(elem.coords):
        if c:
            key = [(0, 0), (0, 0)]
            key[which] = (1, t)
            out[index[tuple(key)]] = c
    return out


def projection_formula_check(S: Matroid, F: int) -> dict:
    """Check that the pullback kills the relations and psi(phi(a)) = x_F * a."""
    contr, restr = contraction(S, F), restriction(S, F)
    psi, target = psi_pushforward(S, F)
    domain = psi.domain
    phi_gens = pullback_generators(S, F, domain, contr, restr)

    def phi_mono(mono):
        acc, deg = {0: Fraction(1)}, 0
        for g in mono:
            acc = tensor_product(domain, acc, deg, phi_gens[g], 1)
            deg += 1
        return acc

    killed = True
    for form in target.linear_forms:
        acc = {}
        for g, c in form.items():
            for t, v in phi_gens[g].items():
                acc[t] = acc.get(t, 0) + c * v
        if any(acc.values()):
            killed = False
    for a, b in target.monomial_relations:
        if phi_mono((a, b)):
            killed = False

    matches = True
    xF = target.x(F)
    for k in range(target.top + 1):
        for mono in target.basis(k):
            img = phi_mono(mono)
            lhs = [Fraction(0)] * target.dim(k + 1)
            cols = psi.images.get(k, [])
            for t, c in img.items():
                for r, v in enumerate(cols[t]):
                    lhs[r] += c * v
            rhs = target.multiply(xF, target.monomial(mono), strict=False).coords
            if tuple(lhs) != rhs:
                matches = False
    return {"flat": bits(F), "relations_killed": killed, "composition_matches": matches}


def image_in_ideal(S: Matroid, E: int, kind: str = CHOW) -> bool:
    """Image of the pushforward at E lies in the principal ideal (x_E)."""
    psi, target = psi_pushforward(S, E, kind)
    xE = target.x(E)
    for k in range(psi.domain.top + 1):
        ideal = [target.multiply(xE, target.monomial(b), strict=False).coords
                 for b in target.basis(k)]
        if not linalg.in_span(ideal, psi.images[k], target.dim(k + 1)):
            return False
    return True
