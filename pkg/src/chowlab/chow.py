"""Explicit graded models of Chow rings and augmented Chow rings.

A model is built degree by degree.  The incomparability relations (and
``y_i x_F`` for ``i`` outside ``F``) generate a monomial ideal, so we work
with its standard monomials directly: a monomial survives iff the flats in
it form a chain and every ``y_i`` in it lies in all of those flats.  The
remaining relations are the linear forms, and in degree ``k`` their span is
``linear form * standard monomial of degree k-1``, reduced modulo the
monomial ideal.  Exact row reduction of that span gives a quotient basis
made of standard monomials (the non-pivot columns).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property

from ._core import Echelon
from .matroid import CapacityError, Matroid, bits
from .poly import IntPolynomial

CHOW = "chow"
AUGMENTED = "augmented"
KINDS = (CHOW, AUGMENTED)

MAX_MONOMIALS = 100_000


class ModelError(RuntimeError):
    """Structural failure while building or using a ring model."""


class RingElement:
    """Homogeneous element: coordinates in the quotient basis of one degree."""

    __slots__ = ("model", "degree", "coords")

    def __init__(self, model, degree: int, coords):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != model.dim(degree):
            raise ModelError(
                f"degree {degree} has dimension {model.dim(degree)}, got {len(coords)} coordinates")
        self.model = model
        self.degree = degree
        self.coords = coords

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other):
        self._same(other)
        return RingElement(self.model, self.degree, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._same(other)
        return RingElement(self.model, self.degree, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return RingElement(self.model, self.degree, [-a for a in self.coords])

    def scaled(self, c) -> "RingElement":
        return RingElement(self.model, self.degree, [c * a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return self.model.multiply(self, other)
        return self.scaled(other)

    __rmul__ = scaled

    def __eq__(self, other):
        return (isinstance(other, RingElement) and other.model is self.model
                and other.degree == self.degree and other.coords == self.coords)

    def __hash__(self):
        return hash((id(self.model), self.degree, self.coords))

    def _same(self, other):
        if other.model is not self.model or other.degree != self.degree:
            raise ModelError("elements from different models or degrees")

    def __repr__(self):
        terms = [f"{c}*{self.model.monomial_str(m)}"
                 for c, m in zip(self.coords, self.model.basis(self.degree)) if c]
        return " + ".join(terms) or "0"


class GradedRingModel:
    """Quotient-ring model of ch(M) or ach(M) over Q.

    Generators are ``("x", F)`` for proper flats F (nonempty ones only for
    the Chow ring) and, for the augmented ring, ``("y", i)`` for ground
    elements.  Monomials are nondecreasing tuples of generator indices.
    """

    def __init__(self, matroid: Matroid, kind: str = CHOW, max_monomials: int = MAX_MONOMIALS):
        if kind not in KINDS:
            raise ValueError(f"unknown ring kind {kind!r}")
        M = matroid
        self.matroid = M
        self.kind = kind
        self.max_monomials = max_monomials
        d = M.rank
        if kind == CHOW:
            flats = M.proper_flats(nonempty=True)
            self.top = max(d - 1, 0)
        else:
            flats = M.proper_flats()
            self.top = d
        gens = [("x", F) for F in flats]
        if kind == AUGMENTED:
            gens += [("y", i) for i in range(M.ground_size)]
        self.gens = gens
        self.gen_index = {g: k for k, g in enumerate(gens)}
        self._compat = [[self._compatible(a, b) for b in gens] for a in gens]
        self._build()
        self._nf_cache = [dict() for _ in range(self.top + 1)]
        self._gen_mats = {}
        self._prod_cache = {}
        self._normalize()

    # -- presentation ---------------------------------------------------

    @staticmethod
    def _compatible(a, b) -> bool:
        (ka, va), (kb, vb) = a, b
        if ka == "x" and kb == "x":
            return va & vb in (va, vb)
        if ka == "y" and kb == "y":
            return True
        if ka == "y":
            return bool(vb >> va & 1)
        return bool(va >> vb & 1)

    def is_standard(self, mono) -> bool:
        comp = self._compat
        return all(comp[a][b] for a, b in itertools.combinations(set(mono), 2))

    @cached_property
    def linear_forms(self) -> list[dict]:
        """Generators of the linear part of the ideal, as {gen index: coeff}."""
        M = self.matroid
        idx = self.gen_index
        forms = []
        if self.kind == CHOW:
            def outside(i):
                return {idx["x", F]: 1 for F in M.proper_flats(nonempty=True) if not F >> i & 1}
            if M.ground_size:
                base = outside(0)
                for i in range(1, M.ground_size):
                    form = dict(outside(i))
                    for g, c in base.items():
                        form[g] = form.get(g, 0) - c
                    form = {g: c for g, c in form.items() if c}
                    if form:
                        forms.append(form)
        else:
            for i in range(M.ground_size):
                form = {idx["y", i]: 1}
                for F in M.proper_flats():
                    if not F >> i & 1:
                        form[idx["x", F]] = -1
                forms.append(form)
        return forms

    @cached_property
    def monomial_relations(self) -> list[tuple[int, int]]:
        """Quadratic monomial generators: incomparable flats and y_i x_F with i not in F."""
        n = len(self.gens)
        return [(a, b) for a in range(n) for b in range(a + 1, n) if not self._compat[a][b]]

    def _build(self):
        comp = self._compat
        ngens = len(self.gens)
        std = [[()]]
        for k in range(1, self.top + 1):
            nxt = []
            for m in std[-1]:
                start = m[-1] if m else 0
                support = set(m)
                for g in range(start, ngens):
                    if all(comp[g][h] for h in support):
                        nxt.append(m + (g,))
            if len(nxt) > self.max_monomials:
                raise CapacityError(
                    f"{len(nxt)} standard monomials in degree {k} exceeds {self.max_monomials}")
            std.append(nxt)
        self._std = std
        self._col = [{m: c for c, m in enumerate(ms)} for ms in std]
        self._ech = []
        self._basis = []
        self._bidx = []
        for k, ms in enumerate(std):
            e = Echelon(len(ms))
            if k >= 1:
                col = self._col[k]
                for form in self.linear_forms:
                    for m in std[k - 1]:
                        row = {}
                        support = set(m)
                        for g, c in form.items():
                            if all(comp[g][h] for h in support):
                                key = col[tuple(sorted(m + (g,)))]
                                row[key] = row.get(key, 0) + c
                        cols = sorted(c for c in row if row[c])
                        if cols:
                            e.add_row(cols, [row[c] for c in cols])
            e.finalize()
            self._ech.append(e)
            pivots = set(e.pivots())
            basis_cols = [c for c in range(len(ms)) if c not in pivots]
            self._basis.append([ms[c] for c in basis_cols])
            self._bidx.append({c: i for i, c in enumerate(basis_cols)})

    # -- dimensions and bases -------------------------------------------

    def dim(self, k: int) -> int:
        return len(self._basis[k]) if 0 <= k <= self.top else 0

    def basis(self, k: int) -> list[tuple]:
        return list(self._basis[k]) if 0 <= k <= self.top else []

    def relation_rank(self, k: int) -> int:
        return self._ech[k].rank if 0 <= k <= self.top else 0

    def standard_monomials(self, k: int) -> list[tuple]:
        return list(self._std[k]) if 0 <= k <= self.top else []

    def hilbert(self) -> IntPolynomial:
        return IntPolynomial([self.dim(k) for k in range(self.top + 1)])

    def hilbert_vector(self) -> list[int]:
        return [self.dim(k) for k in range(self.top + 1)]

    def monomial_str(self, mono) -> str:
        if not mono:
            return "1"
        out = []
        for g in mono:
            kind, v = self.gens[g]
            out.append(f"x{{{','.join(map(str, bits(v)))}}}" if kind == "x" else f"y{v}")
        return "*".join(out)

    def basis_dump(self) -> dict:
        return {k: [self.monomial_str(m) for m in self._basis[k]] for k in range(self.top + 1)}

    # -- normal forms -----------------------------------------------------

    def zero(self, k: int) -> RingElement:
        return RingElement(self, k, [0] * self.dim(k))

    def one(self) -> RingElement:
        return self.monomial(())

    def _nf_mono(self, mono) -> dict:
        k = len(mono)
        if k > self.top:
            return {}
        cache = self._nf_cache[k]
        hit = cache.get(mono)
        if hit is not None:
            return hit
        col = self._col[k].get(mono)
        if col is None:
            out = {}
        else:
            cols, vals, den = self._ech[k].reduce([col], [1])
            bidx = self._bidx[k]
            out = {bidx[c]: Fraction(v, den) for c, v in zip(cols, vals)}
        cache[mono] = out
        return out

    def monomial(self, mono) -> RingElement:
        mono = tuple(sorted(mono))
        k = len(mono)
        coords = [Fraction(0)] * self.dim(k)
        for i, v in self._nf_mono(mono).items():
            coords[i] = v
        return RingElement(self, k, coords)

    def gen(self, key) -> int:
        try:
            return self.gen_index[key]
        except KeyError:
            raise ModelError(f"no generator {key!r} in this model") from None

    def x(self, flat: int) -> RingElement:
        return self.monomial((self.gen(("x", flat)),))

    def y(self, i: int) -> RingElement:
        return self.monomial((self.gen(("y", i)),))

    def element(self, poly: dict, degree: int = None) -> RingElement:
        """Evaluate ``{monomial (gen indices): coefficient}`` of one degree."""
        if degree is None:
            degrees = {len(m) for m in poly}
            if len(degrees) > 1:
                raise ModelError("element() needs a homogeneous polynomial")
            degree = degrees.pop() if degrees else 0
        coords = [Fraction(0)] * self.dim(degree)
        for mono, c in poly.items():
            if len(mono) != degree:
                raise ModelError("element() needs a homogeneous polynomial")
            if c:
                for i, v in self._nf_mono(tuple(sorted(mono))).items():
                    coords[i] += c * v
        return RingElement(self, degree, coords)

    def linear(self, form: dict) -> RingElement:
        return self.element({(g,): c for g, c in form.items()}, 1)

    # -- multiplication --------------------------------------------------

    def gen_matrix(self, g: int, k: int) -> list[dict]:
        """Multiplication by generator ``g`` from degree k to k+1 (one dict per basis element)."""
        key = (g, k)
        mat = self._gen_mats.get(key)
        if mat is None:
            mat = [self._nf_mono(tuple(sorted(b + (g,)))) for b in self.basis(k)]
            self._gen_mats[key] = mat
        return mat

    def _basis_product(self, k1, i, k2, j) -> dict:
        key = (k1, i, k2, j) if (k1, i) <= (k2, j) else (k2, j, k1, i)
        hit = self._prod_cache.get(key)
        if hit is None:
            hit = self._nf_mono(tuple(sorted(self._basis[k1][i] + self._basis[k2][j])))
            self._prod_cache[key] = hit
        return hit

    def multiply(self, a: RingElement, b: RingElement, strict: bool = True) -> RingElement:
        if a.model is not self or b.model is not self:
            raise ModelError("multiplying elements of a different model")
        k = a.degree + b.degree
        if k > self.top:
            if strict:
                raise ModelError(f"product degree {k} exceeds top degree {self.top}")
            return RingElement(self, k, [])
        coords = [Fraction(0)] * self.dim(k)
        for i, ca in enumerate(a.coords):
            if not ca:
                continue
            for j, cb in enumerate(b.coords):
                if not cb:
                    continue
                for t, v in self._basis_product(a.degree, i, b.degree, j).items():
                    coords[t] += ca * cb * v
        return RingElement(self, k, coords)

    def times_linear(self, a: RingElement, form: dict) -> RingElement:
        """``a`` times the degree-one element ``sum c_g * gen_g``."""
        k = a.degree + 1
        coords = [Fraction(0)] * self.dim(k)
        if k <= self.top:
            for g, c in form.items():
                mat = self.gen_matrix(g, a.degree)
                for i, ca in enumerate(a.coords):
                    if ca:
                        for t, v in mat[i].items():
                            coords[t] += c * ca * v
        return RingElement(self, k, coords)

    # -- degree map and pairing -----------------------------------------

    def maximal_flags(self) -> list[tuple[int, ...]]:
        """Saturated flags of proper flats: ranks 1..d-1 (Chow) or 0..d-1 (augmented)."""
        M = self.matroid
        d = M.rank
        lo = 1 if self.kind == CHOW else 0
        if lo > d - 1:
            return [()]
        by_rank = {}
        for F in M.proper_flats():
            by_rank.setdefault(M.rk(F), []).append(F)
        chains = [(F,) for F in by_rank.get(lo, [])]
        for r in range(lo + 1, d):
            chains = [c + (G,) for c in chains for G in by_rank.get(r, []) if c[-1] & G == c[-1]]
        return sorted(chains, key=lambda c: [bits(F) for F in c])

    def flag_monomial(self, flag) -> tuple:
        return tuple(sorted(self.gen(("x", F)) for F in flag))

    def _normalize(self):
        if self.dim(self.top) != 1:
            raise ModelError(
                f"top degree {self.top} has dimension {self.dim(self.top)}, expected 1")
        flag = self.maximal_flags()[0]
        val = self._nf_mono(self.flag_monomial(flag)).get(0, Fraction(0))
        if not val:
            raise ModelError("first maximal flag monomial vanishes in top degree")
        self._deg_scale = 1 / val

    def degree_map(self, a: RingElement) -> Fraction:
        if a.model is not self:
            raise ModelError("degree map of an element of a different model")
        if a.degree != self.top:
            return Fraction(0)
        return a.coords[0] * self._deg_scale

    def poincare_matrix(self, k: int) -> list[list[Fraction]]:
        """Gram matrix of deg(a*b) between bases of degrees k and top-k."""
        if not 0 <= k <= self.top:
            raise ModelError(f"degree {k} outside 0..{self.top}")
        j = self.top - k
        scale = self._deg_scale
        return [[self._basis_product(k, a, j, b).get(0, Fraction(0)) * scale
                 for b in range(self.dim(j))] for a in range(self.dim(k))]

    def __repr__(self):
        return f"GradedRingModel({self.kind}, {self.matroid!r}, hilbert={self.hilbert_vector()})"


_MODEL_CACHE: dict = {}


def build_model(M: Matroid, kind: str = CHOW, cache: bool = True) -> GradedRingModel:
    """Build (or fetch) the model of ch(M) or ach(M).

    Models depend only on the flat family, so minors with the same flats
    share one model; root embeddings are handled by the caller.
    """
    key = (kind, M.ground_size, M.flats)
    if cache and key in _MODEL_CACHE:
        return _MODEL_CACHE[key]
    model = GradedRingModel(M, kind)
    if cache:
        _MODEL_CACHE[key] = model
    return model


def clear_cache():
    _MODEL_CACHE.clear()


def hilbert(model: GradedRingModel) -> IntPolynomial:
    return model.hilbert()


def multiply(a: RingElement, b: RingElement) -> RingElement:
    return a.model.multiply(a, b)


def degree_map(a: RingElement) -> Fraction:
    return a.model.degree_map(a)


def poincare_matrix(model: GradedRingModel, k: int):
    return model.poincare_matrix(k)


def summary(model: GradedRingModel, with_basis: bool = False) -> dict:
    out = {"kind": model.kind, "hilbert": {str(k): model.dim(k) for k in range(model.top + 1)}}
    if with_basis:
        out["basis"] = {str(k): v for k, v in model.basis_dump().items()}
    return out


# -- tensor products ------------------------------------------------------------


class TensorModel:
    """Graded tensor product of ring models; basis elements are tuples of (degree, index)."""

    def __init__(self, factors):
        self.factors = list(factors)
        self.top = sum(f.top for f in self.factors)
        self._basis = [self._enumerate(k) for k in range(self.top + 1)]
        self._index = [{b: i for i, b in enumerate(bs)} for bs in self._basis]

    def _enumerate(self, k):
        out = []

        def rec(pos, remaining, acc):
            if pos == len(self.factors):
                if remaining == 0:
                    out.append(tuple(acc))
                return
            f = self.factors[pos]
            for j in range(min(remaining, f.top) + 1):
                for i in range(f.dim(j)):
                    rec(pos + 1, remaining - j, acc + [(j, i)])

        rec(0, k, [])
        return out

    def dim(self, k: int) -> int:
        return len(self._basis[k]) if 0 <= k <= self.top else 0

    def basis(self, k: int):
        return list(self._basis[k]) if 0 <= k <= self.top else []

    def hilbert(self) -> IntPolynomial:
        return IntPolynomial([self.dim(k) for k in range(self.top + 1)])

    def monomials(self, b):
        """Per-factor basis monomials of the basis element ``b``."""
        return [f.basis(j)[i] for f, (j, i) in zip(self.factors, b)]

    def coords_of(self, parts) -> dict:
        """Tensor product of factor elements as {basis index: coeff}."""
        k = sum(p.degree for p in parts)
        out = {}
        if k > self.top:
            return out
        idx = self._index[k]
        supports = [[(i, c) for i, c in enumerate(p.coords) if c] for p in parts]
        for combo in itertools.product(*supports):
            key = tuple((p.degree, i) for p, (i, _) in zip(parts, combo))
            c = Fraction(1)
            for _, v in combo:
                c *= v
            out[idx[key]] = out.get(idx[key], 0) + c
        return out

    def basis_element(self, b):
        return [f.monomial(m) for f, m in zip(self.factors, self.monomials(b))]

    def poincare_matrix(self, k: int):
        j = self.top - k
        mats = {}

        def factor_pair(f_idx, a, b):
            key = (f_idx, a[0])
            if key not in mats:
                mats[key] = self.factors[f_idx].poincare_matrix(a[0])
            return mats[key][a[1]][b[1]]

        out = []
        for ba in self._basis[k]:
            row = []
            for bb in self._basis[j]:
                v = Fraction(1)
                for f_idx, (a, b) in enumerate(zip(ba, bb)):
                    if a[0] + b[0] != self.factors[f_idx].top:
                        v = Fraction(0)
                        break
                    v *= factor_pair(f_idx, a, b)
                    if not v:
                        break
                row.append(v)
            out.append(row)
        return out


def convolve_hilbert(polys) -> IntPolynomial:
    out = IntPolynomial(1)
    for p in polys:
        out = out * p
    return out
