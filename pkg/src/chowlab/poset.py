"""Weakly ranked posets and their incidence algebras over Z[x].

Incidence functions hold their entries as raw coefficient tuples keyed by
comparable pairs ``(s, t)``; the convolution product runs in ``_core``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

from . import _core
from .matroid import Matroid, bits, lattice_of_flats
from .poly import IntPolynomial, PolynomialError


class PosetError(ValueError):
    pass


class InversionError(ArithmeticError):
    pass


class KernelError(ArithmeticError):
    """A kernel that fails the (x - 1)-divisibility or kernel identity."""


class TheoryViolation(ArithmeticError):
    """A KLS solve with no solution obeying the degree bound."""


def _linear_extension(n, less):
    # Kahn's algorithm, ties broken by smallest index
    indeg = [sum(1 for s in range(n) if less[s][t]) for t in range(n)]
    ready = sorted(t for t in range(n) if indeg[t] == 0)
    order = []
    while ready:
        s = ready.pop(0)
        order.append(s)
        for t in range(n):
            if less[s][t]:
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
        ready.sort()
    if len(order) != n:
        raise PosetError("order relation has a cycle")
    return order


@dataclass(eq=False)
class WeaklyRankedPoset:
    """Finite poset with an additive interval rank.

    ``leq[s][t]`` is the order relation and ``rank[(s, t)]`` is defined on
    comparable pairs.  ``labels`` are display names (flat bitmasks for
    lattices of flats, index pairs for products).
    """

    size: int
    leq: list
    rank: dict
    labels: list = None
    factors: tuple = field(default=None, repr=False)

    def __post_init__(self):
        if self.labels is None:
            self.labels = list(range(self.size))
        self.validate()
        self.order = self.linear_extension()

    def validate(self):
        n, leq, rk = self.size, self.leq, self.rank
        for s in range(n):
            if not leq[s][s]:
                raise PosetError(f"relation not reflexive at {s}")
            if rk.get((s, s)) != 0:
                raise PosetError(f"rank({s},{s}) must be 0")
        for s in range(n):
            for t in range(n):
                if s != t and leq[s][t]:
                    if leq[t][s]:
                        raise PosetError(f"relation not antisymmetric at ({s},{t})")
                    r = rk.get((s, t))
                    if r is None or r <= 0:
                        raise PosetError(f"rank({s},{t}) must be positive, got {r}")
        for s, t in self.pairs:
            for u in range(n):
                if leq[s][u] and leq[u][t] and rk[s, t] != rk[s, u] + rk[u, t]:
                    raise PosetError(f"rank not additive on {s} <= {u} <= {t}")
        for s in range(n):
            for u in range(n):
                if leq[s][u]:
                    for t in range(n):
                        if leq[u][t] and not leq[s][t]:
                            raise PosetError(f"relation not transitive on {s}, {u}, {t}")

    def linear_extension(self, reverse_ties: bool = False) -> list[int]:
        n = self.size
        less = [[self.leq[s][t] and s != t for t in range(n)] for s in range(n)]
        if not reverse_ties:
            return _linear_extension(n, less)
        # same algorithm on relabelled indices n-1-i gives another extension
        flip = [[less[n - 1 - s][n - 1 - t] for t in range(n)] for s in range(n)]
        return [n - 1 - i for i in _linear_extension(n, flip)]

    @cached_property
    def pairs(self) -> list[tuple[int, int]]:
        return [(s, t) for s in range(self.size) for t in range(self.size) if self.leq[s][t]]

    @cached_property
    def position(self) -> list[int]:
        pos = [0] * self.size
        for k, s in enumerate(self.order):
            pos[s] = k
        return pos

    @cached_property
    def triples(self) -> list:
        """``(s, t, [u in [s, t]])`` for every comparable pair."""
        leq = self.leq
        out = []
        for s, t in self.pairs:
            us = [u for u in self.order if leq[s][u] and leq[u][t]]
            out.append((s, t, us))
        return out

    def interval(self, s: int, t: int) -> list[int]:
        return [u for u in self.order if self.leq[s][u] and self.leq[u][t]]

    def bottom(self):
        mins = [s for s in range(self.size) if all(self.leq[s][t] for t in range(self.size))]
        return mins[0] if mins else None

    def top(self):
        maxs = [t for t in range(self.size) if all(self.leq[s][t] for s in range(self.size))]
        return maxs[0] if maxs else None

    def index(self, label) -> int:
        return self.labels.index(label)

    def to_json(self) -> dict:
        return {
            "elements": self.size,
            "leq": [[s, t] for s, t in self.pairs if s != t],
            "rank": [[s, t, self.rank[s, t]] for s, t in self.pairs if s != t],
        }


def poset_of_flats(M: Matroid) -> WeaklyRankedPoset:
    L = lattice_of_flats(M)
    n = len(L.elements)
    leq = [[L.leq(i, j) for j in range(n)] for i in range(n)]
    rank = {(i, j): L.interval_rank(i, j) for i in range(n) for j in range(n) if leq[i][j]}
    return WeaklyRankedPoset(n, leq, rank, list(L.elements))


def chain_poset(length: int) -> WeaklyRankedPoset:
    n = length + 1
    leq = [[i <= j for j in range(n)] for i in range(n)]
    rank = {(i, j): j - i for i in range(n) for j in range(n) if i <= j}
    return WeaklyRankedPoset(n, leq, rank)


def product_poset(p1: WeaklyRankedPoset, p2: WeaklyRankedPoset) -> WeaklyRankedPoset:
    """Componentwise order and additive rank; element (a, b) has index a*|p2| + b."""
    n1, n2 = p1.size, p2.size
    n = n1 * n2
    leq = [[False] * n for _ in range(n)]
    rank = {}
    for s1, t1 in p1.pairs:
        for s2, t2 in p2.pairs:
            s, t = s1 * n2 + s2, t1 * n2 + t2
            leq[s][t] = True
            rank[s, t] = p1.rank[s1, t1] + p2.rank[s2, t2]
    labels = [(a, b) for a in p1.labels for b in p2.labels]
    return WeaklyRankedPoset(n, leq, rank, labels, factors=(p1, p2))


def poset_from_json(data) -> WeaklyRankedPoset:
    """Parse ``{"elements": n, "leq": [[i, j], ...], "rank": [[i, j, r], ...]}``.

    ``leq`` may be any generating set of the order; ranks must be given for
    every listed pair and are extended to all comparable pairs along chains.
    """
    if isinstance(data, str):
        data = json.loads(data)
    try:
        n = int(data["elements"])
        gens = [(int(i), int(j)) for i, j in data.get("leq", [])]
        given = {(int(i), int(j)): int(r) for i, j, r in data.get("rank", [])}
    except (KeyError, TypeError, ValueError) as exc:
        raise PosetError(f"malformed poset JSON: {exc}") from None
    for i, j in list(gens) + list(given):
        if not (0 <= i < n and 0 <= j < n):
            raise PosetError(f"pair ({i},{j}) out of range")
    leq = [[i == j for j in range(n)] for i in range(n)]
    for i, j in gens:
        leq[i][j] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                for j in range(n):
                    if leq[k][j]:
                        leq[i][j] = True
    rank = {(i, i): 0 for i in range(n)}
    for (i, j), r in given.items():
        if not leq[i][j]:
            raise PosetError(f"rank given for incomparable pair ({i},{j})")
        rank[i, j] = r
    for i, j in gens:
        if i != j and (i, j) not in given:
            raise PosetError(f"missing rank for ({i},{j})")
    changed = True
    while changed:
        changed = False
        for (i, k), r1 in list(rank.items()):
            for (k2, j), r2 in list(rank.items()):
                if k2 == k and (i, j) not in rank:
                    rank[i, j] = r1 + r2
                    changed = True
    for i in range(n):
        for j in range(n):
            if leq[i][j] and (i, j) not in rank:
                raise PosetError(f"cannot derive rank for ({i},{j})")
    return WeaklyRankedPoset(n, leq, rank)


# -- incidence functions --------------------------------------------------------


def _poly(p) -> tuple:
    if isinstance(p, IntPolynomial):
        return p.coeffs
    if isinstance(p, int):
        return (p,) if p else ()
    c = list(p)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IncidenceFunction:
    """Element of the incidence algebra J(P) with Z[x] values."""

    __slots__ = ("poset", "entries")

    def __init__(self, poset: WeaklyRankedPoset, entries=None):
        self.poset = poset
        clean = {}
        for (s, t), p in (entries or {}).items():
            if not poset.leq[s][t]:
                raise PosetError(f"entry at incomparable pair ({s},{t})")
            c = _poly(p)
            if c:
                clean[s, t] = c
        self.entries = clean

    @classmethod
    def _raw(cls, poset, entries):
        obj = cls.__new__(cls)
        obj.poset = poset
        obj.entries = entries
        return obj

    def __getitem__(self, st) -> IntPolynomial:
        return IntPolynomial(self.entries.get(st, ()))

    def entry(self, s, t) -> IntPolynomial:
        return self[s, t]

    def _check(self, other):
        if not isinstance(other, IncidenceFunction):
            raise TypeError(f"expected IncidenceFunction, got {type(other).__name__}")
        if other.poset is not self.poset:
            raise PosetError("incidence functions live on different posets")

    def __eq__(self, other):
        return (isinstance(other, IncidenceFunction) and other.poset is self.poset
                and self.entries == other.entries)

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def __add__(self, other):
        self._check(other)
        out = dict(self.entries)
        for k, p in other.entries.items():
            out[k] = (IntPolynomial(out.get(k, ())) + IntPolynomial(p)).coeffs
        return IncidenceFunction._raw(self.poset, {k: v for k, v in out.items() if v})

    def __neg__(self):
        return IncidenceFunction._raw(self.poset, {k: tuple(-c for c in p)
                                                   for k, p in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, p) -> "IncidenceFunction":
        """Multiply every entry by the polynomial (or integer) ``p``."""
        c = _poly(p)
        return IncidenceFunction._raw(
            self.poset, {k: v for k, e in self.entries.items() if (v := _core.poly_mul(e, c))})

    def __mul__(self, other):
        if isinstance(other, (int, IntPolynomial)):
            return self.scale(other)
        self._check(other)
        return IncidenceFunction._raw(
            self.poset, _core.inc_mul(self.poset.triples, self.entries, other.entries))

    def __rmul__(self, other):
        if isinstance(other, (int, IntPolynomial)):
            return self.scale(other)
        return NotImplemented

    def in_jrk(self) -> bool:
        rk = self.poset.rank
        return all(len(p) - 1 <= rk[k] for k, p in self.entries.items())

    def degree_violations(self) -> list:
        rk = self.poset.rank
        return [k for k, p in self.entries.items() if len(p) - 1 > rk[k]]

    def as_dict(self) -> dict:
        return {k: IntPolynomial(p) for k, p in self.entries.items()}

    def __repr__(self):
        return f"IncidenceFunction({len(self.entries)} nonzero entries on {self.poset.size} elements)"


def identity(p: WeaklyRankedPoset) -> IncidenceFunction:
    return IncidenceFunction._raw(p, {(s, s): (1,) for s in range(p.size)})


def zeta(p: WeaklyRankedPoset) -> IncidenceFunction:
    return IncidenceFunction._raw(p, {st: (1,) for st in p.pairs})


def inc_mul(a: IncidenceFunction, b: IncidenceFunction) -> IncidenceFunction:
    return a * b


def inc_inverse(a: IncidenceFunction, order=None) -> IncidenceFunction:
    """Two-sided inverse by triangular back-substitution.

    Diagonal entries must be the constants 1 or -1.
    """
    P = a.poset
    order = order or P.order
    ent = a.entries
    leq = P.leq
    for s in range(P.size):
        d = ent.get((s, s), ())
        if d not in ((1,), (-1,)):
            raise InversionError(f"diagonal entry at {s} is {IntPolynomial(d)}, not a unit")
    out = {}
    pos = {s: k for k, s in enumerate(order)}
    for t in order:
        out[t, t] = ent[t, t]
        below = sorted((s for s in range(P.size) if leq[s][t] and s != t),
                       key=lambda s: -pos[s])
        for s in below:
            acc = []
            for u in order[pos[s] + 1:pos[t] + 1]:
                if leq[s][u] and leq[u][t]:
                    p = ent.get((s, u))
                    q = out.get((u, t))
                    if p and q:
                        _core.poly_add_into(acc, _core.poly_mul(p, q))
            d = ent[s, s][0]
            val = _poly([-d * c for c in acc])
            if val:
                out[s, t] = val
    return IncidenceFunction._raw(P, out)


def rev(a: IncidenceFunction) -> IncidenceFunction:
    """Entrywise ``x**rk(s,t) * a_{s,t}(1/x)``; defined on J_rk only."""
    rk = a.poset.rank
    out = {}
    for k, p in a.entries.items():
        try:
            out[k] = _poly(IntPolynomial(p).reversed_within(rk[k]))
        except PolynomialError as exc:
            raise PosetError(f"rev outside J_rk at {k}: {exc}") from None
    return IncidenceFunction._raw(a.poset, {k: v for k, v in out.items() if v})


def mobius(p: WeaklyRankedPoset) -> IncidenceFunction:
    return inc_inverse(zeta(p))


def mobius_recursive(p: WeaklyRankedPoset) -> dict:
    """Möbius values by the defining recursion (independent of inversion)."""
    mu = {}
    for s in range(p.size):
        for t in p.order:
            if not p.leq[s][t]:
                continue
            if s == t:
                mu[s, t] = 1
            else:
                mu[s, t] = -sum(mu[s, u] for u in p.interval(s, t) if u != t)
    return mu


def characteristic(p: WeaklyRankedPoset) -> IncidenceFunction:
    return mobius(p) * rev(zeta(p))


def is_kernel(k: IncidenceFunction) -> bool:
    P = k.poset
    if any(k.entries.get((s, s)) != (1,) for s in range(P.size)):
        return False
    if not k.in_jrk():
        return False
    return inc_inverse(k) == rev(k)


def reduced_kernel(k: IncidenceFunction) -> IncidenceFunction:
    out = {}
    for s, t in k.poset.pairs:
        if s == t:
            out[s, t] = (-1,)
            continue
        q, r = IntPolynomial(k.entries.get((s, t), ())).divmod_x_minus_1()
        if r:
            raise KernelError(f"entry ({s},{t}) = {k[s, t]} not divisible by x - 1")
        if q:
            out[s, t] = q.coeffs
    return IncidenceFunction._raw(k.poset, out)


def _require_kernel(k):
    if not is_kernel(k):
        raise KernelError("argument is not a kernel: inverse differs from rev")


def chow_function(kernel: IncidenceFunction, check: bool = True) -> IncidenceFunction:
    """H = -(reduced kernel)^-1."""
    if check:
        _require_kernel(kernel)
    return -inc_inverse(reduced_kernel(kernel))


def _split_palindromic(R: IntPolynomial, r: int, where) -> tuple:
    """Solve ``x^r f(1/x) - f = R`` for ``deg f < r/2``."""
    half = (r - 1) // 2  # largest degree strictly below r/2
    f = [-R[k] for k in range(half + 1)]
    for k in range(r + 1):
        if k <= half:
            continue
        expect = f[r - k] if 0 <= r - k <= half else 0
        if R[k] != expect:
            raise TheoryViolation(
                f"no KLS solution at {where}: coefficient of x^{k} is {R[k]}, need {expect}")
    if R.degree is not None and R.degree > r:
        raise TheoryViolation(f"no KLS solution at {where}: residual degree {R.degree} > {r}")
    return _poly(f)


def kls_right(kernel: IncidenceFunction, order=None, check: bool = True) -> IncidenceFunction:
    """Right KLS function: f_{s,s}=1, deg f_{s,t} < rk/2, rev(f) = kernel * f."""
    if check:
        _require_kernel(kernel)
    P = kernel.poset
    order = order or P.order
    pos = {s: k for k, s in enumerate(order)}
    kap = kernel.entries
    f = {}
    for t in order:
        f[t, t] = (1,)
        below = sorted((s for s in range(P.size) if P.leq[s][t] and s != t), key=lambda s: -pos[s])
        for s in below:
            acc = []
            for u in P.interval(s, t):
                if u == s:
                    continue
                p, q = kap.get((s, u)), f.get((u, t))
                if p and q:
                    _core.poly_add_into(acc, _core.poly_mul(p, q))
            val = _split_palindromic(IntPolynomial(acc), P.rank[s, t], (s, t))
            if val:
                f[s, t] = val
    return IncidenceFunction._raw(P, f)


def kls_left(kernel: IncidenceFunction, order=None, check: bool = True) -> IncidenceFunction:
    """Left KLS function: g_{s,s}=1, deg g_{s,t} < rk/2, rev(g) = g * kernel."""
    if check:
        _require_kernel(kernel)
    P = kernel.poset
    order = order or P.order
    kap = kernel.entries
    g = {}
    for s in order:
        g[s, s] = (1,)
        for t in order:
            if t == s or not P.leq[s][t]:
                continue
            acc = []
            for u in P.interval(s, t):
                if u == t:
                    continue
                p, q = g.get((s, u)), kap.get((u, t))
                if p and q:
                    _core.poly_add_into(acc, _core.poly_mul(p, q))
            val = _split_palindromic(IntPolynomial(acc), P.rank[s, t], (s, t))
            if val:
                g[s, t] = val
    return IncidenceFunction._raw(P, g)


def aug_chow_right(kernel: IncidenceFunction) -> IncidenceFunction:
    """F = H * rev(f)."""
    return chow_function(kernel) * rev(kls_right(kernel))


def aug_chow_left(kernel: IncidenceFunction) -> IncidenceFunction:
    """G = rev(g) * H."""
    return rev(kls_left(kernel)) * chow_function(kernel)


def tensor(a1: IncidenceFunction, a2: IncidenceFunction, product: WeaklyRankedPoset = None):
    """Entry ((s1,s2),(t1,t2)) = a1[s1,t1] * a2[s2,t2] on the product poset."""
    if product is None:
        product = product_poset(a1.poset, a2.poset)
    if product.factors is None or product.factors[0] is not a1.poset or product.factors[1] is not a2.poset:
        raise PosetError("product poset does not match the factors")
    n2 = a2.poset.size
    out = {}
    for (s1, t1), p in a1.entries.items():
        for (s2, t2), q in a2.entries.items():
            v = _core.poly_mul(p, q)
            if v:
                out[s1 * n2 + s2, t1 * n2 + t2] = v
    return IncidenceFunction._raw(product, out)


@dataclass
class PosetInvariants:
    """All the named incidence functions of a poset with its characteristic kernel."""

    poset: WeaklyRankedPoset
    kernel: IncidenceFunction
    H: IncidenceFunction
    f: IncidenceFunction
    g: IncidenceFunction
    F: IncidenceFunction
    G: IncidenceFunction

    @classmethod
    def of(cls, poset: WeaklyRankedPoset, kernel: IncidenceFunction = None) -> "PosetInvariants":
        kernel = kernel if kernel is not None else characteristic(poset)
        _require_kernel(kernel)
        H = chow_function(kernel, check=False)
        f = kls_right(kernel, check=False)
        g = kls_left(kernel, check=False)
        return cls(poset, kernel, H, f, g, H * rev(f), rev(g) * H)


def flat_index(P: WeaklyRankedPoset, flat: int) -> int:
    return P.labels.index(flat)


def chow_polynomial(M: Matroid) -> IntPolynomial:
    """H_{0,1} of the lattice of flats with the characteristic kernel."""
    P = poset_of_flats(M)
    H = chow_function(characteristic(P))
    return H[P.bottom(), P.top()]


def aug_chow_polynomial(M: Matroid) -> IntPolynomial:
    P = poset_of_flats(M)
    G = aug_chow_left(characteristic(P))
    return G[P.bottom(), P.top()]


def kl_polynomial(M: Matroid) -> IntPolynomial:
    P = poset_of_flats(M)
    f = kls_right(characteristic(P))
    return f[P.bottom(), P.top()]


def describe_flat(flat: int) -> str:
    return "{" + ",".join(str(i) for i in bits(flat)) + "}"
