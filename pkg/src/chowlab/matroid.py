"""Loopless matroids given by their lattice of flats.

Flats are stored as integer bitmasks over a 0-based ground set.  Every
matroid also remembers how its elements sit inside a *root* ground set
(``labels``) together with the root elements contracted away (``base``), so
minors of a direct sum can be embedded back into it with :meth:`Matroid.lift`.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property

MAX_GROUND = 64
MAX_BOOLEAN = 20


class MatroidError(ValueError):
    """Invalid matroid data or an argument that is not a flat."""


class CapacityError(MatroidError):
    """Ground set or flat family beyond what we handle."""


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def to_mask(elements) -> int:
    m = 0
    for e in elements:
        m |= 1 << int(e)
    return m


def _canon_key(mask: int):
    return (popcount(mask), bits(mask))


@dataclass(frozen=True, eq=False)
class Matroid:
    ground_size: int
    flats: tuple[int, ...]
    rank_of_flat: dict = field(repr=False)
    labels: tuple[int, ...] = None
    base: int = 0

    def __post_init__(self):
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(range(self.ground_size)))

    # -- basic data -------------------------------------------------------

    @property
    def full(self) -> int:
        return (1 << self.ground_size) - 1

    @property
    def rank(self) -> int:
        return self.rank_of_flat[self.full]

    def rk(self, flat: int) -> int:
        return self.rank_of_flat[flat]

    @cached_property
    def flat_set(self) -> frozenset:
        return frozenset(self.flats)

    def is_flat(self, mask: int) -> bool:
        return mask in self.flat_set

    def proper_flats(self, nonempty: bool = False) -> list[int]:
        out = [F for F in self.flats if F != self.full]
        if nonempty:
            out = [F for F in out if F != 0]
        return out

    def lift(self, mask: int) -> int:
        """Embed a flat (local bitmask) into the root ground set."""
        out = self.base
        for i in bits(mask):
            out |= 1 << self.labels[i]
        return out

    def key(self):
        return (self.ground_size, self.flats)

    def __eq__(self, other):
        return isinstance(other, Matroid) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Matroid(ground={self.ground_size}, rank={self.rank}, flats={len(self.flats)})"

    def describe(self) -> dict:
        by_rank: dict[int, int] = {}
        for F in self.flats:
            by_rank[self.rk(F)] = by_rank.get(self.rk(F), 0) + 1
        return {
            "ground": self.ground_size,
            "rank": self.rank,
            "flats": len(self.flats),
            "flats_by_rank": [by_rank.get(r, 0) for r in range(self.rank + 1)],
            "coloops": [i for i in range(self.ground_size) if is_coloop(self, i)],
        }

    def to_json(self) -> dict:
        return {"ground": self.ground_size, "kind": "explicit",
                "flats": [bits(F) for F in self.flats]}


# -- construction and validation ----------------------------------------------


def _check_size(n: int):
    if n < 0:
        raise MatroidError(f"ground size must be nonnegative, got {n}")
    if n > MAX_GROUND:
        raise CapacityError(f"ground size {n} exceeds {MAX_GROUND}")


def _ranks_by_height(flats: list[int]) -> dict:
    # flats sorted by cardinality: every flat below F precedes it
    rank = {}
    for F in flats:
        below = [rank[G] for G in rank if G != F and G & F == G]
        rank[F] = 1 + max(below) if below else 0
    return rank


def _validate(n: int, flats: list[int]):
    full = (1 << n) - 1
    fs = set(flats)
    if full not in fs:
        raise MatroidError("axiom 1 (ground set is a flat) fails: ground set missing")
    if 0 not in fs:
        raise MatroidError("looplessness fails: empty set is not a flat")
    for F in flats:
        if F & ~full:
            raise MatroidError(f"flat {bits(F)} not contained in ground set of size {n}")
    for F, G in itertools.combinations(flats, 2):
        if F & G not in fs:
            raise MatroidError(
                f"axiom 2 (intersection) fails: {bits(F)} & {bits(G)} = {bits(F & G)} is not a flat")
    for F in flats:
        over = [G for G in flats if G != F and G & F == F]
        covers = [G for G in over if not any(H != G and H & G == H for H in over)]
        seen = 0
        for G in covers:
            if (G & ~F) & seen:
                raise MatroidError(
                    f"axiom 3 (cover partition) fails: covers of {bits(F)} overlap "
                    f"on {bits(G & ~F & seen)}")
            seen |= G & ~F
        if seen != full & ~F:
            raise MatroidError(
                f"axiom 3 (cover partition) fails: no flat covering {bits(F)} "
                f"is minimal over {bits(F)} + {bits(full & ~F & ~seen)[0]}")


def from_flats(n: int, flats, labels=None, base: int = 0, validate: bool = True) -> Matroid:
    """Build a matroid from a family of flats (bitmasks or element lists).

    Validation is exhaustive, roughly O(|flats|^2 * n).
    """
    _check_size(n)
    masks = sorted({f if isinstance(f, int) else to_mask(f) for f in flats}, key=_canon_key)
    if validate:
        _validate(n, masks)
    return Matroid(n, tuple(masks), _ranks_by_height(masks), labels and tuple(labels), base)


def boolean_matroid(n: int) -> Matroid:
    if not 1 <= n <= MAX_BOOLEAN:
        if n > MAX_BOOLEAN:
            raise CapacityError(f"boolean matroid on {n} elements exceeds {MAX_BOOLEAN}")
        raise MatroidError(f"boolean matroid needs n >= 1, got {n}")
    masks = sorted(range(1 << n), key=_canon_key)
    return Matroid(n, tuple(masks), {F: popcount(F) for F in masks})


def uniform_matroid(r: int, n: int) -> Matroid:
    if not 1 <= r <= n:
        raise MatroidError(f"uniform matroid needs 1 <= r <= n, got r={r}, n={n}")
    _check_size(n)
    full = (1 << n) - 1
    masks = [to_mask(c) for k in range(r) for c in itertools.combinations(range(n), k)]
    masks.append(full)
    masks = sorted(set(masks), key=_canon_key)
    return Matroid(n, tuple(masks), {F: min(popcount(F), r) for F in masks})


def direct_sum(M: Matroid, N: Matroid) -> Matroid:
    """Direct sum on [m] + [n], the second summand shifted to m..m+n-1."""
    m = M.ground_size
    _check_size(m + N.ground_size)
    rank = {F | (G << m): M.rk(F) + N.rk(G) for F in M.flats for G in N.flats}
    masks = sorted(rank, key=_canon_key)
    return Matroid(m + N.ground_size, tuple(masks), rank)


def _require_flat(M: Matroid, F: int, what: str):
    if not M.is_flat(F):
        raise MatroidError(f"{what} {bits(F)} is not a flat")


def restriction(M: Matroid, S: int) -> Matroid:
    """M^S: flats of M inside the flat S, relabelled onto 0..|S|-1."""
    _require_flat(M, S, "restriction set")
    idx = bits(S)
    pos = {e: k for k, e in enumerate(idx)}

    def squeeze(F):
        return sum(1 << pos[e] for e in bits(F))

    rank = {squeeze(F): M.rk(F) for F in M.flats if F & S == F}
    masks = sorted(rank, key=_canon_key)
    labels = tuple(M.labels[e] for e in idx)
    return Matroid(len(idx), tuple(masks), rank, labels, M.base)


def contraction(M: Matroid, F: int) -> Matroid:
    """M_F: flats G \\ F for flats G containing F, on the ground set M \\ F."""
    _require_flat(M, F, "contraction set")
    idx = bits(M.full & ~F)
    pos = {e: k for k, e in enumerate(idx)}
    rF = M.rk(F)
    rank = {}
    for G in M.flats:
        if G & F == F:
            rank[sum(1 << pos[e] for e in bits(G & ~F))] = M.rk(G) - rF
    masks = sorted(rank, key=_canon_key)
    labels = tuple(M.labels[e] for e in idx)
    return Matroid(len(idx), tuple(masks), rank, labels, M.lift(F))


def minor(M: Matroid, F: int, G: int) -> Matroid:
    """The interval [F, G] of flats: (M^G)_F."""
    _require_flat(M, F, "lower flat")
    _require_flat(M, G, "upper flat")
    if F & G != F:
        raise MatroidError(f"minor needs F <= G, got {bits(F)} and {bits(G)}")
    R = restriction(M, G)
    pos = {e: k for k, e in enumerate(bits(G))}
    return contraction(R, sum(1 << pos[e] for e in bits(F)))


def is_coloop(M: Matroid, i: int) -> bool:
    if not 0 <= i < M.ground_size:
        raise MatroidError(f"element {i} not in ground set")
    return M.is_flat(M.full & ~(1 << i))


def relabelled(M: Matroid) -> Matroid:
    """Same flats with the root embedding reset to the identity."""
    return Matroid(M.ground_size, M.flats, M.rank_of_flat)


# -- lattice of flats --------------------------------------------------------


@dataclass(frozen=True)
class FlatLattice:
    elements: tuple[int, ...]
    ranks: tuple[int, ...]

    def leq(self, i: int, j: int) -> bool:
        a, b = self.elements[i], self.elements[j]
        return a & b == a

    def interval_rank(self, i: int, j: int) -> int:
        return self.ranks[j] - self.ranks[i]

    def comparable_pairs(self):
        n = len(self.elements)
        return [(i, j) for i in range(n) for j in range(n) if self.leq(i, j)]

    def maximal_chains(self):
        n = len(self.elements)
        top = n - 1
        covers = {i: [j for j in range(n) if self.leq(i, j) and self.ranks[j] == self.ranks[i] + 1]
                  for i in range(n)}
        out = []

        def walk(chain):
            if chain[-1] == top:
                out.append(tuple(chain))
                return
            for j in covers[chain[-1]]:
                walk(chain + [j])

        walk([0])
        return out

    def index(self, flat: int) -> int:
        return self.elements.index(flat)


def lattice_of_flats(M: Matroid) -> FlatLattice:
    els = sorted(M.flats, key=lambda F: (M.rk(F), bits(F)))
    return FlatLattice(tuple(els), tuple(M.rk(F) for F in els))


# -- JSON ---------------------------------------------------------------------


def from_json(data) -> Matroid:
    """Parse the matroid JSON schema (dict or JSON text)."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict):
        raise MatroidError("matroid JSON must be an object")
    kind = data.get("kind", "explicit")
    try:
        n = int(data["ground"])
    except (KeyError, TypeError, ValueError):
        raise MatroidError("matroid JSON needs an integer 'ground'") from None
    if kind == "boolean":
        return boolean_matroid(n)
    if kind == "uniform":
        if "r" not in data:
            raise MatroidError("uniform matroid JSON needs 'r'")
        return uniform_matroid(int(data["r"]), n)
    if kind != "explicit":
        raise MatroidError(f"unknown matroid kind {kind!r}")
    flats = data.get("flats")
    if not isinstance(flats, list):
        raise MatroidError("explicit matroid JSON needs a 'flats' list")
    for F in flats:
        if not isinstance(F, list) or any(not isinstance(e, int) or not 0 <= e < n for e in F):
            raise MatroidError(f"bad flat {F!r}")
    return from_flats(n, [to_mask(F) for F in flats])


def to_json(M: Matroid) -> str:
    return json.dumps(M.to_json(), separators=(",", ":"))
