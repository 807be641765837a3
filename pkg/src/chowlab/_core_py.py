"""Pure-Python hot kernels.

Mirrors ``_core_ext.pyx`` function for function; ``chowlab._core`` picks
whichever is importable.  Sparse vectors are a pair of parallel lists
``(cols, vals)`` with strictly increasing ``cols`` and nonzero integer
``vals``.
"""

from math import gcd


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_add_into(acc, p):
    if len(acc) < len(p):
        acc.extend([0] * (len(p) - len(acc)))
    for i, c in enumerate(p):
        acc[i] += c


def inc_mul(triples, a, b):
    """Convolution of incidence functions.

    ``triples`` lists ``(s, t, us)`` for every comparable pair, ``us`` the
    elements of the interval [s, t]; ``a`` and ``b`` map pairs to
    coefficient tuples (missing means zero).
    """
    out = {}
    for s, t, us in triples:
        acc = []
        for u in us:
            p = a.get((s, u))
            if not p:
                continue
            q = b.get((u, t))
            if not q:
                continue
            poly_add_into(acc, poly_mul(p, q))
        while acc and acc[-1] == 0:
            acc.pop()
        if acc:
            out[s, t] = tuple(acc)
    return out


def _combine(ca, va, x, cb, vb, y):
    """Sparse ``x*a + y*b``."""
    cols = []
    vals = []
    i = j = 0
    na, nb = len(ca), len(cb)
    while i < na and j < nb:
        if ca[i] < cb[j]:
            cols.append(ca[i])
            vals.append(x * va[i])
            i += 1
        elif ca[i] > cb[j]:
            cols.append(cb[j])
            vals.append(y * vb[j])
            j += 1
        else:
            v = x * va[i] + y * vb[j]
            if v:
                cols.append(ca[i])
                vals.append(v)
            i += 1
            j += 1
    while i < na:
        cols.append(ca[i])
        vals.append(x * va[i])
        i += 1
    while j < nb:
        cols.append(cb[j])
        vals.append(y * vb[j])
        j += 1
    return cols, vals


def _primitive(vals):
    g = 0
    for v in vals:
        g = gcd(g, v)
        if g == 1:
            return vals
    if g > 1:
        return [v // g for v in vals]
    return vals


class Echelon:
    """Incremental integer row echelon form over Q.

    Rows are kept primitive with a positive leading entry; the pivot of a row
    is its smallest column.  :meth:`finalize` back-substitutes to reduced
    form, after which :meth:`reduce` computes normal forms modulo the row
    space.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = {}
        self.reduced = False

    @property
    def rank(self):
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)

    def add_row(self, cols, vals):
        cols = list(cols)
        vals = list(vals)
        rows = self.rows
        while cols:
            p = cols[0]
            row = rows.get(p)
            if row is None:
                vals = _primitive(vals)
                if vals[0] < 0:
                    vals = [-v for v in vals]
                rows[p] = (cols, vals)
                self.reduced = False
                return True
            rc, rv = row
            a, b = rv[0], vals[0]
            g = gcd(a, b)
            cols, vals = _combine(cols, vals, a // g, rc, rv, -(b // g))
            vals = _primitive(vals)
        return False

    def finalize(self):
        if self.reduced:
            return
        rows = self.rows
        for p in sorted(rows, reverse=True):
            cols, vals = rows[p]
            k = 1
            while k < len(cols):
                q = cols[k]
                other = rows.get(q)
                if other is None:
                    k += 1
                    continue
                oc, ov = other
                a, b = ov[0], vals[k]
                g = gcd(a, b)
                cols, vals = _combine(cols, vals, a // g, oc, ov, -(b // g))
                vals = _primitive(vals)
            if vals[0] < 0:
                vals = [-v for v in vals]
            rows[p] = (cols, vals)
        self.reduced = True

    def reduce(self, cols, vals):
        """Normal form of ``vals/1``: returns ``(cols, vals, den)``."""
        self.finalize()
        cols = list(cols)
        vals = list(vals)
        den = 1
        rows = self.rows
        k = 0
        while k < len(cols):
            row = rows.get(cols[k])
            if row is None:
                k += 1
                continue
            rc, rv = row
            a, b = rv[0], vals[k]
            g = gcd(a, b)
            cols, vals = _combine(cols, vals, a // g, rc, rv, -(b // g))
            den *= a // g
        if den != 1 and vals:
            g = den
            for v in vals:
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                vals = [v // g for v in vals]
                den //= g
        return cols, vals, den


def rank_of(rows, ncols):
    """Rank of a list of sparse integer rows."""
    e = Echelon(ncols)
    for cols, vals in rows:
        if cols:
            e.add_row(cols, vals)
    return e.rank
