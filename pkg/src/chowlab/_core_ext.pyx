# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; same interface as ``_core_py``.

Coefficients stay Python integers (exactness first); the speedup comes from
typed loop indices, list access without bounds checks, and an int64 fast
path for polynomial products whose coefficients are small.
"""

from math import gcd

from libc.stdint cimport int64_t

cdef int64_t SMALL = 1 << 26


cdef tuple _strip(list out):
    cdef Py_ssize_t n = len(out)
    while n and out[n - 1] == 0:
        n -= 1
    return tuple(out[:n])


def poly_mul(tuple a, tuple b):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    cdef int64_t ai64, acc64
    cdef int64_t[64] fa
    cdef int64_t[64] fb
    cdef int64_t[127] fo
    cdef bint small = True
    if na == 0 or nb == 0:
        return ()
    if na <= 64 and nb <= 64:
        for i in range(na):
            x = a[i]
            if not -SMALL < x < SMALL:
                small = False
                break
            fa[i] = x
        if small:
            for j in range(nb):
                x = b[j]
                if not -SMALL < x < SMALL:
                    small = False
                    break
                fb[j] = x
    else:
        small = False
    if small and na + nb <= 64:
        # at most 64 terms, each below 2^52
        for i in range(na + nb - 1):
            fo[i] = 0
        for i in range(na):
            ai64 = fa[i]
            if ai64:
                for j in range(nb):
                    fo[i + j] += ai64 * fb[j]
        return _strip([fo[i] for i in range(na + nb - 1)])
    cdef list out = [0] * (na + nb - 1)
    for i in range(na):
        x = a[i]
        if x:
            for j in range(nb):
                out[i + j] += x * b[j]
    return _strip(out)


def poly_add_into(list acc, tuple p):
    cdef Py_ssize_t i, n = len(p)
    if len(acc) < n:
        acc.extend([0] * (n - len(acc)))
    for i in range(n):
        acc[i] += p[i]


def inc_mul(list triples, dict a, dict b):
    cdef dict out = {}
    cdef list acc
    cdef tuple p, q
    cdef Py_ssize_t n
    for s, t, us in triples:
        acc = []
        for u in us:
            p = a.get((s, u), ())
            if not p:
                continue
            q = b.get((u, t), ())
            if not q:
                continue
            poly_add_into(acc, poly_mul(p, q))
        n = len(acc)
        while n and acc[n - 1] == 0:
            n -= 1
        if n:
            out[s, t] = tuple(acc[:n])
    return out


cdef tuple _combine(list ca, list va, object x, list cb, list vb, object y):
    cdef list cols = []
    cdef list vals = []
    cdef Py_ssize_t i = 0, j = 0, na = len(ca), nb = len(cb)
    cdef long ci, cj
    while i < na and j < nb:
        ci = ca[i]
        cj = cb[j]
        if ci < cj:
            cols.append(ci)
            vals.append(x * va[i])
            i += 1
        elif ci > cj:
            cols.append(cj)
            vals.append(y * vb[j])
            j += 1
        else:
            v = x * va[i] + y * vb[j]
            if v:
                cols.append(ci)
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


cdef list _primitive(list vals):
    g = 0
    for v in vals:
        g = gcd(g, v)
        if g == 1:
            return vals
    if g > 1:
        return [v // g for v in vals]
    return vals


cdef class Echelon:
    cdef public long ncols
    cdef public dict rows
    cdef public bint reduced

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
        cdef list c = list(cols)
        cdef list v = list(vals)
        cdef dict rows = self.rows
        cdef list rc, rv
        while c:
            p = c[0]
            row = rows.get(p)
            if row is None:
                v = _primitive(v)
                if v[0] < 0:
                    v = [-w for w in v]
                rows[p] = (c, v)
                self.reduced = False
                return True
            rc, rv = row
            a = rv[0]
            b = v[0]
            g = gcd(a, b)
            c, v = _combine(c, v, a // g, rc, rv, -(b // g))
            v = _primitive(v)
        return False

    def finalize(self):
        if self.reduced:
            return
        cdef dict rows = self.rows
        cdef list cols, vals, oc, ov
        cdef Py_ssize_t k
        for p in sorted(rows, reverse=True):
            cols, vals = rows[p]
            k = 1
            while k < len(cols):
                other = rows.get(cols[k])
                if other is None:
                    k += 1
                    continue
                oc, ov = other
                a = ov[0]
                b = vals[k]
                g = gcd(a, b)
                cols, vals = _combine(cols, vals, a // g, oc, ov, -(b // g))
                vals = _primitive(vals)
            if vals[0] < 0:
                vals = [-w for w in vals]
            rows[p] = (cols, vals)
        self.reduced = True

    def reduce(self, cols, vals):
        self.finalize()
        cdef list c = list(cols)
        cdef list v = list(vals)
        cdef dict rows = self.rows
        cdef list rc, rv
        cdef Py_ssize_t k = 0
        den = 1
        while k < len(c):
            row = rows.get(c[k])
            if row is None:
                k += 1
                continue
            rc, rv = row
            a = rv[0]
            b = v[k]
            g = gcd(a, b)
            c, v = _combine(c, v, a // g, rc, rv, -(b // g))
            den *= a // g
        if den != 1 and v:
            g = den
            for w in v:
                g = gcd(g, w)
                if g == 1:
                    break
            if g > 1:
                v = [w // g for w in v]
                den //= g
        return c, v, den


def rank_of(rows, ncols):
    e = Echelon(ncols)
    for cols, vals in rows:
        if cols:
            e.add_row(cols, vals)
    return e.rank
