# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse polynomial kernel.

Mirrors the interface of ``_kernel_py``: term dicts keyed by exponent
tuples with exact int/Fraction coefficients.  Coefficients stay Python
objects (arbitrary precision); the win over the pure kernel comes from
typed loops and avoiding interpreter dispatch on the dict/tuple plumbing.
"""

from fractions import Fraction


def poly_add(dict a, dict b):
    cdef dict out = dict(a)
    cdef object e, c, s
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def poly_mul(dict a, dict b):
    cdef dict out = {}
    cdef tuple ea, eb, e
    cdef object ca, cb, s
    cdef Py_ssize_t i, n
    if len(a) > len(b):
        a, b = b, a
    for ea, ca in a.items():
        n = len(ea)
        for eb, cb in b.items():
            e = tuple([ea[i] + eb[i] for i in range(n)])
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def poly_div_exact(dict p, dict g):
    cdef tuple lead_g = max(g)
    cdef object cg = g[lead_g]
    cdef list rest = [(e, c) for e, c in g.items() if e != lead_g]
    cdef dict r = dict(p)
    cdef dict q = {}
    cdef tuple lead_r, qe, te, e
    cdef object coeff, s, c
    cdef Py_ssize_t i, n, j
    while r:
        lead_r = max(r)
        n = len(lead_r)
        qe = tuple([lead_r[i] - lead_g[i] for i in range(n)])
        for i in range(n):
            if <long> qe[i] < 0:
                return None
        coeff = r.pop(lead_r)
        if cg != 1:
            coeff = Fraction(coeff, cg) if isinstance(coeff, int) else coeff / cg
            if isinstance(coeff, Fraction) and coeff.denominator == 1:
                coeff = int(coeff)
        q[qe] = coeff
        for j in range(len(rest)):
            e, c = rest[j]
            te = tuple([qe[i] + e[i] for i in range(n)])
            s = r.get(te, 0) - coeff * c
            if s:
                r[te] = s
            else:
                r.pop(te, None)
    return q


def poly_div_linear(dict p, tuple form, Py_ssize_t pivot):
    cdef object cp = form[pivot]
    cdef list rest = []
    cdef Py_ssize_t i
    cdef object c
    for i in range(len(form)):
        c = form[i]
        if c and i != pivot:
            rest.append((i, c))
    cdef dict r = dict(p)
    cdef dict q = {}
    cdef long maxd = 0, d
    cdef tuple e, qe, te
    cdef object coeff, s, ci
    cdef Py_ssize_t j
    for e in r:
        if <long> e[pivot] > maxd:
            maxd = <long> e[pivot]
    cdef list level
    for d in range(maxd, 0, -1):
        level = [e for e in r if <long> e[pivot] == d]
        for e in level:
            coeff = r.pop(e)
            if cp != 1:
                coeff = Fraction(coeff, cp) if isinstance(coeff, int) else coeff / cp
                if coeff.denominator == 1:
                    coeff = int(coeff)
            qe = e[:pivot] + (d - 1,) + e[pivot + 1:]
            q[qe] = coeff
            for j in range(len(rest)):
                i, ci = rest[j]
                te = qe[:i] + (qe[i] + 1,) + qe[i + 1:]
                s = r.get(te, 0) - coeff * ci
                if s:
                    r[te] = s
                else:
                    r.pop(te, None)
    if r:
        return None
    return q
