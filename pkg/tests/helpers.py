"""Independent oracles and samplers for the test suite.

Everything here is deliberately naive and self-contained (plain lists and
dicts, no imports from the package's linear algebra) so that expected
values frozen in the tests come from a second route.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from oredim.fields import PrimeField, Rationals
from oredim.groupring import GroupRingElement, GroupRingMatrix
from oredim.groups import Zd


def oracle_rank(rows, field):
    """Textbook Gauss-Jordan on plain lists of field values."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank = 0
    for c in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if not field.is_zero(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field.inv(rows[rank][c])
        rows[rank] = [field.mul(inv, x) for x in rows[rank]]
        for i in range(nrows):
            if i != rank and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [field.sub(x, field.mul(f, y))
                           for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def oracle_rank_modp(int_rows, p):
    return oracle_rank(int_rows, PrimeField(p))


def oracle_rank_q(rows):
    return oracle_rank([[Fraction(x) for x in r] for r in rows], Rationals())


# -- polynomial determinant oracle (for tiny Laurent matrices) -------------

def _po_mul(a, b, field):
    out = {}
    for ea, va in a.items():
        for eb, vb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = field.add(out.get(e, field.zero), field.mul(va, vb))
            if field.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
    return out


def _po_add(a, b, field):
    out = dict(a)
    for e, v in b.items():
        s = field.add(out.get(e, field.zero), v)
        if field.is_zero(s):
            out.pop(e, None)
        else:
            out[e] = s
    return out


def _po_neg(a, field):
    return {e: field.neg(v) for e, v in a.items()}


def _po_det(grid, field):
    """Cofactor expansion; grid is a square list-of-lists of poly dicts."""
    n = len(grid)
    if n == 0:
        return {(): field.one}
    if n == 1:
        return grid[0][0]
    total = {}
    for j in range(n):
        if not grid[0][j]:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in grid[1:]]
        term = _po_mul(grid[0][j], _po_det(minor, field), field)
        if j % 2:
            term = _po_neg(term, field)
        total = _po_add(total, term, field)
    return total


def oracle_laurent_rank(m):
    """Largest k with a nonzero k x k minor, by exhaustive cofactor
    expansion.  Only sensible for very small matrices."""
    field = m.field
    grid = [[dict(m.entry(i, j)) for j in range(m.ncols)] for i in range(m.nrows)]
    for k in range(min(m.nrows, m.ncols), 0, -1):
        for rows in itertools.combinations(range(m.nrows), k):
            for cols in itertools.combinations(range(m.ncols), k):
                sub = [[grid[i][j] for j in cols] for i in rows]
                if _po_det(sub, field):
                    return k
    return 0


# -- samplers ---------------------------------------------------------------

def random_element(rng, group, span=5):
    if isinstance(group, Zd):
        return tuple(rng.randint(-span, span) for _ in range(group.d))
    if group.kind == "Dinf":
        return (rng.randint(-span, span), rng.randrange(2))
    return (rng.randint(-span, span), rng.randint(-span, span),
            rng.randint(-span, span))


def random_ring_element(rng, field, group, max_terms=3, span=2):
    terms = {}
    for _ in range(rng.randrange(1, max_terms + 1)):
        g = random_element(rng, group, span)
        if isinstance(field, PrimeField):
            c = rng.randrange(field.p)
        else:
            c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        terms[g] = field.add(terms.get(g, field.zero), field.normalize(c))
    return GroupRingElement(field, group, {g: v for g, v in terms.items()
                                           if not field.is_zero(v)})


def random_zd_matrix(rng, field, d, nrows, ncols, max_exp=2, min_exp=0):
    group = Zd(d)
    entries = {}
    for i in range(nrows):
        for j in range(ncols):
            terms = {}
            for e in itertools.product(range(min_exp, max_exp + 1), repeat=d):
                if isinstance(field, PrimeField):
                    c = rng.randrange(field.p)
                else:
                    c = rng.randint(-3, 3)
                if c:
                    terms[e] = c
            if terms:
                entries[(i, j)] = GroupRingElement(field, group, terms)
    return GroupRingMatrix(field, group, nrows, ncols, entries)
