"""Finite free chain complexes over k[G] and their homology dimensions.

A complex is a contiguous stack kG^{r_0}, .., kG^{r_top} with
differentials c_i: kG^{r_i} -> kG^{r_(i-1)} (right multiplication by an
r_i x r_(i-1) matrix) satisfying c_i c_(i+1) = 0.  Homology dimensions
come from rank-nullity, never from explicit kernels:

    dim H_i = r_i * N - rank(c_i) - rank(c_(i+1))

both at finite quotients (plain ranks over k) and over the fraction field
of k[Z^d] (Laurent ranks).  Builders cover the standard desk examples: a
circle wedge a d-sphere with a (d+1)-cell attached along a degree-p map,
Koszul complexes of Z^d, and the periodic resolutions behind the Betti
numbers of finite quotient groups (Z/n)^d.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import UnsupportedOperationError
from .fields import Field, PrimeField, Rationals
from .groupring import GroupRingElement, GroupRingMatrix, induce_to_quotient, to_laurent
from .groups import Group, Zd
from .linalg import PlainMatrix, rank_laurent, rank_plain


class FreeChainComplex:
    """Bounded free complex; construction verifies c_i c_(i+1) = 0."""

    def __init__(self, field: Field, group: Group, ranks: Sequence[int],
                 differentials: Sequence[GroupRingMatrix]):
        ranks = tuple(int(r) for r in ranks)
        if not ranks or any(r < 0 for r in ranks):
            raise ValueError("ranks must be a nonempty list of nonnegative integers")
        if len(differentials) != len(ranks) - 1:
            raise ValueError("need exactly one differential per positive degree")
        self.field = field
        self.group = group
        self.ranks = ranks
        self.differentials = tuple(differentials)
        for i, diff in enumerate(self.differentials, start=1):
            if diff.field != field or diff.group != group:
                raise ValueError(f"differential {i} uses a different field or group")
            if (diff.nrows, diff.ncols) != (ranks[i], ranks[i - 1]):
                raise ValueError(
                    f"differential {i} has shape {diff.nrows}x{diff.ncols}, "
                    f"expected {ranks[i]}x{ranks[i - 1]}")
        for i in range(1, len(ranks) - 1):
            prod = self.differentials[i].matmul(self.differentials[i - 1])
            if not prod.is_zero():
                raise ValueError(f"composite of differentials {i + 1} and {i} is nonzero")

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def differential(self, i: int) -> Optional[GroupRingMatrix]:
        """c_i for 1 <= i <= top, None outside that range (treated as zero)."""
        if 1 <= i <= self.top:
            return self.differentials[i - 1]
        return None

    def __repr__(self):
        return f"FreeChainComplex({self.field!r}, {self.group!r}, ranks={self.ranks})"


@dataclass(frozen=True)
class HomologyRow:
    level: int
    index: int
    dims: Tuple[int, ...]
    normalized: Tuple[Fraction, ...]


@dataclass(frozen=True)
class HomologyReport:
    ranks: Tuple[int, ...]
    rows: Tuple[HomologyRow, ...]
    ore: Optional[Tuple[Fraction, ...]] = None
    certified: bool = True


def quotient_homology(complex_: FreeChainComplex, levels: Sequence[int],
                      rank_alg: str = "auto") -> HomologyReport:
    """Homology dimensions of the induced complex at each quotient level."""
    levels = sorted(set(int(n) for n in levels))
    if not levels or levels[0] < 1:
        raise ValueError("levels must be positive")
    rows = []
    for n in levels:
        quotient = complex_.group.quotient(n)
        idx = quotient.index
        ranks_of = [0] * (complex_.top + 2)
        for i in range(1, complex_.top + 1):
            diff = complex_.differential(i)
            ranks_of[i] = rank_plain(induce_to_quotient(diff, quotient), rank_alg)
        dims = tuple(complex_.ranks[i] * idx - ranks_of[i] - ranks_of[i + 1]
                     for i in range(complex_.top + 1))
        # Rank-nullity makes the alternating sums match identically.
        assert sum((-1) ** i * d for i, d in enumerate(dims)) == \
            idx * sum((-1) ** i * r for i, r in enumerate(complex_.ranks))
        rows.append(HomologyRow(n, idx, dims,
                                tuple(Fraction(d, idx) for d in dims)))
    return HomologyReport(complex_.ranks, tuple(rows))


def homology_report(complex_: FreeChainComplex, levels: Sequence[int],
                    rank_alg: str = "auto", seed: int = 0) -> HomologyReport:
    """Quotient homology table, with the exact Ore row filled in whenever
    the group ring admits it (Z^d only)."""
    table = quotient_homology(complex_, levels, rank_alg)
    if isinstance(complex_.group, Zd):
        dims, certified = ore_homology(complex_, rank_alg=rank_alg, seed=seed)
        return HomologyReport(table.ranks, table.rows, dims, certified)
    return table


def ore_homology(complex_: FreeChainComplex, rank_alg: str = "auto",
                 seed: int = 0) -> Tuple[Tuple[Fraction, ...], bool]:
    """Per-degree Ore dimensions of homology for a complex over k[Z^d].

    Returns the dimensions together with a certification flag (False as
    soon as one rank came from randomized evaluation).
    """
    if not isinstance(complex_.group, Zd):
        raise UnsupportedOperationError(
            "Ore dimension directly computable only for Zd; use approximation")
    ranks_of = [0] * (complex_.top + 2)
    certified = True
    for i in range(1, complex_.top + 1):
        report = rank_laurent(to_laurent(complex_.differential(i)),
                              alg=rank_alg, seed=seed)
        ranks_of[i] = report.rank
        certified = certified and report.certified
    dims = tuple(Fraction(complex_.ranks[i] - ranks_of[i] - ranks_of[i + 1])
                 for i in range(complex_.top + 1))
    return dims, certified


# -- builders ---------------------------------------------------------------

def build_degree_p_attachment(d: int, p: int, field: Field) -> FreeChainComplex:
    """Cellular complex over field[Z] of the universal cover of a circle
    wedge a d-sphere with a (d+1)-cell attached along a degree-p map.

    One free generator in degrees 0, 1, d and d+1; the first differential
    is z - 1 and the top one is the scalar p (zero when p is the
    characteristic), everything else vanishes.
    """
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    group = Zd(1)
    ranks = [0] * (d + 2)
    for i in (0, 1, d, d + 1):
        ranks[i] = 1
    z_minus_1 = GroupRingElement(field, group, {(1,): field.one,
                                                (0,): field.neg(field.one)})
    diffs = []
    for i in range(1, d + 2):
        entries = {}
        if i == 1:
            entries[(0, 0)] = z_minus_1
        elif i == d + 1:
            entries[(0, 0)] = GroupRingElement(field, group,
                                               {(0,): field.normalize(p)})
        diffs.append(GroupRingMatrix(field, group, ranks[i], ranks[i - 1], entries))
    return FreeChainComplex(field, group, ranks, diffs)


def build_koszul(d: int, field: Field) -> FreeChainComplex:
    """Koszul complex of Z^d: rank C(d, i) in degree i, differentials with
    entries +-(z_j - 1) under the exterior-algebra sign rule.  This is the
    cellular complex of the universal cover of the d-torus and a free
    resolution of the trivial module."""
    if not 1 <= d <= 4:
        raise ValueError(f"need 1 <= d <= 4, got {d}")
    group = Zd(d)
    subsets: List[List[Tuple[int, ...]]] = [
        sorted(itertools.combinations(range(d), i)) for i in range(d + 1)]
    index: List[Dict[Tuple[int, ...], int]] = [
        {s: k for k, s in enumerate(level)} for level in subsets]

    def gen_minus_one(j: int) -> GroupRingElement:
        e = [0] * d
        e[j] = 1
        return GroupRingElement(field, group, {tuple(e): field.one,
                                               (0,) * d: field.neg(field.one)})

    diffs = []
    for i in range(1, d + 1):
        entries = {}
        for row, subset in enumerate(subsets[i]):
            for pos, j in enumerate(subset):
                rest = tuple(x for x in subset if x != j)
                el = gen_minus_one(j)
                # sign by the number of indices after j in the subset
                if (len(subset) - 1 - pos) % 2:
                    el = -el
                entries[(row, index[i - 1][rest])] = el
        diffs.append(GroupRingMatrix(field, group,
                                     len(subsets[i]), len(subsets[i - 1]), entries))
    return FreeChainComplex(field, group, [len(s) for s in subsets], diffs)


def finite_group_betti(d: int, n: int, field: Field, i_max: int) -> List[int]:
    """Betti numbers b_0..b_{i_max} of the finite group (Z/n)^d over k.

    Each Z/n factor contributes the collapsed periodic resolution, the
    complex with one copy of k per degree and differentials alternating 0
    and multiplication by n (the cellular complex of the standard infinite
    CW model of its classifying space).  The classifying space of the
    product is the product, so the chains are the d-fold tensor product
    over k, truncated one degree above i_max; dimensions again come from
    rank-nullity.
    """
    if not 1 <= d <= 3:
        raise ValueError(f"need 1 <= d <= 3, got {d}")
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not 0 <= i_max <= 6:
        raise ValueError(f"need 0 <= i_max <= 6, got {i_max}")
    top = i_max + 1

    def single_factor_map(degree: int):
        # boundary map into degree-1: zero in odd degrees, n in even ones
        return field.zero if degree % 2 else field.normalize(n)

    # Basis of the tensor complex in total degree m: compositions of m
    # into d nonnegative parts, ordered lexicographically.
    basis = [sorted(v for v in itertools.product(range(top + 1), repeat=d)
                    if sum(v) == m) for m in range(top + 1)]
    basis_index = [{v: k for k, v in enumerate(level)} for level in basis]
    boundary_ranks = [0] * (top + 2)
    for m in range(1, top + 1):
        entries = {}
        for row, v in enumerate(basis[m]):
            sign_exp = 0
            for axis in range(d):
                if v[axis] > 0:
                    coeff = single_factor_map(v[axis])
                    if not field.is_zero(coeff):
                        if sign_exp % 2:
                            coeff = field.neg(coeff)
                        w = v[:axis] + (v[axis] - 1,) + v[axis + 1:]
                        entries[(row, basis_index[m - 1][w])] = coeff
                sign_exp += v[axis]
        mat = PlainMatrix(field, len(basis[m]), len(basis[m - 1]), entries)
        boundary_ranks[m] = rank_plain(mat)
    return [len(basis[m]) - boundary_ranks[m] - boundary_ranks[m + 1]
            for m in range(i_max + 1)]


@dataclass(frozen=True)
class CharComparisonRow:
    level: int
    index: int
    rational_dims: Tuple[int, ...]
    modp_dims: Tuple[int, ...]


@dataclass(frozen=True)
class CharComparisonReport:
    p: int
    rows: Tuple[CharComparisonRow, ...]


def char_comparison(complex_: FreeChainComplex, p: int,
                    levels: Sequence[int]) -> CharComparisonReport:
    """Quotient homology over Q and over F_p for an integral complex.

    Requires every coefficient to be an integer inside Q; the mod-p
    complex reinterprets those integers in F_p.  Universal coefficients
    force dim_{F_p} H_i >= dim_Q H_i at every level and degree, which is
    verified before returning.
    """
    if not isinstance(complex_.field, Rationals):
        raise UnsupportedOperationError(
            "characteristic comparison needs a complex over Q with integer entries")
    modp = PrimeField(p)

    def reduce_matrix(m: GroupRingMatrix) -> GroupRingMatrix:
        entries = {}
        for key, el in m.entries.items():
            terms = {}
            for g, v in el.terms.items():
                if v.denominator != 1:
                    raise UnsupportedOperationError(
                        f"non-integer coefficient {v} in differential entry {key}")
                terms[g] = v.numerator % p
            entries[key] = GroupRingElement(modp, m.group, terms)
        return GroupRingMatrix(modp, m.group, m.nrows, m.ncols, entries)

    reduced = FreeChainComplex(modp, complex_.group, complex_.ranks,
                               [reduce_matrix(x) for x in complex_.differentials])
    over_q = quotient_homology(complex_, levels)
    over_p = quotient_homology(reduced, levels)
    rows = []
    for rq, rp in zip(over_q.rows, over_p.rows):
        for i, (a, b) in enumerate(zip(rp.dims, rq.dims)):
            if a < b:
                raise ArithmeticError(
                    f"mod-{p} homology smaller than rational homology "
                    f"at level {rq.level}, degree {i}")
        rows.append(CharComparisonRow(rq.level, rq.index, rq.dims, rp.dims))
    return CharComparisonReport(p, tuple(rows))
