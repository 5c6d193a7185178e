"""Dimension functions for finitely presented modules over k[G].

For a module presented by an r x s matrix A:

* ``ore_dim``            -- s minus the rank of A over the rational
  function field k(t_1..t_d); only Z^d group rings localize to a
  commutative fraction field we can compute in directly.
* ``elek_truncation_dim`` -- per Foelner set F, the k-dimension of the
  truncated cokernel, s*|F| - rank of the compressed matrix, normalized
  by |F|.
* ``quotient_betti_dim`` -- per residual-chain level, s*N minus the rank
  of the induced matrix on the quotient, normalized by the index N.
* ``virtual_ore_dim``    -- Ore dimension of the restriction to a
  whitelisted finite-index Z^d subgroup, divided by the index.

Tables never extrapolate: the exact target is reported when available and
an agreement flag compares the last table row against it at a user
tolerance, but no limit is ever declared.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .errors import UnsupportedOperationError
from .groupring import (PresentedModule, Sublattice, TranslationSubgroup,
                        compress_to_folner, induce_to_quotient,
                        restrict_scalars, to_laurent)
from .groups import Group, Zd
from .linalg import rank_laurent, rank_plain


class Method(str, Enum):
    ORE = "ore"
    ELEK = "elek-truncation"
    QUOTIENT = "quotient-betti"
    VIRTUAL_ORE = "virtual-ore"


@dataclass(frozen=True)
class DimensionValue:
    value: Fraction
    method: Method
    certified: bool

    def __post_init__(self):
        if self.value < 0:
            raise ValueError(f"dimension must be nonnegative, got {self.value}")


@dataclass(frozen=True)
class TableRow:
    level: int
    normalizer: int
    raw: int
    normalized: Fraction

    def __post_init__(self):
        if self.normalized != Fraction(self.raw, self.normalizer):
            raise ValueError("normalized value must equal raw/normalizer exactly")


@dataclass(frozen=True)
class ConvergenceTable:
    method: Method
    rows: Tuple[TableRow, ...]
    target: Optional[DimensionValue] = None
    certified: bool = True

    def __post_init__(self):
        levels = [r.level for r in self.rows]
        if levels != sorted(set(levels)):
            raise ValueError("levels must be strictly increasing")

    def last_normalized(self) -> Optional[Fraction]:
        return self.rows[-1].normalized if self.rows else None


def _check_levels(levels: Sequence[int]):
    levels = list(levels)
    if not levels:
        raise ValueError("need at least one level")
    if levels != sorted(set(levels)) or levels[0] < 1:
        raise ValueError(f"levels must be strictly increasing positive integers: {levels}")
    return levels


def _map_levels(fn, levels, max_workers: int):
    if max_workers > 1 and len(levels) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(fn, levels))
    return [fn(n) for n in levels]


def ore_dim(module: PresentedModule, rank_alg: str = "auto", seed: int = 0) -> DimensionValue:
    """Ore dimension of the module: generators minus rank over k(t_1..t_d)."""
    if not isinstance(module.group, Zd):
        raise UnsupportedOperationError(
            "Ore dimension directly computable only for Zd; use approximation")
    report = rank_laurent(to_laurent(module.matrix), alg=rank_alg, seed=seed)
    value = Fraction(module.generators - report.rank)
    return DimensionValue(value, Method.ORE, report.certified)


def elek_truncation_dim(module: PresentedModule, levels: Sequence[int],
                        rank_alg: str = "auto", max_workers: int = 1) -> ConvergenceTable:
    """Dimensions of Foelner-truncated cokernels, normalized by |F_n|."""
    levels = _check_levels(levels)
    matrix = module.matrix
    s = module.generators

    def row(n: int) -> TableRow:
        folner = module.group.folner_set(n)
        compressed = compress_to_folner(matrix, folner)
        raw = s * len(folner) - rank_plain(compressed, rank_alg)
        return TableRow(n, len(folner), raw, Fraction(raw, len(folner)))

    return ConvergenceTable(Method.ELEK, tuple(_map_levels(row, levels, max_workers)))


def quotient_betti_dim(module: PresentedModule, levels: Sequence[int],
                       rank_alg: str = "auto", max_workers: int = 1) -> ConvergenceTable:
    """Normalized Betti numbers of the module along the residual chain."""
    levels = _check_levels(levels)
    matrix = module.matrix
    s = module.generators

    def row(n: int) -> TableRow:
        quotient = module.group.quotient(n)
        induced = induce_to_quotient(matrix, quotient)
        raw = s * quotient.index - rank_plain(induced, rank_alg)
        return TableRow(n, quotient.index, raw, Fraction(raw, quotient.index))

    return ConvergenceTable(Method.QUOTIENT, tuple(_map_levels(row, levels, max_workers)))


def virtual_ore_dim(module: PresentedModule, subgroup, rank_alg: str = "auto",
                    seed: int = 0) -> DimensionValue:
    """Ore dimension of the restriction to a finite-index Z^d subgroup,
    normalized by the index."""
    restricted, index = restrict_scalars(module.matrix, subgroup)
    report = rank_laurent(to_laurent(restricted), alg=rank_alg, seed=seed)
    raw = restricted.ncols - report.rank
    return DimensionValue(Fraction(raw, index), Method.VIRTUAL_ORE, report.certified)


def default_subgroup(group: Group):
    """The canonical whitelisted subgroup used by reports: <z> for the
    dihedral model, the doubled lattice for Z^d."""
    if isinstance(group, Zd):
        return Sublattice(2)
    return TranslationSubgroup()


def subgroup_index(group: Group, subgroup) -> int:
    if isinstance(group, Zd) and isinstance(subgroup, Sublattice):
        return subgroup.n ** group.d
    if isinstance(subgroup, TranslationSubgroup):
        return 2
    raise UnsupportedOperationError(
        f"unsupported subgroup restriction: {group!r} / {subgroup!r}")


DEFAULT_QUOTIENT_LEVELS = (2, 4, 8, 16)
DEFAULT_FOLNER_LEVELS = (4, 8, 16, 32)


@dataclass(frozen=True)
class ReportConfig:
    quotient_levels: Tuple[int, ...] = DEFAULT_QUOTIENT_LEVELS
    folner_levels: Tuple[int, ...] = DEFAULT_FOLNER_LEVELS
    tol: Fraction = Fraction(1, 20)
    seed: int = 0
    rank_alg: str = "auto"
    # Levels below this are dropped from tables; a safety knob for models
    # where early quotients are too coarse.  The built-in models all have
    # trivial finite-normal-subgroup part, so the default keeps everything.
    min_level: int = 1
    max_workers: int = 1

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.min_level < 1 or self.max_workers < 1:
            raise ValueError("min_level and max_workers must be >= 1")


@dataclass(frozen=True)
class ApproxReport:
    """Juxtaposition of every dimension function computable for a module."""

    target: Optional[DimensionValue]
    tables: Tuple[ConvergenceTable, ...]
    agreement: Dict[str, bool]
    tol: Fraction

    def table(self, method: Method) -> Optional[ConvergenceTable]:
        for t in self.tables:
            if t.method == method:
                return t
        return None


def approx_report(module: PresentedModule, config: ReportConfig = ReportConfig()) -> ApproxReport:
    """Run every applicable dimension function and flag agreement.

    The exact target is the Ore dimension for Z^d modules and the virtual
    Ore dimension for dihedral modules; Heisenberg modules get tables
    only.  Agreement compares each table's last row against the target at
    the configured tolerance; nothing is extrapolated.
    """
    group = module.group
    target: Optional[DimensionValue] = None
    if isinstance(group, Zd):
        target = ore_dim(module, rank_alg=config.rank_alg, seed=config.seed)
    else:
        try:
            target = virtual_ore_dim(module, default_subgroup(group),
                                     rank_alg=config.rank_alg, seed=config.seed)
        except UnsupportedOperationError:
            target = None

    qlevels = [n for n in config.quotient_levels if n >= config.min_level]
    flevels = [n for n in config.folner_levels if n >= config.min_level]
    tables = (
        quotient_betti_dim(module, qlevels, config.rank_alg, config.max_workers),
        elek_truncation_dim(module, flevels, config.rank_alg, config.max_workers),
    )
    agreement: Dict[str, bool] = {}
    if target is not None:
        for t in tables:
            last = t.last_normalized()
            agreement[t.method.value] = (last is not None
                                         and abs(last - target.value) <= config.tol)
    return ApproxReport(target, tables, agreement, config.tol)
