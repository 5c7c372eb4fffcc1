"""Covering number: fewest proper subgroups whose union is the whole group.

Any cover by proper subgroups can be turned into one by maximal subgroups
of no greater size (enlarge each member to a maximal subgroup containing it),
so the exact search only branches over maximal subgroups.
"""

from __future__ import annotations

import enum
import weakref
from dataclasses import dataclass, field
from functools import lru_cache

from .catalog import make
from .group_core import Group
from .subgroups import (
    SubgroupLattice,
    has_quotient_isomorphic,
    indices_of,
    lattice_of,
    subgroups_of_index,
)


class ClauseMismatch(RuntimeError):
    """An index-count criterion and its quotient form disagreed."""


@dataclass(frozen=True)
class CoverResult:
    """``sigma`` is None when the group is not a union of proper subgroups."""

    sigma: int | None
    certificate: tuple[int, ...] = ()

    @property
    def uncoverable(self) -> bool:
        return self.sigma is None


def min_cover(universe: int, masks: list[int]) -> list[int] | None:
    """Indices of a minimum-size subfamily of ``masks`` covering ``universe``.

    Branch and bound: take the uncovered element lying in the fewest sets
    (lowest index on ties), try each set containing it largest-first, and
    prune once the partial cover cannot beat the best one found.
    """
    union = 0
    for m in masks:
        union |= m
    if union & universe != universe:
        return None

    elements = indices_of(universe)
    containing = {x: sorted((i for i, m in enumerate(masks) if m >> x & 1),
                            key=lambda i: (-masks[i].bit_count(), i))
                  for x in elements}
    branch_order = sorted(elements, key=lambda x: (len(containing[x]), x))
    largest = max(m.bit_count() for m in masks)

    # greedy cover as the initial incumbent
    best: list[int] = []
    covered = 0
    while covered & universe != universe:
        i = max(range(len(masks)), key=lambda j: ((masks[j] & ~covered & universe).bit_count(), -j))
        best.append(i)
        covered |= masks[i]

    def search(covered: int, chosen: list[int]) -> None:
        nonlocal best
        missing = universe & ~covered
        if not missing:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        need = -(-missing.bit_count() // largest)
        if len(chosen) + max(need, 1) >= len(best):
            return
        x = next(y for y in branch_order if missing >> y & 1)
        for i in containing[x]:
            chosen.append(i)
            search(covered | masks[i], chosen)
            chosen.pop()

    search(0, [])
    return best


def _sigma_over(g: Group, lattice: SubgroupLattice, ids: list[int]) -> CoverResult:
    if g.order == 1 or g.is_cyclic:
        return CoverResult(None)
    full = (1 << g.order) - 1
    picked = min_cover(full, [lattice[i].mask for i in ids])
    if picked is None:
        return CoverResult(None)
    return CoverResult(len(picked), tuple(sorted(ids[i] for i in picked)))


def sigma_exact(g: Group, lattice: SubgroupLattice | None = None) -> CoverResult:
    """Exact covering number, searching over maximal subgroups only."""
    lattice = lattice or lattice_of(g)
    return _sigma_over(g, lattice, list(lattice.maximal_ids))


def sigma_all_proper(g: Group, lattice: SubgroupLattice | None = None) -> CoverResult:
    """Same search over every proper subgroup; an oracle for :func:`sigma_exact`."""
    lattice = lattice or lattice_of(g)
    return _sigma_over(g, lattice, lattice.proper_ids)


_sigma_cache: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


def sigma_of(g: Group) -> CoverResult:
    res = _sigma_cache.get(g)
    if res is None:
        res = _sigma_cache[g] = sigma_exact(g, lattice_of(g))
    return res


# classifier ------------------------------------------------------------------


class SigmaValue(enum.Enum):
    THREE = 3
    FOUR = 4
    FIVE = 5
    SIX = 6
    OTHER_OR_UNKNOWN = "other"
    UNCOVERABLE = "uncoverable"


@dataclass(frozen=True)
class SigmaClass:
    """Classifier verdict.

    ``checks`` maps each evaluated clause to ``(index_form, quotient_form)``;
    the index form is None for the clause that only has a quotient form.
    ``disagreements`` lists clauses whose two forms differed without raising.
    """

    value: SigmaValue
    reason: str
    checks: dict = field(default_factory=dict)
    disagreements: tuple[str, ...] = ()

    @property
    def sigma(self) -> int | None:
        return self.value.value if isinstance(self.value.value, int) else None


@lru_cache(maxsize=None)
def fingerprint_groups() -> dict[str, Group]:
    return {name: make(name) for name in ("C2xC2", "C3xC3", "S3", "A4", "C5xC5", "D5", "F20")}


def _has_any_quotient(g: Group, lattice: SubgroupLattice, names: tuple[str, ...]) -> list[str]:
    targets = fingerprint_groups()
    return [n for n in names if has_quotient_isomorphic(g, lattice, targets[n])]


def sigma_classifier(g: Group, lattice: SubgroupLattice | None = None) -> SigmaClass:
    """Predict the covering number from index counts and small quotients.

    Clauses are tried in order (3, 4, 5, 6), each only after the earlier ones
    failed.  A disagreement between the two forms of the 3 or 4 clause raises
    :class:`ClauseMismatch`; for the 5 clause it is recorded in
    ``disagreements`` instead.
    """
    lattice = lattice or lattice_of(g)
    if g.order == 1 or g.is_cyclic:
        return SigmaClass(SigmaValue.UNCOVERABLE, "cyclic")
    checks: dict[str, tuple] = {}
    disagreements: list[str] = []

    by_index = len(subgroups_of_index(g, lattice, 2)) >= 2
    quot = _has_any_quotient(g, lattice, ("C2xC2",))
    checks["three"] = (by_index, bool(quot))
    if by_index != bool(quot):
        raise ClauseMismatch(f"{g.name}: index-2 count and C2xC2 quotient disagree")
    if by_index:
        return SigmaClass(SigmaValue.THREE, "two subgroups of index 2; quotient C2xC2", checks)

    by_index = len(subgroups_of_index(g, lattice, 3)) >= 2
    quot = _has_any_quotient(g, lattice, ("C3xC3", "S3"))
    checks["four"] = (by_index, bool(quot))
    if by_index != bool(quot):
        raise ClauseMismatch(f"{g.name}: index-3 count and C3xC3/S3 quotient disagree")
    if by_index:
        return SigmaClass(SigmaValue.FOUR, f"two subgroups of index 3; quotient {quot[0]}", checks)

    by_index = any(g.order == 4 * lattice[i].order for i in lattice.maximal_ids)
    quot = _has_any_quotient(g, lattice, ("A4",))
    checks["five"] = (by_index, bool(quot))
    if by_index != bool(quot):
        disagreements.append("five")
    if by_index:
        return SigmaClass(SigmaValue.FIVE, "maximal subgroup of index 4", checks, tuple(disagreements))

    quot = _has_any_quotient(g, lattice, ("C5xC5", "D5", "F20"))
    checks["six"] = (None, bool(quot))
    if quot:
        return SigmaClass(SigmaValue.SIX, f"quotient {quot[0]}", checks, tuple(disagreements))
    return SigmaClass(SigmaValue.OTHER_OR_UNKNOWN, "no clause applies", checks, tuple(disagreements))


def sigma_cross_check(g: Group, lattice: SubgroupLattice | None = None) -> bool:
    lattice = lattice or lattice_of(g)
    exact = sigma_exact(g, lattice)
    cls = sigma_classifier(g, lattice)
    if cls.value is SigmaValue.UNCOVERABLE:
        return exact.uncoverable
    if exact.uncoverable:
        return False
    if cls.value is SigmaValue.OTHER_OR_UNKNOWN:
        return exact.sigma not in (3, 4, 5, 6)
    return exact.sigma == cls.sigma
