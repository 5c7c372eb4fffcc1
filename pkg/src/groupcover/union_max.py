"""Largest unions of k proper subgroups, and the bounds they satisfy.

All ratios are exact :class:`fractions.Fraction` values.  The search runs
over maximal subgroups: swapping a proper subgroup for a maximal one that
contains it never shrinks a union.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .covering import sigma_of
from .group_core import Group
from .subgroups import SubgroupLattice, lattice_of, setwise_product_size

C2_BOUND = Fraction(3, 4)
C3_BOUND = Fraction(5, 6)
C3_ODD_BOUND = Fraction(7, 9)


@dataclass(frozen=True)
class UnionWitness:
    k: int
    subgroup_ids: tuple[int, ...]
    union_size: int
    ratio: Fraction
    ratios: tuple[Fraction, ...]


def _union(lattice: SubgroupLattice, ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= lattice[i].mask
    return m


def make_witness(g: Group, lattice: SubgroupLattice, k: int, ids: Sequence[int]) -> UnionWitness:
    ids = tuple(sorted(ids))
    size = _union(lattice, ids).bit_count()
    ratios = tuple(sorted(Fraction(lattice[i].order, g.order) for i in ids))
    return UnionWitness(k, ids, size, Fraction(size, g.order), ratios)


def _pool(lattice: SubgroupLattice, pool: str) -> list[int]:
    if pool == "maximal":
        return list(lattice.maximal_ids)
    if pool == "all":
        return lattice.proper_ids
    raise ValueError(f"pool must be 'maximal' or 'all', not {pool!r}")


def _upper(union: int, masks: list[int], start: int, slots: int) -> int:
    gains = [(m & ~union).bit_count() for m in masks[start:]]
    return union.bit_count() + sum(heapq.nlargest(slots, gains))


def _best_union_size(masks: list[int], r: int) -> int:
    order = sorted(range(len(masks)), key=lambda i: -masks[i].bit_count())
    ms = [masks[i] for i in order]
    best = -1

    def dfs(start: int, count: int, union: int) -> None:
        nonlocal best
        if count == r:
            best = max(best, union.bit_count())
            return
        slots = r - count
        if _upper(union, ms, start, slots) <= best:
            return
        for p in range(start, len(ms) - slots + 1):
            dfs(p + 1, count + 1, union | ms[p])

    dfs(0, 0, 0)
    return best


def _optimal_combos(masks: list[int], r: int, target: int, first_only: bool) -> list[tuple[int, ...]]:
    """Index combinations (lexicographic order) whose union has ``target`` elements."""
    found: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def dfs(start: int, union: int) -> bool:
        if len(chosen) == r:
            if union.bit_count() == target:
                found.append(tuple(chosen))
                return first_only
            return False
        slots = r - len(chosen)
        if _upper(union, masks, start, slots) < target:
            return False
        for p in range(start, len(masks) - slots + 1):
            chosen.append(p)
            stop = dfs(p + 1, union | masks[p])
            chosen.pop()
            if stop:
                return True
        return False

    dfs(0, 0)
    return found


def _padded(lattice: SubgroupLattice, ids: tuple[int, ...], k: int) -> tuple[int, ...]:
    # fewer maximal than k: every proper subgroup already lies in the union
    want = min(k, len(lattice.proper_ids))
    if len(ids) >= want:
        return ids
    extra = [i for i in lattice.proper_ids if i not in ids][: want - len(ids)]
    return tuple(sorted(ids + tuple(extra)))


def mu_k(g: Group, lattice: SubgroupLattice | None, k: int, *, pool: str = "maximal") -> UnionWitness:
    """Largest union of min(k, #proper) distinct proper subgroups.

    The returned ids are the lexicographically least optimal choice within the
    pool (topped up with the lowest unused proper ids when the pool is too small).
    """
    if k < 1:
        raise ValueError("k must be positive")
    lattice = lattice or lattice_of(g)
    ids = _pool(lattice, pool)
    if not ids:
        return make_witness(g, lattice, k, ())
    masks = [lattice[i].mask for i in ids]
    r = min(k, len(ids))
    best = _best_union_size(masks, r)
    combo = _optimal_combos(masks, r, best, first_only=True)[0]
    chosen = tuple(ids[p] for p in combo)
    if pool == "maximal":
        chosen = _padded(lattice, chosen, k)
    return make_witness(g, lattice, k, chosen)


def all_optimal(g: Group, lattice: SubgroupLattice | None, k: int, *, pool: str = "maximal") -> list[tuple[int, ...]]:
    """Every optimal id combination from the pool (without padding)."""
    lattice = lattice or lattice_of(g)
    ids = _pool(lattice, pool)
    if not ids:
        return [()]
    masks = [lattice[i].mask for i in ids]
    r = min(k, len(ids))
    best = _best_union_size(masks, r)
    return [tuple(ids[p] for p in c) for c in _optimal_combos(masks, r, best, first_only=False)]


# the bound sum(n_i) - n_d * sum_{i != d} n_i -----------------------------------


@dataclass(frozen=True)
class StarBound:
    value: Fraction
    designated: int


def star_bound(ratios: Sequence[Fraction], designated: int = -1) -> StarBound:
    """``sum(n) - n_d * (sum(n) - n_d)``; by default ``d`` is the last (largest) entry."""
    if not ratios:
        raise ValueError("need at least one ratio")
    ns = [Fraction(r) for r in ratios]
    d = designated % len(ns)
    total = sum(ns)
    return StarBound(total - ns[d] * (total - ns[d]), d)


def check_star_inequality(g: Group, lattice: SubgroupLattice, subgroup_ids: Sequence[int],
                          designated: int = -1) -> bool:
    w = make_witness(g, lattice, len(subgroup_ids), subgroup_ids)
    return w.ratio <= star_bound(w.ratios, designated).value


def star_holds_all_designations(g: Group, lattice: SubgroupLattice, subgroup_ids: Sequence[int]) -> bool:
    w = make_witness(g, lattice, len(subgroup_ids), subgroup_ids)
    return all(w.ratio <= star_bound(w.ratios, d).value for d in range(len(w.ratios)))


def _combo_chunks(m: int, r: int, size: int = 1 << 18):
    it = itertools.combinations(range(m), r)
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield np.array(block, dtype=np.intp)


def star_exceptions(g: Group, lattice: SubgroupLattice | None = None, max_size: int = 5) -> tuple[int, int]:
    """Exhaustively test the bound for every designation on every set of at most
    ``max_size`` distinct proper subgroups.  Returns (sets checked, violations).

    Works in integers scaled by |G|^2: ``|U|*|G| <= S*|G| - h_d*(S - h_d)``.
    """
    lattice = lattice or lattice_of(g)
    ids = lattice.proper_ids
    n = g.order
    checked = violations = 0
    if n > 62:
        for r in range(1, max_size + 1):
            for combo in itertools.combinations(ids, r):
                checked += 1
                violations += not star_holds_all_designations(g, lattice, combo)
        return checked, violations
    masks = np.array([lattice[i].mask for i in ids], dtype=np.int64)
    orders = np.array([lattice[i].order for i in ids], dtype=np.int64)
    for r in range(1, min(max_size, len(ids)) + 1):
        for block in _combo_chunks(len(ids), r):
            union = np.bitwise_or.reduce(masks[block], axis=1)
            lhs = np.bitwise_count(union).astype(np.int64) * n
            h = orders[block]
            total = h.sum(axis=1, keepdims=True)
            rhs = total * n - h * (total - h)
            checked += len(block)
            violations += int((lhs[:, None] > rhs).any(axis=1).sum())
    return checked, violations


# equality predicates -----------------------------------------------------------


@dataclass(frozen=True)
class EqualityFlags:
    """Equality diagnostics for a witness.

    ``proof_predicate`` is the exact condition for attaining the bound;
    ``headline_predicate`` is the index-only description (distinct maximal
    subgroups with the stated indices).  ``all_optimal_agree`` records that on
    every optimal witness, attaining the bound coincided with the predicate.
    """

    mu2_equality: bool = False
    mu3_equality: bool = False
    mu3_odd_equality: bool = False
    proof_predicate: bool = False
    headline_predicate: bool = False
    indices: tuple[int, ...] = ()
    products_equal_group: tuple[bool, ...] = ()
    intersection_contained: bool | None = None
    all_optimal_agree: bool = True


def _sorted_ids(lattice: SubgroupLattice, ids: Sequence[int]) -> list[int]:
    return sorted(ids, key=lambda i: (lattice[i].order, i))


def pair_predicate(g: Group, lattice: SubgroupLattice, ids: Sequence[int]) -> bool:
    """Both subgroups of index 2 and their setwise product is all of G."""
    if len(ids) != 2:
        return False
    a, b = (lattice[i] for i in ids)
    return 2 * a.order == g.order == 2 * b.order and setwise_product_size(g, a, b) == g.order


def triple_predicate(g: Group, lattice: SubgroupLattice, ids: Sequence[int],
                     indices: tuple[int, int, int] = (3, 3, 2)) -> bool:
    """H1, H2, H3 (ascending size) have the given indices, H1H3 = H2H3 = G and
    H1 & H2 lies inside H3."""
    if len(ids) != 3:
        return False
    h1, h2, h3 = (lattice[i] for i in _sorted_ids(lattice, ids))
    if tuple(g.order // h.order for h in (h1, h2, h3)) != indices or any(
            g.order % h.order for h in (h1, h2, h3)):
        return False
    if setwise_product_size(g, h1, h3) != g.order or setwise_product_size(g, h2, h3) != g.order:
        return False
    inter = h1.mask & h2.mask
    return inter & h3.mask == inter


def _headline(g: Group, lattice: SubgroupLattice, ids: Sequence[int], indices: Sequence[int]) -> bool:
    if len(set(ids)) != len(indices):
        return False
    maximal = set(lattice.maximal_ids)
    got = sorted(g.order // lattice[i].order for i in ids)
    return all(i in maximal for i in ids) and got == sorted(indices)


def _flags(g: Group, lattice: SubgroupLattice, w: UnionWitness, **extra) -> dict:
    ids = _sorted_ids(lattice, w.subgroup_ids)
    out = {"indices": tuple(g.order // lattice[i].order for i in ids)}
    if len(ids) == 2:
        out["products_equal_group"] = (setwise_product_size(g, lattice[ids[0]], lattice[ids[1]]) == g.order,)
    elif len(ids) == 3:
        h1, h2, h3 = (lattice[i] for i in ids)
        out["products_equal_group"] = (setwise_product_size(g, h1, h3) == g.order,
                                       setwise_product_size(g, h2, h3) == g.order)
        inter = h1.mask & h2.mask
        out["intersection_contained"] = inter & h3.mask == inter
    out.update(extra)
    return out


class C2Check(NamedTuple):
    bound_holds: bool
    equality: EqualityFlags


class C3Check(NamedTuple):
    applicable: bool
    bound_holds: bool | None
    equality: EqualityFlags


def verify_c2(g: Group, lattice: SubgroupLattice | None = None) -> C2Check:
    """Two proper subgroups cover at most 3/4 of G, with equality exactly for
    two index-2 subgroups whose product is G."""
    lattice = lattice or lattice_of(g)
    w = mu_k(g, lattice, 2)
    attained = w.ratio == C2_BOUND
    agree = all((make_witness(g, lattice, 2, ids).ratio == C2_BOUND) == pair_predicate(g, lattice, ids)
                for ids in all_optimal(g, lattice, 2))
    flags = EqualityFlags(**_flags(
        g, lattice, w,
        mu2_equality=attained,
        proof_predicate=pair_predicate(g, lattice, w.subgroup_ids),
        headline_predicate=_headline(g, lattice, w.subgroup_ids, (2, 2)),
        all_optimal_agree=agree))
    return C2Check(w.ratio <= C2_BOUND, flags)


def _verify_triple(g: Group, lattice: SubgroupLattice, bound: Fraction,
                   indices: tuple[int, int, int], flag: str) -> tuple[bool, EqualityFlags]:
    w = mu_k(g, lattice, 3)
    attained = w.ratio == bound
    agree = all((make_witness(g, lattice, 3, ids).ratio == bound) == triple_predicate(g, lattice, ids, indices)
                for ids in all_optimal(g, lattice, 3))
    flags = EqualityFlags(**_flags(
        g, lattice, w,
        **{flag: attained},
        proof_predicate=triple_predicate(g, lattice, w.subgroup_ids, indices),
        headline_predicate=_headline(g, lattice, w.subgroup_ids, indices),
        all_optimal_agree=agree))
    return w.ratio <= bound, flags


def verify_c3(g: Group, lattice: SubgroupLattice | None = None) -> C3Check:
    """For sigma != 3: three proper subgroups cover at most 5/6 of G."""
    lattice = lattice or lattice_of(g)
    if sigma_of(g).sigma == 3:
        return C3Check(False, None, EqualityFlags())
    holds, flags = _verify_triple(g, lattice, C3_BOUND, (3, 3, 2), "mu3_equality")
    return C3Check(True, holds, flags)


def verify_c3_odd(g: Group, lattice: SubgroupLattice | None = None) -> C3Check:
    """For odd order and sigma != 3: three proper subgroups cover at most 7/9 of G."""
    lattice = lattice or lattice_of(g)
    if g.order % 2 == 0 or sigma_of(g).sigma == 3:
        return C3Check(False, None, EqualityFlags())
    holds, flags = _verify_triple(g, lattice, C3_ODD_BOUND, (3, 3, 3), "mu3_odd_equality")
    return C3Check(True, holds, flags)


def triple_equality_exceptions(g: Group, lattice: SubgroupLattice | None = None,
                               bound: Fraction = C3_BOUND,
                               indices: tuple[int, int, int] = (3, 3, 2)) -> tuple[int, list]:
    """Check every triple of distinct proper subgroups: union ratio equals
    ``bound`` exactly when :func:`triple_predicate` holds.

    Returns (triples checked, offending triples).
    """
    lattice = lattice or lattice_of(g)
    n = g.order
    bad = []
    checked = 0
    for ids in itertools.combinations(lattice.proper_ids, 3):
        checked += 1
        size = _union(lattice, ids).bit_count()
        if (Fraction(size, n) == bound) != triple_predicate(g, lattice, ids, indices):
            bad.append(ids)
    return checked, bad


# open-problem probes -----------------------------------------------------------


@dataclass(frozen=True)
class ConjectureReport:
    group: str
    order: int
    k: int
    sigma: int | None
    witness: UnionWitness
    cover_completer: int | None
    sigma_is_k_plus_1: bool
    conjecture_satisfied: bool


def conjecture_probe(g: Group, lattice: SubgroupLattice | None, k: int) -> ConjectureReport:
    """Does a maximal M, no larger than any witness subgroup, finish the cover?

    Reports only; nothing here asserts the conjecture.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    lattice = lattice or lattice_of(g)
    sigma = sigma_of(g).sigma
    w = mu_k(g, lattice, k)
    full = (1 << g.order) - 1
    union = _union(lattice, w.subgroup_ids)
    smallest = min((lattice[i].order for i in w.subgroup_ids), default=0)
    completer = next((i for i in lattice.maximal_ids
                      if union | lattice[i].mask == full and lattice[i].order <= smallest), None)
    on_target = sigma == k + 1
    return ConjectureReport(g.name, g.order, k, sigma, w, completer, on_target,
                            on_target and completer is not None)


@dataclass(frozen=True)
class CkScan:
    k: int
    max_ratio: Fraction | None
    witness_group: str | None
    witness: UnionWitness | None
    rows: list = field(default_factory=list)


def empirical_ck_scan(entries, k: int) -> CkScan:
    """Largest mu_k ratio over the groups that are not a union of k proper subgroups.

    ``entries`` holds catalog entries (anything with ``name`` and ``group``).
    Rows are sorted by group name; the first maximal row wins ties.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    rows = []
    for e in sorted(entries, key=lambda e: e.name):
        s = sigma_of(e.group).sigma
        if s is not None and s <= k:
            continue
        w = mu_k(e.group, lattice_of(e.group), k)
        rows.append((e.name, w.ratio, w))
    if not rows:
        return CkScan(k, None, None, None, [])
    name, ratio, w = max(rows, key=lambda r: r[1])
    return CkScan(k, ratio, name, w, [(r[0], r[1]) for r in rows])


def order_class_maxima(reports: Sequence[ConjectureReport]) -> list[dict]:
    """Per group order: best mu_k ratio among groups with sigma > k, who attains
    it, and whether an attaining group has sigma = k + 1."""
    by_order: dict[int, list[ConjectureReport]] = {}
    for r in reports:
        if r.sigma is None or r.sigma > r.k:
            by_order.setdefault(r.order, []).append(r)
    out = []
    for order in sorted(by_order):
        group = by_order[order]
        best = max(r.witness.ratio for r in group)
        winners = sorted(r.group for r in group if r.witness.ratio == best)
        out.append({"order": order, "max_ratio": best, "attained_by": winners,
                    "attained_with_sigma_k_plus_1": any(
                        r.sigma_is_k_plus_1 for r in group if r.witness.ratio == best)})
    return out
