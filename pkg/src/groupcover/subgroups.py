"""Subgroup lattices, quotients and isomorphism testing for Cayley-table groups.

Subsets of a group are integer bitmasks: bit ``i`` set means element ``i`` is
a member.  A subgroup is identified by its mask.
"""

from __future__ import annotations

import weakref
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .group_core import Group, from_cayley_table

DEFAULT_LATTICE_CAP = 20000


class LatticeExceedsLimit(RuntimeError):
    pass


class NotNormal(ValueError):
    pass


# bitmask helpers -------------------------------------------------------------


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def indices_of(mask: int) -> list[int]:
    bits = bin(mask)[:1:-1]
    return [i for i, c in enumerate(bits) if c == "1"]


@dataclass(frozen=True)
class ElementSet:
    """Membership mask over the elements of a group of order ``width``."""

    mask: int
    width: int

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.size

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __iter__(self):
        return iter(indices_of(self.mask))

    def __or__(self, other: ElementSet) -> ElementSet:
        return ElementSet(self.mask | other.mask, self.width)

    def __and__(self, other: ElementSet) -> ElementSet:
        return ElementSet(self.mask & other.mask, self.width)

    def issubset(self, other: ElementSet) -> bool:
        return self.mask & other.mask == self.mask

    @classmethod
    def of(cls, indices: Iterable[int], width: int) -> ElementSet:
        indices = list(indices)
        if any(not 0 <= i < width for i in indices):
            raise IndexError(f"element index out of range 0..{width - 1}")
        return cls(mask_of(indices), width)


@dataclass(frozen=True)
class Subgroup:
    members: ElementSet

    @property
    def mask(self) -> int:
        return self.members.mask

    @property
    def order(self) -> int:
        return self.members.size

    @cached_property
    def elements(self) -> list[int]:
        return indices_of(self.mask)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __le__(self, other: Subgroup) -> bool:
        return self.members.issubset(other.members)

    def index_in(self, g: Group) -> int:
        return g.order // self.order


@dataclass(frozen=True, eq=False)
class SubgroupLattice:
    """All subgroups of ``group`` sorted by (order, mask)."""

    group: Group
    subgroups: tuple[Subgroup, ...]
    maximal_ids: tuple[int, ...]
    normal_ids: tuple[int, ...]
    _ids: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._ids.update({s.mask: i for i, s in enumerate(self.subgroups)})

    def __len__(self) -> int:
        return len(self.subgroups)

    def __getitem__(self, i: int) -> Subgroup:
        return self.subgroups[i]

    def id_of(self, sub: Subgroup | int) -> int:
        mask = sub if isinstance(sub, int) else sub.mask
        return self._ids[mask]

    @property
    def whole_id(self) -> int:
        return len(self.subgroups) - 1

    @property
    def proper_ids(self) -> list[int]:
        return list(range(len(self.subgroups) - 1))

    @property
    def maximal(self) -> list[Subgroup]:
        return [self.subgroups[i] for i in self.maximal_ids]

    @property
    def normal(self) -> list[Subgroup]:
        return [self.subgroups[i] for i in self.normal_ids]

    def is_maximal(self, i: int) -> bool:
        return i in set(self.maximal_ids)

    def is_normal(self, i: int) -> bool:
        return i in set(self.normal_ids)


# closure ---------------------------------------------------------------------


def _closure(g: Group, gens: Sequence[int], start: Iterable[int] = (0,)) -> int:
    """Mask of the subgroup generated by ``gens``, grown from ``start``."""
    rows = g.rows
    seen = 0
    queue = deque()
    for x in start:
        if not seen >> x & 1:
            seen |= 1 << x
            queue.append(x)
    if not seen & 1:
        seen |= 1
        queue.append(0)
    gens = [s for s in dict.fromkeys(gens) if s != 0]
    while queue:
        row = rows[queue.popleft()]
        for s in gens:
            y = row[s]
            if not seen >> y & 1:
                seen |= 1 << y
                queue.append(y)
    return seen


def generated_subgroup(g: Group, seed: ElementSet | Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``seed``."""
    gens = list(seed) if not isinstance(seed, ElementSet) else indices_of(seed.mask)
    return Subgroup(ElementSet(_closure(g, gens), g.order))


def _normalizer(g: Group, hs: list[int], in_h: np.ndarray) -> np.ndarray:
    return in_h[g.conjugation[:, hs]].all(axis=1)


def is_normal(g: Group, sub: Subgroup) -> bool:
    in_h = np.zeros(g.order, dtype=bool)
    in_h[sub.elements] = True
    return bool(_normalizer(g, sub.elements, in_h).all())


def derived_subgroup(g: Group, sub: Subgroup | None = None) -> Subgroup:
    els = np.array(sub.elements if sub is not None else range(g.order))
    t, inv = g.table, g.inverses
    a, b = els[:, None], els[None, :]
    comms = t[t[inv[a], inv[b]], t[a, b]]
    return generated_subgroup(g, np.unique(comms).tolist())


def is_solvable(g: Group) -> bool:
    current = Subgroup(ElementSet((1 << g.order) - 1, g.order))
    while current.order > 1:
        nxt = derived_subgroup(g, current)
        if nxt.order == current.order:
            return False
        current = nxt
    return True


def _is_prime(m: int) -> bool:
    return m >= 2 and all(m % p for p in range(2, int(m ** 0.5) + 1))


def all_subgroups(g: Group, *, cap: int = DEFAULT_LATTICE_CAP) -> SubgroupLattice:
    """Enumerate every subgroup of ``g``.

    Seeds with the cyclic subgroups, then grows each known subgroup H by
    elements x of its normalizer whose coset xH has prime order (H<x> is then
    a union of cosets, no closure needed).  In a solvable group every subgroup
    is reached this way.  Otherwise the set is additionally closed under joins
    with cyclic subgroups until nothing new appears.
    """
    n = g.order
    rows = g.rows
    gens: dict[int, list[int]] = {}

    def add(mask: int, gen_list: list[int]) -> bool:
        if mask in gens:
            return False
        if len(gens) >= cap:
            raise LatticeExceedsLimit(f"{g.name}: more than {cap} subgroups")
        gens[mask] = gen_list
        return True

    add(1, [])
    cyclic: dict[int, int] = {}
    for x in range(1, n):
        m = _closure(g, [x])
        cyclic.setdefault(m, x)
        add(m, [x])

    queue = deque(gens)
    while queue:
        hm = queue.popleft()
        hs = indices_of(hm)
        in_h = np.zeros(n, dtype=bool)
        in_h[hs] = True
        covered = hm
        for x in np.flatnonzero(_normalizer(g, hs, in_h)).tolist():
            if covered >> x & 1:
                continue
            y, m = x, 1
            while not hm >> y & 1:
                y = rows[y][x]
                m += 1
            if not _is_prime(m):
                continue
            km = hm
            y = x
            for _ in range(m - 1):
                km |= mask_of(g.table[hs, y].tolist())
                y = rows[y][x]
            covered |= km
            if add(km, gens[hm] + [x]):
                queue.append(km)

    if not is_solvable(g):
        queue = deque(gens)
        while queue:
            hm = queue.popleft()
            for cm, x in cyclic.items():
                if cm & hm == cm:
                    continue
                jm = _closure(g, gens[hm] + [x], indices_of(hm))
                if add(jm, gens[hm] + [x]):
                    queue.append(jm)

    return _make_lattice(g, gens)


def _make_lattice(g: Group, masks: Iterable[int]) -> SubgroupLattice:
    n = g.order
    subs = tuple(Subgroup(ElementSet(m, n)) for m in sorted(masks, key=lambda m: (m.bit_count(), m)))
    whole = len(subs) - 1

    # a maximal subgroup found earlier in descending order would contain any non-maximal one
    maximal: list[int] = []
    for i in range(whole - 1, -1, -1):
        m = subs[i].mask
        if not any(m & subs[j].mask == m for j in maximal):
            maximal.append(i)

    normal = [i for i, s in enumerate(subs) if is_normal(g, s)]
    return SubgroupLattice(g, subs, tuple(sorted(maximal)), tuple(normal))


_lattice_cache: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


def lattice_of(g: Group) -> SubgroupLattice:
    """Memoised :func:`all_subgroups`."""
    lat = _lattice_cache.get(g)
    if lat is None:
        lat = _lattice_cache[g] = all_subgroups(g)
    return lat


# products and quotients ------------------------------------------------------


def setwise_product_size(g: Group, a: Subgroup, b: Subgroup) -> int:
    """``|{x*y : x in a, y in b}|`` counted directly."""
    return int(np.unique(g.table[np.ix_(a.elements, b.elements)]).size)


def subgroups_of_index(g: Group, lattice: SubgroupLattice, d: int) -> list[Subgroup]:
    if d <= 0 or g.order % d:
        return []
    return [s for s in lattice.subgroups if s.order * d == g.order]


def quotient(g: Group, n: Subgroup, name: str | None = None) -> Group:
    """The group of cosets xN, with N itself as element 0."""
    if not is_normal(g, n):
        raise NotNormal(f"subgroup of order {n.order} is not normal in {g.name}")
    label = np.full(g.order, -1, dtype=np.int64)
    reps = []
    for x in range(g.order):
        if label[x] < 0:
            label[g.table[x, n.elements]] = len(reps)
            reps.append(x)
    reps = np.array(reps)
    table = label[g.table[np.ix_(reps, reps)]]
    return from_cayley_table(table, name or f"{g.name}/N{n.order}")


# isomorphism -----------------------------------------------------------------


def _invariants(g: Group) -> list[tuple[int, int]]:
    return list(zip(g.element_orders, g.centralizer_sizes))


def fingerprint(g: Group) -> tuple:
    """Isomorphism invariant: order plus the multiset of (element order, centralizer size)."""
    return (g.order, tuple(sorted(_invariants(g))))


def generating_sequence(g: Group) -> list[int]:
    """Greedy generating sequence: repeatedly add a highest-order element outside the span."""
    full = (1 << g.order) - 1
    gens: list[int] = []
    span = 1
    orders = g.element_orders
    while span != full:
        outside = [x for x in range(g.order) if not span >> x & 1]
        x = max(outside, key=lambda y: (orders[y], -y))
        gens.append(x)
        span = _closure(g, gens)
    return gens


def _extend_map(g: Group, h: Group, gens: list[int], images: list[int],
                inv_g: list, inv_h: list) -> list[int] | None:
    """Homomorphic injective map on <gens> sending gens to images, or None."""
    grows, hrows = g.rows, h.rows
    phi = [-1] * g.order
    phi[0] = 0
    used = {0}
    queue = deque([0])
    pairs = list(zip(gens, images))
    while queue:
        u = queue.popleft()
        pu = hrows[phi[u]]
        gu = grows[u]
        for s, t in pairs:
            v, w = gu[s], pu[t]
            if phi[v] < 0:
                if w in used or inv_g[v] != inv_h[w]:
                    return None
                phi[v] = w
                used.add(w)
                queue.append(v)
            elif phi[v] != w:
                return None
    return phi


def find_isomorphism(g: Group, h: Group) -> list[int] | None:
    """An isomorphism g -> h as a list of images, or None."""
    if fingerprint(g) != fingerprint(h):
        return None
    inv_g, inv_h = _invariants(g), _invariants(h)
    gens = generating_sequence(g)
    candidates = [[y for y in range(h.order) if inv_h[y] == inv_g[s]] for s in gens]

    def search(j: int, images: list[int]) -> list[int] | None:
        if j == len(gens):
            phi = _extend_map(g, h, gens, images, inv_g, inv_h)
            return phi if phi is not None and min(phi) >= 0 else None
        for t in candidates[j]:
            trial = images + [t]
            if _extend_map(g, h, gens[: j + 1], trial, inv_g, inv_h) is None:
                continue
            found = search(j + 1, trial)
            if found is not None:
                return found
        return None

    return search(0, [])


def are_isomorphic(g: Group, h: Group) -> bool:
    return find_isomorphism(g, h) is not None


def has_quotient_isomorphic(g: Group, lattice: SubgroupLattice, t: Group) -> bool:
    if g.order % t.order:
        return False
    for n in lattice.normal:
        if n.order * t.order == g.order and are_isomorphic(quotient(g, n), t):
            return True
    return False
