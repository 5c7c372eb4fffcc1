"""Named groups and the small-group scan catalog.

Group-spec grammar (case-insensitive), factors joined by ``x``:

    Cn    cyclic of order n          Dn   dihedral of order 2n
    Sn    symmetric, n <= 6          An   alternating, n <= 6
    Q8    quaternion                 F20  Frobenius group of order 20
    Epq   elementary abelian p^q (single-digit q; ``Ep^q`` also accepted)
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .group_core import (
    DEFAULT_ORDER_CAP,
    Group,
    Permutation,
    direct_product,
    from_cayley_table,
    from_permutations,
    load_group,
)
from .subgroups import are_isomorphic, fingerprint


class UnknownSpec(ValueError):
    pass


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def cyclic(n: int) -> Group:
    if n < 1:
        raise UnknownSpec(f"C{n}: order must be positive")
    idx = list(range(n))
    return from_cayley_table([[(a + b) % n for b in idx] for a in idx], f"C{n}")


def dihedral(n: int) -> Group:
    """Dihedral group of order 2n, as the symmetries of an n-gon."""
    if n < 1:
        raise UnknownSpec(f"D{n}: n must be positive")
    if n <= 2:
        # the polygon action is not faithful here; use the abstract group
        return direct_product(cyclic(2), cyclic(n), f"D{n}") if n == 2 else cyclic(2).renamed("D1")
    rot = Permutation(tuple((i + 1) % n for i in range(n)))
    ref = Permutation(tuple((-i) % n for i in range(n)))
    return from_permutations([rot, ref], f"D{n}")


def symmetric(n: int) -> Group:
    if not 1 <= n <= 6:
        raise UnknownSpec(f"S{n}: only n <= 6 is supported")
    if n == 1:
        return cyclic(1).renamed("S1")
    gens = [Permutation.from_cycles(n, (0, 1))]
    if n > 2:
        gens.append(Permutation.from_cycles(n, tuple(range(n))))
    return from_permutations(gens, f"S{n}")


def alternating(n: int) -> Group:
    if not 1 <= n <= 6:
        raise UnknownSpec(f"A{n}: only n <= 6 is supported")
    if n < 3:
        return cyclic(1).renamed(f"A{n}")
    gens = [Permutation.from_cycles(n, (0, 1, i)) for i in range(2, n)]
    return from_permutations(gens, f"A{n}")


def quaternion() -> Group:
    # left-regular action of Q8 on {1,i,j,k,-1,-i,-j,-k} -> points 0..7
    i = Permutation.from_cycles(8, (0, 1, 4, 5), (2, 7, 6, 3))
    j = Permutation.from_cycles(8, (0, 2, 4, 6), (1, 3, 5, 7))
    return from_permutations([i, j], "Q8")


F20_A = Permutation.from_cycles(5, (0, 1, 2, 3, 4))
F20_B = Permutation.from_cycles(5, (1, 2, 4, 3))


def frobenius20() -> Group:
    """<a, b | a^5 = b^4 = 1, ba = a^2 b>, with the relations checked on the generators."""
    a, b = F20_A, F20_B
    ident = Permutation.identity(5)
    if not (a ** 5 == ident and b ** 4 == ident and b * a == a ** 2 * b):
        raise AssertionError("F20 generators violate the presentation")
    g = from_permutations([a, b], "F20")
    if g.order != 20:
        raise AssertionError(f"F20 closure has order {g.order}")
    return g


def elementary_abelian(p: int, q: int) -> Group:
    if not _is_prime(p) or q < 1:
        raise UnknownSpec(f"E{p}^{q}: need prime p and q >= 1")
    g = cyclic(p)
    for _ in range(q - 1):
        g = direct_product(g, cyclic(p))
    return g.renamed(f"E{p}{q}" if q < 10 else f"E{p}^{q}")


_FACTOR = re.compile(r"^(C|D|S|A|E)(\d+)(?:\^(\d+))?$|^(Q8|F20)$")


def _make_factor(token: str) -> Group:
    m = _FACTOR.match(token)
    if not m:
        raise UnknownSpec(f"unknown group spec {token!r}")
    if m.group(4):
        return quaternion() if m.group(4) == "Q8" else frobenius20()
    family, digits, power = m.group(1), m.group(2), m.group(3)
    if family == "E":
        if power is not None:
            p, q = int(digits), int(power)
        elif len(digits) >= 2:
            p, q = int(digits[:-1]), int(digits[-1])
        else:
            raise UnknownSpec(f"E{digits}: expected Epq or Ep^q")
        return elementary_abelian(p, q)
    if power is not None:
        raise UnknownSpec(f"unexpected exponent in {token!r}")
    n = int(digits)
    return {"C": cyclic, "D": dihedral, "S": symmetric, "A": alternating}[family](n)


def make(name: str, *, order_cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Build the group named by a group spec such as ``"A4"`` or ``"S3xC2"``."""
    tokens = [t for t in name.strip().upper().split("X")]
    if not tokens or any(not t for t in tokens):
        raise UnknownSpec(f"malformed group spec {name!r}")
    g = _make_factor(tokens[0])
    for t in tokens[1:]:
        g = direct_product(g, _make_factor(t), order_cap=order_cap)
    return g.renamed("x".join(tokens))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    group: Group
    provenance: str

    @property
    def order(self) -> int:
        return self.group.order


def _base_entries(max_order: int) -> list[CatalogEntry]:
    out = []
    for n in range(1, max_order + 1):
        out.append(CatalogEntry(f"C{n}", cyclic(n), f"cyclic(n={n})"))
    named = [("S3", 6, lambda: symmetric(3), "symmetric(n=3)"),
             ("S4", 24, lambda: symmetric(4), "symmetric(n=4)"),
             ("A4", 12, lambda: alternating(4), "alternating(n=4)"),
             ("A5", 60, lambda: alternating(5), "alternating(n=5)"),
             ("Q8", 8, quaternion, "quaternion()"),
             ("F20", 20, frobenius20, "frobenius20()")]
    for p in (2, 3, 5, 7):
        named.append((f"C{p}xC{p}", p * p, lambda p=p: elementary_abelian(p, 2),
                      f"elementary_abelian(p={p}, q=2)"))
    for name, order, build, prov in named:
        if order <= max_order:
            out.append(CatalogEntry(name, build().renamed(name), prov))
    for n in range(3, max_order // 2 + 1):
        out.append(CatalogEntry(f"D{n}", dihedral(n), f"dihedral(n={n})"))
    return out


class _Deduper:
    def __init__(self):
        self.entries: list[CatalogEntry] = []
        self._by_print: dict[tuple, list[Group]] = {}

    def add(self, entry: CatalogEntry) -> bool:
        key = fingerprint(entry.group)
        bucket = self._by_print.setdefault(key, [])
        if any(are_isomorphic(entry.group, other) for other in bucket):
            return False
        bucket.append(entry.group)
        self.entries.append(entry)
        return True


def load_groups_dir(path: str | Path) -> list[CatalogEntry]:
    out = []
    for f in sorted(Path(path).glob("*.json")):
        g = load_group(f)
        out.append(CatalogEntry(g.name, g, f"file({f.name})"))
    return out


@lru_cache(maxsize=8)
def _scan_catalog(max_order: int, groups_dir: str | None) -> tuple[CatalogEntry, ...]:
    dedup = _Deduper()
    for e in _base_entries(max_order):
        dedup.add(e)
    base = [e for e in dedup.entries if e.order > 1]
    for a, b in itertools.combinations_with_replacement(base, 2):
        if a.order * b.order <= max_order:
            name = f"{a.name}x{b.name}"
            dedup.add(CatalogEntry(name, direct_product(a.group, b.group, name),
                                   f"direct_product({a.name}, {b.name})"))
    if groups_dir is not None:
        for e in load_groups_dir(groups_dir):
            if e.order <= max_order:
                dedup.add(e)
    # stable: insertion order within each order
    return tuple(sorted(dedup.entries, key=lambda e: e.order))


def scan_catalog(max_order: int, groups_dir: str | Path | None = None) -> list[CatalogEntry]:
    """Isomorphism-deduplicated list of catalog groups of order <= ``max_order``.

    Earlier families win name clashes, so ``D3`` is dropped in favour of ``S3``
    and ``C2xC3`` in favour of ``C6``.
    """
    return list(_scan_catalog(int(max_order), str(groups_dir) if groups_dir else None))
