"""Finite groups stored as Cayley tables over element indices 0..n-1.

The identity is always element 0.  Tables are read as ``table[a][b] = a*b``.
Permutation generators compose right to left: ``(p*q)(i) = p(q(i))``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

DEFAULT_ORDER_CAP = 5040


class NotAGroup(ValueError):
    """Raised when a table fails a group axiom.

    ``axiom`` is one of ``"shape"``, ``"latin-square"``, ``"identity"``,
    ``"inverse"`` or ``"associativity"``; ``witness`` holds offending indices.
    """

    def __init__(self, axiom: str, witness: tuple = (), detail: str = ""):
        self.axiom = axiom
        self.witness = tuple(witness)
        msg = f"not a group ({axiom})"
        if witness:
            msg += f" at {self.witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class ClosureExceedsLimit(ValueError):
    pass


class GroupFileError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Group:
    """An immutable validated finite group.

    Build instances through :func:`from_cayley_table`, :func:`from_permutations`
    or :func:`direct_product`; the raw constructor does not validate.
    """

    name: str
    table: np.ndarray
    labels: tuple | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    @cached_property
    def rows(self) -> list[list[int]]:
        # plain lists are much faster than numpy for scalar lookups
        return self.table.tolist()

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.argmin(self.table, axis=1)
        inv.flags.writeable = False
        return inv

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def power(self, x: int, m: int) -> int:
        rows = self.rows
        y = 0
        for _ in range(m % element_order(self, x)):
            y = rows[y][x]
        return y

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        rows = self.rows
        orders = []
        for x in range(self.order):
            y, m = x, 1
            while y != 0:
                y = rows[y][x]
                m += 1
            orders.append(m)
        return tuple(orders)

    @cached_property
    def conjugation(self) -> np.ndarray:
        """``conjugation[g, h] = g h g^-1``."""
        conj = self.table[self.table, self.inverses[:, None]]
        conj.flags.writeable = False
        return conj

    @cached_property
    def centralizer_sizes(self) -> tuple[int, ...]:
        commute = self.table == self.table.T
        return tuple(int(c) for c in commute.sum(axis=1))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def is_cyclic(self) -> bool:
        return self.order in self.element_orders

    @cached_property
    def exponent(self) -> int:
        from math import lcm

        return lcm(*self.element_orders)

    def renamed(self, name: str) -> Group:
        return Group(name, self.table, self.labels)

    def __repr__(self) -> str:
        return f"Group({self.name!r}, order={self.order})"


def element_order(g: Group, x: int) -> int:
    """Least m >= 1 with x^m equal to the identity."""
    if not 0 <= x < g.order:
        raise IndexError(f"element {x} out of range for {g.name}")
    return g.element_orders[x]


def _freeze(table: np.ndarray) -> np.ndarray:
    table = np.ascontiguousarray(table, dtype=np.int32)
    table.flags.writeable = False
    return table


def _check_associative(t: np.ndarray, chunk: int = 64) -> None:
    n = t.shape[0]
    for start in range(0, n, chunk):
        a = np.arange(start, min(start + chunk, n))
        left = t[t[a][:, :, None], np.arange(n)[None, None, :]]  # (ab)c
        right = t[a[:, None, None], t[None, :, :]]  # a(bc)
        bad = np.argwhere(left != right)
        if bad.size:
            i, b, c = bad[0]
            raise NotAGroup("associativity", (int(a[i]), int(b), int(c)))


def from_cayley_table(table, name: str = "G", *, labels: Sequence | None = None,
                      order_cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Validate a Cayley table and return the group it describes.

    If the identity is not element 0, elements 0 and e are swapped so that it
    becomes 0 (labels are permuted to match).
    """
    try:
        t = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise NotAGroup("shape", detail=str(exc)) from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotAGroup("shape", detail=f"expected a nonempty square table, got shape {t.shape}")
    n = t.shape[0]
    if n > order_cap:
        raise ClosureExceedsLimit(f"order {n} exceeds cap {order_cap}")
    if t.min() < 0 or t.max() >= n:
        bad = np.argwhere((t < 0) | (t >= n))[0]
        raise NotAGroup("latin-square", tuple(int(v) for v in bad), "entry out of range")

    full = np.arange(n)
    for axis, kind in ((1, "row"), (0, "column")):
        ok = (np.sort(t, axis=axis) == (full[None, :] if axis == 1 else full[:, None])).all(axis=axis)
        if not ok.all():
            i = int(np.argmin(ok))
            raise NotAGroup("latin-square", (i,), f"{kind} {i} repeats an entry")

    ids = [e for e in range(n) if np.array_equal(t[e], full) and np.array_equal(t[:, e], full)]
    if not ids:
        raise NotAGroup("identity", detail="no two-sided identity element")
    e = ids[0]
    if e != 0:
        perm = full.copy()
        perm[[0, e]] = perm[[e, 0]]  # perm is its own inverse
        t = perm[t[np.ix_(perm, perm)]]
        if labels is not None:
            labels = list(labels)
            labels[0], labels[e] = labels[e], labels[0]

    # latin square + identity gives right inverses; check they are two-sided
    inv = np.argmin(t, axis=1)
    if not (t[inv, full] == 0).all():
        x = int(np.argmin(t[inv, full] == 0))
        raise NotAGroup("inverse", (x,))

    _check_associative(t)
    return Group(name, _freeze(t), tuple(labels) if labels is not None else None)


@dataclass(frozen=True)
class Permutation:
    """A permutation of 0..degree-1 in one-line notation."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Permutation:
        images = list(range(degree))
        for cyc in cycles:
            for i, a in enumerate(cyc):
                images[a] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    def __mul__(self, other: Permutation) -> Permutation:
        # right to left: apply other first
        return Permutation(tuple(self.images[i] for i in other.images))

    def __pow__(self, m: int) -> Permutation:
        result = Permutation.identity(self.degree)
        for _ in range(m):
            result = result * self
        return result


def from_permutations(generators: Sequence[Permutation | Sequence[int]], name: str = "G", *,
                      order_cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Breadth-first closure of a permutation generating set.

    Element indices follow discovery order with the identity at 0; the
    permutations themselves are kept as the group's labels.
    """
    gens = [g if isinstance(g, Permutation) else Permutation(tuple(g)) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators have different degrees")

    ident = Permutation.identity(degree)
    elements = [ident]
    index = {ident.images: 0}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for s in gens:
            q = p * s
            if q.images not in index:
                if len(elements) >= order_cap:
                    raise ClosureExceedsLimit(f"closure of {name} exceeds order cap {order_cap}")
                index[q.images] = len(elements)
                elements.append(q)
                queue.append(q)

    n = len(elements)
    imgs = np.array([p.images for p in elements], dtype=np.int64)
    prod = imgs[np.arange(n)[:, None, None], imgs[None, :, :]]  # [a, b, i] = a(b(i))
    weights = degree ** np.arange(degree, dtype=np.int64)
    codes = imgs @ weights
    order = np.argsort(codes)
    table = order[np.searchsorted(codes[order], prod @ weights)]
    return from_cayley_table(table, name, labels=tuple(elements), order_cap=order_cap)


def direct_product(g: Group, h: Group, name: str | None = None, *,
                   order_cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Direct product on pairs (a, b) indexed a*|h| + b."""
    n, m = g.order, h.order
    if n * m > order_cap:
        raise ClosureExceedsLimit(f"product order {n * m} exceeds cap {order_cap}")
    big = g.table.astype(np.int64)[:, None, :, None] * m + h.table.astype(np.int64)[None, :, None, :]
    table = big.reshape(n * m, n * m)
    return Group(name or f"{g.name}x{h.name}", _freeze(table))


def trivial_group() -> Group:
    return from_cayley_table([[0]], "C1")


# group files -----------------------------------------------------------------


def group_from_dict(data: dict, source: str = "<dict>", *,
                    order_cap: int = DEFAULT_ORDER_CAP) -> Group:
    if not isinstance(data, dict):
        raise GroupFileError(f"{source}: expected a JSON object")
    kind = data.get("kind")
    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise GroupFileError(f"{source}: missing or empty 'name'")
    if kind == "cayley":
        extra = {"degree", "generators"} & data.keys()
        if extra or "table" not in data:
            raise GroupFileError(f"{source}: kind 'cayley' needs 'table' and no {sorted(extra)}")
        return from_cayley_table(data["table"], name, order_cap=order_cap)
    if kind == "perm":
        if "table" in data or "degree" not in data or "generators" not in data:
            raise GroupFileError(f"{source}: kind 'perm' needs 'degree' and 'generators' and no 'table'")
        degree = data["degree"]
        gens = data["generators"]
        if not isinstance(gens, list) or not gens or any(len(g) != degree for g in gens):
            raise GroupFileError(f"{source}: generators must be nonempty lists of length {degree}")
        try:
            return from_permutations([Permutation(tuple(g)) for g in gens], name, order_cap=order_cap)
        except ValueError as exc:
            if isinstance(exc, (ClosureExceedsLimit, NotAGroup)):
                raise
            raise GroupFileError(f"{source}: {exc}") from None
    raise GroupFileError(f"{source}: 'kind' must be 'cayley' or 'perm', got {kind!r}")


def load_group(path: str | Path, *, order_cap: int = DEFAULT_ORDER_CAP) -> Group:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GroupFileError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return group_from_dict(data, str(path), order_cap=order_cap)


def group_to_dict(g: Group) -> dict:
    return {"name": g.name, "kind": "cayley", "table": g.table.tolist()}
