import itertools

import pytest

from groupcover.catalog import make, scan_catalog

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def catalog100():
    return [e for e in scan_catalog(100) if e.order > 1]


@pytest.fixture
def grp():
    return make


def brute_force_subgroups(g):
    """Masks of every subset that contains the identity and is closed under the
    table; only subsets whose size divides |G| are tried."""
    n = g.order
    rows = g.rows
    found = []
    others = range(1, n)
    for d in range(1, n + 1):
        if n % d:
            continue
        for rest in itertools.combinations(others, d - 1):
            members = (0,) + rest
            mask = sum(1 << x for x in members)
            if all(mask >> rows[a][b] & 1 for a in members for b in members):
                found.append(mask)
    return sorted(found)


def brute_force_union_max(g, lattice, k, ids=None):
    ids = lattice.proper_ids if ids is None else ids
    best = 0
    for combo in itertools.combinations(ids, min(k, len(ids))):
        m = 0
        for i in combo:
            m |= lattice[i].mask
        best = max(best, m.bit_count())
    return best


def brute_force_sigma(g, lattice):
    full = (1 << g.order) - 1
    ids = lattice.proper_ids
    for r in range(1, len(ids) + 1):
        for combo in itertools.combinations(ids, r):
            m = 0
            for i in combo:
                m |= lattice[i].mask
            if m == full:
                return r
    return None
