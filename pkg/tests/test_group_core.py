import json

import numpy as np
import pytest

from groupcover.catalog import make
from groupcover.group_core import (
    ClosureExceedsLimit,
    GroupFileError,
    NotAGroup,
    Permutation,
    direct_product,
    element_order,
    from_cayley_table,
    from_permutations,
    group_from_dict,
    load_group,
    trivial_group,
)
from groupcover.subgroups import are_isomorphic


def test_trivial_and_c2():
    g = from_cayley_table([[0]])
    assert g.order == 1
    c2 = from_cayley_table([[0, 1], [1, 0]])
    assert c2.order == 2 and c2.element_orders == (1, 2)


def test_repeated_row_entry_is_latin_square_violation():
    table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 3, 1, 0]]
    with pytest.raises(NotAGroup) as exc:
        from_cayley_table(table)
    assert exc.value.axiom == "latin-square"


def test_identity_relocated_to_zero():
    # C3 with the identity stored as element 2
    table = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    g = from_cayley_table(table, labels=["a", "b", "e"])
    assert g.table[0].tolist() == [0, 1, 2]
    assert g.labels[0] == "e"
    assert are_isomorphic(g, make("C3"))


def test_non_associative_latin_square():
    # a latin square with identity 0 that is not a group (order 5 loop)
    table = [[0, 1, 2, 3, 4],
             [1, 0, 3, 4, 2],
             [2, 4, 0, 1, 3],
             [3, 2, 4, 0, 1],
             [4, 3, 1, 2, 0]]
    with pytest.raises(NotAGroup) as exc:
        from_cayley_table(table)
    assert exc.value.axiom == "associativity"
    a, b, c = exc.value.witness
    t = np.array(table)
    assert t[t[a, b], c] != t[a, t[b, c]]


def test_identity_elsewhere_and_missing():
    g = from_cayley_table([[1, 0], [0, 1]])  # element 1 is the identity
    assert g.table.tolist() == [[0, 1], [1, 0]]
    with pytest.raises(NotAGroup) as exc:
        from_cayley_table([[1, 0, 2], [0, 2, 1], [2, 1, 0]])
    assert exc.value.axiom == "identity"


def test_permutation_closure_examples():
    s3 = from_permutations([Permutation.from_cycles(3, (0, 1)), Permutation.from_cycles(3, (0, 1, 2))])
    assert s3.order == 6 and not s3.is_abelian
    c5 = from_permutations([Permutation.from_cycles(5, (0, 1, 2, 3, 4))])
    assert c5.order == 5
    a = Permutation.from_cycles(5, (0, 1, 2, 3, 4))
    b = Permutation.from_cycles(5, (1, 2, 4, 3))
    f20 = from_permutations([a, b])
    assert f20.order == 20
    # relations a^5 = b^4 = 1 and ba = a^2 b inside the emitted table
    ia, ib = f20.labels.index(a), f20.labels.index(b)
    assert f20.power(ia, 5) == 0 and f20.power(ib, 4) == 0
    assert f20.mul(ib, ia) == f20.mul(f20.power(ia, 2), ib)
    assert element_order(f20, ia) == 5


def test_closure_cap():
    with pytest.raises(ClosureExceedsLimit):
        from_permutations([Permutation.from_cycles(5, (0, 1)), Permutation.from_cycles(5, (0, 1, 2, 3, 4))],
                          order_cap=100)


def test_round_trip_through_table():
    g = make("F20")
    again = from_cayley_table(g.table.tolist(), g.name)
    assert np.array_equal(g.table, again.table)


def test_direct_products():
    v = direct_product(make("C2"), make("C2"))
    assert v.order == 4 and set(v.element_orders[1:]) == {2}
    c23 = direct_product(make("C2"), make("C3"))
    assert c23.order == 6 and c23.is_abelian
    c33 = direct_product(make("C3"), make("C3"))
    assert sorted(c33.element_orders).count(3) == 8
    assert are_isomorphic(direct_product(make("S3"), trivial_group()), make("S3"))


@pytest.mark.parametrize("name", ["C12", "D6", "A4", "Q8", "F20", "S4", "C3xC3xC2"])
def test_lagrange_for_element_orders(name):
    g = make(name)
    assert all(g.order % element_order(g, x) == 0 for x in range(g.order))
    assert element_order(g, 0) == 1


def test_group_file_loader(tmp_path):
    p = tmp_path / "s3.json"
    p.write_text(json.dumps({"name": "S3p", "kind": "perm", "degree": 3,
                             "generators": [[1, 0, 2], [1, 2, 0]]}))
    assert load_group(p).order == 6
    q = tmp_path / "c2.json"
    q.write_text(json.dumps({"name": "Z2", "kind": "cayley", "table": [[0, 1], [1, 0]]}))
    assert load_group(q).name == "Z2"
    with pytest.raises(GroupFileError):
        group_from_dict({"name": "x", "kind": "cayley", "table": [[0]], "degree": 1})
    with pytest.raises(GroupFileError):
        group_from_dict({"name": "x", "kind": "perm", "degree": 2})
    with pytest.raises(GroupFileError):
        group_from_dict({"kind": "cayley", "table": [[0]]})
