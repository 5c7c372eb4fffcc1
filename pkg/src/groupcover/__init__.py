"""Covering numbers and largest subgroup unions of small finite groups."""

from .catalog import CatalogEntry, make, scan_catalog
from .covering import CoverResult, SigmaClass, SigmaValue, sigma_classifier, sigma_cross_check, sigma_exact
from .group_core import (
    Group,
    Permutation,
    direct_product,
    element_order,
    from_cayley_table,
    from_permutations,
)
from .subgroups import (
    ElementSet,
    Subgroup,
    SubgroupLattice,
    all_subgroups,
    are_isomorphic,
    generated_subgroup,
    has_quotient_isomorphic,
    lattice_of,
    quotient,
    setwise_product_size,
    subgroups_of_index,
)
from .union_max import (
    UnionWitness,
    check_star_inequality,
    conjecture_probe,
    empirical_ck_scan,
    mu_k,
    star_bound,
    verify_c2,
    verify_c3,
    verify_c3_odd,
)

__version__ = "0.1.0"
