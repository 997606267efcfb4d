"""Exact sums of minor products over permutation and sign matrices."""

from .exact_matrix import (
    ExactMatrix,
    IndexSet,
    charpoly_coeffs,
    compound,
    determinant,
    minor,
    minor_of_product,
    minor_of_sum_expansion,
    principal_minor_sum,
    subsets,
)
from .groups import (
    Permutation,
    SignVector,
    enumerate_permutations,
    enumerate_sign_vectors,
    inverse_matrix,
    perm_matrix,
)
from .invariance import (
    CycleConfig,
    PairSumInstance,
    build_M,
    charpoly_sum_brute,
    charpoly_sum_closed,
    perm_pair_sum_brute,
    perm_pair_sum_closed,
    r_stat,
    s_stat,
    tuple_product_sum_brute,
    tuple_product_sum_closed,
)
from .polynomials import Polynomial
from .rings import QQ, ZZ, RingSpec, Zmod, from_integer, sign_power, two_pow

__version__ = "0.1.0"
