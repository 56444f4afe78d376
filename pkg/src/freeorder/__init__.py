"""Exact bi-invariant orders on free products of ordered groups."""

from .core import (
    LaurentPolynomial,
    Monomial,
    Ordering,
    Symbol,
    monomial_compare,
    poly_compare,
    poly_sign,
)
from .freeproduct import (
    BandCeilingExceeded,
    ComparisonReport,
    FreeProductGroup,
    Letter,
    make_free_product_group,
)
from .ordered import (
    AlgebraElement,
    DirectProduct,
    FreeAbelian,
    GroupAlgebra,
    OrderedGroup,
    algebra_compare,
    algebra_sign,
    make_product_group,
    pair_compare,
)

__version__ = "0.1.0"
