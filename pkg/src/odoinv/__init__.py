"""odoinv: invariants of odometer actions of Z, the infinite dihedral group,
and Z x Z_2 on inverse limits of finite coset spaces.

The package computes topological freeness, fixed points, group/groupoid
homology, K-theory of the associated crossed products, topological full
groups with their abelianization exact sequence, and compares the two sides
of the homology-vs-K-theory correspondence.
"""

from .abelian import (
    AbHom,
    FgAbelianGroup,
    IntMatrix,
    SmithDecomposition,
    check_exactness,
    cokernel,
    iso_equal,
    smith_normal_form,
    subquotient,
)
from .colimit import ColimitResult, SupernaturalNumber, colimit_finite, colimit_rank1, supernatural_iso_equal

__all__ = [
    "AbHom",
    "FgAbelianGroup",
    "IntMatrix",
    "SmithDecomposition",
    "check_exactness",
    "cokernel",
    "iso_equal",
    "smith_normal_form",
    "subquotient",
    "ColimitResult",
    "SupernaturalNumber",
    "colimit_finite",
    "colimit_rank1",
    "supernatural_iso_equal",
]
