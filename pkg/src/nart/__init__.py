"""Relative homological algebra over bound quiver algebras."""

from .algcore import (
    Arrow,
    BoundAlgebra,
    FieldSpec,
    Module,
    Morphism,
    Quiver,
    Relation,
    algebra_from_json,
    decompose,
    hom_basis,
    load_algebra,
    nakayama_algebra,
    standard_modules,
    validate_algebra,
)
from .catalog import CatalogEntry, load_catalog
from .ctilt import (
    NExactSequence,
    Subcategory,
    index_vector,
    is_n_almost_split,
    is_n_cluster_tilting,
    is_n_exact,
    n_almost_split_ending_at,
    search_n_cluster_tilting,
)
from .functcat import FpFunctor, length_and_factors, make_functor, restrict_to_M
from .groth import (
    beta_vector,
    gram_matrix,
    relation_vector,
    verify_k0_iso,
    verify_orthogonality,
    verify_theorem_a,
)
from .homlab import ARQuiver, almost_split_sequence, ar_translate, ext_dim, knit_ar_quiver
from .lattice import Lattice, smith_normal_form
from .report import Report

__version__ = "0.1.0"
