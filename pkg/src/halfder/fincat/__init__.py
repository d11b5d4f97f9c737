"""Finite categories, functors, natural transformations and comma categories."""

from halfder.fincat.category import (
    CategoryError,
    FinCategory,
    Violation,
    cocone,
    construct_standard,
    coproduct,
    corner,
    discrete,
    empty,
    full_subcategory,
    idempotent_monoid,
    linear_extension,
    opposite,
    ordinal,
    poset,
    product,
    square,
    terminal,
    validate_category,
)
from halfder.fincat.comma import comma_category, slice_over, slice_under, strict_pullback
from halfder.fincat.functor import (
    FinFunctor,
    FinNatTrans,
    FunctorError,
    classifier,
    compose,
    empty_functor,
    identity_functor,
    identity_nat,
    inclusion,
    product_functor,
    product_nat,
    poset_cell,
    product_projection,
    unique_morphism,
    projection,
    vcomp,
    whisker_post,
    whisker_pre,
)
from halfder.fincat.predicates import (
    Verdict,
    check_adjunction,
    extremal_object,
    final_object_adjunction,
    initial_object_adjunction,
    is_fully_faithful,
    is_grothendieck_fibration,
    is_grothendieck_opfibration,
    is_injective_on_objects,
    sieve_kind,
)
from halfder.fincat.squares import (
    DOWN_LEFT,
    UP_RIGHT,
    OrientedSquare,
    commutative_square,
    paste,
    transpose,
)
