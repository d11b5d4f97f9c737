import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from halfder.fincat import (
    CategoryError,
    FinCategory,
    FinNatTrans,
    FunctorError,
    check_adjunction,
    classifier,
    comma_category,
    compose,
    corner,
    discrete,
    extremal_object,
    final_object_adjunction,
    full_subcategory,
    identity_functor,
    identity_nat,
    idempotent_monoid,
    inclusion,
    initial_object_adjunction,
    is_fully_faithful,
    is_grothendieck_fibration,
    is_grothendieck_opfibration,
    is_injective_on_objects,
    opposite,
    ordinal,
    poset,
    product,
    product_projection,
    projection,
    sieve_kind,
    square,
    strict_pullback,
    terminal,
    transpose,
    validate_category,
    whisker_pre,
)
from halfder.fincat.functor import all_functors, opposite_functor, validate_functor
from halfder.fincat.squares import (
    OrientedSquare,
    SquareError,
    comma_square_left,
    commutative_square,
    horizontal_identity,
    paste,
)


@st.composite
def posets(draw, max_size=5):
    n = draw(st.integers(1, max_size))
    els = [f"x{i}" for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = set(draw(st.lists(st.sampled_from(pairs), unique=True))) if pairs else set()
    # transitive closure
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(chosen), list(chosen)):
            if b == c and (a, d) not in chosen:
                chosen.add((a, d))
                changed = True
    return poset(els, [(els[a], els[b]) for a, b in sorted(chosen)], name=f"P{n}")


@st.composite
def subposet_inclusions(draw):
    K = draw(posets())
    keep = draw(st.lists(st.sampled_from(K.objects), min_size=1, unique=True))
    J = full_subcategory(K, keep, name="J")
    return inclusion(J, K, name="j")


def same_square(s: OrientedSquare, t: OrientedSquare) -> bool:
    return (s.v, s.p, s.q, s.w, s.cell, s.orientation) == (t.v, t.p, t.q, t.w, t.cell, t.orientation)


# constructions


def test_ordinal_one_counts():
    C = ordinal(1)
    assert len(C.objects) == 2 and len(C.morphisms) == 3
    assert C.hom("0", "1") and not C.hom("1", "0")


def test_corner_counts():
    C = corner()
    assert len(C.objects) == 3 and len(C.morphisms) == 5


def test_product_with_terminal_is_isomorphic():
    C = corner()
    P = product(terminal(), C)
    pr = product_projection(terminal(), C, 1)
    assert len(P.objects) == len(C.objects) and len(P.morphisms) == len(C.morphisms)
    assert is_fully_faithful(pr) and is_injective_on_objects(pr)


def test_validation_accepts_ordinal():
    assert validate_category(ordinal(2)) == []


def test_validation_reports_associativity():
    # one object, two non-identity endomorphisms with a non-associative table
    m = {"1": ("*", "*"), "a": ("*", "*"), "b": ("*", "*")}
    table = {("1", x): x for x in m} | {(x, "1"): x for x in m}
    table |= {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "b"}
    C = FinCategory(["*"], m, {"*": "1"}, table, check=False)
    kinds = {v.kind for v in validate_category(C)}
    assert "associativity" in kinds
    with pytest.raises(CategoryError):
        FinCategory(["*"], m, {"*": "1"}, table)


def test_validation_reports_missing_identity():
    C = FinCategory(["a"], {"f": ("a", "a")}, {}, {}, check=False)
    assert any(v.kind == "identity-missing" for v in validate_category(C))


def test_idempotent_monoid_is_valid():
    assert validate_category(idempotent_monoid()) == []


# comma categories


def test_comma_empty_when_no_maps():
    K = ordinal(1)
    C, *_ = comma_category(classifier(K, "1"), classifier(K, "0"))
    assert C.objects == ()


def test_comma_over_final_object():
    K = ordinal(1)
    C, pr1, pr2, cell = comma_category(identity_functor(K), classifier(K, "1"))
    assert len(C.objects) == 2 and len(C.morphisms) == 3
    top = extremal_object(C, "final")
    assert top is not None and pr1.ob(top) == "1"


def test_comma_from_empty():
    from halfder.fincat.functor import empty_functor

    C, *_ = comma_category(empty_functor(ordinal(1)), identity_functor(ordinal(1)))
    assert C.objects == ()


def _cells(u, v):
    """Every natural transformation u => v (brute force)."""
    T, K = u.source, u.target
    choices = [K.hom(u.ob(t), v.ob(t)) for t in T.objects]
    out = []
    for comps in itertools.product(*choices):
        try:
            out.append(FinNatTrans(u, v, dict(zip(T.objects, comps))))
        except FunctorError:
            pass
    return out


CUSPANS = [
    (identity_functor(ordinal(1)), classifier(ordinal(1), "1")),
    (inclusion(ordinal(1), corner(), {"0": "(0,0)", "1": "(1,0)"}), classifier(corner(), "(0,1)")),
    (inclusion(ordinal(1), corner(), {"0": "(0,0)", "1": "(1,0)"}), identity_functor(corner())),
    (classifier(ordinal(2), "1"), identity_functor(ordinal(2))),
]


@pytest.mark.parametrize("T", [terminal(), ordinal(1)], ids=["e", "[1]"])
@pytest.mark.parametrize("u1,u2", CUSPANS, ids=lambda f: f.name)
def test_comma_factorization_is_unique(T, u1, u2):
    """Each (a, b, theta: u1 a => u2 b) factors through the comma category exactly once."""
    C, pr1, pr2, cell = comma_category(u1, u2)
    into_comma = all_functors(T, C)
    for a in all_functors(T, u1.source):
        for b in all_functors(T, u2.source):
            for theta in _cells(compose(u1, a), compose(u2, b)):
                hits = [
                    h
                    for h in into_comma
                    if compose(pr1, h) == a
                    and compose(pr2, h) == b
                    and whisker_pre(cell, h).components == theta.components
                ]
                assert len(hits) == 1


# predicates


def test_sieve_examples():
    i1 = inclusion(ordinal(1), corner(), {"0": "(0,0)", "1": "(1,0)"})
    assert sieve_kind(i1) == "sieve"
    assert sieve_kind(classifier(ordinal(1), "1")) == "cosieve"
    assert sieve_kind(classifier(corner(), "(0,1)")) == "cosieve"


def test_fully_faithful_examples():
    assert is_fully_faithful(inclusion(corner(), square()))
    v = is_fully_faithful(projection(ordinal(1)))
    assert not v and "Hom" in v.witness
    assert is_fully_faithful(identity_functor(square()))


def test_adjunction_examples():
    assert check_adjunction(*final_object_adjunction(ordinal(1)))
    assert check_adjunction(*initial_object_adjunction(corner()))
    idn = identity_functor(ordinal(2))
    assert check_adjunction(idn, idn, identity_nat(idn), identity_nat(idn))


def test_adjunction_rejects_bad_unit():
    M = idempotent_monoid()
    idm = identity_functor(M)
    unit = FinNatTrans(idm, idm, {"*": "e"})
    v = check_adjunction(idm, idm, unit, identity_nat(idm))
    assert not v and "triangle" in v.witness


def test_extremal_objects():
    assert extremal_object(square(), "final") == "(1,1)"
    assert extremal_object(corner(), "initial") == "(0,0)"
    assert extremal_object(discrete(2), "initial") is None
    assert extremal_object(discrete(2), "final") is None


def test_opfibration_examples():
    B, K = ordinal(1), corner()
    assert is_grothendieck_opfibration(product_projection(B, K, 0))
    assert is_grothendieck_opfibration(identity_functor(square()))
    # the only map out of the fibre over 0 has no source in the image, so nothing needs lifting
    top = classifier(ordinal(1), "1")
    assert is_grothendieck_opfibration(top)
    assert not is_grothendieck_fibration(top)


def test_projection_to_e_is_opfibration_iff_anything():
    assert is_grothendieck_opfibration(projection(discrete(2)))


# squares


def test_square_edges_must_meet():
    K = ordinal(1)
    with pytest.raises(SquareError):
        commutative_square(identity_functor(K), projection(K), projection(K), identity_functor(K))


def test_paste_with_identity_is_neutral():
    s = comma_square_left(inclusion(ordinal(1), corner(), {"0": "(0,0)", "1": "(1,0)"}), "(1,0)")
    t = paste(s, horizontal_identity(s.q), "horizontal")
    assert same_square(s, t)


def test_transpose_is_involution():
    s = comma_square_left(classifier(ordinal(1), "0"), "1")
    assert same_square(transpose(transpose(s)), s)


def _comma_chain(u, k):
    s = comma_square_left(u, k)
    s1 = comma_square_left(s.p, "*")
    s0 = comma_square_left(s1.p, "*")
    return s0, s1, s


@given(subposet_inclusions(), st.data())
def test_paste_is_associative(j, data):
    k = data.draw(st.sampled_from(j.target.objects))
    s0, s1, s = _comma_chain(j, k)
    left = paste(paste(s0, s1, "horizontal"), s, "horizontal")
    right = paste(s0, paste(s1, s, "horizontal"), "horizontal")
    assert same_square(left, right)


@given(st.integers(0, 2), st.integers(0, 2))
def test_interchange_on_grid(a, b):
    # product squares f x g on a 2x2 grid: vertical-then-horizontal equals horizontal-then-vertical
    A = [ordinal(a), ordinal(a + 1), ordinal(a + 2)]
    C = [ordinal(b), ordinal(b + 1), ordinal(b + 2)]
    fs = [inclusion(A[0], A[1], name="f0"), inclusion(A[1], A[2], name="f1")]
    gs = [inclusion(C[0], C[1], name="g0"), inclusion(C[1], C[2], name="g1")]
    from halfder.fincat.functor import product_functor

    def sq(i, j):
        f, g = fs[i], gs[j]
        return commutative_square(
            product_functor(f, identity_functor(C[j])),
            product_functor(identity_functor(A[i]), g),
            product_functor(identity_functor(A[i + 1]), g),
            product_functor(f, identity_functor(C[j + 1])),
        )

    rows = [paste(sq(0, j), sq(1, j), "horizontal") for j in range(2)]
    cols = [paste(sq(i, 0), sq(i, 1), "vertical") for i in range(2)]
    assert same_square(paste(rows[0], rows[1], "vertical"), paste(cols[0], cols[1], "horizontal"))


# properties


@given(posets())
def test_generated_posets_validate(K):
    assert validate_category(K) == []
    assert validate_category(opposite(K)) == []
    assert opposite(opposite(K)) == K


@given(subposet_inclusions())
def test_sieve_opposite_duality(j):
    kind = sieve_kind(j)
    dual = {"sieve": "cosieve", "cosieve": "sieve", "both": "both", "neither": "neither"}
    assert sieve_kind(opposite_functor(j)) == dual[kind]


@given(subposet_inclusions())
def test_full_inclusions_are_embeddings(j):
    assert validate_functor(j) == []
    assert is_fully_faithful(j) and is_injective_on_objects(j)


@given(posets(max_size=3), posets(max_size=3))
def test_product_projection_is_opfibration(B, K):
    assert is_grothendieck_opfibration(product_projection(B, K, 0))
    assert is_grothendieck_fibration(product_projection(B, K, 0))


@given(subposet_inclusions(), st.data())
def test_strict_pullback_commutes_and_is_universal(j, data):
    K = j.target
    k = data.draw(st.sampled_from(K.objects))
    w = classifier(K, k)
    A, v, p = strict_pullback(j, w)
    assert compose(j, v) == compose(w, p)
    # objects of the pullback are exactly the matching pairs
    pairs = {(v.ob(x), p.ob(x)) for x in A.objects}
    want = {(b, "*") for b in j.source.objects if j.ob(b) == k}
    assert pairs == want


@given(posets(max_size=4))
def test_final_object_adjunction_when_present(K):
    if extremal_object(K, "final") is None:
        with pytest.raises(FunctorError):
            final_object_adjunction(K)
    else:
        assert check_adjunction(*final_object_adjunction(K))


@given(subposet_inclusions())
def test_comma_projection_cell_is_natural(j):
    C, pr1, pr2, cell = comma_category(j, identity_functor(j.target))
    # (j / id) has one object per (a, k) with j(a) <= k
    n = sum(len(j.target.hom(j.ob(a), k)) for a in j.source.objects for k in j.target.objects)
    assert len(C.objects) == n
    from halfder.fincat.functor import validate_nat

    assert validate_nat(cell) == []
