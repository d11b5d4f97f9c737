import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import SMALL, diagrams_on
from halfder import corpus
from halfder.fincat import (
    FinNatTrans,
    classifier,
    comma_category,
    corner,
    discrete,
    identity_functor,
    ordinal,
    product,
    product_functor,
    projection,
    square,
    terminal,
    vcomp,
)
from halfder.fincat.functor import empty_functor
from halfder.linalg import Matrix
from halfder.repder.axioms import (
    check_axioms,
    check_der1,
    check_der2,
    pullback_cell_respects_composition,
    pullback_is_strict,
)
from halfder.repder.derivator import VECT, shift
from halfder.repder.diagram import (
    Diagram,
    DiagramError,
    DiagramMap,
    compose_all,
    constant_diagram,
    identity_map,
    validate_diagram,
    zero_diagram,
)
from halfder.repder.sampling import (
    conjugate,
    hom_basis,
    random_diagram,
    random_map,
    sample_diagrams,
)

Q = Diagram(terminal(), {"*": 1}, {"id[*]": Matrix.identity(1)})
Q2 = constant_diagram(terminal(), 2)


def interval(m) -> Diagram:
    m = Matrix.from_rows(m) if not isinstance(m, Matrix) else m
    return Diagram.from_generators(ordinal(1), {"0": m.cols, "1": m.rows}, {"0->1": m})


# independent oracle: (co)limits of poset diagrams by one big rank computation


def _offsets(K, X):
    off, n = {}, 0
    for a in K.objects:
        off[a] = n
        n += X.dims[a]
    return off, n


def oracle_colim_dim(K, X) -> int:
    """dim of the cokernel of  (+)_{f: a -> b} X(a) -> (+)_a X(a),  x |-> x - X(f) x."""
    off, n = _offsets(K, X)
    cols = []
    for f, (a, b) in K.morphisms.items():
        if K.is_identity(f):
            continue
        Xf = X.mats[f]
        for c in range(X.dims[a]):
            col = [0] * n
            col[off[a] + c] += 1
            for r in range(X.dims[b]):
                col[off[b] + r] -= Xf[r, c]
            cols.append(col)
    if not cols:
        return n
    M = sympy.Matrix(cols).T
    return n - M.rank()


def oracle_lim_dim(K, X) -> int:
    off, n = _offsets(K, X)
    rows = []
    for f, (a, b) in K.morphisms.items():
        if K.is_identity(f):
            continue
        Xf = X.mats[f]
        for r in range(X.dims[b]):
            row = [0] * n
            for c in range(X.dims[a]):
                row[off[a] + c] += Xf[r, c]
            row[off[b] + r] -= 1
            rows.append(row)
    if not rows:
        return n
    return n - sympy.Matrix(rows).rank()


KAN_FUNCTORS = [
    corpus.i_interval(),
    corpus.i_corner(),
    classifier(ordinal(1), "0"),
    projection(corner()),
    projection(discrete(2)),
    corpus.face(1),
    corpus.degeneracy(0),
    corpus.functors()["ab:N"],
]


@pytest.mark.parametrize("u", KAN_FUNCTORS, ids=lambda u: u.name)
@given(data=st.data())
def test_kan_dimensions_match_oracle(u, data):
    X = data.draw(diagrams_on(u.source))
    L, R = VECT.lan(u, X), VECT.ran(u, X)
    for k in u.target.objects:
        C, pr1, _, _ = comma_category(u, classifier(u.target, k))
        assert L.dims[k] == oracle_colim_dim(C, VECT.pullback(pr1, X))
        C, _, pr2, _ = comma_category(classifier(u.target, k), u)
        assert R.dims[k] == oracle_lim_dim(C, VECT.pullback(pr2, X))


# pullback examples


def test_pullback_along_identity():
    X = random_diagram(square(), random.Random(1))
    assert VECT.pullback(identity_functor(square()), X) == X


def test_pullback_along_projection_is_constant():
    Y = VECT.pullback(projection(corner()), Q2)
    assert Y == constant_diagram(corner(), 2)
    assert all(m.is_identity() for m in Y.mats.values())


def test_pullback_along_classifier_evaluates():
    X = random_diagram(corner(), random.Random(2))
    Y = VECT.pullback(classifier(corner(), "(1,0)"), X)
    assert Y.dims["*"] == X.dims["(1,0)"]


def test_pullback_cell_identity():
    X = random_diagram(ordinal(1), random.Random(3))
    u = classifier(ordinal(1), "0")
    from halfder.fincat import identity_nat

    assert VECT.pullback_cell(identity_nat(u), X).is_identity()


def test_pullback_cell_between_classifiers():
    K = ordinal(1)
    X = interval([[1, 2], [0, 1], [3, 3]])
    alpha = FinNatTrans(classifier(K, "0"), classifier(K, "1"), {"*": "0->1"})
    assert VECT.pullback_cell(alpha, X).comps["*"] == X.mats["0->1"]


@given(diagrams_on(ordinal(2)))
def test_pullback_cell_respects_vertical_composition(X):
    K = ordinal(2)
    c = [classifier(K, str(i)) for i in range(3)]
    a = FinNatTrans(c[0], c[1], {"*": "0->1"})
    b = FinNatTrans(c[1], c[2], {"*": "1->2"})
    assert pullback_cell_respects_composition(VECT, b, a, X)
    assert VECT.pullback_cell(vcomp(b, a), X).comps["*"] == X.mats["0->2"]


@given(diagrams_on(ordinal(2)), diagrams_on(ordinal(1)))
def test_pullback_is_strict(X, Y):
    # (v u)* == u* v* as tables, for a face and a degeneracy in both orders
    assert pullback_is_strict(VECT, corpus.degeneracy(0), corpus.face(2), X)
    assert pullback_is_strict(VECT, corpus.face(0), corpus.degeneracy(1), Y)


# Kan extension examples


def test_lan_to_final_object():
    X = random_diagram(square(), random.Random(5))
    L = VECT.lan(projection(square()), X)
    assert L.dims["*"] == X.dims["(1,1)"]
    # the colimit leg out of the final object is invertible
    leg = VECT.lan_unit(projection(square()), X).comps["(1,1)"]
    assert leg.is_invertible()


def test_lan_from_empty_is_zero():
    E = zero_diagram(empty_functor(terminal()).source)
    assert VECT.lan(empty_functor(terminal()), E) == zero_diagram(terminal())
    assert VECT.ran(empty_functor(terminal()), E) == zero_diagram(terminal())


def test_lan_along_bottom_classifier():
    L = VECT.lan(classifier(ordinal(1), "0"), Q)
    assert L.dims == {"0": 1, "1": 1}
    assert L.mats["0->1"].is_invertible()


def test_ran_to_initial_object():
    X = random_diagram(corner(), random.Random(6))
    R = VECT.ran(projection(corner()), X)
    assert R.dims["*"] == X.dims["(0,0)"]
    assert VECT.ran_counit(projection(corner()), X).comps["(0,0)"].is_invertible()


def test_ran_along_sieve_vanishes_off_image():
    R = VECT.ran(corpus.i_interval(), interval([[1]]))
    assert (R.dims["(0,0)"], R.dims["(1,0)"], R.dims["(0,1)"]) == (1, 1, 0)


def test_kan_side_dispatch():
    with pytest.raises(ValueError):
        VECT.kan("middle", projection(ordinal(1)), interval([[1]]))


@pytest.mark.parametrize("u", KAN_FUNCTORS[:4], ids=lambda u: u.name)
def test_fully_faithful_unit_and_counit(u):
    from halfder.fincat import is_fully_faithful

    for X in sample_diagrams(u.source, SMALL):
        if is_fully_faithful(u):
            assert VECT.lan_unit(u, X).is_iso()
            assert VECT.ran_counit(u, X).is_iso()


@pytest.mark.parametrize("u", KAN_FUNCTORS, ids=lambda u: u.name)
def test_triangle_identities(u):
    for X in sample_diagrams(u.source, SMALL)[:5]:
        LX = VECT.lan(u, X)
        t = compose_all(VECT.lan_counit(u, LX), VECT.lan_map(u, VECT.lan_unit(u, X)))
        assert t.is_identity()
        RX = VECT.ran(u, X)
        t = compose_all(VECT.ran_map(u, VECT.ran_counit(u, X)), VECT.ran_unit(u, RX))
        assert t.is_identity()


# shifting


def test_shifted_lan_is_lan_along_product():
    I, K = ordinal(1), corner()
    D = shift(I)
    X = random_diagram(product(I, K), random.Random(8))
    direct = VECT.lan(product_functor(identity_functor(I), projection(K)), X)
    assert D.lan(projection(K), X) == direct
    assert D.level(K) == product(I, K)


def test_shifted_der1_der2():
    D = shift(corner())
    c = check_der1(D, [(terminal(), terminal())], SMALL)
    assert c.passed and c.instances > 0
    assert all(x.passed for x in check_der2(D, [ordinal(1)], SMALL))


# axioms


def test_der1_on_two_points():
    c = check_der1(VECT, [(terminal(), terminal())], SMALL)
    assert c.passed


def test_axioms_on_small_corpus():
    funcs = [f for n, f in corpus.functors().items() if n in ("pi_[1]", "i_[1]", "0:[1]", "d1", "s0", "empty->e")]
    shapes = [terminal(), ordinal(1), corner(), discrete(2)]
    checks = check_axioms(shapes, funcs, corpus.coproduct_shapes(), SMALL)
    assert [c.name.split()[0] for c in checks] == ["Der1", "Der2", "Der2", "Der3L", "Der3R", "Der4L", "Der4R"]
    assert all(c.passed for c in checks), [c.line() for c in checks if not c.passed]


def test_der2_rejects_singular_map():
    checks = check_der2(VECT, [ordinal(1)], SMALL)
    assert "negative control" in checks[1].name and checks[1].passed


# diagrams and sampling


def test_diagram_rejects_non_functorial_table():
    K = ordinal(2)
    gens = {"0->1": Matrix(1, 1, [[1]]), "1->2": Matrix(1, 1, [[2]]), "0->2": Matrix(1, 1, [[3]])}
    with pytest.raises(DiagramError):
        Diagram.from_generators(K, {"0": 1, "1": 1, "2": 1}, gens)


def test_from_generators_fills_zero_spaces():
    X = Diagram.from_generators(corner(), {"(0,0)": 1, "(1,0)": 1, "(0,1)": 0}, {"(0,0)->(1,0)": Matrix(1, 1, [[2]])})
    assert X.mats["(0,0)->(0,1)"].shape == (0, 1)


@pytest.mark.parametrize("K", list(corpus.categories().values()), ids=lambda K: K.name)
def test_sampled_diagrams_are_valid(K):
    for X in sample_diagrams(K, SMALL):
        assert validate_diagram(X) == []


def test_sampling_is_deterministic():
    a = [random_diagram(square(), random.Random("7:x")) for _ in range(3)]
    b = [random_diagram(square(), random.Random("7:x")) for _ in range(3)]
    assert a == b


def test_sampling_refuses_endomorphisms():
    from halfder.fincat import idempotent_monoid

    with pytest.raises(DiagramError):
        random_diagram(idempotent_monoid(), random.Random(0))


@given(diagrams_on(square()), diagrams_on(square()))
def test_hom_basis_spans_maps(X, Y):
    basis = hom_basis(X, Y)
    for b in basis:
        assert isinstance(b, DiagramMap)
    f = random_map(X, Y, random.Random(0))
    assert f.source == X and f.target == Y


@given(diagrams_on(corner()))
def test_conjugate_is_iso(X):
    Y, phi = conjugate(X, random.Random(1))
    assert phi.is_iso()
    assert (phi.inverse() @ phi) == identity_map(X)
