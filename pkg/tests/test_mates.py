import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SMALL, diagrams_on
from halfder import corpus
from halfder.exactness import check_exact, negative_control_square
from halfder.fincat import (
    classifier,
    commutative_square,
    corner,
    identity_functor,
    ordinal,
    paste,
    terminal,
    transpose,
)
from halfder.fincat.squares import (
    DOWN_LEFT,
    UP_RIGHT,
    comma_square_left,
    comma_square_right,
    horizontal_identity,
)
from halfder.linalg import Matrix
from halfder.repder.derivator import VECT
from halfder.repder.diagram import Diagram, compose_all
from halfder.repder.mates import (
    MateError,
    left_mate,
    mate_component,
    mate_input_shape,
    natural_side,
    other_side,
    pasted_mate_horizontal,
    pasted_mate_vertical,
    right_mate,
    unmate,
)
from halfder.repder.sampling import random_diagram, random_map, sample_diagrams

Q = Diagram(terminal(), {"*": 1}, {"id[*]": Matrix.identity(1)})


def identity_square(K, orientation=DOWN_LEFT):
    i = identity_functor(K)
    return commutative_square(i, i, i, i, orientation)


def test_identity_square_has_identity_mates():
    X = random_diagram_on(corner())
    assert left_mate(identity_square(corner()), X).is_identity()
    assert right_mate(identity_square(corner(), UP_RIGHT), X).is_identity()


def random_diagram_on(K, seed=0):
    return random_diagram(K, random.Random(seed))


def test_comma_square_mate_is_invertible():
    s = comma_square_left(classifier(ordinal(1), "0"), "1")
    m = left_mate(s, Q)
    assert m.comps["*"].shape == (1, 1) and m.is_iso()


def test_wrong_orientation_raises():
    s = comma_square_left(classifier(ordinal(1), "0"), "1")
    with pytest.raises(MateError):
        right_mate(s, Q)
    with pytest.raises(MateError):
        mate_component(s, "sideways", Q)


def test_input_shapes():
    s = comma_square_left(corpus.i_interval(), "(1,0)")
    assert mate_input_shape(s, natural_side(s)) == s.B
    assert mate_input_shape(s, other_side(s)) == s.C


SQUARES = [
    comma_square_left(corpus.i_interval(), "(1,0)"),
    comma_square_left(corpus.face(1), "2"),
    comma_square_right(corpus.i_corner(), "(1,1)"),
    comma_square_right(corpus.degeneracy(0), "0"),
    negative_control_square(),
]


@pytest.mark.parametrize("s", SQUARES, ids=lambda s: s.name)
@pytest.mark.parametrize("side", ["left", "right"])
@given(data=st.data())
def test_mates_are_natural(s, side, data):
    K = mate_input_shape(s, side)
    X = data.draw(diagrams_on(K))
    Y = data.draw(diagrams_on(K))
    f = random_map(X, Y, random.Random(data.draw(st.integers(0, 99))))
    mX, mY = mate_component(s, side, X), mate_component(s, side, Y)
    # both mates run source(f) -> target(f) through functors applied to f
    t = transpose(s)
    n = s if (s.orientation == DOWN_LEFT) == (side == "left") else t
    if side == "left":
        lhs = compose_all(VECT.pullback_map(n.w, VECT.lan_map(n.q, f)), mX)
        rhs = compose_all(mY, VECT.lan_map(n.p, VECT.pullback_map(n.v, f)))
    else:
        lhs = compose_all(VECT.ran_map(n.p, VECT.pullback_map(n.v, f)), mX)
        rhs = compose_all(mY, VECT.pullback_map(n.w, VECT.ran_map(n.q, f)))
    assert lhs == rhs


@pytest.mark.parametrize("s", SQUARES, ids=lambda s: s.name)
def test_unmate_recovers_cell(s):
    for t in (s, transpose(s)):
        for Y in sample_diagrams(t.D, SMALL):
            assert unmate(t, Y) == VECT.pullback_cell(t.cell, Y)


@pytest.mark.parametrize("u,k", [(corpus.i_interval(), "(1,0)"), (corpus.face(1), "2")], ids=["i1", "d1"])
@given(data=st.data())
def test_horizontal_pasting_compatibility(u, k, data):
    s = comma_square_left(u, k)
    for c in s.C.objects:
        s1 = comma_square_left(s.p, c)
        whole = paste(s1, s, "horizontal")
        X = data.draw(diagrams_on(whole.B))
        assert left_mate(whole, X) == pasted_mate_horizontal(s1, s, X)
    ident = horizontal_identity(s.q)
    X = data.draw(diagrams_on(s.B))
    assert left_mate(paste(s, ident, "horizontal"), X) == pasted_mate_horizontal(s, ident, X)


@given(data=st.data())
def test_vertical_pasting_compatibility(data):
    s = comma_square_left(corpus.i_interval(), "(1,0)")
    for b in s.B.objects:
        s1 = transpose(comma_square_right(s.v, b))
        whole = paste(s1, s, "vertical")
        X = data.draw(diagrams_on(whole.C))
        assert mate_component(whole, "right", X) == pasted_mate_vertical(s1, s, X)


@pytest.mark.parametrize("s", SQUARES, ids=lambda s: s.name)
def test_left_iso_iff_right_iso(s):
    assert bool(check_exact(s, "left", SMALL)) == bool(check_exact(s, "right", SMALL))
