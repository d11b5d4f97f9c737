import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SMALL
from halfder import corpus
from halfder.exactness import (
    FAMILIES,
    NOTE,
    build_named_square,
    check_exact,
    comma_proof_adjunction,
    ff_kan_fully_faithful_check,
    ff_unit_square,
    final_adjoint_square,
    initial_adjoint_square,
    natural_verdict,
    negative_control_square,
    pasting_cancellation_check,
    strict_pullback_square,
)
from halfder.fincat import (
    FunctorError,
    check_adjunction,
    classifier,
    corner,
    final_object_adjunction,
    ordinal,
    product_projection,
    projection,
    square,
    terminal,
)
from halfder.fincat.squares import DOWN_LEFT, UP_RIGHT
from halfder.repder.diagram import constant_diagram
from halfder.repder.mates import mate_component
from halfder.repder.sampling import Policy


def point(n):
    return constant_diagram(terminal(), n)


def test_families_listed():
    assert set(FAMILIES) == {
        "comma_der4l",
        "comma_der4r",
        "comma_cospan",
        "adjoint_left",
        "adjoint_right",
        "ff_unit",
        "strict_pullback",
    }
    with pytest.raises(ValueError):
        build_named_square("nonsense")


@pytest.mark.parametrize("name", ["i_[1]", "d1", "s0", "pi_corner", "ab:N", "0:[1]"])
def test_comma_squares_are_exact(name):
    u = corpus.functors()[name]
    for k in u.target.objects:
        assert natural_verdict(build_named_square("comma_der4l", u, k), SMALL)
        assert natural_verdict(build_named_square("comma_der4r", u, k), SMALL)


def test_adjoint_squares_are_exact():
    s = final_adjoint_square()
    assert s.orientation == DOWN_LEFT
    assert check_exact(s, "right", SMALL) and check_exact(s, "left", SMALL)
    t = initial_adjoint_square()
    assert t.orientation == UP_RIGHT
    assert natural_verdict(t, SMALL)


def test_adjoint_square_needs_an_adjunction():
    l, r, unit, counit = final_object_adjunction(ordinal(1))
    assert check_adjunction(l, r, unit, counit)
    with pytest.raises(FunctorError):
        build_named_square("adjoint_right", l, r, unit, unit)


def test_comma_cospan_is_exact():
    s = build_named_square("comma_cospan", corpus.i_interval(), classifier(corner(), "(0,1)"))
    assert natural_verdict(s, SMALL)
    s = build_named_square("comma_cospan", corpus.i_interval(), corpus.i_interval())
    assert natural_verdict(s, SMALL)


def test_ff_unit_square():
    s = ff_unit_square(corpus.i_corner())
    assert s.cell.components == {a: square().id(a) for a in corner().objects}
    assert natural_verdict(s, SMALL) and check_exact(s, "right", SMALL)
    with pytest.raises(FunctorError):
        ff_unit_square(projection(ordinal(1)))


def test_strict_pullback_square():
    q = product_projection(ordinal(1), corner(), 0)
    s = strict_pullback_square(q, classifier(ordinal(1), "1"))
    assert natural_verdict(s, SMALL)
    with pytest.raises(FunctorError):
        # the fibration dual of a classifier is not an opfibration
        strict_pullback_square(classifier(ordinal(1), "0"), classifier(ordinal(1), "1"))


def test_negative_control_fails_with_witness():
    s = negative_control_square()
    X = point(1)
    v = check_exact(s, "left", SMALL, extra=(X,))
    assert not v
    assert v.witness_diagram == X and v.witness_index == 0
    assert v.reproduce()
    assert "witness=sample#0" in v.summary()
    assert v.note == NOTE


def test_verdict_records_seed():
    v = natural_verdict(final_adjoint_square(), Policy(seed=11, samples=2, max_dim=2))
    assert v.seed == 11 and v.samples == 5 and "seed=11" in v.summary()
    assert not v.reproduce()


@given(st.integers(0, 4))
def test_negative_control_on_a_point(n):
    # the left mate compares the colimit of a constant diagram over two points, of dim 2n, with Q^n
    s = negative_control_square()
    m = mate_component(s, "left", point(n)).comps["*"]
    assert m.shape == (n, 2 * n)
    assert m.is_invertible() == (n == 0)


@pytest.mark.parametrize("mode", ["horizontal_over_c", "vertical_under_b"])
@pytest.mark.parametrize(
    "s",
    [ff_unit_square(corpus.i_corner()), build_named_square("comma_der4l", corpus.i_interval(), "(1,0)")],
    ids=["ff", "comma"],
)
def test_cancellation_agrees_on_exact_squares(s, mode):
    rep = pasting_cancellation_check(s, mode, SMALL)
    assert rep.square_verdict and rep.all_pasted and rep.agrees


def test_cancellation_negative_control():
    rep = pasting_cancellation_check(negative_control_square(), "horizontal_over_c", SMALL)
    assert not rep.square_verdict
    assert not rep.all_pasted and rep.agrees


def test_cancellation_rejects_up_right():
    with pytest.raises(ValueError):
        pasting_cancellation_check(initial_adjoint_square(), "horizontal_over_c", SMALL)
    with pytest.raises(ValueError):
        pasting_cancellation_check(final_adjoint_square(), "diagonal", SMALL)


@pytest.mark.parametrize("name", ["i_corner", "i_[1]", "id_corner", "d1"])
def test_fully_faithful_kan_extensions(name):
    checks = ff_kan_fully_faithful_check(corpus.functors()[name], SMALL)
    assert all(c.passed for c in checks)


def test_fully_faithful_precondition():
    with pytest.raises(FunctorError):
        ff_kan_fully_faithful_check(projection(corner()), SMALL)


@pytest.mark.parametrize(
    "u1,u2",
    [
        (corpus.i_interval(), corpus.i_interval()),
        (corpus.i_interval(), classifier(corner(), "(1,0)")),
        (corpus.face(1), corpus.face(0)),
    ],
    ids=["i1,i1", "i1,(1,0)", "d1,d0"],
)
def test_comma_proof_adjunction(u1, u2):
    for j2 in u2.source.objects:
        assert check_adjunction(*comma_proof_adjunction(u1, u2, j2))
