"""Mates of oriented squares in a represented derivator.

For a ``down_left`` square (cell q v => w p) the natural mate is the left
one, p_! v* X -> w* q_! X for X over B.  For an ``up_right`` square
(cell w p => q v) it is the right one, w* q_* X -> p_* v* X.  The other
side is the natural mate of the transposed square:
q* w_* X -> v_* p* X (down_left, X over C) and v_! p* X -> q* w_! X
(up_right, X over C).  All types come from the pasting construction.
"""

from __future__ import annotations

from halfder.fincat.squares import DOWN_LEFT, UP_RIGHT, OrientedSquare, transpose
from halfder.repder.derivator import VECT, RepDerivator
from halfder.repder.diagram import Diagram, DiagramMap, compose_all


class MateError(ValueError):
    pass


def left_mate(s: OrientedSquare, X: Diagram, D: RepDerivator = VECT) -> DiagramMap:
    """p_! v* X -> w* q_! X for a down_left square."""
    if s.orientation != DOWN_LEFT:
        raise MateError("left mate of the square itself needs a down_left cell")
    Z = D.lan(s.q, X)
    m1 = D.lan_map(s.p, D.pullback_map(s.v, D.lan_unit(s.q, X)))
    m2 = D.lan_map(s.p, D.pullback_cell(s.cell, Z))
    m3 = D.lan_counit(s.p, D.pullback(s.w, Z))
    return compose_all(m3, m2, m1)


def right_mate(s: OrientedSquare, X: Diagram, D: RepDerivator = VECT) -> DiagramMap:
    """w* q_* X -> p_* v* X for an up_right square."""
    if s.orientation != UP_RIGHT:
        raise MateError("right mate of the square itself needs an up_right cell")
    Z = D.ran(s.q, X)
    n1 = D.ran_unit(s.p, D.pullback(s.w, Z))
    n2 = D.ran_map(s.p, D.pullback_cell(s.cell, Z))
    n3 = D.ran_map(s.p, D.pullback_map(s.v, D.ran_counit(s.q, X)))
    return compose_all(n3, n2, n1)


def mate_input_shape(s: OrientedSquare, side: str):
    """The category whose diagrams the requested mate is evaluated on."""
    natural = (s.orientation, side) in ((DOWN_LEFT, "left"), (UP_RIGHT, "right"))
    return s.B if natural else s.C


def mate_component(
    s: OrientedSquare, side: str, X: Diagram, D: RepDerivator = VECT
) -> DiagramMap:
    """The ``side`` mate of the square's cell at X.

    Both sides exist for both orientations because the represented
    derivator has all Kan extensions; the off-orientation side is the
    natural mate of the transposed square.
    """
    if side not in ("left", "right"):
        raise MateError(f"side must be left or right, not {side!r}")
    if (s.orientation, side) == (DOWN_LEFT, "left"):
        return left_mate(s, X, D)
    if (s.orientation, side) == (UP_RIGHT, "right"):
        return right_mate(s, X, D)
    t = transpose(s)
    return left_mate(t, X, D) if side == "left" else right_mate(t, X, D)


def unmate_left(s: OrientedSquare, Y: Diagram, D: RepDerivator = VECT) -> DiagramMap:
    """Recover alpha*_Y: v* q* Y -> p* w* Y from the left mate of a down_left square.

    alpha*_Y = p* w*(eps^q_Y) . p*(lambda_{q* Y}) . eta^p_{v* q* Y}
    """
    qY = D.pullback(s.q, Y)
    lam = left_mate(s, qY, D)
    a = D.lan_unit(s.p, D.pullback(s.v, qY))
    b = D.pullback_map(s.p, lam)
    c = D.pullback_map(s.p, D.pullback_map(s.w, D.lan_counit(s.q, Y)))
    return compose_all(c, b, a)


def unmate_right(s: OrientedSquare, Y: Diagram, D: RepDerivator = VECT) -> DiagramMap:
    """Recover beta*_Y: p* w* Y -> v* q* Y from the right mate of an up_right square.

    beta*_Y = eps^p_{v* q* Y} . p*(rho_{q* Y}) . p* w*(eta^q_Y)
    """
    qY = D.pullback(s.q, Y)
    rho = right_mate(s, qY, D)
    a = D.pullback_map(s.p, D.pullback_map(s.w, D.ran_unit(s.q, Y)))
    b = D.pullback_map(s.p, rho)
    c = D.ran_counit(s.p, D.pullback(s.v, qY))
    return compose_all(c, b, a)


def unmate(s: OrientedSquare, Y: Diagram, D: RepDerivator = VECT) -> DiagramMap:
    """The cell's pullback recovered from the natural mate (Y over D)."""
    return unmate_left(s, Y, D) if s.orientation == DOWN_LEFT else unmate_right(s, Y, D)


def pasted_mate_horizontal(
    s1: OrientedSquare, s2: OrientedSquare, X: Diagram, D: RepDerivator = VECT
) -> DiagramMap:
    """Composite of the natural mates of s1 (left) and s2 (right), at X over B2.

    down_left: w1*(alpha2_! X) . alpha1_!(v2* X)
    up_right:  alpha1_*(v2* X) . w1*(alpha2_* X)
    """
    if s1.orientation == DOWN_LEFT:
        first = left_mate(s1, D.pullback(s2.v, X), D)
        second = D.pullback_map(s1.w, left_mate(s2, X, D))
        return compose_all(second, first)
    first = D.pullback_map(s1.w, right_mate(s2, X, D))
    second = right_mate(s1, D.pullback(s2.v, X), D)
    return compose_all(second, first)


def pasted_mate_vertical(
    s1: OrientedSquare, s2: OrientedSquare, X: Diagram, D: RepDerivator = VECT
) -> DiagramMap:
    """Composite of the transposed mates of s1 (top) and s2 (bottom), at X over C2.

    Vertical pasting transposes to horizontal pasting of the transposes.
    """
    return pasted_mate_horizontal(transpose(s1), transpose(s2), X, D)


def natural_side(s: OrientedSquare) -> str:
    return "left" if s.orientation == DOWN_LEFT else "right"


def other_side(s: OrientedSquare) -> str:
    return "right" if s.orientation == DOWN_LEFT else "left"


__all__ = [
    "MateError",
    "left_mate",
    "right_mate",
    "mate_component",
    "mate_input_shape",
    "unmate",
    "unmate_left",
    "unmate_right",
    "pasted_mate_horizontal",
    "pasted_mate_vertical",
    "natural_side",
    "other_side",
]
