"""Oriented squares and their pasting.

A square has functors v: A -> B (top), p: A -> C (left), q: B -> D (right)
and w: C -> D (bottom).  A ``down_left`` square carries a cell
``q v => w p``; an ``up_right`` square carries ``w p => q v``.
"""

from __future__ import annotations

from dataclasses import dataclass

from halfder.fincat.functor import (
    FinFunctor,
    FinNatTrans,
    FunctorError,
    compose,
    identity_functor,
    identity_nat,
)

DOWN_LEFT = "down_left"
UP_RIGHT = "up_right"
ORIENTATIONS = (DOWN_LEFT, UP_RIGHT)


class SquareError(FunctorError):
    pass


@dataclass(frozen=True)
class OrientedSquare:
    v: FinFunctor
    p: FinFunctor
    q: FinFunctor
    w: FinFunctor
    cell: FinNatTrans
    orientation: str
    name: str = ""

    def __post_init__(self):
        if self.orientation not in ORIENTATIONS:
            raise SquareError(f"unknown orientation {self.orientation!r}")
        v, p, q, w = self.v, self.p, self.q, self.w
        if v.source != p.source or v.target != q.source or p.target != w.source or q.target != w.target:
            raise SquareError("square edges do not meet")
        qv, wp = compose(q, v), compose(w, p)
        want = (qv, wp) if self.orientation == DOWN_LEFT else (wp, qv)
        if (self.cell.source, self.cell.target) != want:
            raise SquareError(
                f"{self.orientation} square needs a cell "
                + ("q v => w p" if self.orientation == DOWN_LEFT else "w p => q v")
            )

    @property
    def A(self):
        return self.v.source

    @property
    def B(self):
        return self.v.target

    @property
    def C(self):
        return self.p.target

    @property
    def D(self):
        return self.q.target


def commutative_square(v, p, q, w, orientation=DOWN_LEFT, name="") -> OrientedSquare:
    """A square that commutes on the nose, with identity cell."""
    if v.source != p.source or v.target != q.source or p.target != w.source or q.target != w.target:
        raise SquareError("square edges do not meet")
    qv, wp = compose(q, v), compose(w, p)
    if qv != wp:
        raise SquareError("square does not commute")
    return OrientedSquare(v, p, q, w, identity_nat(qv), orientation, name)


def transpose(s: OrientedSquare) -> OrientedSquare:
    """Reflect across the diagonal: v <-> p, q <-> w, orientation flips."""
    other = UP_RIGHT if s.orientation == DOWN_LEFT else DOWN_LEFT
    return OrientedSquare(s.p, s.v, s.w, s.q, s.cell, other, f"{s.name}^t")


def horizontal_identity(q: FinFunctor, orientation=DOWN_LEFT) -> OrientedSquare:
    """Identity square whose vertical edges are both q."""
    return commutative_square(
        identity_functor(q.source), q, q, identity_functor(q.target), orientation, "id"
    )


def vertical_identity(v: FinFunctor, orientation=DOWN_LEFT) -> OrientedSquare:
    """Identity square whose horizontal edges are both v."""
    return commutative_square(
        v, identity_functor(v.source), identity_functor(v.target), v, orientation, "id"
    )


def paste(s1: OrientedSquare, s2: OrientedSquare, direction: str) -> OrientedSquare:
    """Paste s2 to the right of s1 (horizontal) or below s1 (vertical)."""
    if s1.orientation != s2.orientation:
        raise SquareError("cannot paste squares of different orientations")
    o = s1.orientation
    if direction == "horizontal":
        if s2.p != s1.q:
            raise SquareError("right edge of the first square is not the left edge of the second")
        v, p, q, w = compose(s2.v, s1.v), s1.p, s2.q, compose(s2.w, s1.w)
        D = q.target
        comps = {}
        for a in s1.A.objects:
            x = s2.w.mor(s1.cell.at(a))
            y = s2.cell.at(s1.v.ob(a))
            comps[a] = D.comp(x, y) if o == DOWN_LEFT else D.comp(y, x)
    elif direction == "vertical":
        if s2.v != s1.w:
            raise SquareError("bottom edge of the first square is not the top edge of the second")
        v, p, q, w = s1.v, compose(s2.p, s1.p), compose(s2.q, s1.q), s2.w
        D = q.target
        comps = {}
        for a in s1.A.objects:
            x = s2.q.mor(s1.cell.at(a))
            y = s2.cell.at(s1.p.ob(a))
            comps[a] = D.comp(y, x) if o == DOWN_LEFT else D.comp(x, y)
    else:
        raise SquareError(f"unknown pasting direction {direction!r}")
    qv, wp = compose(q, v), compose(w, p)
    src, tgt = (qv, wp) if o == DOWN_LEFT else (wp, qv)
    cell = FinNatTrans(src, tgt, comps, name="paste")
    return OrientedSquare(v, p, q, w, cell, o, f"{s1.name}|{s2.name}")


def comma_square_left(u: FinFunctor, k: str) -> OrientedSquare:
    """The pointwise square for left Kan extensions:
    (u/k) --pr--> J, pi down to e, u and k into K, cell u pr => k pi."""
    from halfder.fincat.comma import slice_over

    C, pr1, pr2, cell = slice_over(u, k)
    return OrientedSquare(pr1, pr2, u, _cls(u, k), cell, DOWN_LEFT, f"({u.name}/{k})")


def comma_square_right(u: FinFunctor, k: str) -> OrientedSquare:
    """The pointwise square for right Kan extensions:
    (k/u) --pr--> J, pi down to e, u and k into K, cell k pi => u pr."""
    from halfder.fincat.comma import slice_under

    C, pr1, pr2, cell = slice_under(k, u)
    return OrientedSquare(pr2, pr1, u, _cls(u, k), cell, UP_RIGHT, f"({k}/{u.name})")


def comma_square(u1: FinFunctor, u2: FinFunctor) -> OrientedSquare:
    """The oriented pullback square of a cospan: cell u1 pr1 => u2 pr2."""
    from halfder.fincat.comma import comma_category

    C, pr1, pr2, cell = comma_category(u1, u2)
    return OrientedSquare(pr1, pr2, u1, u2, cell, DOWN_LEFT, f"({u1.name}/{u2.name})")


def _cls(u: FinFunctor, k: str) -> FinFunctor:
    from halfder.fincat.functor import classifier

    return classifier(u.target, k)
