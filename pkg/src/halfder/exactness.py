"""Exactness verdicts for oriented squares and the named exact-square families.

A verdict is a falsification check: the mate is evaluated on the fixed
fixtures plus seeded random diagrams and each component is tested for
invertibility exactly.  A failure is a disproof with a reproducible
witness; a pass is evidence, not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from halfder.fincat.comma import slice_over, strict_pullback
from halfder.fincat.functor import (
    FinFunctor,
    FinNatTrans,
    FunctorError,
    compose,
    identity_functor,
    inclusion,
    projection,
    unique_morphism,
)
from halfder.fincat.predicates import (
    check_adjunction,
    is_fully_faithful,
    is_grothendieck_opfibration,
)
from halfder.fincat.squares import (
    DOWN_LEFT,
    UP_RIGHT,
    OrientedSquare,
    comma_square,
    comma_square_left,
    comma_square_right,
    commutative_square,
    paste,
    transpose,
)
from halfder.report import Check, Tally
from halfder.repder.derivator import VECT, RepDerivator
from halfder.repder.diagram import Diagram
from halfder.repder.mates import mate_component, mate_input_shape
from halfder.repder.sampling import DEFAULT_POLICY, Policy, sample_diagrams

NOTE = "falsification check, not a proof"


@dataclass
class ExactnessVerdict:
    square: OrientedSquare
    side: str
    samples: int
    components: int
    passed: bool
    seed: int
    witness_diagram: Optional[Diagram] = None
    witness_index: Optional[int] = None
    witness_object: Optional[str] = None
    note: str = NOTE

    def __bool__(self):
        return self.passed

    def reproduce(self, D: RepDerivator = VECT) -> bool:
        """True when re-evaluating the witness again gives a singular component."""
        if self.witness_diagram is None:
            return False
        m = mate_component(self.square, self.side, self.witness_diagram, D)
        return not m.comps[self.witness_object].is_invertible()

    def summary(self) -> str:
        head = "pass" if self.passed else "fail"
        body = f"{head} side={self.side} samples={self.samples} components={self.components} seed={self.seed}"
        if not self.passed:
            body += f" witness=sample#{self.witness_index}@{self.witness_object}"
        return body


def check_exact(
    s: OrientedSquare,
    side: str,
    policy: Policy = DEFAULT_POLICY,
    D: RepDerivator = VECT,
    extra: tuple = (),
) -> ExactnessVerdict:
    """Is the ``side`` mate of s invertible on all sampled diagrams?"""
    shape = D.level(mate_input_shape(s, side))
    samples = tuple(extra) + sample_diagrams(shape, policy, "exact")
    comps = 0
    for i, X in enumerate(samples):
        m = mate_component(s, side, X, D)
        for a, c in m.comps.items():
            comps += 1
            if not c.is_invertible():
                return ExactnessVerdict(s, side, i + 1, comps, False, policy.seed, X, i, a)
    return ExactnessVerdict(s, side, len(samples), comps, True, policy.seed)


# named families --------------------------------------------------------------


def adjoint_square_left(l, r, unit, counit) -> OrientedSquare:
    """For l -| r with l: B -> A: the up_right square B -l-> A over e."""
    v = check_adjunction(l, r, unit, counit)
    if not v:
        raise FunctorError(f"not an adjunction: {v.witness}")
    B, A = l.source, l.target
    return commutative_square(l, projection(B), projection(A), identity_functor(projection(A).target), UP_RIGHT, f"adj_left({l.name})")


def adjoint_square_right(l, r, unit, counit) -> OrientedSquare:
    """For l -| r with r: A -> B: the down_left square A -r-> B over e."""
    v = check_adjunction(l, r, unit, counit)
    if not v:
        raise FunctorError(f"not an adjunction: {v.witness}")
    A, B = r.source, r.target
    return commutative_square(r, projection(A), projection(B), identity_functor(projection(B).target), DOWN_LEFT, f"adj_right({r.name})")


def ff_unit_square(u: FinFunctor) -> OrientedSquare:
    """id_J, id_J, u, u with identity cell; needs u fully faithful."""
    v = is_fully_faithful(u)
    if not v:
        raise FunctorError(f"{u.name} is not fully faithful: {v.witness}")
    J = identity_functor(u.source)
    return commutative_square(J, J, u, u, DOWN_LEFT, f"ff({u.name})")


def strict_pullback_square(q: FinFunctor, w: FinFunctor) -> OrientedSquare:
    """The strict pullback of an opfibration q along w, identity cell."""
    v = is_grothendieck_opfibration(q)
    if not v:
        raise FunctorError(f"{q.name} is not a Grothendieck opfibration: {v.witness}")
    A, vv, p = strict_pullback(q, w)
    return commutative_square(vv, p, q, w, DOWN_LEFT, f"pb({q.name},{w.name})")


FAMILIES = (
    "comma_der4l",
    "comma_der4r",
    "comma_cospan",
    "adjoint_left",
    "adjoint_right",
    "ff_unit",
    "strict_pullback",
)


def build_named_square(family: str, *args) -> OrientedSquare:
    if family == "comma_der4l":
        return comma_square_left(*args)
    if family == "comma_der4r":
        return comma_square_right(*args)
    if family == "comma_cospan":
        return comma_square(*args)
    if family == "adjoint_left":
        return adjoint_square_left(*args)
    if family == "adjoint_right":
        return adjoint_square_right(*args)
    if family == "ff_unit":
        return ff_unit_square(*args)
    if family == "strict_pullback":
        return strict_pullback_square(*args)
    raise ValueError(f"unknown square family {family!r}")


def negative_control_square() -> OrientedSquare:
    """discrete(2) -> e -> e with all projections: not exact, since the
    colimit of a constant diagram over two points doubles it."""
    from halfder.fincat.category import discrete

    d2 = discrete(2)
    e = identity_functor(projection(d2).target)
    return commutative_square(projection(d2), projection(d2), e, e, DOWN_LEFT, "two-points")


def natural_verdict(s, policy=DEFAULT_POLICY, D=VECT) -> ExactnessVerdict:
    return check_exact(s, "left" if s.orientation == DOWN_LEFT else "right", policy, D)


# pasting cancellation ---------------------------------------------------------


@dataclass
class CancellationReport:
    square_verdict: bool
    pasted: dict = field(default_factory=dict)

    @property
    def all_pasted(self) -> bool:
        return all(self.pasted.values())

    @property
    def agrees(self) -> bool:
        return self.square_verdict == self.all_pasted


def pasting_cancellation_check(
    s: OrientedSquare, mode: str, policy: Policy = DEFAULT_POLICY, D: RepDerivator = VECT
) -> CancellationReport:
    """Compare the verdict for s with the verdicts for its comma pastings.

    ``horizontal_over_c`` pastes (p/c) on the left for each c in C and uses
    left mates; ``vertical_under_b`` pastes (b/v) on top for each b in B and
    uses right mates.
    """
    if s.orientation != DOWN_LEFT:
        raise ValueError("pasting cancellation is stated for down_left squares")
    if mode == "horizontal_over_c":
        base = bool(check_exact(s, "left", policy, D))
        pasted = {}
        for c in s.C.objects:
            t = paste(comma_square_left(s.p, c), s, "horizontal")
            pasted[c] = bool(check_exact(t, "left", policy, D))
        return CancellationReport(base, pasted)
    if mode == "vertical_under_b":
        base = bool(check_exact(s, "right", policy, D))
        pasted = {}
        for b in s.B.objects:
            top = transpose(comma_square_right(s.v, b))
            t = paste(top, s, "vertical")
            pasted[b] = bool(check_exact(t, "right", policy, D))
        return CancellationReport(base, pasted)
    raise ValueError(f"unknown cancellation mode {mode!r}")


# fully faithful Kan extensions ----------------------------------------------------


def ff_kan_fully_faithful_check(
    u: FinFunctor, policy: Policy = DEFAULT_POLICY, D: RepDerivator = VECT
) -> list[Check]:
    """Unit X -> u* u_! X and counit u* u_* X -> X are invertible on samples."""
    v = is_fully_faithful(u)
    if not v:
        raise FunctorError(f"{u.name} is not fully faithful: {v.witness}")
    unit, counit = Tally(), Tally()
    for i, X in enumerate(sample_diagrams(D.level(u.source), policy, "ffkan")):
        unit.record(D.lan_unit(u, X).is_iso(), f"{u.name} sample {i}")
        counit.record(D.ran_counit(u, X).is_iso(), f"{u.name} sample {i}")
    return [
        unit.check(f"unit of u_! -| u* invertible for {u.name}", "are both fully faithful"),
        counit.check(f"counit of u* -| u_* invertible for {u.name}", "are both fully faithful"),
    ]


# the adjunction inside the comma-square proof ------------------------------------


def comma_proof_adjunction(u1: FinFunctor, u2: FinFunctor, j2: str):
    """The adjunction l -| r between (pr2/j2) and (u1/u2(j2)).

    r(j1, h) = ((j1, j2, h), id) and l((j1, j2', f), g) = (j1, u2(g) f).
    Built for poset-valued comma categories, where each hom has at most one
    element.  Returns (l, r, unit, counit).
    """
    from halfder.fincat.comma import comma_category

    M, pr1, pr2, cell = comma_category(u1, u2)
    P, ppr1, _, pcell = slice_over(pr2, j2)
    k = u2.ob(j2)
    Q, qpr1, _, qcell = slice_over(u1, k)
    K = u1.target
    J2 = u2.source
    p_lookup = {(ppr1.ob(x), pcell.at(x)): x for x in P.objects}
    q_lookup = {(qpr1.ob(y), qcell.at(y)): y for y in Q.objects}
    m_lookup = {(pr1.ob(m), pr2.ob(m), cell.at(m)): m for m in M.objects}
    r_obj = {}
    for y in Q.objects:
        j1, h = qpr1.ob(y), qcell.at(y)
        r_obj[y] = p_lookup[(m_lookup[(j1, j2, h)], J2.id(j2))]
    l_obj = {}
    for x in P.objects:
        m, g = ppr1.ob(x), pcell.at(x)
        j1, f = pr1.ob(m), cell.at(m)
        l_obj[x] = q_lookup[(j1, K.comp(u2.mor(g), f))]
    r = inclusion(Q, P, r_obj, name="r")
    l = inclusion(P, Q, l_obj, name="l")
    unit = FinNatTrans(
        identity_functor(P), compose(r, l), {x: unique_morphism(P, x, r.ob(l.ob(x))) for x in P.objects}, name="eta"
    )
    counit = FinNatTrans(
        compose(l, r), identity_functor(Q), {y: unique_morphism(Q, l.ob(r.ob(y)), y) for y in Q.objects}, name="eps"
    )
    return l, r, unit, counit


def final_adjoint_square():
    """The right-adjoint square for the final object of [1]."""
    from halfder.fincat.category import ordinal
    from halfder.fincat.predicates import final_object_adjunction

    return adjoint_square_right(*final_object_adjunction(ordinal(1)))


def initial_adjoint_square():
    """The left-adjoint square for the initial object of the corner."""
    from halfder.fincat.category import corner
    from halfder.fincat.predicates import initial_object_adjunction

    return adjoint_square_left(*initial_object_adjunction(corner()))


__all__ = [
    "ExactnessVerdict",
    "check_exact",
    "build_named_square",
    "negative_control_square",
    "pasting_cancellation_check",
    "ff_kan_fully_faithful_check",
    "comma_proof_adjunction",
    "adjoint_square_left",
    "adjoint_square_right",
    "ff_unit_square",
    "strict_pullback_square",
    "final_adjoint_square",
    "initial_adjoint_square",
    "natural_verdict",
    "CancellationReport",
    "FAMILIES",
    "NOTE",
]
