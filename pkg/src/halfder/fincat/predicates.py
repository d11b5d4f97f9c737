"""Structural predicates on functors: full faithfulness, sieves,
extremal objects, opfibrations and adjunctions.

Each predicate returns a :class:`Verdict`, which is truthy exactly when the
property holds and otherwise names a witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from halfder.fincat.category import FinCategory
from halfder.fincat.functor import (
    FinFunctor,
    FinNatTrans,
    FunctorError,
    classifier,
    compose,
    identity_functor,
    projection,
)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: Optional[str] = None

    def __bool__(self):
        return self.ok


PASS = Verdict(True)


def is_injective_on_objects(u: FinFunctor) -> Verdict:
    seen = {}
    for a in u.source.objects:
        b = u.ob(a)
        if b in seen:
            return Verdict(False, f"{seen[b]} and {a} both map to {b}")
        seen[b] = a
    return PASS


def is_fully_faithful(u: FinFunctor) -> Verdict:
    A, B = u.source, u.target
    for a in A.objects:
        for b in A.objects:
            src = A.hom(a, b)
            image = [u.mor(f) for f in src]
            if len(set(image)) != len(image):
                return Verdict(False, f"not faithful on Hom({a},{b})")
            if len(image) != len(B.hom(u.ob(a), u.ob(b))):
                return Verdict(False, f"not full on Hom({a},{b})")
    return PASS


SIEVE, COSIEVE, BOTH, NEITHER = "sieve", "cosieve", "both", "neither"


def sieve_kind(u: FinFunctor) -> str:
    """Classify an embedding as a sieve (closed under incoming maps),
    cosieve (closed under outgoing maps), both or neither."""
    for check in (is_fully_faithful, is_injective_on_objects):
        v = check(u)
        if not v:
            raise FunctorError(f"sieve_kind needs an embedding: {v.witness}")
    K = u.target
    image = {u.ob(a) for a in u.source.objects}
    sieve = cosieve = True
    for f, (a, b) in K.morphisms.items():
        if b in image and a not in image:
            sieve = False
        if a in image and b not in image:
            cosieve = False
    if sieve and cosieve:
        return BOTH
    return SIEVE if sieve else COSIEVE if cosieve else NEITHER


def sieve_witness(u: FinFunctor, kind: str) -> Optional[str]:
    """A morphism showing u is not of the given kind, if any."""
    K = u.target
    image = {u.ob(a) for a in u.source.objects}
    for f, (a, b) in K.morphisms.items():
        if kind == SIEVE and b in image and a not in image:
            return f"{f}: {a} -> {b} enters the image from outside"
        if kind == COSIEVE and a in image and b not in image:
            return f"{f}: {a} -> {b} leaves the image"
    return None


def extremal_object(C: FinCategory, kind: str) -> Optional[str]:
    """An initial or final object of C, smallest id first."""
    if kind not in ("initial", "final"):
        raise ValueError(f"kind must be initial or final, not {kind!r}")
    cands = []
    for a in C.objects:
        if kind == "initial":
            ok = all(len(C.hom(a, b)) == 1 for b in C.objects)
        else:
            ok = all(len(C.hom(b, a)) == 1 for b in C.objects)
        if ok:
            cands.append(a)
    return min(cands) if cands else None


def is_cocartesian_morphism(u: FinFunctor, phi: str) -> bool:
    E, B = u.source, u.target
    e, e1 = E.morphisms[phi]
    g = u.mor(phi)
    for psi in E.out_of(e):
        e2 = E.tgt(psi)
        for h in B.hom(u.ob(e1), u.ob(e2)):
            if B.comp(h, g) != u.mor(psi):
                continue
            lifts = [
                chi for chi in E.hom(e1, e2) if u.mor(chi) == h and E.comp(chi, phi) == psi
            ]
            if len(lifts) != 1:
                return False
    return True


def is_grothendieck_opfibration(u: FinFunctor) -> Verdict:
    """Every (e, g: u(e) -> b) has a cocartesian lift out of e."""
    E, B = u.source, u.target
    for e in E.objects:
        for g in B.out_of(u.ob(e)):
            lifts = [phi for phi in E.out_of(e) if u.mor(phi) == g]
            if not any(is_cocartesian_morphism(u, phi) for phi in lifts):
                return Verdict(False, f"no cocartesian lift of {g} at {e}")
    return PASS


def is_grothendieck_fibration(u: FinFunctor) -> Verdict:
    from halfder.fincat.functor import opposite_functor

    v = is_grothendieck_opfibration(opposite_functor(u))
    return v


def check_adjunction(
    l: FinFunctor, r: FinFunctor, unit: FinNatTrans, counit: FinNatTrans
) -> Verdict:
    """Triangle identities for l -| r with l: B -> A, r: A -> B,
    unit: id_B => r l and counit: l r => id_A."""
    B, A = l.source, l.target
    if r.source != A or r.target != B:
        raise FunctorError("adjunction functors are not opposed")
    if unit.source != identity_functor(B) or unit.target != compose(r, l):
        raise FunctorError("unit must be id_B => r l")
    if counit.source != compose(l, r) or counit.target != identity_functor(A):
        raise FunctorError("counit must be l r => id_A")
    for b in B.objects:
        lhs = A.comp(counit.at(l.ob(b)), l.mor(unit.at(b)))
        if lhs != A.id(l.ob(b)):
            return Verdict(False, f"triangle (eps l)(l eta) != id at {b}")
    for a in A.objects:
        lhs = B.comp(r.mor(counit.at(a)), unit.at(r.ob(a)))
        if lhs != B.id(r.ob(a)):
            return Verdict(False, f"triangle (r eps)(eta r) != id at {a}")
    return PASS


def final_object_adjunction(B: FinCategory):
    """pi_B -| b1 for a final object b1; returns (l, r, unit, counit)."""
    b1 = extremal_object(B, "final")
    if b1 is None:
        raise FunctorError(f"{B!r} has no final object")
    l = projection(B)
    r = classifier(B, b1)
    unit = FinNatTrans(
        identity_functor(B), compose(r, l), {b: B.hom(b, b1)[0] for b in B.objects}, name="eta"
    )
    E = l.target
    counit = FinNatTrans(compose(l, r), identity_functor(E), {"*": E.id("*")}, name="eps")
    return l, r, unit, counit


def initial_object_adjunction(B: FinCategory):
    """b0 -| pi_B for an initial object b0; returns (l, r, unit, counit)."""
    b0 = extremal_object(B, "initial")
    if b0 is None:
        raise FunctorError(f"{B!r} has no initial object")
    l = classifier(B, b0)
    r = projection(B)
    E = l.source
    unit = FinNatTrans(identity_functor(E), compose(r, l), {"*": E.id("*")}, name="eta")
    counit = FinNatTrans(
        compose(l, r), identity_functor(B), {b: B.hom(b0, b)[0] for b in B.objects}, name="eps"
    )
    return l, r, unit, counit
