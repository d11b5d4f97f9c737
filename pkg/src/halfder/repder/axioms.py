"""Checkers for the derivator axioms on the represented derivator.

Each checker returns :class:`~halfder.report.Check` objects carrying the
instance count and, on failure, the first witness.  Universally quantified
statements are checked on the fixed fixtures plus seeded random samples:
a failure disproves, a pass is evidence.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from halfder.fincat.category import FinCategory, coproduct
from halfder.fincat.functor import FinFunctor, FinNatTrans, inclusion
from halfder.fincat.squares import comma_square_left, comma_square_right
from halfder.report import Check, Tally
from halfder.repder.derivator import VECT, RepDerivator
from halfder.repder.diagram import (
    Diagram,
    DiagramError,
    DiagramMap,
    compose_all,
    identity_map,
    zero_map,
)
from halfder.repder.mates import left_mate, right_mate
from halfder.repder.sampling import DEFAULT_POLICY, Policy, conjugate, random_map, sample_diagrams


def coproduct_injections(parts: Sequence[FinCategory]) -> tuple[FinCategory, list[FinFunctor]]:
    K = coproduct(*parts)
    injections = []
    for i, P in enumerate(parts):
        injections.append(
            inclusion(P, K, {a: f"{i}:{a}" for a in P.objects}, name=f"in{i}")
        )
    return K, injections


def _inverse_tables(F: FinFunctor):
    return {b: a for a, b in F.obj_map.items()}, {g: f for f, g in F.mor_map.items()}


def assemble(D: RepDerivator, injections: list[FinFunctor], K: FinCategory, parts: list[Diagram]) -> Diagram:
    """The diagram on the coproduct whose restrictions are ``parts``.

    Raises if the injections do not partition the level's objects and
    morphisms, which is exactly a failure of the coproduct axiom.
    """
    L = D.level(K)
    dims, mats = {}, {}
    for inj, X in zip(injections, parts):
        F = D.functor_at(inj)
        obj_inv, mor_inv = _inverse_tables(F)
        for b, a in obj_inv.items():
            if b in dims:
                raise DiagramError(f"object {b} hit by two summands")
            dims[b] = X.dims[a]
        for g, f in mor_inv.items():
            mats[g] = X.mats[f]
    missing = [a for a in L.objects if a not in dims] + [f for f in L.morphisms if f not in mats]
    if missing:
        raise DiagramError(f"not covered by any summand: {missing[:3]}")
    return Diagram(L, dims, mats)


def assemble_maps(D, injections, K, maps: list[DiagramMap]) -> DiagramMap:
    src = assemble(D, injections, K, [m.source for m in maps])
    tgt = assemble(D, injections, K, [m.target for m in maps])
    comps = {}
    for inj, m in zip(injections, maps):
        obj_inv, _ = _inverse_tables(D.functor_at(inj))
        for b, a in obj_inv.items():
            comps[b] = m.comps[a]
    return DiagramMap(src, tgt, comps)


def check_der1(
    D: RepDerivator = VECT,
    shapes: Iterable[Sequence[FinCategory]] = (),
    policy: Policy = DEFAULT_POLICY,
) -> Check:
    """Restriction to the summands and assembly are mutually inverse, on
    objects and maps, for each coproduct decomposition."""
    t = Tally()
    for parts in shapes:
        K, injections = coproduct_injections(parts)
        label = "+".join(P.name for P in parts) or "empty"
        samples = [sample_diagrams(D.level(P), policy, "der1") for P in parts]
        n = max((len(s) for s in samples), default=1)
        for i in range(n):
            Xs = [s[i % len(s)] for s in samples]
            try:
                X = assemble(D, injections, K, Xs)
            except DiagramError as exc:
                t.record(False, f"{label}: {exc}")
                continue
            back = [D.pullback(inj, X) for inj in injections]
            t.record(back == Xs, f"{label}: restrict(assemble) differs at sample {i}")
            t.record(
                assemble(D, injections, K, back) == X,
                f"{label}: assemble(restrict) differs at sample {i}",
            )
            if parts:
                ids = [identity_map(x) for x in Xs]
                phi = assemble_maps(D, injections, K, ids)
                t.record(
                    [D.pullback_map(inj, phi) for inj in injections] == ids,
                    f"{label}: maps do not round-trip",
                )
        for Y in sample_diagrams(D.level(K), policy, "der1:total"):
            back = [D.pullback(inj, Y) for inj in injections]
            t.record(assemble(D, injections, K, back) == Y, f"{label}: total sample does not round-trip")
    return t.check("Der1 coproducts to products", "Coproducts are sent to products", 1)


def check_der2(
    D: RepDerivator = VECT,
    shapes: Iterable[FinCategory] = (),
    policy: Policy = DEFAULT_POLICY,
) -> list[Check]:
    """Componentwise-invertible maps have inverse diagram maps; a
    componentwise-singular map is reported as not invertible."""
    t = Tally()
    neg = Tally()
    for K in shapes:
        L = D.level(K)
        rng = policy.rng(f"der2:{L.name}")
        for i, X in enumerate(sample_diagrams(L, policy, "der2")):
            Y, phi = conjugate(X, rng)
            if not t.record(phi.is_iso(), f"{L.name} sample {i}: iso map not detected"):
                continue
            inv = phi.inverse()
            t.record(
                (inv @ phi).is_identity() and (phi @ inv).is_identity(),
                f"{L.name} sample {i}: inverse does not invert",
            )
            if X.total_dim():
                z = zero_map(X, X)
                neg.record(not z.is_iso() and z.non_iso_witness() is not None, f"{L.name} sample {i}")
    return [
        t.check("Der2 isomorphisms detected pointwise", "Isomorphisms are detected pointwise", 1),
        neg.check("Der2 negative control: singular map rejected", "Isomorphisms are detected pointwise", 1),
    ]


def _pairs(D, u, policy, key):
    Xs = sample_diagrams(D.level(u.source), policy, f"{key}:J")
    Ys = sample_diagrams(D.level(u.target), policy, f"{key}:K")
    n = max(len(Xs), len(Ys))
    return [(Xs[i % len(Xs)], Ys[i % len(Ys)]) for i in range(n)]


def check_der3(
    D: RepDerivator = VECT,
    functors: Iterable[FinFunctor] = (),
    policy: Policy = DEFAULT_POLICY,
) -> list[Check]:
    """Triangle identities and the hom-set bijection for u_! -| u* -| u_*."""
    left, right = Tally(), Tally()
    for u in functors:
        label = u.name
        rng = policy.rng(f"der3:{label}:{u.source.name}:{u.target.name}")
        for i, (X, Y) in enumerate(_pairs(D, u, policy, "der3")):
            w = f"{label} sample {i}"
            # left adjoint u_! -| u*
            eta = D.lan_unit(u, X)
            LX = D.lan(u, X)
            tri1 = compose_all(D.lan_counit(u, LX), D.lan_map(u, eta))
            left.record(tri1.is_identity(), f"{w}: eps u_! . u_! eta")
            uY = D.pullback(u, Y)
            tri2 = compose_all(D.pullback_map(u, D.lan_counit(u, Y)), D.lan_unit(u, uY))
            left.record(tri2.is_identity(), f"{w}: u* eps . eta u*")
            phi = random_map(LX, Y, rng)
            flat = compose_all(D.pullback_map(u, phi), eta)
            back = compose_all(D.lan_counit(u, Y), D.lan_map(u, flat))
            left.record(back == phi, f"{w}: Hom(u_! X, Y) round trip")
            psi = random_map(X, uY, rng)
            sharp = compose_all(D.lan_counit(u, Y), D.lan_map(u, psi))
            left.record(
                compose_all(D.pullback_map(u, sharp), eta) == psi, f"{w}: Hom(X, u* Y) round trip"
            )
            # right adjoint u* -| u_*
            eps = D.ran_counit(u, X)
            RX = D.ran(u, X)
            tri3 = compose_all(D.ran_map(u, eps), D.ran_unit(u, RX))
            right.record(tri3.is_identity(), f"{w}: u_* eps . eta u_*")
            tri4 = compose_all(D.ran_counit(u, uY), D.pullback_map(u, D.ran_unit(u, Y)))
            right.record(tri4.is_identity(), f"{w}: eps u* . u* eta")
            chi = random_map(Y, RX, rng)
            flat = compose_all(eps, D.pullback_map(u, chi))
            back = compose_all(D.ran_map(u, flat), D.ran_unit(u, Y))
            right.record(back == chi, f"{w}: Hom(Y, u_* X) round trip")
    return [
        left.check("Der3L triangle identities and hom bijection", "admits a left adjoint, which we denote", 1),
        right.check("Der3R triangle identities and hom bijection", "admits a right adjoint", 1),
    ]


def check_der4(
    D: RepDerivator = VECT,
    functors: Iterable[FinFunctor] = (),
    policy: Policy = DEFAULT_POLICY,
) -> list[Check]:
    """Mates of the pointwise comma squares are invertible at every k."""
    left, right = Tally(), Tally()
    for u in functors:
        Xs = sample_diagrams(D.level(u.source), policy, "der4")
        for k in u.target.objects:
            sl = comma_square_left(u, k)
            sr = comma_square_right(u, k)
            for i, X in enumerate(Xs):
                m = left_mate(sl, X, D)
                left.record(m.is_iso(), f"{u.name} at {k}, sample {i}")
                m = right_mate(sr, X, D)
                right.record(m.is_iso(), f"{u.name} at {k}, sample {i}")
    return [
        left.check("Der4L pointwise left Kan extensions", "Left Kan extensions can be computed pointwise", 1),
        right.check("Der4R pointwise right Kan extensions", "Right Kan extensions can be computed pointwise", 1),
    ]


def check_axioms(
    shapes: Iterable[FinCategory],
    functors: Iterable[FinFunctor],
    coproducts: Iterable[Sequence[FinCategory]],
    policy: Policy = DEFAULT_POLICY,
    D: RepDerivator = VECT,
) -> list[Check]:
    functors = list(functors)
    out = [check_der1(D, coproducts, policy)]
    out += check_der2(D, shapes, policy)
    out += check_der3(D, functors, policy)
    out += check_der4(D, functors, policy)
    return out


def pullback_is_strict(D: RepDerivator, u: FinFunctor, v: FinFunctor, X: Diagram) -> bool:
    """(v u)* X == u* v* X as tables."""
    from halfder.fincat.functor import compose

    return D.pullback(compose(v, u), X) == D.pullback(u, D.pullback(v, X))


def pullback_cell_respects_composition(
    D: RepDerivator, beta: FinNatTrans, alpha: FinNatTrans, X: Diagram
) -> bool:
    """(beta . alpha)* == beta* . alpha*."""
    from halfder.fincat.functor import vcomp

    return D.pullback_cell(vcomp(beta, alpha), X) == compose_all(
        D.pullback_cell(beta, X), D.pullback_cell(alpha, X)
    )
