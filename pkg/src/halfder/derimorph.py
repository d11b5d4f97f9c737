"""Morphisms between shifted represented derivators, their structure
isomorphisms, modifications, and (co)continuity.

A morphism Phi: D^I -> D^I' has at level K a functor
Phi_K: D(I x K) -> D(I' x K) and, for each v: J -> K, a structure
isomorphism gamma_v: v* Phi_K X -> Phi_J v* X.  ``I = None`` stands for
the unshifted derivator.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional

from halfder.fincat.category import FinCategory
from halfder.fincat.functor import (
    FinFunctor,
    FinNatTrans,
    FunctorError,
    compose,
    identity_functor,
    product_functor,
)
from halfder.fincat.squares import DOWN_LEFT, UP_RIGHT, commutative_square
from halfder.linalg import Matrix, block_diag
from halfder.report import Check, Tally
from halfder.repder.derivator import VECT, RepDerivator, shift
from halfder.repder.diagram import (
    Diagram,
    DiagramMap,
    compose_all,
    identity_map,
    zero_map,
)
from halfder.repder.mates import left_mate, right_mate
from halfder.repder.sampling import DEFAULT_POLICY, Policy, random_map, sample_diagrams

KINDS = (
    "identity",
    "pullback_along",
    "lan_along",
    "ran_along",
    "tensor_with",
    "direct_sum_with_constant",
    "composite",
)


class MorphismError(ValueError):
    pass


@dataclass(frozen=True)
class DerMorphism:
    kind: str
    source: Optional[FinCategory]
    target: Optional[FinCategory]
    functor: Optional[FinFunctor] = None
    n: int = 0
    parts: tuple = ()
    override: Optional[Callable] = None
    name: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MorphismError(f"unknown morphism kind {self.kind!r}")

    @property
    def src(self) -> RepDerivator:
        return _der(self.source)

    @property
    def tgt(self) -> RepDerivator:
        return _der(self.target)

    def __repr__(self):
        return f"<morphism {self.name or self.kind}>"


@lru_cache(maxsize=None)
def _der(I) -> RepDerivator:
    return VECT if I is None else shift(I)


def _along(u0: FinFunctor, K: FinCategory) -> FinFunctor:
    return product_functor(u0, identity_functor(K))


# constructors ------------------------------------------------------------------


def identity_morphism(I: Optional[FinCategory] = None) -> DerMorphism:
    return DerMorphism("identity", I, I, name="id")


def pullback_along(u0: FinFunctor) -> DerMorphism:
    """u0*: D^B -> D^A, strict."""
    return DerMorphism("pullback_along", u0.target, u0.source, u0, name=f"{u0.name}*")


def lan_along(u0: FinFunctor) -> DerMorphism:
    """u0_!: D^A -> D^B."""
    return DerMorphism("lan_along", u0.source, u0.target, u0, name=f"{u0.name}_!")


def ran_along(u0: FinFunctor) -> DerMorphism:
    """u0_*: D^A -> D^B."""
    return DerMorphism("ran_along", u0.source, u0.target, u0, name=f"{u0.name}_*")


def tensor_with(n: int, I: Optional[FinCategory] = None) -> DerMorphism:
    """X |-> X (x) Q^n, levelwise and strict."""
    if n < 0:
        raise MorphismError("dimension must be non-negative")
    return DerMorphism("tensor_with", I, I, n=n, name=f"(x)Q^{n}")


def direct_sum_with_constant(n: int, I: Optional[FinCategory] = None) -> DerMorphism:
    """X |-> X (+) const(Q^n), strict and not pointed for n > 0."""
    if n < 0:
        raise MorphismError("dimension must be non-negative")
    return DerMorphism("direct_sum_with_constant", I, I, n=n, name=f"(+)Q^{n}")


def composite(second: DerMorphism, first: DerMorphism) -> DerMorphism:
    """second after first."""
    if first.target != second.source:
        raise MorphismError(f"cannot compose {second!r} after {first!r}")
    return DerMorphism(
        "composite", first.source, second.target, parts=(first, second), name=f"{second.name}.{first.name}"
    )


def with_gamma_override(phi: DerMorphism, override: Callable, name: str = "") -> DerMorphism:
    """A copy of phi whose structure maps are post-processed by
    ``override(v, gamma) -> DiagramMap``; used for negative controls."""
    return DerMorphism(
        phi.kind, phi.source, phi.target, phi.functor, phi.n, phi.parts, override, name or f"{phi.name}~"
    )


# evaluation ----------------------------------------------------------------------------


@lru_cache(maxsize=None)
def apply(phi: DerMorphism, K: FinCategory, X: Diagram) -> Diagram:
    """Phi_K(X)."""
    k = phi.kind
    if X.shape != phi.src.level(K):
        raise MorphismError(f"{phi!r} at {K.name} expects a diagram on {phi.src.level(K).name}")
    if k == "identity":
        return X
    if k == "pullback_along":
        return VECT.pullback(_along(phi.functor, K), X)
    if k == "lan_along":
        return VECT.lan(_along(phi.functor, K), X)
    if k == "ran_along":
        return VECT.ran(_along(phi.functor, K), X)
    if k == "tensor_with":
        eye = Matrix.identity(phi.n)
        return Diagram(
            X.shape,
            {a: d * phi.n for a, d in X.dims.items()},
            {f: m.kron(eye) for f, m in X.mats.items()},
            check=False,
        )
    if k == "direct_sum_with_constant":
        eye = Matrix.identity(phi.n)
        return Diagram(
            X.shape,
            {a: d + phi.n for a, d in X.dims.items()},
            {f: block_diag([m, eye]) for f, m in X.mats.items()},
            check=False,
        )
    first, second = phi.parts
    return apply(second, K, apply(first, K, X))


@lru_cache(maxsize=None)
def apply_map(phi: DerMorphism, K: FinCategory, f: DiagramMap) -> DiagramMap:
    """Phi_K on a diagram map."""
    k = phi.kind
    if k == "identity":
        return f
    if k == "pullback_along":
        return VECT.pullback_map(_along(phi.functor, K), f)
    if k == "lan_along":
        return VECT.lan_map(_along(phi.functor, K), f)
    if k == "ran_along":
        return VECT.ran_map(_along(phi.functor, K), f)
    src, tgt = apply(phi, K, f.source), apply(phi, K, f.target)
    if k == "tensor_with":
        eye = Matrix.identity(phi.n)
        return DiagramMap(src, tgt, {a: m.kron(eye) for a, m in f.comps.items()}, check=False)
    if k == "direct_sum_with_constant":
        eye = Matrix.identity(phi.n)
        return DiagramMap(src, tgt, {a: block_diag([m, eye]) for a, m in f.comps.items()}, check=False)
    first, second = phi.parts
    return apply_map(second, K, apply_map(first, K, f))


def _base_square(u0: FinFunctor, v: FinFunctor, orientation: str):
    """(id_A x v, u0 x id_J, u0 x id_K, id_B x v): commutes on the nose."""
    J, K = v.source, v.target
    return commutative_square(
        product_functor(identity_functor(u0.source), v),
        _along(u0, J),
        _along(u0, K),
        product_functor(identity_functor(u0.target), v),
        orientation,
    )


@lru_cache(maxsize=None)
def gamma(phi: DerMorphism, v: FinFunctor, X: Diagram) -> DiagramMap:
    """gamma_v at X: v* Phi_K X -> Phi_J v* X, for X over the source at level K."""
    out = _gamma(phi, v, X)
    if phi.override is not None:
        out = phi.override(v, out)
    return out


def _gamma(phi: DerMorphism, v: FinFunctor, X: Diagram) -> DiagramMap:
    J, K = v.source, v.target
    k = phi.kind
    if k == "lan_along":
        return left_mate(_base_square(phi.functor, v, DOWN_LEFT), X).inverse()
    if k == "ran_along":
        return right_mate(_base_square(phi.functor, v, UP_RIGHT), X)
    if k == "composite":
        first, second = phi.parts
        inner = gamma(second, v, apply(first, K, X))
        outer = apply_map(second, J, gamma(first, v, X))
        return compose_all(outer, inner)
    # strict kinds: both sides agree as tables
    lhs = phi.tgt.pullback(v, apply(phi, K, X))
    rhs = apply(phi, J, phi.src.pullback(v, X))
    if lhs != rhs:
        raise MorphismError(f"{phi!r} is not strict at {v.name}")
    return identity_map(lhs)


# coherence -----------------------------------------------------------------------------


def composable_pairs(functors: Iterable[FinFunctor]) -> list[tuple[FinFunctor, FinFunctor]]:
    fs = list(functors)
    return [(u, v) for u in fs for v in fs if u.target == v.source]


def validate_morphism(
    phi: DerMorphism,
    functors: Iterable[FinFunctor],
    cells: Iterable[FinNatTrans] = (),
    policy: Policy = DEFAULT_POLICY,
) -> list[Check]:
    """Identity, composite, 2-cell, naturality and invertibility conditions
    for the structure maps, on sampled diagrams."""
    functors = list(functors)
    S, T = phi.src, phi.tgt
    ident, comp, cellt, nat, inv = Tally(), Tally(), Tally(), Tally(), Tally()

    def samples(K, key):
        return sample_diagrams(S.level(K), policy, f"morph:{key}")

    shapes = {u.source for u in functors} | {u.target for u in functors}
    for K in sorted(shapes, key=lambda c: c.name):
        for i, X in enumerate(samples(K, "id")):
            ident.record(gamma(phi, identity_functor(K), X).is_identity(), f"gamma_id at {K.name} sample {i}")
    for u in functors:
        rng = policy.rng(f"morph:nat:{u.name}")
        Xs = samples(u.target, "u")
        for i, X in enumerate(Xs):
            g = gamma(phi, u, X)
            inv.record(g.is_iso(), f"gamma_{u.name} sample {i} at {g.non_iso_witness()}")
            Y = Xs[(i + 1) % len(Xs)]
            f = random_map(X, Y, rng)
            lhs = compose_all(gamma(phi, u, Y), T.pullback_map(u, apply_map(phi, u.target, f)))
            rhs = compose_all(apply_map(phi, u.source, S.pullback_map(u, f)), g)
            nat.record(lhs == rhs, f"gamma_{u.name} not natural at sample {i}")
    for u, v in composable_pairs(functors):
        for i, X in enumerate(samples(v.target, "uv")):
            whole = gamma(phi, compose(v, u), X)
            parts = compose_all(gamma(phi, u, S.pullback(v, X)), T.pullback_map(u, gamma(phi, v, X)))
            comp.record(whole == parts, f"gamma_({v.name}.{u.name}) sample {i}")
    for alpha in cells:
        u, v = alpha.source, alpha.target
        for i, X in enumerate(samples(u.target, "cell")):
            lhs = compose_all(gamma(phi, v, X), T.pullback_cell(alpha, apply(phi, u.target, X)))
            rhs = compose_all(apply_map(phi, u.source, S.pullback_cell(alpha, X)), gamma(phi, u, X))
            cellt.record(lhs == rhs, f"cell {alpha.name} sample {i}")
    c = "subject to coherence conditions"
    return [
        ident.check(f"{phi.name}: gamma_id is the identity", c),
        comp.check(f"{phi.name}: gamma respects composites", "the pasting on the left be equal to the square on the right"),
        cellt.check(f"{phi.name}: gamma respects 2-cells", c),
        nat.check(f"{phi.name}: gamma natural in X", c),
        inv.check(f"{phi.name}: gamma invertible", c),
    ]


def is_strict(phi: DerMorphism, functors, policy: Policy = DEFAULT_POLICY) -> bool:
    for u in functors:
        for X in sample_diagrams(phi.src.level(u.target), policy, "morph:strict"):
            if not gamma(phi, u, X).is_identity():
                return False
    return True


# (co)continuity ---------------------------------------------------------------------------


def cocontinuity_comparison(phi: DerMorphism, u: FinFunctor, X: Diagram) -> DiagramMap:
    """u_! Phi_J X -> Phi_K u_! X, the left mate of gamma_u^{-1}."""
    S, T = phi.src, phi.tgt
    J, K = u.source, u.target
    Y = S.lan(u, X)
    a = T.lan_map(u, apply_map(phi, J, S.lan_unit(u, X)))
    b = T.lan_map(u, gamma(phi, u, Y).inverse())
    c = T.lan_counit(u, apply(phi, K, Y))
    return compose_all(c, b, a)


def continuity_comparison(phi: DerMorphism, u: FinFunctor, X: Diagram) -> DiagramMap:
    """Phi_K u_* X -> u_* Phi_J X, the right mate of gamma_u."""
    S, T = phi.src, phi.tgt
    J, K = u.source, u.target
    Y = S.ran(u, X)
    a = T.ran_unit(u, apply(phi, K, Y))
    b = T.ran_map(u, gamma(phi, u, Y))
    c = T.ran_map(u, apply_map(phi, J, S.ran_counit(u, X)))
    return compose_all(c, b, a)


@dataclass
class ContinuityVerdict:
    morphism: DerMorphism
    functor: FinFunctor
    side: str
    passed: bool
    instances: int
    witness: str = ""

    def __bool__(self):
        return self.passed


def _verdict(phi, u, side, policy) -> ContinuityVerdict:
    cmp = cocontinuity_comparison if side == "left" else continuity_comparison
    n = 0
    for i, X in enumerate(sample_diagrams(phi.src.level(u.source), policy, f"cocont:{side}")):
        m = cmp(phi, u, X)
        n += 1
        bad = m.non_iso_witness()
        if bad is not None:
            return ContinuityVerdict(phi, u, side, False, n, f"sample {i} at {bad}")
    return ContinuityVerdict(phi, u, side, True, n)


def is_cocontinuous(phi: DerMorphism, u: FinFunctor, policy: Policy = DEFAULT_POLICY) -> ContinuityVerdict:
    return _verdict(phi, u, "left", policy)


def is_continuous(phi: DerMorphism, u: FinFunctor, policy: Policy = DEFAULT_POLICY) -> ContinuityVerdict:
    return _verdict(phi, u, "right", policy)


@dataclass
class RouteAgreement:
    along_functors: bool
    along_projections: bool
    failures: list

    @property
    def agrees(self) -> bool:
        return self.along_functors == self.along_projections


def route_agreement(
    phi: DerMorphism, functors: Iterable[FinFunctor], shapes: Iterable[FinCategory], policy=DEFAULT_POLICY
) -> RouteAgreement:
    """Cocontinuity along every given functor versus only along projections."""
    from halfder.fincat.functor import projection

    fails = []
    along_u = True
    for u in functors:
        v = is_cocontinuous(phi, u, policy)
        if not v:
            along_u = False
            fails.append(f"{u.name}: {v.witness}")
    along_pi = True
    for K in shapes:
        v = is_cocontinuous(phi, projection(K), policy)
        if not v:
            along_pi = False
            fails.append(f"pi_{K.name}: {v.witness}")
    return RouteAgreement(along_u, along_pi, fails)


# modifications and adjunctions -------------------------------------------------------------


@dataclass(frozen=True)
class Modification:
    """mu: Phi => Psi, given by ``component(K, X): Phi_K X -> Psi_K X``."""

    source: DerMorphism
    target: DerMorphism
    component: Callable
    name: str = ""

    def __post_init__(self):
        if (self.source.source, self.source.target) != (self.target.source, self.target.target):
            raise MorphismError("modification between non-parallel morphisms")

    def at(self, K: FinCategory, X: Diagram) -> DiagramMap:
        return self.component(K, X)


def identity_modification(phi: DerMorphism) -> Modification:
    return Modification(phi, phi, lambda K, X: identity_map(apply(phi, K, X)), f"id_{phi.name}")


def zero_modification(phi: DerMorphism, psi: DerMorphism) -> Modification:
    return Modification(
        phi, psi, lambda K, X: zero_map(apply(phi, K, X), apply(psi, K, X)), "0"
    )


def check_modification(
    mu: Modification, functors: Iterable[FinFunctor], policy: Policy = DEFAULT_POLICY
) -> Check:
    """mu_J(u* X) . gamma^Phi_u(X) == gamma^Psi_u(X) . u*(mu_K X)."""
    phi, psi = mu.source, mu.target
    t = Tally()
    for u in functors:
        J, K = u.source, u.target
        for i, X in enumerate(sample_diagrams(phi.src.level(K), policy, "modif")):
            lhs = compose_all(mu.at(J, phi.src.pullback(u, X)), gamma(phi, u, X))
            rhs = compose_all(gamma(psi, u, X), phi.tgt.pullback_map(u, mu.at(K, X)))
            t.record(lhs == rhs, f"{mu.name} at {u.name} sample {i}")
    return t.check(f"{mu.name}: modification axiom", "an equality of pastings")


def lan_pullback_adjunction(u0: FinFunctor):
    """(u0_!, u0*, eta, eps) as morphisms of derivators."""
    phi, psi = lan_along(u0), pullback_along(u0)
    eta = Modification(
        identity_morphism(u0.source),
        composite(psi, phi),
        lambda K, X: VECT.lan_unit(_along(u0, K), X),
        "eta",
    )
    eps = Modification(
        composite(phi, psi),
        identity_morphism(u0.target),
        lambda K, Y: VECT.lan_counit(_along(u0, K), Y),
        "eps",
    )
    return phi, psi, eta, eps


def check_morphism_adjunction(
    phi: DerMorphism,
    psi: DerMorphism,
    eta: Modification,
    eps: Modification,
    shapes: Iterable[FinCategory],
    functors: Iterable[FinFunctor] = (),
    policy: Policy = DEFAULT_POLICY,
) -> list[Check]:
    """Levelwise triangle identities, plus the modification axiom for eta
    and eps along ``functors``."""
    if phi.source != psi.target or phi.target != psi.source:
        raise MorphismError("adjunction between non-opposed morphisms")
    left, right = Tally(), Tally()
    for K in shapes:
        for i, X in enumerate(sample_diagrams(phi.src.level(K), policy, "madj:X")):
            tri = compose_all(eps.at(K, apply(phi, K, X)), apply_map(phi, K, eta.at(K, X)))
            left.record(tri.is_identity(), f"eps Phi . Phi eta at {K.name} sample {i}")
        for i, Y in enumerate(sample_diagrams(psi.src.level(K), policy, "madj:Y")):
            tri = compose_all(apply_map(psi, K, eps.at(K, Y)), eta.at(K, apply(psi, K, Y)))
            right.record(tri.is_identity(), f"Psi eps . eta Psi at {K.name} sample {i}")
    c = "satisfying the usual triangle identities"
    out = [
        left.check(f"{phi.name} -| {psi.name}: first triangle", c),
        right.check(f"{phi.name} -| {psi.name}: second triangle", c),
    ]
    functors = list(functors)
    if functors:
        out.append(check_modification(eta, functors, policy))
        out.append(check_modification(eps, functors, policy))
    return out


def swap_at(target: FinFunctor) -> Callable:
    """An override composing gamma_target with a basis swap in every
    component of dimension at least 2; leaves other gammas alone."""

    def override(v, g):
        if v != target:
            return g
        comps = {}
        for a, m in g.comps.items():
            n = m.rows
            if n >= 2:
                perm = [[int(j == (1 - i if i < 2 else i)) for j in range(n)] for i in range(n)]
                m = Matrix(n, n, perm) @ m
            comps[a] = m
        return DiagramMap(g.source, g.target, comps, check=False)

    return override


__all__ = [
    "DerMorphism",
    "MorphismError",
    "KINDS",
    "identity_morphism",
    "pullback_along",
    "lan_along",
    "ran_along",
    "tensor_with",
    "direct_sum_with_constant",
    "composite",
    "with_gamma_override",
    "apply",
    "apply_map",
    "gamma",
    "validate_morphism",
    "is_strict",
    "cocontinuity_comparison",
    "continuity_comparison",
    "is_cocontinuous",
    "is_continuous",
    "route_agreement",
    "Modification",
    "identity_modification",
    "zero_modification",
    "check_modification",
    "lan_pullback_adjunction",
    "check_morphism_adjunction",
    "swap_at",
]
