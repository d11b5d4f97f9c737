"""Pointed structure of the represented derivator: extension by zero,
cocartesian squares, cofibers, the exceptional adjoint of the sieve
[1] -> corner, and the K0 relation for cofiber sequences."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from halfder.derimorph import (
    DerMorphism,
    apply,
    cocontinuity_comparison,
    continuity_comparison,
)
from halfder.fincat.category import FinCategory, corner, empty, ordinal, poset, square
from halfder.fincat.functor import FinFunctor, empty_functor, inclusion
from halfder.fincat.predicates import sieve_kind, sieve_witness
from halfder.linalg import Matrix, kernel_basis, rank, solve
from halfder.report import Check, Tally
from halfder.repder.derivator import VECT
from halfder.repder.diagram import (
    Diagram,
    DiagramMap,
    compose_all,
    identity_map,
    zero_diagram,
    zero_map,
)
from halfder.repder.sampling import DEFAULT_POLICY, Policy, hom_basis, random_map, sample_diagrams

A, B, C, Z = "(0,0)", "(1,0)", "(0,1)", "(1,1)"
AB, AC = f"{A}->{B}", f"{A}->{C}"
AD, BD, CD = f"{A}->{Z}", f"{B}->{Z}", f"{C}->{Z}"


class PointedError(ValueError):
    pass


def i_interval() -> FinFunctor:
    return inclusion(ordinal(1), corner(), {"0": A, "1": B}, name="i_[1]")


def i_corner() -> FinFunctor:
    return inclusion(corner(), square(), name="i_corner")


# extension by zero -------------------------------------------------------------------


@dataclass
class Extension:
    functor: FinFunctor
    side: str
    value: Diagram
    restriction_iso: DiagramMap
    zero_objects: tuple

    @property
    def characterized(self) -> bool:
        return self.restriction_iso.is_iso() and all(self.value.dims[k] == 0 for k in self.zero_objects)


def extend_by_zero(u: FinFunctor, X: Diagram) -> Extension:
    """u_* X along a sieve, u_! X along a cosieve (ran when u is both).

    The restriction is compared with X through the (co)unit and the value
    off the image is checked to vanish.
    """
    kind = sieve_kind(u)
    if kind == "neither":
        raise PointedError(f"{u.name} is neither a sieve nor a cosieve: {sieve_witness(u, 'sieve')}")
    image = set(u.obj_map.values())
    off = tuple(k for k in u.target.objects if k not in image)
    if kind in ("sieve", "both"):
        value = VECT.ran(u, X)
        iso = VECT.ran_counit(u, X)
        side = "right"
    else:
        value = VECT.lan(u, X)
        iso = VECT.lan_unit(u, X)
        side = "left"
    ext = Extension(u, side, value, iso, off)
    if not ext.characterized:
        bad = [k for k in off if value.dims[k]] or [iso.non_iso_witness()]
        raise PointedError(f"extension by zero along {u.name} fails its characterization at {bad[0]}")
    return ext


def zero_is_initial_and_final(Y: Diagram) -> bool:
    """Hom(0, Y) and Hom(Y, 0) are both the single zero map."""
    O = zero_diagram(Y.shape)
    return not hom_basis(O, Y) and not hom_basis(Y, O)


def pointed_levels_check(K: FinCategory, policy: Policy = DEFAULT_POLICY) -> Check:
    """The canonical map from the left to the right extension of the empty
    diagram along the empty functor is invertible, and the result is a zero
    object of D(K)."""
    i = empty_functor(K)
    E = zero_diagram(empty())
    lo, hi = VECT.lan(i, E), VECT.ran(i, E)
    t = Tally()
    # lo is initial, so the canonical map is the unique (zero) map
    t.record(not hom_basis(lo, hi), f"{K.name}: more than one map out of the left extension")
    t.record(zero_map(lo, hi).is_iso(), f"{K.name}: canonical map not invertible")
    for i_, Y in enumerate(sample_diagrams(K, policy, "pointed")):
        t.record(zero_is_initial_and_final(Y), f"{K.name}: zero is not initial and final at sample {i_}")
    return t.check(f"D({K.name}) is pointed", "initial objects in D(K) are also final")


# cocartesian squares and cofibers --------------------------------------------------------


@dataclass
class CocartesianVerdict:
    ok: bool
    comparison: Matrix

    def __bool__(self):
        return self.ok


def is_cocartesian(X: Diagram) -> CocartesianVerdict:
    """The counit of i_corner,! at (1,1) is invertible."""
    if X.shape != square():
        raise PointedError("is_cocartesian expects a diagram on the square")
    u = i_corner()
    m = VECT.lan_counit(u, X).comps[Z]
    return CocartesianVerdict(m.is_invertible(), m)


@dataclass
class CofiberResult:
    input: Diagram
    intermediate: Diagram
    output: Diagram
    restriction_iso: DiagramMap
    cocartesian: CocartesianVerdict

    @property
    def cofiber(self) -> int:
        return self.output.dims[Z]

    @property
    def leg(self) -> Matrix:
        """The map (1,0) -> (1,1) onto the cofiber."""
        return self.output.mats[BD]


def cofiber(f: Diagram) -> CofiberResult:
    if f.shape != ordinal(1):
        raise PointedError("cofiber expects a diagram on [1]")
    mid = extend_by_zero(i_interval(), f).value
    u = i_corner()
    out = VECT.lan(u, mid)
    iso = VECT.lan_unit(u, mid)
    res = CofiberResult(f, mid, out, iso, is_cocartesian(out))
    if not iso.is_iso() or out.dims[C] != 0 or not res.cocartesian:
        raise PointedError("cofiber invariants violated")
    return res


# the exceptional adjoint of i_[1] ---------------------------------------------------------


def ext_zero_interval(X: Diagram) -> Diagram:
    """i_[1],* X written directly: (X0 -> X1) with zero at (0,1)."""
    if X.shape != ordinal(1):
        raise PointedError("expected a diagram on [1]")
    d0, d1 = X.dims["0"], X.dims["1"]
    K = corner()
    return Diagram(
        K,
        {A: d0, B: d1, C: 0},
        {
            K.id(A): Matrix.identity(d0),
            K.id(B): Matrix.identity(d1),
            K.id(C): Matrix.identity(0),
            AB: X.mats["0->1"],
            AC: Matrix.zeros(0, d0),
        },
    )


def _interval(p: int, b: int, m: Matrix) -> Diagram:
    I = ordinal(1)
    return Diagram(I, {"0": p, "1": b}, {"id[0]": Matrix.identity(p), "id[1]": Matrix.identity(b), "0->1": m})


def exceptional_kernel(Y: Diagram) -> tuple[Diagram, Matrix]:
    """(P -> Y(b)) with P = ker(Y(a -> c)); also returns the inclusion P -> Y(a)."""
    if Y.shape != corner():
        raise PointedError("exceptional adjoint expects a diagram on the corner")
    incl = kernel_basis(Y.mats[AC])
    return _interval(incl.cols, Y.dims[B], Y.mats[AB] @ incl), incl


def exceptional_right_adjoint_i1(Y: Diagram) -> Diagram:
    return exceptional_kernel(Y)[0]


def _cross_shapes():
    Kp = poset(["a", "b", "c", "z"], [("a", "b"), ("a", "c"), ("z", "c")], name="corner+z")
    Kpp = poset(
        ["a", "b", "c", "z", "p"],
        [("a", "b"), ("a", "c"), ("z", "c"), ("p", "a"), ("p", "z"), ("p", "b"), ("p", "c")],
        name="corner+z+p",
    )
    j = inclusion(corner(), Kp, {A: "a", B: "b", C: "c"}, name="j")
    k = inclusion(Kp, Kpp, name="k")
    r = inclusion(ordinal(1), Kpp, {"0": "p", "1": "b"}, name="r")
    return j, k, r


def exceptional_ran_route(Y: Diagram) -> Diagram:
    """Extend by zero along the cosieve adding z -> c, take the limit at a
    new object p below a and z, restrict to p -> b."""
    j, k, r = _cross_shapes()
    W = extend_by_zero(j, Y).value
    V = VECT.ran(k, W)
    return VECT.pullback(r, V)


def exceptional_routes_agree(Y: Diagram) -> Optional[DiagramMap]:
    """An explicit isomorphism from the ran route to the kernel route, or None."""
    ker, incl = exceptional_kernel(Y)
    R = exceptional_ran_route(Y)
    j, k, r = _cross_shapes()
    # the leg p -> a, moved into Y(a) by the counit, lands in the kernel
    W = extend_by_zero(j, Y).value
    eps = VECT.ran_counit(k, W)
    leg = eps.comps["a"] @ VECT.ran(k, W).mats["p->a"]
    theta = solve(incl, leg)
    if theta is None or not theta.is_invertible() or not eps.comps["b"].is_invertible():
        return None
    try:
        return DiagramMap(R, ker, {"0": theta, "1": eps.comps["b"]})
    except ValueError:
        return None


def exc_flat(X: Diagram, Y: Diagram, phi: DiagramMap) -> DiagramMap:
    """Hom(i_* X, Y) -> Hom(X, i^! Y)."""
    ker, incl = exceptional_kernel(Y)
    psi0 = solve(incl, phi.comps[A])
    if psi0 is None:
        raise PointedError("component at (0,0) does not land in the kernel")
    return DiagramMap(X, ker, {"0": psi0, "1": phi.comps[B]})


def exc_sharp(X: Diagram, Y: Diagram, psi: DiagramMap) -> DiagramMap:
    """Hom(X, i^! Y) -> Hom(i_* X, Y)."""
    _, incl = exceptional_kernel(Y)
    return DiagramMap(
        ext_zero_interval(X), Y, {A: incl @ psi.comps["0"], B: psi.comps["1"], C: Matrix.zeros(Y.dims[C], 0)}
    )


def exceptional_adjoint_check(policy: Policy = DEFAULT_POLICY) -> list[Check]:
    """Hom round trips on sampled pairs, and agreement of the two routes."""
    Xs = sample_diagrams(ordinal(1), policy, "exc:X")
    Ys = sample_diagrams(corner(), policy, "exc:Y")
    rng = policy.rng("exc")
    hom, routes, ext = Tally(), Tally(), Tally()
    n = max(len(Xs), len(Ys))
    for i in range(n):
        X, Y = Xs[i % len(Xs)], Ys[i % len(Ys)]
        iX = ext_zero_interval(X)
        # iX lies in the essential image, so its unit is an explicit iso onto i_* X
        unit = VECT.ran_unit(i_interval(), iX)
        ext.record(
            unit.is_iso() and unit.target == extend_by_zero(i_interval(), X).value,
            f"sample {i}: direct extension by zero differs from the right Kan extension",
        )
        phi = random_map(iX, Y, rng)
        hom.record(exc_sharp(X, Y, exc_flat(X, Y, phi)) == phi, f"sample {i}: Hom(i_* X, Y) round trip")
        psi = random_map(X, exceptional_right_adjoint_i1(Y), rng)
        hom.record(exc_flat(X, Y, exc_sharp(X, Y, psi)) == psi, f"sample {i}: Hom(X, i^! Y) round trip")
    for i, Y in enumerate(Ys):
        routes.record(exceptional_routes_agree(Y) is not None, f"sample {i}: kernel and ran routes differ")
    return [
        hom.check("i_[1]^! hom bijection", "admits a right adjoint u^!"),
        routes.check("i_[1]^! kernel route equals ran route", "the formula for i_{[1]}^! is"),
        ext.check("direct extension by zero matches the right Kan extension", "essential image X in D(K) such that"),
    ]


# K0 ------------------------------------------------------------------------------------------


@dataclass
class K0Report:
    mono: bool
    dims: dict
    holds: Optional[bool]
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.holds is not False


def k0_additivity_check(X: Diagram) -> K0Report:
    """[B] = [A] + [C] for a cocartesian square with zero at (0,1), asserted
    only when A -> B is a monomorphism."""
    if X.shape != square():
        raise PointedError("k0 check expects a diagram on the square")
    if X.dims[C] != 0:
        raise PointedError(f"value at {C} is not zero (dim {X.dims[C]})")
    if not is_cocartesian(X):
        raise PointedError("square is not cocartesian")
    dims = {"A": X.dims[A], "B": X.dims[B], "C": X.dims[Z]}
    mono = rank(X.mats[AB]) == X.dims[A]
    if not mono:
        return K0Report(False, dims, None, f"A -> B is not a monomorphism; dim C = {dims['C']}, dim B = {dims['B']}")
    return K0Report(True, dims, dims["B"] == dims["A"] + dims["C"])


def cofiber_square(f: Diagram) -> Diagram:
    return cofiber(f).output


# pointed morphisms --------------------------------------------------------------------------


def is_pointed(phi: DerMorphism, shapes) -> Optional[str]:
    """None if Phi sends zero diagrams to zero diagrams, else a witness."""
    for K in shapes:
        out = apply(phi, K, zero_diagram(phi.src.level(K)))
        if out.total_dim():
            bad = next(a for a, d in out.dims.items() if d)
            return f"Phi_{K.name}(0) has dim {out.dims[bad]} at {bad}"
    return None


def pointed_morphism_extzero_commute(
    phi: DerMorphism, u: FinFunctor, policy: Policy = DEFAULT_POLICY
) -> Check:
    """The comparison between Phi and extension by zero along u is invertible."""
    bad = is_pointed(phi, (u.source, u.target))
    if bad:
        raise PointedError(f"{phi.name} is not pointed: {bad}")
    kind = sieve_kind(u)
    if kind == "neither":
        raise PointedError(f"{u.name} is neither a sieve nor a cosieve: {sieve_witness(u, 'sieve')}")
    cmp = continuity_comparison if kind in ("sieve", "both") else cocontinuity_comparison
    t = Tally()
    for i, X in enumerate(sample_diagrams(phi.src.level(u.source), policy, "extzero")):
        m = cmp(phi, u, X)
        t.record(m.is_iso(), f"sample {i} at {m.non_iso_witness()}")
    return t.check(f"{phi.name} commutes with extension by zero along {u.name}", "commutes with extension by zero morphisms")


__all__ = [
    "PointedError",
    "i_interval",
    "i_corner",
    "Extension",
    "extend_by_zero",
    "zero_is_initial_and_final",
    "pointed_levels_check",
    "CocartesianVerdict",
    "is_cocartesian",
    "CofiberResult",
    "cofiber",
    "ext_zero_interval",
    "exceptional_kernel",
    "exceptional_right_adjoint_i1",
    "exceptional_ran_route",
    "exceptional_routes_agree",
    "exc_flat",
    "exc_sharp",
    "exceptional_adjoint_check",
    "K0Report",
    "k0_additivity_check",
    "cofiber_square",
    "is_pointed",
    "pointed_morphism_extzero_commute",
]
