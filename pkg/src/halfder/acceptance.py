"""The acceptance registry: every criterion as a list of checks over the
fixed corpus, rendered in registry order."""

from __future__ import annotations

import time
from typing import Callable

from halfder import corpus as cp
from halfder.derimorph import (
    check_morphism_adjunction,
    direct_sum_with_constant,
    is_cocontinuous,
    lan_pullback_adjunction,
    ran_along,
    route_agreement,
    swap_at,
    tensor_with,
    validate_morphism,
    with_gamma_override,
    zero_modification,
)
from halfder.exactness import (
    build_named_square,
    check_exact,
    comma_proof_adjunction,
    ff_kan_fully_faithful_check,
    negative_control_square,
    pasting_cancellation_check,
)
from halfder.fincat.category import corner, ordinal, square, terminal
from halfder.fincat.functor import identity_functor, poset_cell, product_projection
from halfder.fincat.predicates import (
    check_adjunction,
    final_object_adjunction,
    initial_object_adjunction,
)
from halfder.fincat.squares import (
    comma_square_left,
    comma_square_right,
    horizontal_identity,
    paste,
    transpose,
)
from halfder.linalg import Matrix, rank
from halfder.pointed import (
    cofiber,
    exceptional_adjoint_check,
    extend_by_zero,
    k0_additivity_check,
    pointed_levels_check,
    pointed_morphism_extzero_commute,
)
from halfder.report import Check, Report, Tally
from halfder.repder.axioms import check_axioms, check_der1, check_der2, pullback_is_strict
from halfder.repder.derivator import VECT, shift
from halfder.repder.diagram import Diagram
from halfder.repder.mates import (
    mate_component,
    mate_input_shape,
    natural_side,
    other_side,
    pasted_mate_horizontal,
    pasted_mate_vertical,
    unmate,
)
from halfder.repder.sampling import DEFAULT_POLICY, Policy, random_diagram, random_invertible, sample_diagrams

CRITERIA = {
    1: "axiom suite",
    2: "mate calculus",
    3: "exact-square families",
    4: "pasting cancellation",
    5: "fully faithful Kan extensions",
    6: "pointed suite",
    7: "morphism suite",
    8: "K0 additivity",
    9: "determinism",
}


def _f():
    return cp.functors()


# square instances -------------------------------------------------------------------------


def named_squares() -> list:
    """One or more instances of every exact-square family."""
    f = _f()
    out = []
    for u in (f["0:[1]"], f["i_[1]"], f["d1"], f["s0"], f["bd:N"], f["pi_corner"]):
        for k in u.target.objects:
            out.append(build_named_square("comma_der4l", u, k))
            out.append(build_named_square("comma_der4r", u, k))
    for u1, u2 in (
        (f["i_[1]"], f["(0,1):corner"]),
        (f["d0"], f["d1"]),
        (f["0:[1]"], f["1:[1]"]),
        (f["ab:N"], f["bd:N"]),
    ):
        out.append(build_named_square("comma_cospan", u1, u2))
    for K in (ordinal(1), ordinal(2), square(), terminal()):
        out.append(build_named_square("adjoint_right", *final_object_adjunction(K)))
    for K in (ordinal(1), corner(), square()):
        out.append(build_named_square("adjoint_left", *initial_object_adjunction(K)))
    for u in (f["i_corner"], f["i_[1]"], f["d0"], f["bd:N"], f["id_square"]):
        out.append(build_named_square("ff_unit", u))
    q = product_projection(ordinal(1), corner(), 0)
    for w in (f["0:[1]"], f["1:[1]"], f["id_[1]"], f["s0"]):
        out.append(build_named_square("strict_pullback", q, w))
    return out


def cancellation_squares() -> list:
    f = _f()
    return [
        build_named_square("ff_unit", f["i_corner"]),
        build_named_square("ff_unit", f["i_[1]"]),
        build_named_square("comma_der4l", f["i_[1]"], "(1,0)"),
        build_named_square("comma_cospan", f["d0"], f["d1"]),
        build_named_square("adjoint_right", *final_object_adjunction(ordinal(1))),
        negative_control_square(),
    ]


# criteria -----------------------------------------------------------------------------------


def criterion_axioms(policy: Policy) -> list[Check]:
    f = _f()
    checks = check_axioms(cp.categories().values(), f.values(), cp.coproduct_shapes(), policy)
    D = shift(corner())
    checks.append(_retitle(check_der1(D, [(terminal(), terminal()), (ordinal(1), terminal())], policy), "Der1 on the shift by corner"))
    checks += [_retitle(c, c.name + " on the shift by corner") for c in check_der2(D, [terminal(), ordinal(1)], policy)]
    t = Tally()
    for u in f.values():
        for v in f.values():
            if u.target != v.source:
                continue
            for i, X in enumerate(sample_diagrams(v.target, policy, "strict")[:4]):
                t.record(pullback_is_strict(VECT, u, v, X), f"({v.name}.{u.name})* at sample {i}")
    checks.append(t.check("pullback is strictly functorial", "precomposition with u"))
    return checks


def _retitle(c: Check, name: str) -> Check:
    c.name = name
    return c


def criterion_mates(policy: Policy) -> list[Check]:
    f = _f()
    paste_t, inv_t, sides_t = Tally(), Tally(), Tally()
    strips = []
    for u, k in ((f["i_[1]"], "(1,0)"), (f["d1"], "2"), (f["bd:N"], "c")):
        # (p/c) pasted on the left of a comma square, and its transpose strip
        s = comma_square_left(u, k)
        for c in s.C.objects:
            strips.append(("horizontal", comma_square_left(s.p, c), s))
        strips.append(("horizontal", s, horizontal_identity(s.q)))
    for s in cancellation_squares():
        for b in s.B.objects:
            strips.append(("vertical", transpose(comma_square_right(s.v, b)), s))
    for direction, s1, s2 in strips:
        whole = paste(s1, s2, direction)
        side = natural_side(whole) if direction == "horizontal" else other_side(whole)
        shape = mate_input_shape(whole, side)
        pasted = pasted_mate_horizontal if direction == "horizontal" else pasted_mate_vertical
        for i, X in enumerate(sample_diagrams(shape, policy, "paste")[:8]):
            paste_t.record(
                mate_component(whole, side, X) == pasted(s1, s2, X),
                f"{direction} {s1.name}|{s2.name} sample {i}",
            )
    squares = named_squares() + [negative_control_square()]
    for s in squares:
        for t in (s, transpose(s)):
            for i, Y in enumerate(sample_diagrams(t.D, policy, "unmate")[:6]):
                inv_t.record(unmate(t, Y) == VECT.pullback_cell(t.cell, Y), f"{t.name} sample {i}")
        left = bool(check_exact(s, "left", policy))
        right = bool(check_exact(s, "right", policy))
        sides_t.record(left == right, f"{s.name}: left {left}, right {right}")
    return [
        paste_t.check("mates compatible with pasting", "compatible with pasting"),
        inv_t.check("mate construction inverts", "inverse to each other"),
        sides_t.check("left mate iso iff right mate iso", "is a natural isomorphism if and only if"),
    ]


def criterion_families(policy: Policy) -> list[Check]:
    f = _f()
    t = Tally()
    for s in named_squares():
        v = check_exact(s, natural_side(s), policy)
        t.record(bool(v), f"{s.name}: {v.summary()}")
    neg = Tally()
    v = check_exact(negative_control_square(), "left", policy)
    neg.record(not v and v.reproduce(), "negative control square passed or witness did not reproduce")
    adj = Tally()
    for u1, u2 in ((f["i_[1]"], f["(0,1):corner"]), (f["d0"], f["d1"]), (f["ab:N"], f["bd:N"])):
        for j2 in u2.source.objects:
            adj.record(bool(check_adjunction(*comma_proof_adjunction(u1, u2, j2))), f"{u1.name}/{u2.name} at {j2}")
    return [
        t.check("named exact squares pass", "is D-exact for any half derivator"),
        neg.check("negative control square fails reproducibly", "We call such a square"),
        adj.check("comma proof adjunction l -| r", "r is a right adjoint"),
    ]


def criterion_cancellation(policy: Policy) -> list[Check]:
    t = Tally()
    for s in cancellation_squares():
        for mode in ("horizontal_over_c", "vertical_under_b"):
            rep = pasting_cancellation_check(s, mode, policy)
            t.record(rep.agrees, f"{s.name} {mode}: square {rep.square_verdict}, pastings {rep.pasted}")
    return [t.check("verdicts agree with comma pastings", "if and only if the pasting")]


def criterion_ff(policy: Policy) -> list[Check]:
    f = _f()
    out = []
    for u in (f["i_corner"], f["i_[1]"], f["id_corner"], identity_functor(terminal())):
        out += ff_kan_fully_faithful_check(u, policy)
    return out


def random_maps_on_interval(policy: Policy, key: str) -> list[Diagram]:
    return list(sample_diagrams(ordinal(1), policy, key)[3:])


def criterion_pointed(policy: Policy) -> list[Check]:
    f = _f()
    ext = Tally()
    for name in ("i_[1]", "i_corner", "0:[1]", "1:[1]", "(0,1):corner", "empty->e", "empty->[1]", "d2", "d0"):
        u = f[name]
        for i, X in enumerate(sample_diagrams(u.source, policy, "extzero")):
            try:
                ext.record(extend_by_zero(u, X).characterized, f"{name} sample {i}")
            except ValueError as exc:
                ext.record(False, f"{name} sample {i}: {exc}")
    out = [ext.check("extension by zero is characterized", "essential image X in D(K) such that")]
    lv = Tally()
    for K in cp.categories().values():
        c = pointed_levels_check(K, policy)
        lv.instances += c.instances - 1
        lv.record(c.passed, c.detail)
    out.append(lv.check("every corpus level is pointed", "initial objects in D(K) are also final"))
    cf = Tally()
    for i, X in enumerate(random_maps_on_interval(policy, "cofiber")):
        r = cofiber(X)
        expect = X.dims["1"] - rank(X.mats["0->1"])
        cf.record(bool(r.cocartesian) and r.cofiber == expect, f"map {i}: dim {r.cofiber}, expected {expect}")
    out.append(cf.check("cofiber is cocartesian with dim cod - rank", "to compute its cofibre"))
    out += exceptional_adjoint_check(policy)
    return out


def criterion_morphisms(policy: Policy) -> list[Check]:
    f = _f()
    fs = list(f.values())
    shapes = list(cp.categories().values())
    small = [f[n] for n in ("pi_[1]", "0:[1]", "1:[1]", "d1", "s0", "pi_corner", "(0,1):corner")]
    cells = [poset_cell(f["0:[1]"], f["1:[1]"]), poset_cell(f["d2"], f["d1"]), poset_cell(f["d1"], f["d0"])]
    istar = ran_along(f["i_[1]"])
    out = []
    out += validate_morphism(tensor_with(2), fs, cells, policy)
    out += validate_morphism(istar, small, cells[:1], policy)
    out += validate_morphism(direct_sum_with_constant(1), fs, cells, policy)
    bad = validate_morphism(with_gamma_override(tensor_with(2), swap_at(f["pi_[1]"])), [f["pi_[1]"], f["0:[1]"]], (), policy)
    neg = Tally()
    neg.record(not all(c.passed for c in bad), "perturbed structure maps were accepted")
    out.append(neg.check("perturbed structure maps rejected", "subject to coherence conditions"))

    route = Tally()
    for phi, expect in ((istar, True), (tensor_with(2), True), (direct_sum_with_constant(1), False)):
        ra = route_agreement(phi, fs, shapes, policy)
        route.record(ra.agrees, f"{phi.name}: along functors {ra.along_functors}, along projections {ra.along_projections}")
        route.record(ra.along_functors == expect, f"{phi.name}: cocontinuity {ra.along_functors}, expected {expect}")
    out.append(route.check("cocontinuity: all functors vs projections", "preserves (homotopy) colimits"))

    cc = Tally()
    v = is_cocontinuous(istar, f["pi_corner"], policy)
    cc.record(bool(v), f"i_* along pi_corner: {v.witness}")
    v = is_cocontinuous(tensor_with(2), f["pi_corner"], policy)
    cc.record(bool(v), f"tensor along pi_corner: {v.witness}")
    v = is_cocontinuous(direct_sum_with_constant(1), f["pi_discrete(2)"], policy)
    cc.record(not v, "direct sum with a constant passed at discrete(2)")
    out.append(cc.check("cocontinuity verdicts", "is a cocontinuous morphism of derivators"))

    out.append(pointed_morphism_extzero_commute(tensor_with(2), f["i_[1]"], policy))
    out.append(pointed_morphism_extzero_commute(tensor_with(2), f["1:[1]"], policy))

    phi, psi, eta, eps = lan_pullback_adjunction(f["i_[1]"])
    out += check_morphism_adjunction(phi, psi, eta, eps, [terminal(), ordinal(1)], [f["pi_[1]"], f["0:[1]"]], policy)
    z = check_morphism_adjunction(phi, psi, zero_modification(eta.source, eta.target), eps, [terminal()], (), policy)
    zt = Tally()
    zt.record(not all(c.passed for c in z), "zero unit satisfied the triangle identities")
    out.append(zt.check("zero unit rejected", "satisfying the usual triangle identities"))
    return out


def mono_squares(policy: Policy) -> list[Diagram]:
    """Cofiber squares of random injective maps, built without rejection."""
    rng = policy.rng("k0")
    out = []
    I = ordinal(1)
    for _ in range(policy.samples):
        b = rng.randint(0, policy.max_dim)
        a = rng.randint(0, b)
        g = random_invertible(rng, b)
        m = g.submatrix(range(b), range(a))
        X = Diagram(I, {"0": a, "1": b}, {"id[0]": Matrix.identity(a), "id[1]": Matrix.identity(b), "0->1": m})
        out.append(cofiber(X).output)
    return out


def criterion_k0(policy: Policy) -> list[Check]:
    t = Tally()
    for i, X in enumerate(mono_squares(policy)):
        r = k0_additivity_check(X)
        t.record(r.mono and r.holds is True, f"square {i}: {r.dims}")
    g = Tally()
    I = ordinal(1)
    zero = Diagram(I, {"0": 1, "1": 1}, {"id[0]": Matrix.identity(1), "id[1]": Matrix.identity(1), "0->1": Matrix(1, 1, [[0]])})
    r = k0_additivity_check(cofiber(zero).output)
    g.record(not r.mono and r.holds is None, "guard did not trigger on the zero map")
    return [
        t.check("[B] = [A] + [C] on mono cofiber squares", "we have [B]=[A]+[C]"),
        g.check("mono hypothesis guard on the zero map", "under the assumption that A->B is a monomorphism"),
    ]


def criterion_determinism(policy: Policy) -> list[Check]:
    """Samples regenerate identically from the seed, and a full criterion
    re-evaluated with cold caches renders identically."""
    t = Tally()
    for K in cp.categories().values():
        if not K.objects:
            continue
        rng = policy.rng(f"diagram:{K.name}:{len(K.objects)}:exact")
        fresh = [random_diagram(K, rng, policy.max_dim) for _ in range(policy.samples)]
        t.record(list(sample_diagrams(K, policy, "exact")[3:]) == fresh, f"{K.name}: samples differ")
    first = [c.line() for c in criterion_pointed(policy)]
    _clear_caches()
    second = [c.line() for c in criterion_pointed(policy)]
    t.record(first == second, "pointed suite rendered differently on a second run")
    return [t.check("seeded runs are reproducible", "")]


def _clear_caches():
    from halfder.repder import kan, sampling

    sampling.sample_diagrams.cache_clear()
    sampling.hom_basis.cache_clear()
    for name in ("lan", "ran", "lan_counit", "ran_unit", "lan_map", "ran_map", "pullback"):
        getattr(kan, name).cache_clear()


REGISTRY: dict[int, Callable[[Policy], list[Check]]] = {
    1: criterion_axioms,
    2: criterion_mates,
    3: criterion_families,
    4: criterion_cancellation,
    5: criterion_ff,
    6: criterion_pointed,
    7: criterion_morphisms,
    8: criterion_k0,
    9: criterion_determinism,
}


def run_criterion(n: int, policy: Policy = DEFAULT_POLICY) -> list[Check]:
    checks = REGISTRY[n](policy)
    for c in checks:
        c.criterion = n
    return checks


def run_acceptance(policy: Policy = DEFAULT_POLICY, only=None, timings: dict | None = None) -> Report:
    rep = Report(
        "acceptance corpus",
        header={"seed": policy.seed, "samples": policy.samples, "max_dim": policy.max_dim},
    )
    for n in REGISTRY:
        if only and n not in only:
            continue
        t0 = time.perf_counter()
        checks = run_criterion(n, policy)
        if timings is not None:
            timings[n] = time.perf_counter() - t0
        rep.extend(checks)
    return rep


def criterion_lines(rep: Report) -> list[str]:
    """One line per criterion present in the report."""
    lines = []
    for n, title in CRITERIA.items():
        cs = [c for c in rep.checks if c.criterion == n]
        if not cs:
            continue
        status = "PASS" if all(c.passed for c in cs) else "FAIL"
        lines.append(f"criterion {n} ({title}): {status} [{sum(c.passed for c in cs)}/{len(cs)} checks]")
    return lines


__all__ = [
    "CRITERIA",
    "REGISTRY",
    "named_squares",
    "cancellation_squares",
    "run_criterion",
    "run_acceptance",
    "criterion_lines",
    "mono_squares",
]
