import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SMALL, diagrams_on
from halfder import corpus
from halfder.derimorph import (
    DerMorphism,
    Modification,
    MorphismError,
    apply,
    apply_map,
    check_modification,
    check_morphism_adjunction,
    composite,
    direct_sum_with_constant,
    gamma,
    identity_modification,
    identity_morphism,
    is_cocontinuous,
    is_continuous,
    is_strict,
    lan_along,
    lan_pullback_adjunction,
    pullback_along,
    ran_along,
    route_agreement,
    swap_at,
    tensor_with,
    validate_morphism,
    with_gamma_override,
    zero_modification,
)
from halfder.fincat import (
    corner,
    discrete,
    identity_functor,
    ordinal,
    poset_cell,
    product,
    projection,
    terminal,
)
from halfder.repder.diagram import constant_diagram, identity_map, scale_map
from halfder.repder.sampling import random_diagram, random_map

F = corpus.functors()
SOME = [F[n] for n in ("pi_[1]", "0:[1]", "1:[1]", "d1", "s0")]
CELLS = [poset_cell(F["0:[1]"], F["1:[1]"])]
E = terminal()


def test_tensor_with_one_is_identity():
    X = random_diagram(corner(), random.Random(1))
    assert apply(tensor_with(1), corner(), X) == X


def test_tensor_with_two_on_a_point():
    Y = apply(tensor_with(2), E, constant_diagram(E, 1))
    assert Y.dims == {"*": 2}


def test_pullback_along_projection_gives_constant():
    phi = pullback_along(projection(ordinal(1)))
    X = constant_diagram(product(E, E), 1)
    Y = apply(phi, E, X)
    assert Y.shape == product(ordinal(1), E)
    assert all(m.is_identity() for m in Y.mats.values())


def test_unknown_kind_and_bad_arguments():
    with pytest.raises(MorphismError):
        DerMorphism("mystery", None, None)
    with pytest.raises(MorphismError):
        tensor_with(-1)
    with pytest.raises(MorphismError):
        composite(tensor_with(2), pullback_along(F["i_[1]"]))


@pytest.mark.parametrize(
    "phi",
    [
        pullback_along(F["i_[1]"]),
        lan_along(F["i_[1]"]),
        ran_along(F["i_[1]"]),
        tensor_with(2),
        direct_sum_with_constant(1),
        identity_morphism(),
    ],
    ids=lambda p: p.name,
)
def test_structure_maps_are_coherent(phi):
    checks = validate_morphism(phi, SOME, CELLS, SMALL)
    assert all(c.passed for c in checks), [c.line() for c in checks if not c.passed]


def test_strictness():
    assert is_strict(tensor_with(2), SOME, SMALL)
    assert is_strict(pullback_along(F["i_[1]"]), SOME, SMALL)
    assert is_strict(direct_sum_with_constant(1), SOME, SMALL)


def test_perturbed_structure_maps_are_rejected():
    bad = with_gamma_override(tensor_with(2), swap_at(F["pi_[1]"]))
    checks = validate_morphism(bad, [F["pi_[1]"], F["0:[1]"]], (), SMALL)
    failed = {c.name.split(": ")[1] for c in checks if not c.passed}
    assert "gamma respects composites" in failed
    assert "gamma natural in X" in failed


def test_composite_structure_maps():
    phi = composite(tensor_with(2), tensor_with(3))
    X = random_diagram(ordinal(1), random.Random(4))
    assert apply(phi, ordinal(1), X).dims == {a: 6 * d for a, d in X.dims.items()}
    assert all(c.passed for c in validate_morphism(phi, SOME, CELLS, SMALL))
    psi = composite(lan_along(F["i_[1]"]), tensor_with(2, ordinal(1)))
    assert all(c.passed for c in validate_morphism(psi, SOME[:2], (), SMALL))


def test_cocontinuity_verdicts():
    assert is_cocontinuous(tensor_with(2), F["pi_corner"], SMALL)
    assert is_cocontinuous(ran_along(F["i_[1]"]), F["pi_corner"], SMALL)
    v = is_cocontinuous(direct_sum_with_constant(1), F["pi_discrete(2)"], SMALL)
    assert not v and v.witness.startswith("sample")


def test_continuity_is_checked_separately():
    assert is_continuous(tensor_with(2), F["pi_corner"], SMALL)
    assert not is_continuous(direct_sum_with_constant(1), F["pi_discrete(2)"], SMALL)


def test_route_agreement():
    fs = [F[n] for n in ("pi_[1]", "0:[1]", "d1", "pi_discrete(2)")]
    shapes = [E, ordinal(1), discrete(2)]
    ra = route_agreement(tensor_with(2), fs, shapes, SMALL)
    assert ra.agrees and ra.along_functors
    ra = route_agreement(direct_sum_with_constant(1), fs, shapes, SMALL)
    assert ra.agrees and not ra.along_functors and ra.failures


def test_lan_pullback_adjunction():
    phi, psi, eta, eps = lan_pullback_adjunction(F["i_[1]"])
    checks = check_morphism_adjunction(phi, psi, eta, eps, [E, ordinal(1)], [F["pi_[1]"]], SMALL)
    assert all(c.passed for c in checks)


def test_zero_unit_breaks_triangles():
    phi, psi, eta, eps = lan_pullback_adjunction(F["i_[1]"])
    checks = check_morphism_adjunction(phi, psi, zero_modification(eta.source, eta.target), eps, [E], (), SMALL)
    assert not all(c.passed for c in checks)


def test_identity_adjunction():
    i = identity_morphism()
    m = identity_modification(i)
    assert all(c.passed for c in check_morphism_adjunction(i, i, m, m, [E, ordinal(1)], SOME, SMALL))


def test_modification_needs_parallel_morphisms():
    with pytest.raises(MorphismError):
        Modification(tensor_with(2), pullback_along(F["i_[1]"]), lambda K, X: None)


def test_scaling_is_a_modification():
    # multiplication by 3 is natural in everything
    phi = tensor_with(2)
    mu = Modification(phi, phi, lambda K, X: scale_map(3, identity_map(apply(phi, K, X))), "3")
    assert check_modification(mu, SOME, SMALL).passed


@given(diagrams_on(ordinal(1)), diagrams_on(ordinal(1)), st.integers(0, 50))
def test_apply_map_is_functorial(X, Y, seed):
    phi = tensor_with(2)
    f = random_map(X, Y, random.Random(seed))
    g = random_map(Y, X, random.Random(seed + 1))
    K = ordinal(1)
    assert apply_map(phi, K, g @ f) == apply_map(phi, K, g) @ apply_map(phi, K, f)
    assert apply_map(phi, K, identity_map(X)).is_identity()


@given(diagrams_on(product(ordinal(1), corner())))
def test_lan_gamma_along_identity_is_identity(Y):
    phi = lan_along(F["i_[1]"])
    assert gamma(phi, identity_functor(corner()), Y).is_identity()
    assert gamma(phi, F["(0,1):corner"], Y).is_iso()
