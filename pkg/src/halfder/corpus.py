"""The fixed corpus of shapes and functors that every check runs over."""

from __future__ import annotations

from functools import lru_cache

from halfder.fincat.category import (
    FinCategory,
    corner,
    discrete,
    empty,
    ordinal,
    poset,
    square,
    terminal,
)
from halfder.fincat.functor import (
    FinFunctor,
    classifier,
    empty_functor,
    identity_functor,
    inclusion,
    projection,
)


def n_poset() -> FinCategory:
    """Four elements a < c > b < d: not linear, not a lattice."""
    return poset(["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("b", "d")], name="N")


@lru_cache(maxsize=None)
def categories() -> dict[str, FinCategory]:
    return {
        "empty": empty(),
        "e": terminal(),
        "[1]": ordinal(1),
        "[2]": ordinal(2),
        "corner": corner(),
        "square": square(),
        "discrete(2)": discrete(2),
        "N": n_poset(),
    }


def i_interval() -> FinFunctor:
    """The sieve [1] -> corner onto the horizontal arrow (0,0) -> (1,0)."""
    return inclusion(ordinal(1), corner(), {"0": "(0,0)", "1": "(1,0)"}, name="i_[1]")


def i_corner() -> FinFunctor:
    """The full inclusion corner -> square."""
    return inclusion(corner(), square(), name="i_corner")


def face(i: int) -> FinFunctor:
    """d_i: [1] -> [2] skipping i."""
    keep = [str(x) for x in range(3) if x != i]
    return inclusion(ordinal(1), ordinal(2), {"0": keep[0], "1": keep[1]}, name=f"d{i}")


def degeneracy(i: int) -> FinFunctor:
    """s_i: [2] -> [1] repeating i."""
    images = {str(x): str(x if x <= i else x - 1) for x in range(3)}
    return inclusion(ordinal(2), ordinal(1), images, name=f"s{i}")


@lru_cache(maxsize=None)
def functors() -> dict[str, FinFunctor]:
    cats = categories()
    out: dict[str, FinFunctor] = {}
    for name, K in cats.items():
        p = projection(K)
        out[f"pi_{name}"] = p
    for name in ("[1]", "corner", "square", "N"):
        out[f"id_{name}"] = identity_functor(cats[name])
    out["i_[1]"] = i_interval()
    out["i_corner"] = i_corner()
    out["0:[1]"] = classifier(cats["[1]"], "0")
    out["1:[1]"] = classifier(cats["[1]"], "1")
    out["(0,1):corner"] = classifier(cats["corner"], "(0,1)")
    out["(1,1):square"] = classifier(cats["square"], "(1,1)")
    for i in range(3):
        out[f"d{i}"] = face(i)
    for i in range(2):
        out[f"s{i}"] = degeneracy(i)
    out["empty->e"] = empty_functor(cats["e"])
    out["empty->[1]"] = empty_functor(cats["[1]"])
    out["ab:N"] = inclusion(cats["discrete(2)"], cats["N"], {"0": "a", "1": "b"}, name="ab")
    out["bd:N"] = inclusion(cats["[1]"], cats["N"], {"0": "b", "1": "d"}, name="bd")
    return out


def coproduct_shapes() -> list[tuple[FinCategory, ...]]:
    """Decompositions used for the coproduct axiom (the empty tuple is the empty coproduct)."""
    return [
        (terminal(), terminal()),
        (),
        (ordinal(1), terminal()),
        (corner(), ordinal(1)),
    ]
