"""Functors and natural transformations between finite categories."""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping

from halfder.fincat.category import (
    CategoryError,
    FinCategory,
    Violation,
    empty,
    product,
    terminal,
)


class FunctorError(CategoryError):
    pass


class FinFunctor:
    """A functor given by its object and morphism tables.

    Equality is table equality; the ``name`` is a label only.
    """

    def __init__(
        self,
        source: FinCategory,
        target: FinCategory,
        obj_map: Mapping[str, str],
        mor_map: Mapping[str, str],
        name: str = "",
        check: bool = True,
    ):
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)
        self.name = name
        self._key = (
            source,
            target,
            tuple(self.obj_map.get(a) for a in source.objects),
            tuple(self.mor_map.get(f) for f in source.morphisms),
        )
        self._hash = hash(self._key)
        if check:
            report = validate_functor(self)
            if report:
                raise FunctorError(
                    f"invalid functor {name}: " + "; ".join(map(str, report[:5]))
                )

    def __eq__(self, other):
        return isinstance(other, FinFunctor) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<functor {self.name or '?'}: {self.source.name} -> {self.target.name}>"

    def ob(self, a: str) -> str:
        return self.obj_map[a]

    def mor(self, f: str) -> str:
        return self.mor_map[f]

    def then(self, other: "FinFunctor") -> "FinFunctor":
        """``other`` after ``self``."""
        return compose(other, self)


def validate_functor(u: FinFunctor) -> list[Violation]:
    out: list[Violation] = []
    A, B = u.source, u.target
    for a in A.objects:
        if a not in u.obj_map or not B.has_object(u.obj_map[a]):
            out.append(Violation("object-map", f"{a} has no valid image"))
    for f in A.morphisms:
        if f not in u.mor_map or u.mor_map[f] not in B.morphisms:
            out.append(Violation("morphism-map", f"{f} has no valid image"))
    if out:
        return out
    for f, (a, b) in A.morphisms.items():
        if B.morphisms[u.mor(f)] != (u.ob(a), u.ob(b)):
            out.append(Violation("endpoints", f"{f}: {a} -> {b} maps to {u.mor(f)}"))
    for a in A.objects:
        if u.mor(A.id(a)) != B.id(u.ob(a)):
            out.append(Violation("identity", f"u(id_{a}) != id_u({a})"))
    if out:
        return out
    for (g, f), h in A.compose_table.items():
        if B.comp(u.mor(g), u.mor(f)) != u.mor(h):
            out.append(Violation("composition", f"u({g} o {f}) != u({g}) o u({f})"))
    return out


@lru_cache(maxsize=None)
def identity_functor(C: FinCategory) -> FinFunctor:
    return FinFunctor(
        C, C, {a: a for a in C.objects}, {f: f for f in C.morphisms}, name=f"id_{C.name}", check=False
    )


def compose(v: FinFunctor, u: FinFunctor) -> FinFunctor:
    """v after u."""
    if u.target != v.source:
        raise FunctorError(f"cannot compose {v!r} after {u!r}")
    return FinFunctor(
        u.source,
        v.target,
        {a: v.obj_map[b] for a, b in u.obj_map.items()},
        {f: v.mor_map[g] for f, g in u.mor_map.items()},
        name=f"{v.name}.{u.name}",
        check=False,
    )


@lru_cache(maxsize=None)
def classifier(K: FinCategory, k: str, E: FinCategory | None = None) -> FinFunctor:
    """The functor e -> K picking out the object k."""
    if not K.has_object(k):
        raise FunctorError(f"{k} is not an object of {K!r}")
    E = E or terminal()
    (pt,) = E.objects
    return FinFunctor(E, K, {pt: k}, {E.id(pt): K.id(k)}, name=k, check=False)


@lru_cache(maxsize=None)
def projection(K: FinCategory, E: FinCategory | None = None) -> FinFunctor:
    """The unique functor K -> e."""
    E = E or terminal()
    (pt,) = E.objects
    return FinFunctor(
        K, E, {a: pt for a in K.objects}, {f: E.id(pt) for f in K.morphisms},
        name=f"pi_{K.name}", check=False,
    )


def empty_functor(K: FinCategory) -> FinFunctor:
    return FinFunctor(empty(), K, {}, {}, name=f"0->{K.name}", check=False)


def inclusion(J: FinCategory, K: FinCategory, obj_map: Mapping[str, str] | None = None, name: str = "") -> FinFunctor:
    """A functor out of a poset-like J determined by objects.

    Each morphism of J is sent to the unique morphism of K between the image
    objects; ambiguity or absence is an error.
    """
    obj_map = dict(obj_map) if obj_map is not None else {a: a for a in J.objects}
    mor_map = {}
    for f, (a, b) in J.morphisms.items():
        hom = K.hom(obj_map[a], obj_map[b])
        if len(hom) != 1:
            raise FunctorError(
                f"{f}: {a} -> {b} has {len(hom)} candidate images in {K!r}"
            )
        mor_map[f] = hom[0]
    return FinFunctor(J, K, obj_map, mor_map, name=name)


@lru_cache(maxsize=None)
def product_functor(u: FinFunctor, v: FinFunctor) -> FinFunctor:
    """u x v between product categories."""
    S = product(u.source, v.source)
    T = product(u.target, v.target)
    obj_map = {
        f"({a},{b})": f"({u.ob(a)},{v.ob(b)})" for a in u.source.objects for b in v.source.objects
    }
    mor_map = {
        f"({f},{g})": f"({u.mor(f)},{v.mor(g)})"
        for f in u.source.morphisms
        for g in v.source.morphisms
    }
    return FinFunctor(S, T, obj_map, mor_map, name=f"{u.name}x{v.name}", check=False)


class FinNatTrans:
    """A natural transformation ``source => target`` between parallel functors."""

    def __init__(
        self,
        source: FinFunctor,
        target: FinFunctor,
        components: Mapping[str, str],
        name: str = "",
        check: bool = True,
    ):
        self.source = source
        self.target = target
        self.components = dict(components)
        self.name = name
        self._key = (
            source,
            target,
            tuple(self.components.get(a) for a in source.source.objects),
        )
        self._hash = hash(self._key)
        if check:
            report = validate_nat(self)
            if report:
                raise FunctorError(
                    f"invalid transformation {name}: " + "; ".join(map(str, report[:5]))
                )

    def __eq__(self, other):
        return isinstance(other, FinNatTrans) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<nat {self.name or '?'}: {self.source.name} => {self.target.name}>"

    @property
    def domain(self) -> FinCategory:
        return self.source.source

    @property
    def codomain(self) -> FinCategory:
        return self.source.target

    def at(self, a: str) -> str:
        return self.components[a]


def validate_nat(alpha: FinNatTrans) -> list[Violation]:
    u, v = alpha.source, alpha.target
    out: list[Violation] = []
    if u.source != v.source or u.target != v.target:
        return [Violation("not-parallel", f"{u!r} and {v!r}")]
    A, B = u.source, u.target
    for a in A.objects:
        c = alpha.components.get(a)
        if c is None or c not in B.morphisms:
            out.append(Violation("component-missing", f"no component at {a}"))
        elif B.morphisms[c] != (u.ob(a), v.ob(a)):
            out.append(Violation("component-shape", f"component {c} at {a}"))
    if out:
        return out
    for f, (a, b) in A.morphisms.items():
        if B.comp(v.mor(f), alpha.at(a)) != B.comp(alpha.at(b), u.mor(f)):
            out.append(Violation("naturality", f"square at {f}: {a} -> {b} does not commute"))
    return out


def identity_nat(u: FinFunctor) -> FinNatTrans:
    return FinNatTrans(
        u, u, {a: u.target.id(u.ob(a)) for a in u.source.objects}, name=f"id_{u.name}", check=False
    )


def vcomp(beta: FinNatTrans, alpha: FinNatTrans) -> FinNatTrans:
    """Vertical composite ``beta . alpha``."""
    if alpha.target != beta.source:
        raise FunctorError("vertical composite of non-matching transformations")
    B = alpha.codomain
    comps = {a: B.comp(beta.at(a), alpha.at(a)) for a in alpha.domain.objects}
    return FinNatTrans(alpha.source, beta.target, comps, name=f"{beta.name}.{alpha.name}", check=False)


def whisker_post(w: FinFunctor, alpha: FinNatTrans) -> FinNatTrans:
    """``w alpha``: w u => w v."""
    comps = {a: w.mor(c) for a, c in alpha.components.items()}
    return FinNatTrans(
        compose(w, alpha.source), compose(w, alpha.target), comps,
        name=f"{w.name}{alpha.name}", check=False,
    )


def whisker_pre(alpha: FinNatTrans, x: FinFunctor) -> FinNatTrans:
    """``alpha x``: u x => v x."""
    comps = {a: alpha.at(x.ob(a)) for a in x.source.objects}
    return FinNatTrans(
        compose(alpha.source, x), compose(alpha.target, x), comps,
        name=f"{alpha.name}{x.name}", check=False,
    )


@lru_cache(maxsize=None)
def product_nat(alpha: FinNatTrans, beta: FinNatTrans) -> FinNatTrans:
    """alpha x beta between product functors."""
    src = product_functor(alpha.source, beta.source)
    tgt = product_functor(alpha.target, beta.target)
    comps = {
        f"({a},{b})": f"({alpha.at(a)},{beta.at(b)})"
        for a in alpha.domain.objects
        for b in beta.domain.objects
    }
    return FinNatTrans(src, tgt, comps, name=f"{alpha.name}x{beta.name}", check=False)


def opposite_functor(u: FinFunctor) -> FinFunctor:
    from halfder.fincat.category import opposite

    return FinFunctor(
        opposite(u.source), opposite(u.target), u.obj_map, u.mor_map,
        name=f"{u.name}^op", check=False,
    )


def all_functors(T: FinCategory, K: FinCategory, limit: int = 100000) -> list[FinFunctor]:
    """Every functor T -> K, by backtracking over generators of T.

    Only meant for tiny T (the universal-property brute force).
    """
    from halfder.fincat.category import generators

    order = list(T.objects)
    gens = generators(T)
    out: list[FinFunctor] = []

    def extend_objects(i, om):
        if i == len(order):
            extend_morphisms(0, om, {})
            return
        for k in K.objects:
            om[order[i]] = k
            extend_objects(i + 1, om)
            if len(out) >= limit:
                return
        om.pop(order[i], None)

    def extend_morphisms(i, om, gm):
        if i == len(gens):
            mm = _close(T, K, om, gm)
            if mm is not None:
                u = FinFunctor(T, K, dict(om), mm, check=False)
                if not validate_functor(u):
                    out.append(u)
            return
        f = gens[i]
        a, b = T.morphisms[f]
        for g in K.hom(om[a], om[b]):
            gm[f] = g
            extend_morphisms(i + 1, om, gm)
        gm.pop(f, None)

    extend_objects(0, {})
    return out


def _close(T, K, om, gm):
    # extend a generator assignment to all morphisms by closing under composition
    mm = {T.id(a): K.id(om[a]) for a in T.objects}
    mm.update(gm)
    changed = True
    while changed:
        changed = False
        for (g, f), h in T.compose_table.items():
            if g in mm and f in mm:
                val = K.comp(mm[g], mm[f])
                if h not in mm:
                    mm[h] = val
                    changed = True
                elif mm[h] != val:
                    return None
    if len(mm) != len(T.morphisms):
        return None
    return mm


@lru_cache(maxsize=None)
def product_projection(C: FinCategory, D: FinCategory, which: int) -> FinFunctor:
    """The projection C x D -> C (which=0) or C x D -> D (which=1)."""
    P = product(C, D)
    if which == 0:
        om = {f"({a},{b})": a for a in C.objects for b in D.objects}
        mm = {f"({f},{g})": f for f in C.morphisms for g in D.morphisms}
        return FinFunctor(P, C, om, mm, name=f"pr_{C.name}", check=False)
    om = {f"({a},{b})": b for a in C.objects for b in D.objects}
    mm = {f"({f},{g})": g for f in C.morphisms for g in D.morphisms}
    return FinFunctor(P, D, om, mm, name=f"pr_{D.name}", check=False)


def unique_morphism(K: FinCategory, a: str, b: str) -> str:
    hom = K.hom(a, b)
    if len(hom) != 1:
        raise FunctorError(f"expected exactly one morphism {a} -> {b}, found {len(hom)}")
    return hom[0]


def poset_cell(u: FinFunctor, v: FinFunctor, name: str = "") -> FinNatTrans:
    """The unique cell u => v into a poset-like target (checked)."""
    comps = {a: unique_morphism(u.target, u.ob(a), v.ob(a)) for a in u.source.objects}
    return FinNatTrans(u, v, comps, name=name or f"{u.name}=>{v.name}")
