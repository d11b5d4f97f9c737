"""Comma categories (u/v) and strict pullbacks."""

from __future__ import annotations

from functools import lru_cache

from halfder.fincat.category import FinCategory
from halfder.fincat.functor import FinFunctor, FinNatTrans, FunctorError, classifier


def comma_object(j1: str, j2: str, f: str) -> str:
    return f"({j1},{j2},{f})"


@lru_cache(maxsize=None)
def comma_category(u: FinFunctor, v: FinFunctor):
    """The comma category (u/v) with its projections and canonical cell.

    Objects are triples (j1, j2, f: u(j1) -> v(j2)), sorted
    lexicographically by their ids.  A morphism (j1, j2, f) -> (j1', j2', f')
    is a pair (g1, g2) with f' u(g1) = v(g2) f.  Returns
    ``(C, pr1, pr2, cell)`` with ``cell: u pr1 => v pr2``.
    """
    if u.target != v.target:
        raise FunctorError("comma category needs functors with a common codomain")
    A, B, K = u.source, v.source, u.target
    triples = sorted(
        (j1, j2, f)
        for j1 in A.objects
        for j2 in B.objects
        for f in K.hom(u.ob(j1), v.ob(j2))
    )
    objects = [comma_object(*t) for t in triples]
    morphisms = {}
    pr1_m, pr2_m = {}, {}
    cell = {}
    identity = {}
    parts = {}
    for t, x in zip(triples, objects):
        j1, j2, f = t
        cell[x] = f
        for s, y in zip(triples, objects):
            k1, k2, f2 = s
            for g1 in A.hom(j1, k1):
                ug1 = u.mor(g1)
                for g2 in B.hom(j2, k2):
                    if K.comp(f2, ug1) == K.comp(v.mor(g2), f):
                        m = f"({g1},{g2},{f},{f2})"
                        morphisms[m] = (x, y)
                        pr1_m[m] = g1
                        pr2_m[m] = g2
                        parts[m] = (g1, g2, f, f2)
        identity[x] = f"({A.id(j1)},{B.id(j2)},{f},{f})"
    compose = {}
    by_src: dict[str, list[str]] = {}
    for m, (x, y) in morphisms.items():
        by_src.setdefault(x, []).append(m)
    for m, (x, y) in morphisms.items():
        g1, g2, f, f2 = parts[m]
        for n in by_src.get(y, []):
            h1, h2, _, f3 = parts[n]
            compose[(n, m)] = f"({A.comp(h1, g1)},{B.comp(h2, g2)},{f},{f3})"
    C = FinCategory(
        objects, morphisms, identity, compose, name=f"({u.name}/{v.name})", check=False
    )
    pr1 = FinFunctor(
        C, A, {x: t[0] for t, x in zip(triples, objects)}, pr1_m, name="pr1", check=False
    )
    pr2 = FinFunctor(
        C, B, {x: t[1] for t, x in zip(triples, objects)}, pr2_m, name="pr2", check=False
    )
    from halfder.fincat.functor import compose as fcompose

    alpha = FinNatTrans(fcompose(u, pr1), fcompose(v, pr2), cell, name="comma", check=False)
    return C, pr1, pr2, alpha


def slice_over(u: FinFunctor, k: str):
    """(u/k): objects j with a map u(j) -> k."""
    return comma_category(u, classifier(u.target, k))


def slice_under(k: str, u: FinFunctor):
    """(k/u): objects j with a map k -> u(j)."""
    return comma_category(classifier(u.target, k), u)


@lru_cache(maxsize=None)
def strict_pullback(q: FinFunctor, w: FinFunctor):
    """The strict pullback B x_D C of q: B -> D along w: C -> D.

    Returns ``(A, v, p)`` with ``q v = w p`` on the nose.
    """
    if q.target != w.target:
        raise FunctorError("strict pullback needs a common codomain")
    B, C = q.source, w.source
    objects = [f"({b},{c})" for b in B.objects for c in C.objects if q.ob(b) == w.ob(c)]
    pairs = {f"({b},{c})": (b, c) for b in B.objects for c in C.objects if q.ob(b) == w.ob(c)}
    morphisms, v_m, p_m = {}, {}, {}
    for x in objects:
        b, c = pairs[x]
        for y in objects:
            b2, c2 = pairs[y]
            for g in B.hom(b, b2):
                for h in C.hom(c, c2):
                    if q.mor(g) == w.mor(h):
                        m = f"({g},{h})"
                        morphisms[m] = (x, y)
                        v_m[m], p_m[m] = g, h
    identity = {x: f"({B.id(pairs[x][0])},{C.id(pairs[x][1])})" for x in objects}
    compose = {}
    for m, (x, y) in morphisms.items():
        for n, (y2, z) in morphisms.items():
            if y2 == y:
                compose[(n, m)] = f"({B.comp(v_m[n], v_m[m])},{C.comp(p_m[n], p_m[m])})"
    A = FinCategory(objects, morphisms, identity, compose, name="pullback", check=False)
    v = FinFunctor(A, B, {x: pairs[x][0] for x in objects}, v_m, name="pr_B", check=False)
    p = FinFunctor(A, C, {x: pairs[x][1] for x in objects}, p_m, name="pr_C", check=False)
    return A, v, p
