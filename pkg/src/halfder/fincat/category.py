"""Finite categories as explicit tables.

Objects and morphisms are named by strings.  A category is never
identified up to isomorphism: two categories are equal exactly when their
tables agree, which is what makes strict functoriality testable.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

MAX_OBJECTS = 64
MAX_MORPHISMS = 4096


class CategoryError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


class FinCategory:
    """A finite category.

    ``morphisms`` maps a morphism id to its (source, target) pair,
    ``identity`` maps an object to its identity morphism and ``compose``
    maps a composable pair ``(g, f)`` (``g`` after ``f``) to the composite.
    Construction validates by default; pass ``check=False`` to build a
    possibly malformed table for :func:`validate_category`.
    """

    def __init__(
        self,
        objects: Sequence[str],
        morphisms: Mapping[str, tuple[str, str]],
        identity: Mapping[str, str],
        compose: Mapping[tuple[str, str], str],
        name: str = "",
        check: bool = True,
    ):
        self.objects = tuple(objects)
        self.morphisms = dict(morphisms)
        self.identity = dict(identity)
        self.compose_table = dict(compose)
        self.name = name
        if len(self.objects) > MAX_OBJECTS or len(self.morphisms) > MAX_MORPHISMS:
            raise CategoryError(
                f"category too large ({len(self.objects)} objects, "
                f"{len(self.morphisms)} morphisms); caps are {MAX_OBJECTS}/{MAX_MORPHISMS}"
            )
        self._index = {a: i for i, a in enumerate(self.objects)}
        self._mindex = {f: i for i, f in enumerate(self.morphisms)}
        self._hom: dict[tuple[str, str], list[str]] = {}
        self._out: dict[str, list[str]] = {a: [] for a in self.objects}
        self._in: dict[str, list[str]] = {a: [] for a in self.objects}
        for f, (a, b) in self.morphisms.items():
            self._hom.setdefault((a, b), []).append(f)
            if a in self._out:
                self._out[a].append(f)
            if b in self._in:
                self._in[b].append(f)
        self._key = (
            self.objects,
            tuple(self.morphisms.items()),
            tuple(sorted(self.identity.items())),
            tuple(sorted(self.compose_table.items())),
        )
        self._hash = hash(self._key)
        if check:
            report = validate_category(self)
            if report:
                raise CategoryError(
                    f"invalid category {name or ''}: " + "; ".join(map(str, report[:5]))
                )

    def __eq__(self, other):
        return isinstance(other, FinCategory) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        label = self.name or "FinCategory"
        return f"<{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    def src(self, f: str) -> str:
        return self.morphisms[f][0]

    def tgt(self, f: str) -> str:
        return self.morphisms[f][1]

    def hom(self, a: str, b: str) -> list[str]:
        return self._hom.get((a, b), [])

    def out_of(self, a: str) -> list[str]:
        return self._out[a]

    def into(self, b: str) -> list[str]:
        return self._in[b]

    def id(self, a: str) -> str:
        return self.identity[a]

    def comp(self, g: str, f: str) -> str:
        """``g`` after ``f``."""
        try:
            return self.compose_table[(g, f)]
        except KeyError:
            raise CategoryError(f"{g} and {f} are not composable in {self!r}") from None

    def comp_path(self, *fs: str) -> str:
        """Composite of a path written in application order (last applied first)."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.comp(g, out)
        return out

    def obj_index(self, a: str) -> int:
        return self._index[a]

    def mor_index(self, f: str) -> int:
        return self._mindex[f]

    def is_identity(self, f: str) -> bool:
        return self.identity.get(self.src(f)) == f

    def non_identity(self) -> list[str]:
        return [f for f in self.morphisms if not self.is_identity(f)]

    def has_object(self, a: str) -> bool:
        return a in self._index

    def is_empty(self) -> bool:
        return not self.objects


def validate_category(C: FinCategory) -> list[Violation]:
    """All violated category axioms, each naming the offending data."""
    out: list[Violation] = []
    objs = set(C.objects)
    if len(objs) != len(C.objects):
        out.append(Violation("duplicate-object", "object ids repeat"))
    for f, (a, b) in C.morphisms.items():
        if a not in objs or b not in objs:
            out.append(Violation("dangling-morphism", f"{f}: {a} -> {b}"))
    for a in C.objects:
        i = C.identity.get(a)
        if i is None or i not in C.morphisms:
            out.append(Violation("identity-missing", f"no identity at {a}"))
        elif C.morphisms[i] != (a, a):
            out.append(Violation("identity-shape", f"{i} is not an endomorphism of {a}"))
    if out:
        return out
    for (g, f), h in C.compose_table.items():
        if f not in C.morphisms or g not in C.morphisms:
            out.append(Violation("compose-unknown", f"({g}, {f})"))
        elif C.tgt(f) != C.src(g):
            out.append(Violation("compose-not-composable", f"({g}, {f}) defined"))
        elif h not in C.morphisms or C.morphisms[h] != (C.src(f), C.tgt(g)):
            out.append(Violation("compose-wrong-hom", f"{g} o {f} = {h}"))
    for f, (a, b) in C.morphisms.items():
        for g in C.out_of(b):
            if (g, f) not in C.compose_table:
                out.append(Violation("compose-missing", f"{g} o {f} undefined"))
    if out:
        return out
    for f, (a, b) in C.morphisms.items():
        if C.comp(C.id(b), f) != f:
            out.append(Violation("identity-law", f"id_{b} o {f} != {f}"))
        if C.comp(f, C.id(a)) != f:
            out.append(Violation("identity-law", f"{f} o id_{a} != {f}"))
    for f, (a, b) in C.morphisms.items():
        for g in C.out_of(b):
            gf = C.comp(g, f)
            for h in C.out_of(C.tgt(g)):
                if C.comp(h, gf) != C.comp(C.comp(h, g), f):
                    out.append(Violation("associativity", f"({h}, {g}, {f})"))
    return out


# ---------------------------------------------------------------------------
# standard constructions


def ident(a: str) -> str:
    return f"id[{a}]"


def poset(elements: Sequence[str], relations: Iterable[tuple[str, str]], name: str = "") -> FinCategory:
    """The category of a finite partial order.

    ``relations`` lists pairs ``a <= b``; reflexive pairs are implied and the
    list must already be transitively closed and antisymmetric.
    """
    elements = [str(e) for e in elements]
    els = set(elements)
    leq = {(a, a) for a in elements}
    for a, b in relations:
        a, b = str(a), str(b)
        if a not in els or b not in els:
            raise CategoryError(f"relation ({a}, {b}) mentions an unknown element")
        leq.add((a, b))
    for a, b in leq:
        if a != b and (b, a) in leq:
            raise CategoryError(f"relation is not antisymmetric: ({a}, {b})")
    for (a, b), (c, d) in itertools.product(leq, leq):
        if b == c and (a, d) not in leq:
            raise CategoryError(f"relation is not transitive: ({a}, {b}), ({b}, {d})")
    morphisms = {}
    for a in elements:
        morphisms[ident(a)] = (a, a)
    for a in elements:
        for b in elements:
            if a != b and (a, b) in leq:
                morphisms[f"{a}->{b}"] = (a, b)

    def name_of(a, b):
        return ident(a) if a == b else f"{a}->{b}"

    compose = {}
    for f, (a, b) in morphisms.items():
        for g, (c, d) in morphisms.items():
            if b == c:
                compose[(g, f)] = name_of(a, d)
    return FinCategory(elements, morphisms, {a: ident(a) for a in elements}, compose, name=name)


def terminal() -> FinCategory:
    return poset(["*"], [], name="e")


def empty() -> FinCategory:
    return FinCategory([], {}, {}, {}, name="empty")


def ordinal(n: int) -> FinCategory:
    """The ordinal [n] = {0 < 1 < ... < n}."""
    if n < 0:
        raise CategoryError("ordinal index must be non-negative")
    els = [str(i) for i in range(n + 1)]
    rel = [(str(i), str(j)) for i in range(n + 1) for j in range(i + 1, n + 1)]
    return poset(els, rel, name=f"[{n}]")


def discrete(n: int) -> FinCategory:
    if n < 0:
        raise CategoryError("discrete size must be non-negative")
    return poset([str(i) for i in range(n)], [], name=f"discrete({n})")


SQUARE_OBJECTS = ["(0,0)", "(1,0)", "(0,1)", "(1,1)"]


def square() -> FinCategory:
    """The commutative square, (0,0) initial and (1,1) final."""
    o = SQUARE_OBJECTS
    rel = [(o[0], o[1]), (o[0], o[2]), (o[0], o[3]), (o[1], o[3]), (o[2], o[3])]
    return poset(o, rel, name="square")


def corner() -> FinCategory:
    """The full subcategory of the square lacking (1,1)."""
    o = SQUARE_OBJECTS[:3]
    return poset(o, [(o[0], o[1]), (o[0], o[2])], name="corner")


@lru_cache(maxsize=None)
def product(C: FinCategory, D: FinCategory) -> FinCategory:
    objects = [f"({a},{b})" for a in C.objects for b in D.objects]
    morphisms = {}
    for f, (a, b) in C.morphisms.items():
        for g, (c, d) in D.morphisms.items():
            morphisms[f"({f},{g})"] = (f"({a},{c})", f"({b},{d})")
    identity = {f"({a},{b})": f"({C.id(a)},{D.id(b)})" for a in C.objects for b in D.objects}
    compose = {}
    for (f2, f1), f in C.compose_table.items():
        for (g2, g1), g in D.compose_table.items():
            compose[(f"({f2},{g2})", f"({f1},{g1})")] = f"({f},{g})"
    return FinCategory(
        objects, morphisms, identity, compose, name=f"{C.name or '?'}x{D.name or '?'}", check=False
    )


def coproduct(*cats: FinCategory) -> FinCategory:
    objects, morphisms, identity, compose = [], {}, {}, {}
    for i, C in enumerate(cats):
        objects += [f"{i}:{a}" for a in C.objects]
        for f, (a, b) in C.morphisms.items():
            morphisms[f"{i}:{f}"] = (f"{i}:{a}", f"{i}:{b}")
        for a in C.objects:
            identity[f"{i}:{a}"] = f"{i}:{C.id(a)}"
        for (g, f), h in C.compose_table.items():
            compose[(f"{i}:{g}", f"{i}:{f}")] = f"{i}:{h}"
    name = "+".join(C.name or "?" for C in cats) or "empty"
    return FinCategory(objects, morphisms, identity, compose, name=name, check=False)


def opposite(C: FinCategory) -> FinCategory:
    """Same ids with sources and targets swapped, so opposite is an involution."""
    morphisms = {f: (b, a) for f, (a, b) in C.morphisms.items()}
    compose = {(f, g): h for (g, f), h in C.compose_table.items()}
    name = C.name[:-3] if C.name.endswith("^op") else f"{C.name}^op"
    return FinCategory(C.objects, morphisms, C.identity, compose, name=name, check=False)


COCONE_POINT = "top"


def cocone(C: FinCategory) -> FinCategory:
    """C with a freshly adjoined final object."""
    t = COCONE_POINT
    while t in C.objects:
        t += "'"
    objects = list(C.objects) + [t]
    morphisms = dict(C.morphisms)
    to_top = {a: f"{a}=>{t}" for a in C.objects}
    for a, f in to_top.items():
        morphisms[f] = (a, t)
    morphisms[ident(t)] = (t, t)
    identity = dict(C.identity)
    identity[t] = ident(t)
    compose = dict(C.compose_table)
    for f, (a, b) in C.morphisms.items():
        compose[(to_top[b], f)] = to_top[a]
    for a in C.objects:
        compose[(ident(t), to_top[a])] = to_top[a]
    compose[(ident(t), ident(t))] = ident(t)
    return FinCategory(objects, morphisms, identity, compose, name=f"{C.name}^>")


def monoid(elements: Sequence[str], mult: Mapping[tuple[str, str], str], unit: str, name: str = "") -> FinCategory:
    """One-object category of a finite monoid; ``mult[(g, f)]`` is g after f."""
    morphisms = {m: ("*", "*") for m in elements}
    return FinCategory(["*"], morphisms, {"*": unit}, dict(mult), name=name or "monoid")


def idempotent_monoid() -> FinCategory:
    """One object, one non-identity idempotent endomorphism."""
    i, e = "1", "e"
    mult = {(i, i): i, (i, e): e, (e, i): e, (e, e): e}
    return monoid([i, e], mult, i, name="idem")


def construct_standard(name: str, *args) -> FinCategory:
    """Build one of the named standard shapes.

    ``terminal_e``, ``empty``, ``corner``, ``square`` take no arguments;
    ``ordinal``/``discrete`` take n; ``poset`` takes elements and relations;
    ``product``/``coproduct`` take two categories; ``opposite``/``cocone`` one.
    """
    builders = {
        "terminal_e": terminal,
        "empty": empty,
        "ordinal": ordinal,
        "corner": corner,
        "square": square,
        "discrete": discrete,
        "poset": poset,
        "product": product,
        "coproduct": coproduct,
        "opposite": opposite,
        "cocone": cocone,
    }
    try:
        build = builders[name]
    except KeyError:
        raise CategoryError(f"unknown standard category {name!r}") from None
    return build(*args)


def full_subcategory(K: FinCategory, objs: Iterable[str], name: str = "") -> FinCategory:
    keep = [a for a in K.objects if a in set(objs)]
    ks = set(keep)
    morphisms = {f: ab for f, ab in K.morphisms.items() if ab[0] in ks and ab[1] in ks}
    compose = {
        (g, f): h for (g, f), h in K.compose_table.items() if f in morphisms and g in morphisms
    }
    return FinCategory(keep, morphisms, {a: K.id(a) for a in keep}, compose, name=name, check=False)


def is_poset(C: FinCategory) -> bool:
    if any(len(fs) > 1 for fs in C._hom.values()):
        return False
    return all(not (C.hom(a, b) and C.hom(b, a)) for a in C.objects for b in C.objects if a != b)


def generators(C: FinCategory) -> list[str]:
    """Non-identity morphisms that are not composites of two non-identity ones."""
    decomposable = set()
    for (g, f), h in C.compose_table.items():
        if not C.is_identity(g) and not C.is_identity(f):
            decomposable.add(h)
    return [f for f in C.non_identity() if f not in decomposable]


def linear_extension(C: FinCategory) -> list[str] | None:
    """Objects ordered so that every non-identity morphism goes forward.

    None when C has a non-identity endomorphism or a cycle.
    """
    indeg = {a: 0 for a in C.objects}
    for f, (a, b) in C.morphisms.items():
        if a == b and not C.is_identity(f):
            return None
    edges = {(a, b) for f, (a, b) in C.morphisms.items() if a != b}
    for a, b in edges:
        indeg[b] += 1
    order = []
    ready = [a for a in C.objects if indeg[a] == 0]
    while ready:
        a = ready.pop(0)
        order.append(a)
        for x, y in sorted(edges, key=lambda e: (C.obj_index(e[0]), C.obj_index(e[1]))):
            if x == a:
                indeg[y] -= 1
                if indeg[y] == 0:
                    ready.append(y)
    return order if len(order) == len(C.objects) else None
