"""Diagrams of finite-dimensional rational vector spaces and maps between them."""

from __future__ import annotations

from typing import Mapping

from halfder.fincat.category import FinCategory, Violation
from halfder.linalg import Matrix, block_diag, solve


class DiagramError(ValueError):
    pass


class Diagram:
    """An object of D(K): a dimension per object, a matrix per morphism.

    ``mats[f]`` has shape dim(target) x dim(source).  Equality is exact
    table equality (shape included).
    """

    __slots__ = ("shape", "dims", "mats", "_hash")

    def __init__(
        self,
        shape: FinCategory,
        dims: Mapping[str, int],
        mats: Mapping[str, Matrix],
        check: bool = True,
    ):
        self.shape = shape
        self.dims = {a: int(dims[a]) for a in shape.objects}
        self.mats = {f: mats[f] for f in shape.morphisms}
        self._hash = None
        if check:
            report = validate_diagram(self)
            if report:
                raise DiagramError("invalid diagram: " + "; ".join(map(str, report[:5])))

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return self is other or (
            self.shape == other.shape and self.dims == other.dims and self.mats == other.mats
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.shape, tuple(self.dims.values()), tuple(self.mats.values()))
            )
        return self._hash

    def __repr__(self):
        dims = ", ".join(f"{a}:{d}" for a, d in self.dims.items())
        return f"<Diagram on {self.shape.name or '?'} [{dims}]>"

    def dim(self, a: str) -> int:
        return self.dims[a]

    def mat(self, f: str) -> Matrix:
        return self.mats[f]

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.dims.values())

    @classmethod
    def from_generators(
        cls, K: FinCategory, dims: Mapping[str, int], gens: Mapping[str, Matrix]
    ) -> "Diagram":
        """Complete an assignment on some morphisms by composition.

        Every morphism of K must be reachable as a composite of the given
        ones or identities, except maps touching a zero space, which are
        forced; disagreeing composites are an error.
        """
        mats = {K.id(a): Matrix.identity(int(dims[a])) for a in K.objects}
        # maps into or out of a zero space are forced
        for f, (a, b) in K.morphisms.items():
            if f not in mats and (int(dims[a]) == 0 or int(dims[b]) == 0):
                mats[f] = Matrix.zeros(int(dims[b]), int(dims[a]))
        for f, m in gens.items():
            if f in mats and mats[f] != m:
                raise DiagramError(f"{f} conflicts with an identity")
            mats[f] = m
        changed = True
        while changed:
            changed = False
            for (g, f), h in K.compose_table.items():
                if g in mats and f in mats:
                    val = mats[g] @ mats[f]
                    if h not in mats:
                        mats[h] = val
                        changed = True
                    elif mats[h] != val:
                        raise DiagramError(f"composite {g} o {f} disagrees with {h}")
        missing = [f for f in K.morphisms if f not in mats]
        if missing:
            raise DiagramError(f"morphisms not generated: {missing[:3]}")
        return cls(K, dims, mats)


def validate_diagram(X: Diagram) -> list[Violation]:
    K = X.shape
    out: list[Violation] = []
    for a, d in X.dims.items():
        if d < 0:
            out.append(Violation("dimension", f"negative dimension at {a}"))
    for f, (a, b) in K.morphisms.items():
        m = X.mats[f]
        if m.shape != (X.dims[b], X.dims[a]):
            out.append(Violation("matrix-shape", f"{f} has shape {m.shape}"))
    if out:
        return out
    for a in K.objects:
        if not X.mats[K.id(a)].is_identity():
            out.append(Violation("identity", f"identity at {a} is not the identity matrix"))
    for (g, f), h in K.compose_table.items():
        if X.mats[g] @ X.mats[f] != X.mats[h]:
            out.append(Violation("functoriality", f"X({g}) X({f}) != X({h})"))
    return out


def zero_diagram(K: FinCategory) -> Diagram:
    return Diagram(
        K, {a: 0 for a in K.objects}, {f: Matrix.zeros(0, 0) for f in K.morphisms}, check=False
    )


def constant_diagram(K: FinCategory, n: int) -> Diagram:
    return Diagram(
        K, {a: n for a in K.objects}, {f: Matrix.identity(n) for f in K.morphisms}, check=False
    )


def direct_sum(X: Diagram, Y: Diagram) -> Diagram:
    if X.shape != Y.shape:
        raise DiagramError("direct sum of diagrams on different shapes")
    return Diagram(
        X.shape,
        {a: X.dims[a] + Y.dims[a] for a in X.shape.objects},
        {f: block_diag([X.mats[f], Y.mats[f]]) for f in X.shape.morphisms},
        check=False,
    )


class DiagramMap:
    """A natural transformation between diagrams on a common shape."""

    __slots__ = ("source", "target", "comps", "_hash")

    def __init__(
        self, source: Diagram, target: Diagram, comps: Mapping[str, Matrix], check: bool = True
    ):
        if source.shape != target.shape:
            raise DiagramError("diagram map between different shapes")
        self.source = source
        self.target = target
        self.comps = {a: comps[a] for a in source.shape.objects}
        self._hash = None
        if check:
            report = validate_map(self)
            if report:
                raise DiagramError("invalid diagram map: " + "; ".join(map(str, report[:5])))

    @property
    def shape(self) -> FinCategory:
        return self.source.shape

    def at(self, a: str) -> Matrix:
        return self.comps[a]

    def __eq__(self, other):
        if not isinstance(other, DiagramMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.comps == other.comps
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source, self.target, tuple(self.comps.values())))
        return self._hash

    def __repr__(self):
        return f"<DiagramMap on {self.shape.name or '?'}>"

    def __matmul__(self, other: "DiagramMap") -> "DiagramMap":
        """``self`` after ``other``."""
        return compose_maps(self, other)

    def is_iso(self) -> bool:
        return all(m.is_invertible() for m in self.comps.values())

    def non_iso_witness(self):
        for a, m in self.comps.items():
            if not m.is_invertible():
                return a
        return None

    def inverse(self) -> "DiagramMap":
        """The inverse map, built from componentwise inverses and re-checked."""
        return DiagramMap(
            self.target, self.source, {a: m.inverse() for a, m in self.comps.items()}
        )

    def is_identity(self) -> bool:
        return self.source == self.target and all(m.is_identity() for m in self.comps.values())


def validate_map(phi: DiagramMap) -> list[Violation]:
    X, Y = phi.source, phi.target
    K = X.shape
    out: list[Violation] = []
    for a in K.objects:
        if phi.comps[a].shape != (Y.dims[a], X.dims[a]):
            out.append(Violation("component-shape", f"component at {a} has shape {phi.comps[a].shape}"))
    if out:
        return out
    for f, (a, b) in K.morphisms.items():
        if Y.mats[f] @ phi.comps[a] != phi.comps[b] @ X.mats[f]:
            out.append(Violation("naturality", f"square at {f}: {a} -> {b} does not commute"))
    return out


def identity_map(X: Diagram) -> DiagramMap:
    return DiagramMap(X, X, {a: Matrix.identity(d) for a, d in X.dims.items()}, check=False)


def zero_map(X: Diagram, Y: Diagram) -> DiagramMap:
    return DiagramMap(
        X, Y, {a: Matrix.zeros(Y.dims[a], X.dims[a]) for a in X.shape.objects}, check=False
    )


def compose_maps(psi: DiagramMap, phi: DiagramMap) -> DiagramMap:
    """psi after phi."""
    if phi.target != psi.source:
        raise DiagramError("composing diagram maps with mismatched endpoints")
    return DiagramMap(
        phi.source, psi.target, {a: psi.comps[a] @ phi.comps[a] for a in phi.shape.objects},
        check=False,
    )


def compose_all(*maps: DiagramMap) -> DiagramMap:
    """Composite of maps listed in application order reversed (last first)."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose_maps(m, out)
    return out


def add_maps(phi: DiagramMap, psi: DiagramMap) -> DiagramMap:
    if phi.source != psi.source or phi.target != psi.target:
        raise DiagramError("adding maps with different endpoints")
    return DiagramMap(
        phi.source, phi.target, {a: phi.comps[a] + psi.comps[a] for a in phi.shape.objects},
        check=False,
    )


def scale_map(c, phi: DiagramMap) -> DiagramMap:
    return DiagramMap(
        phi.source, phi.target, {a: m.scale(c) for a, m in phi.comps.items()}, check=False
    )


def left_factor(phi: DiagramMap, through: DiagramMap) -> DiagramMap | None:
    """The map chi with ``through @ chi == phi`` when one exists componentwise."""
    comps = {}
    for a in phi.shape.objects:
        x = solve(through.comps[a], phi.comps[a])
        if x is None:
            return None
        comps[a] = x
    return DiagramMap(phi.source, through.source, comps)
