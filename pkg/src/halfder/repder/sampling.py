"""Seeded pseudo-random diagrams and diagram maps.

A random diagram is built object by object along a linear extension of its
shape.  When object b is reached, every map into b factors through the
colimit of the part already built over (K_<b / b); drawing one random
matrix out of that colimit and composing with its legs yields all incoming
matrices at once, and functoriality holds by construction.  No rejection
step is ever needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from halfder.fincat.category import FinCategory, linear_extension
from halfder.linalg import Matrix, kernel_basis, rational
from halfder.repder.diagram import (
    Diagram,
    DiagramError,
    DiagramMap,
    constant_diagram,
    zero_diagram,
)
from halfder.repder.kan import colimit

ENTRY_RANGE = 3


@dataclass(frozen=True)
class Policy:
    """Sampling policy: ``samples`` random diagrams per shape with
    dimensions at most ``max_dim`` and entries in [-3, 3], seeded by ``seed``."""

    seed: int = 7
    samples: int = 25
    max_dim: int = 4

    def rng(self, key: str) -> random.Random:
        return random.Random(f"{self.seed}:{key}")


DEFAULT_POLICY = Policy()


def _rand_matrix(rng: random.Random, rows: int, cols: int) -> Matrix:
    return Matrix(
        rows, cols, [[rng.randint(-ENTRY_RANGE, ENTRY_RANGE) for _ in range(cols)] for _ in range(rows)]
    )


def random_diagram(
    K: FinCategory, rng: random.Random, max_dim: int = 4, dims: dict | None = None
) -> Diagram:
    """A random coherent diagram on K (which must have no non-identity
    endomorphisms).  ``dims`` optionally fixes some dimensions."""
    order = linear_extension(K)
    if order is None:
        raise DiagramError(f"{K!r} has cycles or non-identity endomorphisms; cannot sample")
    dim = {}
    mats = {}
    pos = {a: i for i, a in enumerate(order)}
    for b in order:
        d = dims[b] if dims and b in dims else rng.randint(0, max_dim)
        dim[b] = d
        mats[K.id(b)] = Matrix.identity(d)
        incoming = [f for f in K.into(b) if K.src(f) != b]
        if not incoming:
            continue
        # the comma (K_<b / b): objects are incoming maps, morphisms are
        # g: a -> a' with f' g = f
        labels = incoming
        idx = {f: i for i, f in enumerate(labels)}
        arrows = []
        for f in labels:
            a = K.src(f)
            for g in K.out_of(a):
                a2 = K.tgt(g)
                if pos[a2] >= pos[b]:
                    continue
                for h in K.hom(a2, b):
                    if K.comp(h, g) == f:
                        arrows.append((idx[f], idx[h], mats[g]))
        col = colimit(labels, [dim[K.src(f)] for f in labels], arrows)
        R = _rand_matrix(rng, d, col.dim)
        for i, f in enumerate(labels):
            mats[f] = R @ col.leg(i)
    return Diagram(K, dim, mats)


@lru_cache(maxsize=None)
def sample_diagrams(K: FinCategory, policy: Policy = DEFAULT_POLICY, key: str = "") -> tuple:
    """Fixed fixtures (zero, constant Q, constant Q^2) followed by
    ``policy.samples`` seeded random diagrams on K."""
    fixed = [zero_diagram(K), constant_diagram(K, 1), constant_diagram(K, 2)]
    if not K.objects:
        return (fixed[0],)
    rng = policy.rng(f"diagram:{K.name}:{len(K.objects)}:{key}")
    out = list(fixed)
    for _ in range(policy.samples):
        out.append(random_diagram(K, rng, policy.max_dim))
    return tuple(out)


@lru_cache(maxsize=None)
def hom_basis(X: Diagram, Y: Diagram) -> tuple:
    """A basis of the space of diagram maps X -> Y, as DiagramMaps."""
    K = X.shape
    slots = []
    start = 0
    for a in K.objects:
        n = Y.dims[a] * X.dims[a]
        slots.append((a, start, Y.dims[a], X.dims[a]))
        start += n
    total = start
    if total == 0:
        return ()
    where = {a: (s, r, c) for a, s, r, c in slots}
    rows = []
    for f, (a, b) in K.morphisms.items():
        if K.is_identity(f):
            continue
        # Y(f) phi_a - phi_b X(f) = 0, entry (r, c) for r < dim Y(b), c < dim X(a)
        sa, ra, ca = where[a]
        sb, rb, cb = where[b]
        Yf, Xf = Y.mats[f], X.mats[f]
        for r in range(Y.dims[b]):
            for c in range(X.dims[a]):
                row = [0] * total
                for k in range(Y.dims[a]):
                    if Yf[r, k]:
                        row[sa + k * ca + c] += Yf[r, k]
                for k in range(X.dims[b]):
                    if Xf[k, c]:
                        row[sb + r * cb + k] -= Xf[k, c]
                rows.append(row)
    # constraint systems may exceed the user-facing size cap
    cons = Matrix._raw(len(rows), total, tuple(tuple(map(rational, r)) for r in rows))
    basis = kernel_basis(cons)
    out = []
    for j in range(basis.cols):
        comps = {}
        for a, s, r, c in slots:
            comps[a] = Matrix(r, c, [[basis[s + i * c + k, j] for k in range(c)] for i in range(r)])
        out.append(DiagramMap(X, Y, comps))
    return tuple(out)


def random_map(X: Diagram, Y: Diagram, rng: random.Random) -> DiagramMap:
    """A random integer combination of the hom basis."""
    basis = hom_basis(X, Y)
    comps = {a: Matrix.zeros(Y.dims[a], X.dims[a]) for a in X.shape.objects}
    for b in basis:
        c = rng.randint(-ENTRY_RANGE, ENTRY_RANGE)
        if c:
            comps = {a: comps[a] + b.comps[a].scale(c) for a in comps}
    return DiagramMap(X, Y, comps)


def random_matrix(rng: random.Random, rows: int, cols: int) -> Matrix:
    return _rand_matrix(rng, rows, cols)


def random_invertible(rng: random.Random, n: int) -> Matrix:
    """L U with unit-diagonal triangular factors, so always invertible."""
    lower = [[rng.randint(-ENTRY_RANGE, ENTRY_RANGE) if j < i else int(i == j) for j in range(n)] for i in range(n)]
    upper = [[rng.randint(-ENTRY_RANGE, ENTRY_RANGE) if j > i else int(i == j) for j in range(n)] for i in range(n)]
    return Matrix(n, n, lower) @ Matrix(n, n, upper)


def conjugate(X: Diagram, rng: random.Random) -> tuple[Diagram, DiagramMap]:
    """A diagram isomorphic to X by a random change of basis, with the iso."""
    g = {a: random_invertible(rng, d) for a, d in X.dims.items()}
    ginv = {a: m.inverse() for a, m in g.items()}
    K = X.shape
    mats = {f: g[b] @ X.mats[f] @ ginv[a] for f, (a, b) in K.morphisms.items()}
    Y = Diagram(K, X.dims, mats)
    return Y, DiagramMap(X, Y, g)


__all__ = [
    "Policy",
    "DEFAULT_POLICY",
    "random_diagram",
    "sample_diagrams",
    "hom_basis",
    "random_map",
    "random_matrix",
    "random_invertible",
    "conjugate",
]
