"""Pointwise Kan extensions by exact linear algebra.

The left Kan extension at k is the colimit of X pr over (u/k), realised as
the cokernel of the standard presentation: one generator block per object
of the comma category and one relation block per morphism (identities
included).  Right Kan extensions are the dual kernels over (k/u).

Maps between pointwise values are induced by the universal property.  The
cokernel projection restricts to the identity on its quotient coordinates,
so a factorisation through it can be read off those columns; every such
factorisation is then checked against the defining equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from halfder.fincat.comma import slice_over, slice_under
from halfder.fincat.functor import FinFunctor, FinNatTrans
from halfder.linalg import (
    ONE,
    ZERO,
    Matrix,
    block_diag,
    cokernel_with_keep,
    hstack,
    kernel_with_free,
    vstack,
)
from halfder.repder.diagram import Diagram, DiagramError, DiagramMap


class KanInvariantError(RuntimeError):
    """A universal-property solve failed; this indicates a bug, never bad input."""


@dataclass(frozen=True)
class Colimit:
    """Colimit of a finite diagram given as blocks and arrows.

    ``proj`` is the cokernel projection from the direct sum of the blocks,
    ``keep`` the quotient coordinates (where ``proj`` is the identity).
    """

    labels: tuple
    offsets: tuple
    relations: Matrix
    proj: Matrix
    keep: tuple

    @property
    def dim(self) -> int:
        return self.proj.rows

    @property
    def total(self) -> int:
        return self.offsets[-1]

    def leg(self, i: int) -> Matrix:
        return self.proj.col_block(self.offsets[i], self.offsets[i + 1])

    def index(self, label) -> int:
        return self.labels.index(label)


@dataclass(frozen=True)
class Limit:
    """Limit of a finite diagram; ``basis`` columns span the kernel and
    ``free`` are the coordinates where ``basis`` is the identity."""

    labels: tuple
    offsets: tuple
    relations: Matrix
    basis: Matrix
    free: tuple

    @property
    def dim(self) -> int:
        return self.basis.cols

    @property
    def total(self) -> int:
        return self.offsets[-1]

    def leg(self, i: int) -> Matrix:
        return self.basis.row_block(self.offsets[i], self.offsets[i + 1])

    def index(self, label) -> int:
        return self.labels.index(label)


def _offsets(dims):
    out = [0]
    for d in dims:
        out.append(out[-1] + d)
    return tuple(out)


def colimit(labels, dims, arrows) -> Colimit:
    """``arrows`` are triples (i, j, matrix from block i to block j)."""
    off = _offsets(dims)
    total = off[-1]
    cols = []
    for i, j, m in arrows:
        d = dims[i]
        if d == 0:
            continue
        rows = [[ZERO] * d for _ in range(total)]
        for r in range(d):
            rows[off[i] + r][r] += ONE
        for r in range(dims[j]):
            for c in range(d):
                rows[off[j] + r][c] -= m.data[r][c]
        cols.append(Matrix._raw(total, d, tuple(map(tuple, rows))))
    rel = hstack(cols, rows=total)
    proj, keep = cokernel_with_keep(rel)
    return Colimit(tuple(labels), off, rel, proj, keep)


def limit(labels, dims, arrows) -> Limit:
    off = _offsets(dims)
    total = off[-1]
    blocks = []
    for i, j, m in arrows:
        dj = dims[j]
        if dj == 0:
            continue
        rows = [[ZERO] * total for _ in range(dj)]
        for r in range(dj):
            for c in range(dims[i]):
                rows[r][off[i] + c] += m.data[r][c]
            rows[r][off[j] + r] -= ONE
        blocks.append(Matrix._raw(dj, total, tuple(map(tuple, rows))))
    rel = vstack(blocks, cols=total)
    basis, free = kernel_with_free(rel)
    return Limit(tuple(labels), off, rel, basis, free)


def _spread(off_from, off_to, mapping, keep_from=None):
    """Column (or row) indices obtained by sending block i to block mapping[i]."""
    out = []
    n = len(off_from) - 1
    coords = keep_from if keep_from is not None else range(off_from[-1])
    for c in coords:
        i = _block_of(off_from, c, n)
        out.append(off_to[mapping[i]] + (c - off_from[i]))
    return out


def _block_of(off, c, n):
    lo, hi = 0, n - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if off[mid] <= c:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _checked(ok: bool, what: str):
    if not ok:
        raise KanInvariantError(f"universal-property solve failed: {what}")


@dataclass(frozen=True)
class KanResult:
    """A Kan extension together with its pointwise (co)limit witnesses.

    For ``side == "left"`` the ``adjunction_map`` is the unit
    X -> u* u_! X; for ``side == "right"`` it is the counit u* u_* X -> X.
    """

    functor: FinFunctor
    side: str
    source: Diagram
    value: Diagram
    pointwise: dict
    adjunction_map: DiagramMap

    @property
    def direction(self) -> str:
        return "unit X -> u*u_!X" if self.side == "left" else "counit u*u_*X -> X"


def _lan_colim(u: FinFunctor, X: Diagram, k: str) -> Colimit:
    C, pr1, _, _ = slice_over(u, k)
    labels = C.objects
    idx = {x: i for i, x in enumerate(labels)}
    dims = [X.dims[pr1.ob(x)] for x in labels]
    arrows = [(idx[a], idx[b], X.mats[pr1.mor(m)]) for m, (a, b) in C.morphisms.items()]
    return colimit(labels, dims, arrows)


def _ran_lim(u: FinFunctor, X: Diagram, k: str) -> Limit:
    C, _, pr2, _ = slice_under(k, u)
    labels = C.objects
    idx = {x: i for i, x in enumerate(labels)}
    dims = [X.dims[pr2.ob(x)] for x in labels]
    arrows = [(idx[a], idx[b], X.mats[pr2.mor(m)]) for m, (a, b) in C.morphisms.items()]
    return limit(labels, dims, arrows)


@lru_cache(maxsize=None)
def _over_table(u: FinFunctor, k: str):
    """For (u/k): the list of (j, f) per object and the reverse index."""
    C, pr1, _, cell = slice_over(u, k)
    pairs = [(pr1.ob(x), cell.at(x)) for x in C.objects]
    return pairs, {jf: i for i, jf in enumerate(pairs)}


@lru_cache(maxsize=None)
def _under_table(k: str, u: FinFunctor):
    """For (k/u): the list of (j, f) per object and the reverse index."""
    C, _, pr2, cell = slice_under(k, u)
    pairs = [(pr2.ob(x), cell.at(x)) for x in C.objects]
    return pairs, {jf: i for i, jf in enumerate(pairs)}


def _over_map(u: FinFunctor, k: str, k2: str, h: str) -> list[int]:
    """Index map (u/k) -> (u/k2) induced by h: k -> k2."""
    K = u.target
    pairs, _ = _over_table(u, k)
    _, idx2 = _over_table(u, k2)
    return [idx2[(j, K.comp(h, f))] for j, f in pairs]


def _under_map(u: FinFunctor, k: str, k2: str, h: str) -> list[int]:
    """Index map (k2/u) -> (k/u) induced by h: k -> k2."""
    K = u.target
    _, idx1 = _under_table(k, u)
    pairs, _ = _under_table(k2, u)
    return [idx1[(j, K.comp(f, h))] for j, f in pairs]


@lru_cache(maxsize=None)
def lan(u: FinFunctor, X: Diagram) -> KanResult:
    """Pointwise left Kan extension u_! X."""
    if X.shape != u.source:
        raise DiagramError("lan: diagram shape is not the functor's source")
    K = u.target
    cols = {k: _lan_colim(u, X, k) for k in K.objects}
    mats = {}
    for h, (k, k2) in K.morphisms.items():
        c1, c2 = cols[k], cols[k2]
        sigma = _over_map(u, k, k2, h)
        full = c2.proj.submatrix(range(c2.dim), _spread(c1.offsets, c2.offsets, sigma))
        m = c2.proj.submatrix(range(c2.dim), _spread(c1.offsets, c2.offsets, sigma, c1.keep))
        _checked(m @ c1.proj == full, f"lan action of {h}")
        mats[h] = m
    Y = Diagram(K, {k: c.dim for k, c in cols.items()}, mats)
    J = u.source
    comps = {}
    for j in J.objects:
        k = u.ob(j)
        comps[j] = cols[k].leg(_over_table(u, k)[1][(j, K.id(k))])
    unit = DiagramMap(X, pullback(u, Y), comps)
    return KanResult(u, "left", X, Y, cols, unit)


@lru_cache(maxsize=None)
def ran(u: FinFunctor, X: Diagram) -> KanResult:
    """Pointwise right Kan extension u_* X."""
    if X.shape != u.source:
        raise DiagramError("ran: diagram shape is not the functor's source")
    K = u.target
    lims = {k: _ran_lim(u, X, k) for k in K.objects}
    mats = {}
    for h, (k, k2) in K.morphisms.items():
        l1, l2 = lims[k], lims[k2]
        tau = _under_map(u, k, k2, h)
        full = l1.basis.submatrix(_spread(l2.offsets, l1.offsets, tau), range(l1.dim))
        m = l1.basis.submatrix(_spread(l2.offsets, l1.offsets, tau, l2.free), range(l1.dim))
        _checked(l2.basis @ m == full, f"ran action of {h}")
        mats[h] = m
    Y = Diagram(K, {k: l.dim for k, l in lims.items()}, mats)
    J = u.source
    comps = {}
    for j in J.objects:
        k = u.ob(j)
        comps[j] = lims[k].leg(_under_table(k, u)[1][(j, K.id(k))])
    counit = DiagramMap(pullback(u, Y), X, comps)
    return KanResult(u, "right", X, Y, lims, counit)


# pullbacks -----------------------------------------------------------------


@lru_cache(maxsize=None)
def pullback(u: FinFunctor, X: Diagram) -> Diagram:
    if X.shape != u.target:
        raise DiagramError("pullback: diagram shape is not the functor's target")
    J = u.source
    return Diagram(
        J,
        {j: X.dims[u.ob(j)] for j in J.objects},
        {f: X.mats[u.mor(f)] for f in J.morphisms},
        check=False,
    )


def pullback_map(u: FinFunctor, phi: DiagramMap) -> DiagramMap:
    return DiagramMap(
        pullback(u, phi.source),
        pullback(u, phi.target),
        {j: phi.comps[u.ob(j)] for j in u.source.objects},
        check=False,
    )


def pullback_cell(alpha: FinNatTrans, X: Diagram) -> DiagramMap:
    """alpha*: u* X -> v* X with component X(alpha_j)."""
    return DiagramMap(
        pullback(alpha.source, X),
        pullback(alpha.target, X),
        {j: X.mats[alpha.at(j)] for j in alpha.domain.objects},
        check=False,
    )


# adjunction data -------------------------------------------------------------


def lan_unit(u: FinFunctor, X: Diagram) -> DiagramMap:
    return lan(u, X).adjunction_map


def ran_counit(u: FinFunctor, X: Diagram) -> DiagramMap:
    return ran(u, X).adjunction_map


@lru_cache(maxsize=None)
def lan_counit(u: FinFunctor, Y: Diagram) -> DiagramMap:
    """u_! u* Y -> Y."""
    res = lan(u, pullback(u, Y))
    K = u.target
    comps = {}
    for k in K.objects:
        c = res.pointwise[k]
        blocks = [Y.mats[f] for _, f in _over_table(u, k)[0]]
        full = hstack(blocks, rows=Y.dims[k])
        m = full.submatrix(range(Y.dims[k]), c.keep)
        _checked(m @ c.proj == full, f"lan counit at {k}")
        comps[k] = m
    return DiagramMap(res.value, Y, comps)


@lru_cache(maxsize=None)
def ran_unit(u: FinFunctor, Y: Diagram) -> DiagramMap:
    """Y -> u_* u* Y."""
    res = ran(u, pullback(u, Y))
    K = u.target
    comps = {}
    for k in K.objects:
        l = res.pointwise[k]
        blocks = [Y.mats[f] for _, f in _under_table(k, u)[0]]
        full = vstack(blocks, cols=Y.dims[k])
        m = full.submatrix(l.free, range(Y.dims[k]))
        _checked(l.basis @ m == full, f"ran unit at {k}")
        comps[k] = m
    return DiagramMap(Y, res.value, comps)


@lru_cache(maxsize=None)
def lan_map(u: FinFunctor, phi: DiagramMap) -> DiagramMap:
    """u_!(phi) induced on colimits."""
    r1, r2 = lan(u, phi.source), lan(u, phi.target)
    comps = {}
    for k in u.target.objects:
        c1, c2 = r1.pointwise[k], r2.pointwise[k]
        js = [j for j, _ in _over_table(u, k)[0]]
        full = c2.proj @ block_diag([phi.comps[j] for j in js])
        m = full.submatrix(range(full.rows), c1.keep)
        _checked(m @ c1.proj == full, f"lan on a map at {k}")
        comps[k] = m
    return DiagramMap(r1.value, r2.value, comps)


@lru_cache(maxsize=None)
def ran_map(u: FinFunctor, phi: DiagramMap) -> DiagramMap:
    """u_*(phi) induced on limits."""
    r1, r2 = ran(u, phi.source), ran(u, phi.target)
    comps = {}
    for k in u.target.objects:
        l1, l2 = r1.pointwise[k], r2.pointwise[k]
        js = [j for j, _ in _under_table(k, u)[0]]
        full = block_diag([phi.comps[j] for j in js]) @ l1.basis
        m = full.submatrix(l2.free, range(full.cols))
        _checked(l2.basis @ m == full, f"ran on a map at {k}")
        comps[k] = m
    return DiagramMap(r1.value, r2.value, comps)
