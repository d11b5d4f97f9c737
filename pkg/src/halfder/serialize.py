"""The workspace file format: a YAML document with named bindings.

Sections, in canonical order: categories, functors, transformations,
diagrams, maps, squares, morphisms.  Later sections refer to earlier
bindings by name.  Matrices are lists of rows of "num/den" strings (plain
integers are accepted on input).  ``dump_workspace`` writes the fully
explicit form, so parse(print(ws)) == ws.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from halfder.fincat.category import CategoryError, FinCategory, construct_standard, poset
from halfder.fincat.functor import (
    FinFunctor,
    FinNatTrans,
    FunctorError,
    classifier,
    identity_functor,
    inclusion,
    projection,
)
from halfder.fincat.squares import OrientedSquare
from halfder.linalg import Matrix, format_rational, rational
from halfder.repder.diagram import Diagram, DiagramError, DiagramMap

SECTIONS = ("categories", "functors", "transformations", "diagrams", "maps", "squares", "morphisms")


class WorkspaceError(ValueError):
    """A parse or validation failure, with the binding it concerns."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass
class Workspace:
    categories: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)
    transformations: dict = field(default_factory=dict)
    diagrams: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    squares: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    # the source records of squares and morphisms, kept for printing
    square_specs: dict = field(default_factory=dict)
    morphism_specs: dict = field(default_factory=dict)

    def __len__(self):
        return sum(len(getattr(self, s)) for s in SECTIONS)

    def get(self, name: str):
        for s in SECTIONS:
            table = getattr(self, s)
            if name in table:
                return table[name]
        raise KeyError(name)

    def kind_of(self, name: str) -> str:
        for s in SECTIONS:
            if name in getattr(self, s):
                return s
        raise KeyError(name)

    def __eq__(self, other):
        if not isinstance(other, Workspace):
            return NotImplemented
        simple = all(getattr(self, s) == getattr(other, s) for s in SECTIONS[:5])
        return simple and self.square_specs == other.square_specs and self.morphism_specs == other.morphism_specs


# matrices -----------------------------------------------------------------------------


def matrix_to_yaml(m: Matrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "data": m.to_strings()}


def matrix_from_yaml(obj, rows: int | None = None, cols: int | None = None) -> Matrix:
    if isinstance(obj, dict):
        rows, cols, data = obj["rows"], obj["cols"], obj.get("data", [])
    else:
        data = obj
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
    return Matrix(rows, cols, [[rational(str(x)) for x in row] for row in data])


# loading -------------------------------------------------------------------------------


def _ref(table: dict, name, where: str, what: str):
    try:
        return table[name]
    except (KeyError, TypeError):
        raise WorkspaceError(where, f"undefined {what} {name!r}") from None


def _category(ws: Workspace, name: str, spec) -> FinCategory:
    where = f"categories.{name}"
    if "standard" in spec:
        args = []
        for a in spec.get("args", []):
            args.append(_ref(ws.categories, a, where, "category") if isinstance(a, str) and a in ws.categories else a)
        return construct_standard(spec["standard"], *args)
    if "poset" in spec:
        p = spec["poset"]
        return poset(p["elements"], [tuple(r) for r in p.get("relations", [])], name=spec.get("name", name))
    mors = {str(f): (str(s), str(t)) for f, (s, t) in spec["morphisms"].items()}
    ident = {str(a): str(f) for a, f in spec["identity"].items()}
    comp = {}
    for f, (s, t) in mors.items():
        comp[(ident[t], f)] = f
        comp[(f, ident[s])] = f
    for g, f, h in spec.get("compose", []):
        comp[(str(g), str(f))] = str(h)
    return FinCategory([str(a) for a in spec["objects"]], mors, ident, comp, name=spec.get("name", name))


def _functor(ws: Workspace, name: str, spec) -> FinFunctor:
    where = f"functors.{name}"
    cats = ws.categories
    if "identity" in spec:
        return identity_functor(_ref(cats, spec["identity"], where, "category"))
    if "projection" in spec:
        return projection(_ref(cats, spec["projection"], where, "category"))
    if "classifier" in spec:
        c = spec["classifier"]
        return classifier(_ref(cats, c["category"], where, "category"), str(c["object"]))
    J = _ref(cats, spec["source"], where, "category")
    K = _ref(cats, spec["target"], where, "category")
    om = {str(a): str(b) for a, b in spec["objects"].items()}
    if "morphisms" in spec:
        mm = {str(a): str(b) for a, b in spec["morphisms"].items()}
        return FinFunctor(J, K, om, mm, name=spec.get("name", name))
    return inclusion(J, K, om, name=spec.get("name", name))


def _nat(ws: Workspace, name: str, spec) -> FinNatTrans:
    where = f"transformations.{name}"
    u = _ref(ws.functors, spec["source"], where, "functor")
    v = _ref(ws.functors, spec["target"], where, "functor")
    return FinNatTrans(u, v, {str(a): str(c) for a, c in spec["components"].items()}, name=name)


def _diagram(ws: Workspace, name: str, spec) -> Diagram:
    where = f"diagrams.{name}"
    K = _ref(ws.categories, spec["shape"], where, "category")
    dims = {str(a): int(d) for a, d in spec["dims"].items()}
    gens = {}
    for f, m in (spec.get("maps") or {}).items():
        f = str(f)
        if f not in K.morphisms:
            raise WorkspaceError(where, f"unknown morphism {f!r}")
        s, t = K.morphisms[f]
        gens[f] = matrix_from_yaml(m, dims[t], dims[s])
    return Diagram.from_generators(K, dims, gens)


def _map(ws: Workspace, name: str, spec) -> DiagramMap:
    where = f"maps.{name}"
    X = _ref(ws.diagrams, spec["source"], where, "diagram")
    Y = _ref(ws.diagrams, spec["target"], where, "diagram")
    comps = {}
    for a in X.shape.objects:
        m = (spec.get("components") or {}).get(a)
        comps[a] = Matrix.zeros(Y.dims[a], X.dims[a]) if m is None else matrix_from_yaml(m, Y.dims[a], X.dims[a])
    return DiagramMap(X, Y, comps)


def _square(ws: Workspace, name: str, spec) -> OrientedSquare:
    from halfder.exactness import build_named_square, negative_control_square

    where = f"squares.{name}"
    if spec.get("family") == "negative_control":
        return negative_control_square()
    if spec.get("family") in ("final_adjoint", "initial_adjoint"):
        from halfder.fincat.predicates import final_object_adjunction, initial_object_adjunction

        (cat,) = spec.get("args", [None])
        K = _ref(ws.categories, cat, where, "category")
        if spec["family"] == "final_adjoint":
            return build_named_square("adjoint_right", *final_object_adjunction(K))
        return build_named_square("adjoint_left", *initial_object_adjunction(K))
    if "family" in spec:
        args = []
        for a in spec.get("args", []):
            if isinstance(a, str) and a in ws.functors:
                args.append(ws.functors[a])
            elif isinstance(a, str) and a in ws.transformations:
                args.append(ws.transformations[a])
            else:
                args.append(str(a))
        return build_named_square(spec["family"], *args)
    fs = {k: _ref(ws.functors, spec[k], where, "functor") for k in ("v", "p", "q", "w")}
    cell = _ref(ws.transformations, spec["cell"], where, "transformation")
    return OrientedSquare(fs["v"], fs["p"], fs["q"], fs["w"], cell, spec.get("orientation", "down_left"), name)


def _morphism(ws: Workspace, name: str, spec):
    from halfder import derimorph as dm

    where = f"morphisms.{name}"
    kind = spec["kind"]
    if kind in ("pullback_along", "lan_along", "ran_along"):
        u = _ref(ws.functors, spec["functor"], where, "functor")
        return getattr(dm, kind)(u)
    I = _ref(ws.categories, spec["shift"], where, "category") if spec.get("shift") else None
    if kind in ("tensor_with", "direct_sum_with_constant"):
        return getattr(dm, kind)(int(spec["n"]), I)
    if kind == "identity":
        return dm.identity_morphism(I)
    if kind == "composite":
        first = _ref(ws.morphisms, spec["first"], where, "morphism")
        second = _ref(ws.morphisms, spec["second"], where, "morphism")
        return dm.composite(second, first)
    raise WorkspaceError(where, f"unknown morphism kind {kind!r}")


_LOADERS = {
    "categories": _category,
    "functors": _functor,
    "transformations": _nat,
    "diagrams": _diagram,
    "maps": _map,
    "squares": _square,
    "morphisms": _morphism,
}


def _bind_implicit(ws: Workspace, u: FinFunctor) -> None:
    """Bind the endpoints of a functor built from a shorthand (such as the
    point e of a classifier) under their own names, so printing stays
    self-contained."""
    for C in (u.source, u.target):
        if C not in ws.categories.values():
            name = C.name or "anon"
            while name in ws.categories:
                name += "'"
            ws.categories[name] = C


def load_workspace(doc: dict) -> Workspace:
    ws = Workspace()
    if doc is None:
        return ws
    if not isinstance(doc, dict):
        raise WorkspaceError("document", "top level must be a mapping")
    unknown = [k for k in doc if k not in SECTIONS]
    if unknown:
        raise WorkspaceError("document", f"unknown section {unknown[0]!r}")
    for section in SECTIONS:
        for name, spec in (doc.get(section) or {}).items():
            name = str(name)
            where = f"{section}.{name}"
            if not isinstance(spec, dict):
                raise WorkspaceError(where, "binding must be a mapping")
            try:
                value = _LOADERS[section](ws, name, spec)
            except WorkspaceError:
                raise
            except (CategoryError, FunctorError, DiagramError, ValueError, KeyError, TypeError) as exc:
                raise WorkspaceError(where, str(exc)) from None
            getattr(ws, section)[name] = value
            if section == "functors":
                _bind_implicit(ws, value)
            if section == "squares":
                ws.square_specs[name] = spec
            elif section == "morphisms":
                ws.morphism_specs[name] = spec
    return ws


def parse_workspace(path) -> Workspace:
    text = Path(path).read_text()
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"{path}:{mark.line + 1}" if mark else str(path)
        raise WorkspaceError(where, f"syntax error: {getattr(exc, 'problem', exc)}") from None
    return load_workspace(doc)


# printing -----------------------------------------------------------------------------------


def category_to_yaml(C: FinCategory) -> dict:
    comp = [
        [g, f, h]
        for (g, f), h in C.compose_table.items()
        if not C.is_identity(g) and not C.is_identity(f)
    ]
    return {
        "name": C.name,
        "objects": list(C.objects),
        "morphisms": {f: [s, t] for f, (s, t) in C.morphisms.items()},
        "identity": dict(C.identity),
        "compose": comp,
    }


def _name_of(table: dict, value, what: str) -> str:
    for k, v in table.items():
        if v == value:
            return k
    raise WorkspaceError(what, "refers to an object with no binding")


def dump_workspace(ws: Workspace) -> dict:
    out: dict[str, Any] = {}
    if ws.categories:
        out["categories"] = {n: category_to_yaml(C) for n, C in ws.categories.items()}
    if ws.functors:
        out["functors"] = {
            n: {
                "name": u.name,
                "source": _name_of(ws.categories, u.source, f"functors.{n}"),
                "target": _name_of(ws.categories, u.target, f"functors.{n}"),
                "objects": dict(u.obj_map),
                "morphisms": dict(u.mor_map),
            }
            for n, u in ws.functors.items()
        }
    if ws.transformations:
        out["transformations"] = {
            n: {
                "source": _name_of(ws.functors, a.source, f"transformations.{n}"),
                "target": _name_of(ws.functors, a.target, f"transformations.{n}"),
                "components": dict(a.components),
            }
            for n, a in ws.transformations.items()
        }
    if ws.diagrams:
        out["diagrams"] = {
            n: {
                "shape": _name_of(ws.categories, X.shape, f"diagrams.{n}"),
                "dims": dict(X.dims),
                "maps": {f: matrix_to_yaml(m) for f, m in X.mats.items() if not X.shape.is_identity(f)},
            }
            for n, X in ws.diagrams.items()
        }
    if ws.maps:
        out["maps"] = {
            n: {
                "source": _name_of(ws.diagrams, m.source, f"maps.{n}"),
                "target": _name_of(ws.diagrams, m.target, f"maps.{n}"),
                "components": {a: matrix_to_yaml(c) for a, c in m.comps.items()},
            }
            for n, m in ws.maps.items()
        }
    if ws.square_specs:
        out["squares"] = {n: dict(s) for n, s in ws.square_specs.items()}
    if ws.morphism_specs:
        out["morphisms"] = {n: dict(s) for n, s in ws.morphism_specs.items()}
    return out


def print_workspace(ws: Workspace) -> str:
    return yaml.safe_dump(dump_workspace(ws), sort_keys=False, default_flow_style=None, width=100)


# reports for single values ------------------------------------------------------------------


def diagram_to_yaml(X: Diagram) -> dict:
    return {
        "shape": X.shape.name,
        "dims": dict(X.dims),
        "maps": {f: matrix_to_yaml(m) for f, m in X.mats.items() if not X.shape.is_identity(f)},
    }


def map_to_yaml(m: DiagramMap) -> dict:
    return {"components": {a: matrix_to_yaml(c) for a, c in m.comps.items()}}


__all__ = [
    "Workspace",
    "WorkspaceError",
    "SECTIONS",
    "parse_workspace",
    "load_workspace",
    "dump_workspace",
    "print_workspace",
    "matrix_to_yaml",
    "matrix_from_yaml",
    "category_to_yaml",
    "diagram_to_yaml",
    "map_to_yaml",
    "format_rational",
]
