"""Command line front end.

Every command prints a report (one PASS/FAIL line per check, seeds in the
header) and, for commands that compute something, a YAML document after a
``---`` line.  The exit status is 0 exactly when no check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import yaml

from halfder.report import Check, Report, Tally
from halfder.repder.sampling import Policy

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


def _policy(args) -> Policy:
    return Policy(seed=args.seed, samples=args.samples, max_dim=args.max_dim)


def _load(args):
    from halfder.serialize import parse_workspace

    if not args.workspace:
        raise CliError("this command needs --workspace FILE")
    return parse_workspace(args.workspace)


def _lookup(ws, name: str, section: str):
    table = getattr(ws, section)
    if name not in table:
        raise CliError(f"no {section[:-1]} named {name!r} in the workspace")
    return table[name]


def _report(args, title: str) -> Report:
    return Report(title, header={"seed": args.seed, "samples": args.samples, "max_dim": args.max_dim})


# commands ------------------------------------------------------------------------------


def cmd_validate(args):
    from halfder.serialize import SECTIONS

    ws = _load(args)
    rep = _report(args, f"validate {args.workspace}")
    for section in SECTIONS:
        for name in getattr(ws, section):
            rep.add(Check(f"{section}.{name}", True, instances=1))
    return rep, {"bindings": len(ws)}


def cmd_comma(args):
    from halfder.fincat.comma import comma_category
    from halfder.serialize import category_to_yaml

    ws = _load(args)
    u = _lookup(ws, args.u, "functors")
    v = _lookup(ws, args.v, "functors")
    C, pr1, pr2, cell = comma_category(u, v)
    rep = _report(args, f"comma ({args.u}/{args.v})")
    rep.add(Check("comma category", True, "objects in (u_1/u_2) are triples", len(C.objects)))
    return rep, {"category": category_to_yaml(C), "cell": dict(cell.components)}


def cmd_kan(args):
    from halfder.repder.derivator import VECT
    from halfder.repder.diagram import compose_all
    from halfder.serialize import diagram_to_yaml, map_to_yaml

    ws = _load(args)
    u = _lookup(ws, args.functor, "functors")
    X = _lookup(ws, args.diagram, "diagrams")
    rep = _report(args, f"kan {args.side} {args.functor} {args.diagram}")
    t = Tally()
    if args.side == "left":
        Y = VECT.lan(u, X)
        unit = VECT.lan_unit(u, X)
        tri = compose_all(VECT.pullback_map(u, VECT.lan_counit(u, Y)), VECT.lan_unit(u, VECT.pullback(u, Y)))
        t.record(tri.is_identity(), "triangle u* eps . eta u*")
        rep.add(t.check("left Kan extension triangle", "Left Kan extensions can be computed pointwise"))
        return rep, {"value": diagram_to_yaml(Y), "unit": map_to_yaml(unit)}, (u.target, Y)
    Y = VECT.ran(u, X)
    counit = VECT.ran_counit(u, X)
    tri = compose_all(VECT.ran_counit(u, VECT.pullback(u, Y)), VECT.pullback_map(u, VECT.ran_unit(u, Y)))
    t.record(tri.is_identity(), "triangle eps u* . u* eta")
    rep.add(t.check("right Kan extension triangle", "Right Kan extensions can be computed pointwise"))
    return rep, {"value": diagram_to_yaml(Y), "counit": map_to_yaml(counit)}, (u.target, Y)


def cmd_mate(args):
    from halfder.repder.mates import mate_component
    from halfder.serialize import map_to_yaml

    ws = _load(args)
    s = _lookup(ws, args.square, "squares")
    X = _lookup(ws, args.diagram, "diagrams")
    m = mate_component(s, args.side, X)
    rep = _report(args, f"mate {args.side} {args.square} {args.diagram}")
    rep.add(Check(f"{args.side} mate computed", True, "the left mate of" if args.side == "left" else "the right mate of", 1, f"invertible={m.is_iso()}"))
    return rep, {"mate": map_to_yaml(m), "invertible": m.is_iso()}


def cmd_exact_check(args):
    from halfder.exactness import check_exact

    ws = _load(args)
    s = _lookup(ws, args.square, "squares")
    v = check_exact(s, args.side, _policy(args))
    rep = _report(args, f"exact-check {args.square} --side {args.side}")
    detail = v.summary() + f" ({v.note})"
    rep.add(Check(f"{args.square} is exact", v.passed, "We call such a square", v.components, detail))
    out = {"outcome": "pass" if v.passed else "fail", "samples": v.samples, "seed": v.seed}
    if not v.passed:
        out["witness"] = {"sample": v.witness_index, "object": v.witness_object}
    return rep, out


def cmd_ext_zero(args):
    from halfder.pointed import extend_by_zero
    from halfder.serialize import diagram_to_yaml

    ws = _load(args)
    u = _lookup(ws, args.functor, "functors")
    X = _lookup(ws, args.diagram, "diagrams")
    e = extend_by_zero(u, X)
    rep = _report(args, f"ext-zero {args.functor} {args.diagram}")
    rep.add(Check("extension by zero characterized", e.characterized, "essential image X in D(K) such that", 1))
    return rep, {"side": e.side, "value": diagram_to_yaml(e.value), "zero_at": list(e.zero_objects)}, (u.target, e.value)


def cmd_cofiber(args):
    from halfder.linalg import rank
    from halfder.pointed import cofiber
    from halfder.serialize import diagram_to_yaml, matrix_to_yaml

    ws = _load(args)
    f = _lookup(ws, args.diagram, "diagrams")
    r = cofiber(f)
    expect = f.dims["1"] - rank(f.mats["0->1"])
    rep = _report(args, f"cofiber {args.diagram}")
    rep.add(Check("cofiber square is cocartesian", bool(r.cocartesian), "is in the essential image of", 1))
    rep.add(Check("dim C(f) = dim cod - rank f", r.cofiber == expect, "to compute its cofibre", 1, f"dim C(f) = {r.cofiber}"))
    out = {
        "cofiber_dim": r.cofiber,
        "leg": matrix_to_yaml(r.leg),
        "intermediate": diagram_to_yaml(r.intermediate),
        "output": diagram_to_yaml(r.output),
    }
    return rep, out, (r.output.shape, r.output)


def cmd_exc_adjoint(args):
    from halfder.pointed import exceptional_kernel, exceptional_routes_agree
    from halfder.serialize import diagram_to_yaml

    ws = _load(args)
    Y = _lookup(ws, args.diagram, "diagrams")
    P, _ = exceptional_kernel(Y)
    rep = _report(args, f"exc-adjoint {args.diagram}")
    rep.add(Check("kernel route equals ran route", exceptional_routes_agree(Y) is not None, "the formula for i_{[1]}^! is", 1))
    return rep, {"value": diagram_to_yaml(P)}, (P.shape, P)


def cmd_k0_check(args):
    from halfder.pointed import k0_additivity_check

    ws = _load(args)
    X = _lookup(ws, args.diagram, "diagrams")
    r = k0_additivity_check(X)
    rep = _report(args, f"k0-check {args.diagram}")
    detail = r.note or f"{r.dims['B']} = {r.dims['A']} + {r.dims['C']}"
    rep.add(Check("[B] = [A] + [C]", r.passed, "we have [B]=[A]+[C]", 1, detail))
    return rep, {"mono": r.mono, "dims": r.dims, "asserted": r.holds is not None, "holds": r.holds}


def cmd_cocontinuous(args):
    from halfder.derimorph import is_cocontinuous, is_continuous

    ws = _load(args)
    phi = _lookup(ws, args.morphism, "morphisms")
    u = _lookup(ws, args.functor, "functors")
    check = is_continuous if args.dual else is_cocontinuous
    v = check(phi, u, _policy(args))
    word = "continuous" if args.dual else "cocontinuous"
    rep = _report(args, f"{word} {args.morphism} along {args.functor}")
    phrase = "preserves right Kan extensions along u" if args.dual else "preserves left Kan extensions along u"
    rep.add(Check(f"{args.morphism} {word} along {args.functor}", v.passed, phrase, v.instances, v.witness))
    return rep, {word: v.passed, "witness": v.witness or None}


def cmd_corpus(args):
    from halfder.acceptance import CRITERIA, criterion_lines, run_acceptance

    only = set(args.criterion) if args.criterion else None
    rep = run_acceptance(_policy(args), only)
    out = {"criteria": criterion_lines(rep)}
    if args.out:
        from halfder.plotting import summary_png

        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        (d / "report.txt").write_text(rep.render_text())
        summary_png(rep, d / "summary.png", CRITERIA)
    return rep, out


def cmd_emit_dot(args):
    from halfder.plotting import render_png, to_dot

    ws = _load(args)
    kind = None
    try:
        kind = ws.kind_of(args.name)
    except KeyError:
        raise CliError(f"no category or diagram named {args.name!r}") from None
    if kind == "categories":
        C, X = ws.categories[args.name], None
    elif kind == "diagrams":
        X = ws.diagrams[args.name]
        C = X.shape
    else:
        raise CliError(f"{args.name!r} is a {kind[:-1]}, not a category or diagram")
    text = to_dot(C, X, args.name)
    rep = _report(args, f"emit-dot {args.name}")
    rep.add(Check("graph emitted", True, "", len(C.non_identity())))
    if args.out:
        dot = Path(args.out)
        dot.parent.mkdir(parents=True, exist_ok=True)
        dot.write_text(text)
        render_png(C, dot.with_suffix(".png"), X, args.name)
    return rep, text


# wiring --------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-w", "--workspace", help="YAML workspace file")
    common.add_argument("--seed", type=int, default=7)
    common.add_argument("--samples", type=int, default=25)
    common.add_argument("--max-dim", type=int, default=4)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="output path (a directory for corpus)")

    parser = argparse.ArgumentParser(prog="halfder", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "load and validate a workspace")
    p = add("comma", cmd_comma, "comma category of two functors")
    p.add_argument("u")
    p.add_argument("v")
    p = add("kan", cmd_kan, "pointwise Kan extension of a diagram")
    p.add_argument("functor")
    p.add_argument("diagram")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p = add("mate", cmd_mate, "mate of a square at a diagram")
    p.add_argument("square")
    p.add_argument("diagram")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p = add("exact-check", cmd_exact_check, "falsification check of exactness")
    p.add_argument("square")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p = add("ext-zero", cmd_ext_zero, "extension by zero along a sieve or cosieve")
    p.add_argument("functor")
    p.add_argument("diagram")
    p = add("cofiber", cmd_cofiber, "cofiber square of a map")
    p.add_argument("diagram")
    p = add("exc-adjoint", cmd_exc_adjoint, "exceptional right adjoint of [1] -> corner")
    p.add_argument("diagram")
    p = add("k0-check", cmd_k0_check, "K0 relation for a cocartesian square")
    p.add_argument("diagram")
    p = add("cocontinuous", cmd_cocontinuous, "cocontinuity of a morphism along a functor")
    p.add_argument("morphism")
    p.add_argument("functor")
    p.add_argument("--dual", action="store_true", help="check continuity instead")
    p = add("corpus", cmd_corpus, "run the acceptance corpus")
    p.add_argument("--criterion", type=int, action="append", help="restrict to a criterion (repeatable)")
    p = add("emit-dot", cmd_emit_dot, "DOT graph (and PNG) of a category or diagram")
    p.add_argument("name")
    return parser


def render(rep: Report, payload, fmt: str) -> str:
    if fmt == "json":
        body = json.loads(rep.render_json())
        body["result"] = payload
        return json.dumps(body, indent=2, sort_keys=True) + "\n"
    text = rep.render_text()
    if isinstance(payload, str):
        text += "---\n" + payload
    elif payload:
        text += "---\n" + yaml.safe_dump(payload, sort_keys=False, default_flow_style=None, width=100)
    return text


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    rep, payload = result[0], result[1]
    text = render(rep, payload, args.format)
    if args.out and args.command not in ("corpus", "emit-dot"):
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
        if len(result) > 2:
            from halfder.plotting import render_png

            C, X = result[2]
            render_png(C, out.with_suffix(".png"), X, rep.title)
    sys.stdout.write(text)
    return EXIT_OK if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
