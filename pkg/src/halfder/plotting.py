"""Figures and graph descriptions: DOT text for categories and diagrams,
PNG renderings through matplotlib, and the corpus summary chart."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402

from halfder.fincat.category import FinCategory  # noqa: E402
from halfder.repder.diagram import Diagram  # noqa: E402

PASS_COLOR = "#3b7d4f"
FAIL_COLOR = "#b33a3a"


def _quote(s: str) -> str:
    return '"' + str(s).replace('"', '\\"') + '"'


def to_dot(C: FinCategory, X: Diagram | None = None, name: str = "") -> str:
    """One node per object, one edge per non-identity morphism.

    With a diagram, nodes carry dimensions and edges carry matrices.
    """
    lines = [f"digraph {_quote(name or C.name or 'C')} {{", "  rankdir=LR;"]
    for a in C.objects:
        label = a if X is None else f"{a}\\ndim {X.dims[a]}"
        lines.append(f"  {_quote(a)} [label={_quote(label)}];")
    for f in C.non_identity():
        s, t = C.morphisms[f]
        label = f
        if X is not None:
            m = X.mats[f]
            label = f"{f}\\n" + "; ".join(" ".join(row) for row in m.to_strings())
        lines.append(f"  {_quote(s)} -> {_quote(t)} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _graph(C: FinCategory) -> nx.MultiDiGraph:
    G = nx.MultiDiGraph()
    G.add_nodes_from(C.objects)
    for f in C.non_identity():
        s, t = C.morphisms[f]
        G.add_edge(s, t, key=f)
    return G


def layout(C: FinCategory) -> dict:
    """Layered left to right when acyclic, circular otherwise."""
    G = _graph(C)
    simple = nx.DiGraph(G)
    simple.remove_edges_from(list(nx.selfloop_edges(simple)))
    if C.objects and nx.is_directed_acyclic_graph(simple):
        for layer, nodes in enumerate(nx.topological_generations(simple)):
            for n in nodes:
                simple.nodes[n]["layer"] = layer
        return nx.multipartite_layout(simple, subset_key="layer")
    return nx.circular_layout(simple)


def render_png(C: FinCategory, path, X: Diagram | None = None, title: str = "") -> Path:
    path = Path(path)
    G = _graph(C)
    pos = layout(C)
    fig, ax = plt.subplots(figsize=(max(3.0, 1.4 * len(C.objects)), 3.0))
    if C.objects:
        labels = {a: a if X is None else f"{a}\n{X.dims[a]}" for a in C.objects}
        nx.draw_networkx_nodes(G, pos, ax=ax, node_color="#dde6f0", node_size=900, edgecolors="#333333")
        nx.draw_networkx_labels(G, pos, labels=labels, ax=ax, font_size=8)
        nx.draw_networkx_edges(G, pos, ax=ax, arrows=True, node_size=900, arrowstyle="-|>", connectionstyle="arc3,rad=0.08")
    ax.set_title(title or C.name or "", fontsize=10)
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def summary_png(report, path, criteria: dict) -> Path:
    """Checks per criterion, coloured by outcome."""
    path = Path(path)
    rows = []
    for n, title in criteria.items():
        cs = [c for c in report.checks if c.criterion == n]
        if cs:
            rows.append((f"{n}. {title}", sum(c.passed for c in cs), len(cs) - sum(c.passed for c in cs)))
    fig, ax = plt.subplots(figsize=(7.0, 0.45 * len(rows) + 1.2))
    names = [r[0] for r in rows][::-1]
    ok = [r[1] for r in rows][::-1]
    bad = [r[2] for r in rows][::-1]
    ax.barh(names, ok, color=PASS_COLOR, label="pass")
    ax.barh(names, bad, left=ok, color=FAIL_COLOR, label="fail")
    ax.set_xlabel("checks")
    ax.legend(loc="lower right", fontsize=8, frameon=False)
    for side in ("top", "right"):
        ax.spines[side].set_visible(False)
    ax.set_title(report.title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
