"""Graphviz rendering.

Labels go inside nodes, types in italics next to them, attributes on
edges in small caps, relations as dashed edges and wrappings as clusters.
Edges that touch a wrapping as an entity are routed through an invisible
anchor node placed inside its cluster.
"""

from __future__ import annotations

from .model import Entity, Model, Wrap


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _html(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _name(e: Entity) -> str:
    return f"w_{e.id}" if isinstance(e, Wrap) else f"n{e}"


def _node_label(model: Model, e: Entity) -> str:
    labs = ",".join(sorted(model.labels_of(e)))
    types = ", ".join(sorted(model.types_of(e)))
    inner = f"<B>{_html(labs)}</B>" if labs else " "
    if types:
        inner += f"<BR/><I>{_html(types)}</I>"
    return f"<{inner}>"


def to_dot(model: Model, name: str = "frame") -> str:
    lines = [f"digraph {_q(name)} {{", "  compound=true;", '  node [shape=circle, fontname="Helvetica"];']
    placed = set()
    for w in sorted(model.wrappings):
        lines.append(f"  subgraph cluster_{w.id} {{")
        cap = ",".join(sorted(model.labels_of(w)))
        types = ", ".join(sorted(model.types_of(w)))
        if types:
            cap = f"{cap} : {types}" if cap else types
        lines.append(f"    label={_q(cap)}; style=rounded;")
        lines.append(f"    {_name(w)} [shape=point, style=invis];")
        for v in sorted(model.wrappings[w]):
            lines.append(f"    {_name(v)} [label={_node_label(model, v)}];")
            placed.add(v)
        lines.append("  }")
    for v in sorted(model.nodes - placed):
        lines.append(f"  {_name(v)} [label={_node_label(model, v)}];")

    def ends(src: Entity, dst: Entity) -> str:
        extra = []
        if isinstance(src, Wrap):
            extra.append(f"ltail=cluster_{src.id}")
        if isinstance(dst, Wrap):
            extra.append(f"lhead=cluster_{dst.id}")
        return "".join(", " + x for x in extra)

    for (src, a), dst in sorted(model.attrs.items(), key=lambda kv: (str(kv[0][0]), kv[0][1])):
        lines.append(
            f"  {_name(src)} -> {_name(dst)} [label=<<FONT POINT-SIZE=\"10\">{_html(a.upper())}</FONT>>{ends(src, dst)}];"
        )
    for rname, args in sorted(model.relations, key=lambda r: (r[0], tuple(map(str, r[1])))):
        if len(args) == 2:
            src, dst = args
            lines.append(f"  {_name(src)} -> {_name(dst)} [label={_q(rname)}, style=dashed{ends(src, dst)}];")
        else:
            hub = "r_" + rname + "_" + "_".join(_name(a) for a in args)
            lines.append(f"  {hub} [shape=box, style=dashed, label={_q(rname)}];")
            for i, a in enumerate(args):
                lines.append(f"  {hub} -> {_name(a)} [style=dashed, label={_q(str(i))}{ends(hub, a)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
