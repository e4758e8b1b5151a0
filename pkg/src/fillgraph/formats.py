"""File formats owned by the command line surface.

* FatGraphFile: ``{"format": "fatgraph/1", "vertices": [[token, ...], ...]}``
  with signed labels "x+" / "x-"; a loop written with one sign twice carries
  "#0"/"#1" occurrence tags.  Reading then writing a canonical file is byte
  identical.
* PlanFile: ``{"format": "fillplan/1", "target": ..., "steps": [...]}``.
* census CSV / JSON and graphviz DOT emission.
"""

from __future__ import annotations

import io
import json

from .core import FatGraph, FatGraphError
from .synthesis import Step, SynthesisPlan

FATGRAPH_FORMAT = "fatgraph/1"
PLAN_FORMAT = "fillplan/1"


class FormatError(ValueError):
    pass


def graph_to_document(graph: FatGraph) -> dict:
    return {"format": FATGRAPH_FORMAT,
            "vertices": graph.to_vertex_cycle_tokens()}


def graph_from_document(doc) -> FatGraph:
    if not isinstance(doc, dict) or doc.get("format") != FATGRAPH_FORMAT:
        raise FormatError(f"not a {FATGRAPH_FORMAT} document")
    vertices = doc.get("vertices")
    if not isinstance(vertices, list) or not vertices:
        raise FormatError("missing vertices array")
    try:
        return FatGraph.from_vertex_cycles(vertices)
    except FatGraphError as exc:
        raise FormatError(str(exc)) from exc


def dumps_graph(graph: FatGraph) -> str:
    return json.dumps(graph_to_document(graph), indent=2) + "\n"


def loads_graph(text: str) -> FatGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return graph_from_document(doc)


def write_graph(path, graph: FatGraph):
    with open(path, "w") as fh:
        fh.write(dumps_graph(graph))


def read_graph(path) -> FatGraph:
    with open(path) as fh:
        return loads_graph(fh.read())


# --- plans ------------------------------------------------------------------


def plan_to_document(plan: SynthesisPlan) -> dict:
    steps = []
    for st in plan.steps:
        d = {"op": st.op}
        for k in ("family", "param", "left", "right", "x", "y", "w", "u",
                  "arg"):
            v = getattr(st, k)
            if v is not None:
                d[k] = v
        if st.op == "consum":
            d["align"] = st.align
        if st.op in ("join", "plumb"):
            d["flip"] = st.flip
        if st.vertices is not None:
            d["vertices"] = [list(c) for c in st.vertices]
        steps.append(d)
    g, b, s = plan.target
    return {"format": PLAN_FORMAT,
            "target": {"g": g, "b": b, "s": s},
            "expect_filling": plan.expect_filling,
            "expect_omega": plan.expect_omega,
            "steps": steps}


def plan_from_document(doc) -> SynthesisPlan:
    if not isinstance(doc, dict) or doc.get("format") != PLAN_FORMAT:
        raise FormatError(f"not a {PLAN_FORMAT} document")
    t = doc["target"]
    plan = SynthesisPlan(target=(t["g"], t["b"], t["s"]),
                         expect_filling=doc.get("expect_filling", True),
                         expect_omega=doc.get("expect_omega"))
    for d in doc["steps"]:
        vertices = d.get("vertices")
        if vertices is not None:
            vertices = tuple(tuple(c) for c in vertices)
        plan.add(Step(op=d["op"], family=d.get("family"),
                      param=d.get("param"), vertices=vertices,
                      left=d.get("left"), right=d.get("right"),
                      x=d.get("x"), y=d.get("y"),
                      w=d.get("w"), u=d.get("u"),
                      align=d.get("align", 0), flip=d.get("flip", False),
                      arg=d.get("arg")))
    return plan


def dumps_plan(plan) -> str:
    return json.dumps(plan_to_document(plan), indent=2) + "\n"


def loads_plan(text) -> SynthesisPlan:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return plan_from_document(doc)


def write_plan(path, plan):
    with open(path, "w") as fh:
        fh.write(dumps_plan(plan))


def read_plan(path) -> SynthesisPlan:
    with open(path) as fh:
        return loads_plan(fh.read())


# --- census export -----------------------------------------------------------

CENSUS_COLUMNS = ("key", "V", "m", "g", "b", "s", "boundary_lengths",
                  "cycle_lengths", "filling", "omega_max", "count")


def census_rows_to_csv(rows) -> str:
    out = io.StringIO()
    out.write(",".join(CENSUS_COLUMNS) + "\n")
    for r in rows:
        out.write(",".join([
            r.key.hex(), str(r.vertex_count), str(r.edge_count),
            str(r.genus), str(r.boundary_count),
            str(r.standard_cycle_count),
            "|".join(map(str, r.boundary_lengths)),
            "|".join(map(str, r.cycle_lengths)),
            "true" if r.filling else "false",
            "" if r.omega_max is None else str(r.omega_max),
            str(r.count)]) + "\n")
    return out.getvalue()


def census_rows_to_json(rows) -> str:
    payload = []
    for r in rows:
        payload.append({
            "key": r.key.hex(), "V": r.vertex_count, "m": r.edge_count,
            "g": r.genus, "b": r.boundary_count,
            "s": r.standard_cycle_count,
            "boundary_lengths": list(r.boundary_lengths),
            "cycle_lengths": list(r.cycle_lengths),
            "filling": r.filling, "omega_max": r.omega_max,
            "count": r.count})
    return json.dumps(payload, indent=2) + "\n"


# --- DOT export ---------------------------------------------------------------

_DOT_COLORS = ("red", "blue", "forestgreen", "darkorange", "purple",
               "saddlebrown", "deeppink", "teal", "olive", "navy",
               "crimson", "darkcyan")


def graph_to_dot(graph: FatGraph) -> str:
    """DOT emission: vertices as nodes, undirected edges once each, the
    rotation recorded in port attributes and curves colored consistently."""
    lines = ["graph fatgraph {", "  node [shape=circle];"]
    vo = graph.vertex_of
    slot = {}
    for cyc in graph.vertex_cycles:
        for i, d in enumerate(cyc):
            slot[d] = i
    try:
        coe = graph.curve_of_edge
    except Exception:
        coe = [None] * graph.num_edges
    for v in range(graph.num_vertices):
        rot = " ".join(graph.dart_name(d) for d in graph.vertex_cycles[v])
        lines.append(f'  v{v} [label="v{v}", rotation="{rot}"];')
    for k, name in enumerate(graph.labels):
        d0, d1 = 2 * k, 2 * k + 1
        color = ("black" if coe[k] is None
                 else _DOT_COLORS[coe[k] % len(_DOT_COLORS)])
        lines.append(
            f'  v{vo[d0]} -- v{vo[d1]} [label="{name}", color="{color}", '
            f'tailport="{slot[d0]}", headport="{slot[d1]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
