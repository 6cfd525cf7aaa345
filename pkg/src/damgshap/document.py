"""JSON graph documents: a DAMG with optional weights, values and kernel.

Example::

    {
      "vertices": ["a", "b", "c"],
      "edges": [{"id": "ac", "tail": "a", "head": "c", "weight": "1/2"},
                {"id": "bc", "tail": "b", "head": "c"}],
      "root_weights": {"a": "1", "b": "2"},
      "values": {"a": "1", "b": "2", "c": "7/2"},
      "kernel": "path-uniform"
    }

Rationals are written as ``"p/q"`` strings (integers are accepted as JSON
numbers too). A value may be a list of rationals; all lists share one length.
``kernel`` is a kernel name or an explicit map from edge id to rational.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .algebra import ValueFunction
from .errors import DamgError, ParseError
from .graph import Damg, build_damg
from .scalars import Vector, format_scalar, format_value, parse_rational
from .weights import (
    EdgeWeights,
    ProjectionKernel,
    RootWeights,
    edge_uniform_kernel,
    induced_kernel,
    path_uniform_kernel,
)

KERNEL_NAMES = ("path-uniform", "edge-uniform", "induced")
_KEYS = {"vertices", "edges", "root_weights", "values", "kernel"}


@dataclass
class GraphDocument:
    graph: Damg
    edge_weights: dict | None = None
    root_weights: dict | None = None
    values: dict | None = None
    kernel: str | dict | None = None

    def sigma(self) -> EdgeWeights:
        if self.edge_weights is None:
            return EdgeWeights.ones(self.graph)
        return EdgeWeights(self.graph, {e.id: self.edge_weights.get(e.id, 1) for e in self.graph.edges})

    def tau(self) -> RootWeights:
        if self.root_weights is None:
            return RootWeights.ones(self.graph)
        return RootWeights(self.graph, {r: self.root_weights.get(r, 1) for r in self.graph.roots})

    def value_function(self) -> ValueFunction:
        if self.values is None:
            raise ParseError("values required")
        return ValueFunction(self.graph, self.values, allow_float=True)

    def build_kernel(self, name: str | None = None) -> ProjectionKernel:
        """Kernel named by ``name``; ``"file"`` or ``None`` defers to the document."""
        if name in (None, "file"):
            spec = self.kernel
            if spec is None:
                if name == "file":
                    raise ParseError("--kernel file needs an explicit kernel map in the document")
                spec = "path-uniform"
        else:
            spec = name
        if isinstance(spec, dict):
            return ProjectionKernel(self.graph, spec, provenance="file")
        if spec == "path-uniform":
            return path_uniform_kernel(self.graph)
        if spec == "edge-uniform":
            return edge_uniform_kernel(self.graph)
        if spec == "induced":
            return induced_kernel(self.graph, self.sigma(), self.tau())
        raise ParseError(f"unknown kernel {spec!r}")


def _rational(x, where: str):
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected a rational, got {x!r}")
    if isinstance(x, float):
        raise ParseError(f"{where}: write rationals as strings like \"1/3\", not float {x!r}")
    try:
        return parse_rational(x)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def _value(x, where: str):
    if isinstance(x, list):
        return Vector(_scalar_value(c, where) for c in x)
    return _scalar_value(x, where)


def _scalar_value(x, where: str):
    # values alone may be floats, as an explicit opt-in
    if isinstance(x, float):
        return x
    return _rational(x, where)


def _expect(cond, message):
    if not cond:
        raise ParseError(message)


def parse_document(text: str) -> GraphDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return document_from_obj(raw)


def document_from_obj(raw) -> GraphDocument:
    _expect(isinstance(raw, dict), "document must be a JSON object")
    unknown = set(raw) - _KEYS
    _expect(not unknown, f"unknown fields {sorted(unknown)}")
    _expect("vertices" in raw, "vertices required")
    verts = raw["vertices"]
    _expect(isinstance(verts, list) and all(isinstance(v, str) for v in verts),
            "vertices must be a list of strings")
    edges_raw = raw.get("edges", [])
    _expect(isinstance(edges_raw, list), "edges must be a list")
    edges, weights = [], {}
    for k, e in enumerate(edges_raw):
        _expect(isinstance(e, dict), f"edges[{k}] must be an object")
        for f in ("id", "tail", "head"):
            _expect(isinstance(e.get(f), str), f"edges[{k}].{f} must be a string")
        extra = set(e) - {"id", "tail", "head", "weight"}
        _expect(not extra, f"edges[{k}] has unknown fields {sorted(extra)}")
        edges.append((e["id"], e["tail"], e["head"]))
        if "weight" in e:
            weights[e["id"]] = _rational(e["weight"], f"edges[{k}].weight")
    try:
        g = build_damg(verts, edges, composite_ids=True)
    except DamgError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc

    root_weights = None
    if "root_weights" in raw:
        rw = raw["root_weights"]
        _expect(isinstance(rw, dict), "root_weights must be an object")
        root_weights = {k: _rational(x, f"root_weights.{k}") for k, x in rw.items()}
        _expect(all(k in g for k in root_weights), "root_weights names an unknown vertex")

    values = None
    if "values" in raw:
        vals = raw["values"]
        _expect(isinstance(vals, dict), "values must be an object")
        values = {k: _value(x, f"values.{k}") for k, x in vals.items()}
        _expect(all(k in g for k in values), "values names an unknown vertex")
        missing = [v for v in g.order if v not in values]
        _expect(not missing, f"values missing for {missing}")
        shapes = {len(x) if isinstance(x, Vector) else None for x in values.values()}
        _expect(len(shapes) <= 1, "vector values must share one length")

    kernel = raw.get("kernel")
    if isinstance(kernel, dict):
        kernel = {k: _rational(x, f"kernel.{k}") for k, x in kernel.items()}
        _expect(set(kernel) == set(g.edge_by_id), "kernel map must cover exactly the edge ids")
    elif kernel is not None:
        _expect(kernel in KERNEL_NAMES, f"kernel must be one of {KERNEL_NAMES} or an edge map")

    return GraphDocument(g, weights or None, root_weights, values, kernel)


def _emit_value(x, as_float):
    # float values stay JSON numbers so they parse back as floats
    if isinstance(x, float):
        return x
    if isinstance(x, Vector) and any(isinstance(c, float) for c in x):
        return list(x)
    return format_value(x, as_float)


def document_to_obj(doc: GraphDocument, as_float: bool = False) -> dict:
    g = doc.graph
    out: dict = {"vertices": list(g.order)}
    edges = []
    for e in g.edges:
        item = {"id": e.id, "tail": e.tail, "head": e.head}
        if doc.edge_weights is not None and e.id in doc.edge_weights:
            item["weight"] = format_scalar(doc.edge_weights[e.id], as_float)
        edges.append(item)
    out["edges"] = edges
    if doc.root_weights is not None:
        out["root_weights"] = {
            v: format_scalar(doc.root_weights[v], as_float) for v in g.order if v in doc.root_weights
        }
    if doc.values is not None:
        out["values"] = {v: _emit_value(doc.values[v], as_float) for v in g.order}
    if isinstance(doc.kernel, dict):
        out["kernel"] = {e.id: format_scalar(doc.kernel[e.id], as_float) for e in g.edges}
    elif doc.kernel is not None:
        out["kernel"] = doc.kernel
    return out


def dump_document(doc: GraphDocument, as_float: bool = False) -> str:
    return json.dumps(document_to_obj(doc, as_float), indent=2, ensure_ascii=False) + "\n"


def load_document(path: str) -> GraphDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())
