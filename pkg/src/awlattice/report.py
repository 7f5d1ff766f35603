"""JSON and DOT rendering of analysis results."""
from __future__ import annotations

import json
from importlib import resources

from .aw import AWAction, RelationReport
from .exact import Matrix, format_scalar
from .lattice import Analysis, Factor, LatticeReport, Verdict

SCHEMA_VERSION = "1.0"
TOOL_VERSION = "0.1.0"


def load_schema() -> dict:
    text = resources.files("awlattice").joinpath("schema/report.schema.json").read_text()
    return json.loads(text)


def _fmt(x):
    return None if x is None else format_scalar(x)


def _pairs(pairs):
    if pairs is None:
        return None
    return [[format_scalar(x) for x in p] for p in pairs]


def matrix_json(m: Matrix) -> list[list[str]]:
    return m.to_strings()


def relations_json(rep: RelationReport) -> dict:
    return rep.to_dict()


def factor_json(f: Factor) -> dict:
    params = None
    if f.params is not None:
        params = {"d": f.params[0], "a": _fmt(f.params[1]), "b": _fmt(f.params[2]), "c": _fmt(f.params[3])}
    return {
        "lower": f.lower,
        "upper": f.upper,
        "dim": f.dim,
        "traces": [format_scalar(t) for t in f.traces] if f.traces else None,
        "t0_scalar": _fmt(f.t0_scalar),
        "root_pairs": _pairs(f.root_pairs),
        "prediction": f.prediction,
        "params": params,
        "trace_ok": f.trace_ok,
        "intertwiner_ok": f.intertwiner_ok,
    }


def _node_labels(rep: LatticeReport) -> list[str | None]:
    """Eigenspace name plus the model of the node when it is itself irreducible."""
    labels = []
    by_edge = {(f.lower, f.upper): f for f in rep.factors}
    for i, nd in enumerate(rep.nodes):
        parts = [nd.label] if nd.label else []
        f = by_edge.get((0, i))
        if f is not None and f.prediction:
            parts.append(f.prediction.split(" = ")[-1] + _abc(f))
        labels.append(", ".join(parts) or None)
    return labels


def _abc(f: Factor) -> str:
    if f.params is None:
        return ""
    return "(" + ", ".join(format_scalar(x) for x in f.params[1:]) + ")"


def lattice_json(rep: LatticeReport) -> dict:
    labels = _node_labels(rep)
    return {
        "status": rep.status,
        "shape": rep.shape,
        "middle_dims": list(rep.middle_dims()),
        "nodes": [
            {"id": i, "dim": nd.dim, "label": labels[i],
             "basis": [[format_scalar(x) for x in row] for row in nd.space.basis]}
            for i, nd in enumerate(rep.nodes)
        ],
        "covers": [list(e) for e in rep.covers],
        "composition_factors": rep.composition_factor_dims(),
        "closed": rep.is_closed(),
        "jordan_holder": rep.jordan_holder_ok(),
        "notes": list(rep.notes),
        "certificates": list(rep.certificates),
    }


def verdict_json(v: Verdict | None) -> dict | None:
    return None if v is None else v.to_dict()


def analysis_json(spec, an: Analysis, relations: RelationReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "command": "lattice",
        "instance": spec.to_dict(),
        "relations": relations_json(relations),
        "irreducible_by_criterion": an.irreducible,
        "eigen": an.eigen.to_dict(),
        "lattice": lattice_json(an.lattice),
        "factors": [factor_json(f) for f in an.lattice.factors],
        "expected_shape": None if an.expected is None else
        {"shape": an.expected[0], "middle_dims": list(an.expected[1])},
        "verdict": verdict_json(an.verdict),
        "status": an.status,
    }


def vd_lattice_json(spec, rep: LatticeReport, relations: RelationReport, irreducible: bool) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "command": "lattice",
        "instance": spec.to_dict(),
        "relations": relations_json(relations),
        "irreducible_by_criterion": irreducible,
        "eigen": None,
        "lattice": lattice_json(rep),
        "factors": [factor_json(f) for f in rep.factors],
        "expected_shape": {"shape": "chain2", "middle_dims": []} if irreducible else None,
        "verdict": None,
        "status": rep.status,
    }


def build_json(spec, relations: RelationReport, h=None, act: AWAction | None = None,
               show_matrices: bool = False) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "command": "build",
        "instance": spec.to_dict(),
        "relations": relations_json(relations),
        "status": "OK" if relations.ok else "RELATION_FAILURE",
    }
    if show_matrices:
        mats = {}
        if h is not None:
            for i, t in enumerate(h.t):
                mats[f"t{i}"] = matrix_json(t)
        if act is not None:
            for name in ("A", "B", "C"):
                mats[name] = matrix_json(getattr(act, name))
        out["matrices"] = mats
    return out


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def to_dot(rep: LatticeReport, title: str = "lattice") -> str:
    """Hasse diagram, whole module on top."""
    labels = _node_labels(rep)
    by_edge = {(f.lower, f.upper): f for f in rep.factors}
    lines = [f'digraph "{title}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for i, nd in enumerate(rep.nodes):
        text = f"dim {nd.dim}"
        if labels[i]:
            text += "\\n" + labels[i]
        lines.append(f'  n{i} [label="{text}"];')
    for a, b in rep.covers:
        f = by_edge.get((a, b))
        extra = ""
        if f is not None and f.prediction:
            extra = f' [label="{f.prediction.split(" = ")[-1]}{_abc(f)}"]'
        lines.append(f"  n{a} -> n{b}{extra};")
    lines.append("}")
    return "\n".join(lines) + "\n"
