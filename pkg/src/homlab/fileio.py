"""File formats: models and graphs as JSON-shaped documents with "p/q"
rational strings, vertex-constraint text files, report serialization.

Rationals are always stored as strings to avoid float round-trips.
"""

import json
from fractions import Fraction

from homlab.errors import InvalidArgument
from homlab.graphs import Graph, parse_graph_name, read_edge_list, read_graph6
from homlab.inequalities import IneqReport
from homlab.models import Model
from homlab.power import PowerProduct


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator) if x.denominator != 1 else str(x.numerator)


def parse_frac(s) -> Fraction:
    return Fraction(s)


def model_to_dict(m: Model) -> dict:
    return {
        "q": m.q,
        "edge_weights": [[frac_str(x) for x in row] for row in m.edge_weights],
        "vertex_weights": [frac_str(x) for x in m.vertex_weights],
        "looped_set": sorted(m.looped_set),
    }


def model_from_dict(d: dict) -> Model:
    return Model.from_rows(
        [[parse_frac(x) for x in row] for row in d["edge_weights"]],
        vertex_weights=[parse_frac(x) for x in d["vertex_weights"]],
        looped_set=d.get("looped_set", ()),
    )


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edge_list()]}


def graph_from_dict(d: dict) -> Graph:
    return Graph.from_edges(d["n"], [tuple(e) for e in d["edges"]])


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.strip()
    if stripped.startswith("{"):
        return graph_from_dict(json.loads(stripped))
    first = stripped.splitlines()[0].strip()
    if " " in first and all(t.isdigit() for t in first.split()):
        return read_edge_list(text)
    return read_graph6(first)


def load_model(path: str) -> Model:
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))


def graph_from_any(spec: str) -> Graph:
    """Named graph ("C6", "K3,3", "petersen") or a path to a graph file."""
    import os

    if os.path.exists(spec):
        return load_graph(spec)
    return parse_graph_name(spec)


def parse_constraints(text: str, q: int):
    """Vertex constraints, one line per vertex.

    A line is either whitespace-separated rational weights ("1/2 0 3"), or
    the list shorthand "v: {0,2}" marking allowed colors of vertex v.
    Lines may arrive in any order when using the shorthand.
    """
    weight_lines = []
    shorthand = {}
    for raw in text.splitlines():
        line = raw.split("#")[0].strip()
        if not line:
            continue
        if ":" in line:
            head, _, rest = line.partition(":")
            allowed = rest.strip().strip("{}").replace(",", " ").split()
            shorthand[int(head)] = {int(c) for c in allowed}
        else:
            weights = tuple(Fraction(t) for t in line.split())
            if len(weights) != q:
                raise InvalidArgument("constraint line has %d entries, expected %d" % (len(weights), q))
            weight_lines.append(weights)
    if shorthand and weight_lines:
        raise InvalidArgument("mix of shorthand and weight lines in constraint file")
    if shorthand:
        n = max(shorthand) + 1
        out = []
        for v in range(n):
            allowed = shorthand.get(v, set(range(q)))
            out.append(tuple(Fraction(1 if c in allowed else 0) for c in range(q)))
        return out
    return weight_lines


def constraints_to_text(constraints) -> str:
    lines = []
    for vec in constraints:
        lines.append(" ".join(frac_str(x) for x in vec))
    return "\n".join(lines) + "\n"


def power_product_to_list(p: PowerProduct | None):
    if p is None:
        return None
    return [[frac_str(b), frac_str(e)] for b, e in p.factors]


def power_product_from_list(factors) -> PowerProduct | None:
    if factors is None:
        return None
    return PowerProduct.of(*((parse_frac(b), parse_frac(e)) for b, e in factors))


def report_to_dict(r: IneqReport) -> dict:
    return {
        "ineq": r.ineq,
        "instance": r.instance,
        "lhs_factors": power_product_to_list(r.lhs),
        "rhs_factors": power_product_to_list(r.rhs),
        "verdict": r.verdict,
        "exact": r.exact,
        "slack_log10": r.slack_log10,
    }


def report_from_dict(d: dict) -> IneqReport:
    return IneqReport(
        d["ineq"],
        d["instance"],
        power_product_from_list(d["lhs_factors"]),
        power_product_from_list(d["rhs_factors"]),
        d["verdict"],
        d["exact"],
        d["slack_log10"],
    )


# ---------------------------------------------------------------------------
# Lemma instance files: rationals become "p/q" strings, graphs and models
# become tagged sub-documents; ints stay ints.


def _encode_param(value):
    if isinstance(value, bool) or isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return frac_str(value)
    if isinstance(value, Graph):
        return {"__graph__": graph_to_dict(value)}
    if isinstance(value, Model):
        return {"__model__": model_to_dict(value)}
    if isinstance(value, (list, tuple, set, frozenset)):
        seq = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_encode_param(x) for x in seq]
    if isinstance(value, str):
        return value
    raise InvalidArgument("cannot encode lemma parameter %r" % (value,))


def _decode_param(value):
    if isinstance(value, bool) or isinstance(value, int):
        return value
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, dict):
        if "__graph__" in value:
            return graph_from_dict(value["__graph__"])
        if "__model__" in value:
            return model_from_dict(value["__model__"])
        raise InvalidArgument("unknown tagged parameter %r" % (value,))
    if isinstance(value, list):
        return [_decode_param(x) for x in value]
    raise InvalidArgument("cannot decode lemma parameter %r" % (value,))


def lemma_instance_to_dict(inst) -> dict:
    return {
        "lemma": inst.lemma_id,
        "params": {k: _encode_param(v) for k, v in inst.params.items()},
    }


def lemma_instance_from_dict(d: dict):
    from homlab.lemmas import LemmaInstance

    return LemmaInstance(d["lemma"], {k: _decode_param(v) for k, v in d["params"].items()})
