"""JSON problem, solution and family files.

All rationals are written as strings (``"3"``, ``"-1/2"``); plain JSON
integers are accepted on input.  Floats are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .exact import rat, rat_str
from .polyhedra import Cone, HRep, VRep
from .setopt import Problem, SolutionPair, SolveResult, VerificationReport, from_prep
from .vlp import VlpProblem, to_setopt


class FormatError(ValueError):
    """Malformed input file; ``key`` names the offending entry."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


# -- scalar helpers ------------------------------------------------------------

def _scalar(value, key: str):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise FormatError(key, f"expected an integer or 'p/q' string, got {value!r}")
    try:
        return rat(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(key, str(exc)) from None


def _vec(value, key: str, dim: int | None = None) -> tuple:
    if not isinstance(value, list):
        raise FormatError(key, "expected a list")
    out = tuple(_scalar(v, f"{key}[{i}]") for i, v in enumerate(value))
    if dim is not None and len(out) != dim:
        raise FormatError(key, f"expected length {dim}, got {len(out)}")
    return out


def _mat(value, key: str, ncols: int, nrows: int | None = None) -> tuple:
    if not isinstance(value, list):
        raise FormatError(key, "expected a list of rows")
    rows = tuple(_vec(r, f"{key}[{i}]", ncols) for i, r in enumerate(value))
    if nrows is not None and len(rows) != nrows:
        raise FormatError(key, f"expected {nrows} rows, got {len(rows)}")
    return rows


def _int(doc: dict, key: str) -> int:
    if key not in doc:
        raise FormatError(key, "missing")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise FormatError(key, f"expected a nonnegative integer, got {v!r}")
    return v


def _get(doc: dict, key: str, path: str):
    if not isinstance(doc, dict):
        raise FormatError(path, "expected an object")
    if key not in doc:
        raise FormatError(f"{path}.{key}" if path else key, "missing")
    return doc[key]


def enc_vec(v) -> list[str]:
    return [rat_str(x) for x in v]


def enc_mat(M) -> list[list[str]]:
    return [enc_vec(r) for r in M]


# -- compact JSON ------------------------------------------------------------------

def dumps(obj: Any, indent: int = 0) -> str:
    """JSON with lists of scalars kept on one line; deterministic key order."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if all(not isinstance(x, (list, dict)) for x in obj):
            return "[" + ", ".join(json.dumps(x) for x in obj) + "]"
        items = [f"{inner}{dumps(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj)


def _read(path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError("<document>", f"invalid JSON: {exc}") from None


# -- problem files -------------------------------------------------------------------

@dataclass(frozen=True)
class ProblemFile:
    n: int
    q: int
    kind: str          # "h", "p" or "vlp"
    data: dict         # parsed matrices of the graph form
    cone_kind: str     # "generators" or "h"
    cone_data: tuple
    k: int = 0         # number of auxiliary variables for "p"

    @property
    def cone(self) -> Cone:
        if self.cone_kind == "generators":
            return Cone(self.cone_data, self.q)
        return Cone.from_hrep(self.cone_data, self.q)

    def to_problem(self) -> Problem:
        C = self.cone
        d = self.data
        if self.kind == "h":
            try:
                return Problem(d["A"], d["B"], d["b"], C, n=self.n)
            except ValueError as exc:
                raise FormatError("graph.h", str(exc)) from None
        if self.kind == "p":
            return from_prep(d["Mx"], d["My"], d["Mz"], d["c"], C, n=self.n, k=self.k)
        return to_setopt(self.to_vlp())

    def to_vlp(self) -> VlpProblem:
        if self.kind != "vlp":
            raise ValueError("not a VLP file")
        return VlpProblem(self.data["M"], self.data["A"], self.data["b"], self.cone, n=self.n)

    def to_json(self) -> dict:
        if self.kind == "h":
            graph = {"h": {"A": enc_mat(self.data["A"]), "B": enc_mat(self.data["B"]), "b": enc_vec(self.data["b"])}}
        elif self.kind == "p":
            graph = {"p": {k: enc_mat(self.data[k]) for k in ("Mx", "My", "Mz")} | {"c": enc_vec(self.data["c"])}}
            graph["p"]["k"] = self.k
        else:
            graph = {"vlp": {"M": enc_mat(self.data["M"]), "A": enc_mat(self.data["A"]), "b": enc_vec(self.data["b"])}}
        if self.cone_kind == "generators":
            cone = {"generators": enc_mat(self.cone_data)}
        else:
            cone = {"h": {"G": enc_mat(self.cone_data)}}
        return {"n": self.n, "q": self.q, "graph": graph, "cone": cone}


def parse_problem(doc: Any) -> ProblemFile:
    if not isinstance(doc, dict):
        raise FormatError("<document>", "expected a JSON object")
    n, q = _int(doc, "n"), _int(doc, "q")
    graph = _get(doc, "graph", "")
    if not isinstance(graph, dict):
        raise FormatError("graph", "expected an object")
    forms = [k for k in ("h", "p", "vlp") if k in graph]
    if len(forms) != 1 or len(graph) != 1:
        raise FormatError("graph", "exactly one of 'h', 'p', 'vlp' is required")
    kind = forms[0]
    g = graph[kind]
    path = f"graph.{kind}"
    k = 0
    if kind == "h":
        b = _vec(_get(g, "b", path), f"{path}.b")
        m = len(b)
        data = {
            "A": _mat(_get(g, "A", path), f"{path}.A", n, m),
            "B": _mat(_get(g, "B", path), f"{path}.B", q, m),
            "b": b,
        }
    elif kind == "p":
        c = _vec(_get(g, "c", path), f"{path}.c")
        m = len(c)
        Mz_raw = _get(g, "Mz", path)
        if "k" in g:
            k = _int(g, "k")
        elif isinstance(Mz_raw, list) and Mz_raw and isinstance(Mz_raw[0], list):
            k = len(Mz_raw[0])
        data = {
            "Mx": _mat(_get(g, "Mx", path), f"{path}.Mx", n, m),
            "My": _mat(_get(g, "My", path), f"{path}.My", q, m),
            "Mz": _mat(Mz_raw, f"{path}.Mz", k, m if k else None),
            "c": c,
        }
    else:
        data = {"M": _mat(_get(g, "M", path), f"{path}.M", n, q)}
        b = _vec(_get(g, "b", path), f"{path}.b")
        data["A"] = _mat(_get(g, "A", path), f"{path}.A", n, len(b))
        data["b"] = b
    cone = _get(doc, "cone", "")
    if not isinstance(cone, dict) or len(cone) != 1 or not ({"generators", "h"} & cone.keys()):
        raise FormatError("cone", "expected {'generators': [...]} or {'h': {'G': [...]}}")
    if "generators" in cone:
        cone_kind, cone_data = "generators", _mat(cone["generators"], "cone.generators", q)
    else:
        cone_kind, cone_data = "h", _mat(_get(cone["h"], "G", "cone.h"), "cone.h.G", q)
    return ProblemFile(n, q, kind, data, cone_kind, cone_data, k)


def load_problem_file(path) -> ProblemFile:
    return parse_problem(_read(path))


def load_problem(path) -> Problem:
    return load_problem_file(path).to_problem()


def problem_to_file(problem: Problem) -> ProblemFile:
    return ProblemFile(
        problem.n, problem.q, "h",
        {"A": problem.A, "B": problem.B, "b": problem.b},
        "generators", problem.C.generators,
    )


# -- solution files ---------------------------------------------------------------------

def hrep_json(H: HRep) -> dict:
    return {"M": enc_mat(H.M), "v": enc_vec(H.v)}


def vrep_json(V: VRep) -> dict:
    return {"points": enc_mat(V.points), "rays": enc_mat(V.rays), "lines": enc_mat(V.lines)}


def solution_json(problem: Problem, result: SolveResult, report: VerificationReport | None = None) -> dict:
    doc: dict[str, Any] = {"status": result.status.value, "n": problem.n, "q": problem.q}
    pair = result.pair
    doc["S_bar"] = enc_mat(pair.S_bar) if pair else []
    doc["S_hat"] = enc_mat(pair.S_hat) if pair else []
    if result.upper_h is not None:
        doc["upper_image"] = {"h": hrep_json(result.upper_h), "v": vrep_json(result.upper_v)}
    else:
        doc["upper_image"] = None
    doc["witness"] = enc_vec(result.witness) if result.witness is not None else None
    doc["verification"] = report.as_dict() if report is not None else None
    return doc


def parse_solution(doc: Any) -> tuple[int, SolutionPair]:
    """Returns ``(n, pair)``; ``n`` is the dimension of the decision space."""
    if not isinstance(doc, dict):
        raise FormatError("<document>", "expected a JSON object")
    n = _int(doc, "n")
    S_bar = _mat(_get(doc, "S_bar", ""), "S_bar", n)
    S_hat = _mat(doc.get("S_hat", []), "S_hat", n)
    return n, SolutionPair(S_bar, S_hat)


def load_solution(path) -> tuple[int, SolutionPair]:
    return parse_solution(_read(path))


# -- set families --------------------------------------------------------------------

def load_family(path) -> tuple[list[VRep], dict[str, Cone]]:
    """A list of finite point sets and a dictionary of named ordering cones."""
    doc = _read(path)
    q = _int(doc, "q")
    sets = []
    for i, s in enumerate(_get(doc, "sets", "")):
        pts = _mat(_get(s, "points", f"sets[{i}]"), f"sets[{i}].points", q)
        rays = _mat(s.get("rays", []), f"sets[{i}].rays", q)
        sets.append(VRep(pts, rays, (), q))
    cones = {}
    for name, spec in _get(doc, "cones", "").items():
        cones[name] = Cone(_mat(_get(spec, "generators", f"cones.{name}"), f"cones.{name}.generators", q), q)
    return sets, cones
