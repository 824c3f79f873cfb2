"""File formats: edge-list graphs, JSON systems, families and results, DOT.

All writers emit canonically sorted content so that identical inputs produce
byte-identical files, and ``save(load(x))`` reproduces a canonically written
``x`` exactly.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .errors import ParseError
from .graphs import Graph, GraphSystem
from .orientations import Orientation, OrientationFamily, is_consistent, is_profile
from .sepsys import SeparationSystem
from .tree import TreeSetResult

PathLike = Union[str, Path]


# -- graphs --------------------------------------------------------------------


def parse_graph_text(text: str, path: Optional[str] = None) -> Graph:
    """Edge-list format: first line the vertex count, then ``u v`` lines.

    Blank lines and ``#`` comments are ignored; duplicate edges are
    harmless; self-loops and out-of-range vertex ids are errors carrying the
    offending line number.
    """
    n: Optional[int] = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise ParseError("expected a single vertex count", path, lineno)
            try:
                n = int(fields[0])
            except ValueError:
                raise ParseError(f"vertex count {fields[0]!r} is not an integer",
                                 path, lineno) from None
            if n < 0:
                raise ParseError(f"vertex count {n} is negative", path, lineno)
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", path, lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"non-integer vertex id in {line!r}", path, lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range 0..{n - 1} in {line!r}",
                             path, lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", path, lineno)
        edges.append((u, v))
    if n is None:
        raise ParseError("empty graph file: missing vertex count", path)
    return Graph.from_edges(n, sorted(set((min(u, v), max(u, v)) for u, v in edges)))


def parse_graph(path: PathLike) -> Graph:
    return parse_graph_text(Path(path).read_text(), str(path))


# -- separation systems ----------------------------------------------------------


def _load_json(path: PathLike) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", str(path), e.lineno) from None
    if not isinstance(data, dict):
        raise ParseError("top-level value must be an object", str(path))
    return data


def _int_pairs(value, field: str, path: str) -> list[tuple[int, int]]:
    if not isinstance(value, list):
        raise ParseError(f"{field}: expected a list of pairs", path)
    out = []
    for i, item in enumerate(value):
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(x, int) for x in item)):
            raise ParseError(f"{field}[{i}]: expected a pair of integers", path)
        out.append((item[0], item[1]))
    return out


def load_system(path: PathLike) -> SeparationSystem:
    """Load and fully validate a separation system from its JSON schema.

    Schema errors carry the offending field path; axiom failures surface as
    the validation report.
    """
    data = _load_json(path)
    p = str(path)
    m = data.get("m")
    if not isinstance(m, int) or m < 0:
        raise ParseError("m: expected a non-negative integer", p)
    inv_pairs = _int_pairs(data.get("inv", []), "inv", p)
    leq_pairs = _int_pairs(data.get("leq", []), "leq", p)
    labels = {}
    raw_labels = data.get("labels", {})
    if raw_labels:
        if not isinstance(raw_labels, dict):
            raise ParseError("labels: expected an object", p)
        for key, val in raw_labels.items():
            try:
                idx = int(key)
            except ValueError:
                raise ParseError(f"labels[{key!r}]: key is not an id", p) from None
            if not isinstance(val, str):
                raise ParseError(f"labels[{key!r}]: expected a string", p)
            if not (0 <= idx < 2 * m):
                raise ParseError(f"labels[{key!r}]: id out of range", p)
            labels[idx] = val
    try:
        return SeparationSystem.from_pairs(m, inv_pairs, leq_pairs, labels)
    except ValueError as e:
        raise ParseError(str(e), p) from None


def save_system(system: SeparationSystem, path: PathLike) -> None:
    strict = np.asarray(system.leq).copy()
    np.fill_diagonal(strict, False)
    payload = {
        "m": system.m,
        "inv": [[u, system.inv[u]] for u in system.unoriented],
        "leq": [[int(a), int(b)] for a, b in np.argwhere(strict)],
    }
    if system.labels:
        payload["labels"] = {str(k): system.labels[k] for k in sorted(system.labels)}
    _dump_json(payload, path)


# -- orientation families ---------------------------------------------------------


def load_family(path: PathLike, system: SeparationSystem) -> OrientationFamily:
    """Load a family: every listed orientation becomes a member.

    Consistency and distinctness are enforced by the family constructor;
    profile flags in the file are informational and ignored here.
    """
    data = _load_json(path)
    p = str(path)
    m = data.get("m")
    if m != system.m:
        raise ParseError(
            f"m: family has {m} separations but the system has {system.m}", p)
    entries = data.get("orientations")
    if not isinstance(entries, list):
        raise ParseError("orientations: expected a list", p)
    members = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict) or not isinstance(entry.get("bits"), str):
            raise ParseError(f"orientations[{i}]: expected an object with 'bits'", p)
        try:
            members.append(Orientation.from_bitstring(system, entry["bits"]))
        except ValueError as e:
            raise ParseError(f"orientations[{i}].bits: {e}", p) from None
    return OrientationFamily(system, members)


def save_orientations(system: SeparationSystem, orientations: Sequence[Orientation],
                      path: PathLike, gs: Optional[GraphSystem] = None) -> None:
    """Write orientations as bitstrings with consistency and profile flags.

    The profile flag requires the ambient lattice of a graph-built system
    and stays ``null`` otherwise.
    """
    entries = []
    for o in sorted(orientations, key=Orientation.bitstring):
        entries.append({
            "bits": o.bitstring(),
            "consistent": is_consistent(o),
            "profile": None if gs is None else is_profile(gs, o),
        })
    _dump_json({"m": system.m, "orientations": entries}, path)


# -- tree-set results --------------------------------------------------------------


def nested_set_payload(result: TreeSetResult, trace: bool = False) -> dict:
    payload = {
        "N": list(result.separations),
        "certificates": [[i, j, s] for i, j, s in result.certificates],
    }
    if trace:
        payload["rounds"] = [
            {
                "exclusive_max": {str(i): list(mp) for i, mp in r.exclusive_max},
                "representatives": {str(i): rep for i, rep in r.representatives},
                "added": list(r.added),
                "remaining_members": list(r.remaining_members),
                "surviving": list(r.surviving),
            }
            for r in result.rounds
        ]
    return payload


def save_nested_set(result: TreeSetResult, path: PathLike, trace: bool = False) -> None:
    _dump_json(nested_set_payload(result, trace), path)


def dot_text(result: TreeSetResult) -> str:
    """Deterministic DOT rendering of the distinguishing structure.

    One node per family member appearing in a certificate (every member,
    when any pair exists), one edge per member pair labeled by its
    certificate separation.  Display only.
    """
    sys = result.system
    lines = [
        "graph distinguishing_tree {",
        "  node [shape=circle fontname=\"Helvetica\"];",
        "  edge [fontname=\"Helvetica\" fontsize=10];",
    ]
    in_certs = sorted({i for i, _, _ in result.certificates}
                      | {j for _, j, _ in result.certificates})
    nodes = in_certs if in_certs else list(range(len(result.family)))
    for i in nodes:
        lines.append(f"  p{i} [label=\"P{i}\"];")
    for i, j, s in sorted(result.certificates):
        label = sys.label(s).replace("\"", "\\\"")
        lines.append(f"  p{i} -- p{j} [label=\"{label}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def save_dot(result: TreeSetResult, path: PathLike) -> None:
    Path(path).write_text(dot_text(result))


def _dump_json(payload: dict, path: PathLike) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
