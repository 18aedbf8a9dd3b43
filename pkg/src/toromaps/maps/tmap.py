"""
Text map format ``.tmap`` and structure export.

Layout (whitespace-separated, LF line endings):

    tmap 1
    darts <2e>
    alpha
    <d1> <d2>                      (e lines)
    sigma
    <d> <d> ...                    (one counterclockwise cycle per vertex)
    root <dart>                    (optional)
    colors                         (optional)
    <vertex-representative-dart> black|white
    orient                         (optional)
    <dart> out|in
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from toromaps.errors import TmapFormatError
from toromaps.maps.combinatorial import CombMap, build_map, perm_from_cycles

SECTIONS = ("alpha", "sigma", "root", "colors", "orient")


@dataclass(frozen=True)
class TmapDocument:
    """A parsed file: the map and, when present, per-dart out flags."""

    map: CombMap
    out: tuple[bool, ...] | None = None


# ===== READ =====


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise TmapFormatError(f"line {lineno}: expected integers, got {line!r}") from None


def loads(text: str) -> TmapDocument:
    lines = text.split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines or lines[0].split() != ["tmap", "1"]:
        raise TmapFormatError("line 1: expected 'tmap 1'")
    head = lines[1].split() if len(lines) > 1 else []
    if len(head) != 2 or head[0] != "darts":
        raise TmapFormatError("line 2: expected 'darts <n>'")
    n = _ints(head[1], 2)[0]

    blocks: dict[str, list[tuple[int, str]]] = {}
    current = None
    root = None
    for lineno, line in enumerate(lines[2:], start=3):
        tokens = line.split()
        if not tokens:
            raise TmapFormatError(f"line {lineno}: empty line")
        if tokens[0] in SECTIONS:
            if tokens[0] in blocks or (tokens[0] == "root" and root is not None):
                raise TmapFormatError(f"line {lineno}: duplicate section {tokens[0]!r}")
            if tokens[0] == "root":
                if len(tokens) != 2:
                    raise TmapFormatError(f"line {lineno}: expected 'root <dart>'")
                root = _ints(tokens[1], lineno)[0]
                current = None
                continue
            current = tokens[0]
            blocks[current] = []
            continue
        if current is None:
            raise TmapFormatError(f"line {lineno}: data outside a section")
        blocks[current].append((lineno, line))

    if "alpha" not in blocks or "sigma" not in blocks:
        raise TmapFormatError("alpha and sigma sections are required")
    pairs = []
    for lineno, line in blocks["alpha"]:
        pair = _ints(line, lineno)
        if len(pair) != 2:
            raise TmapFormatError(f"line {lineno}: alpha lines hold two darts")
        pairs.append(pair)
    if len(pairs) != n // 2:
        raise TmapFormatError(f"alpha lists {len(pairs)} edges for {n} darts")
    cycles = [_ints(line, lineno) for lineno, line in blocks["sigma"]]
    listed = sorted(d for c in cycles for d in c)
    if listed != list(range(1, n + 1)):
        raise TmapFormatError("sigma cycles must list every dart once")

    colors = None
    if "colors" in blocks:
        colors = {}
        for lineno, line in blocks["colors"]:
            tokens = line.split()
            if len(tokens) != 2 or tokens[1] not in ("black", "white"):
                raise TmapFormatError(f"line {lineno}: expected '<dart> black|white'")
            colors[_ints(tokens[0], lineno)[0]] = tokens[1]

    m = build_map(n, perm_from_cycles(n, pairs), perm_from_cycles(n, cycles), root=root, colors=colors)

    out = None
    if "orient" in blocks:
        flags: list[bool | None] = [None] * (n + 1)
        for lineno, line in blocks["orient"]:
            tokens = line.split()
            if len(tokens) != 2 or tokens[1] not in ("out", "in"):
                raise TmapFormatError(f"line {lineno}: expected '<dart> out|in'")
            flags[_ints(tokens[0], lineno)[0]] = tokens[1] == "out"
        if any(f is None for f in flags[1:]):
            raise TmapFormatError("orient section must cover every dart")
        out = (False,) + tuple(flags[1:])
    return TmapDocument(map=m, out=out)


def read_tmap(path: Path | str) -> TmapDocument:
    path = Path(path)
    return loads(path.read_text())


# ===== WRITE =====


def dumps(m: CombMap, out: tuple[bool, ...] | None = None) -> str:
    lines = ["tmap 1", f"darts {m.n_darts}", "alpha"]
    lines += [f"{a} {b}" for a, b in m.edges]
    lines.append("sigma")
    lines += [" ".join(str(d) for d in cycle) for cycle in m.vertices]
    if m.root is not None:
        lines.append(f"root {m.root}")
    if m.colors is not None:
        lines.append("colors")
        lines += [f"{cycle[0]} {m.colors[cycle[0]].value}" for cycle in m.vertices]
    if out is not None:
        lines.append("orient")
        lines += [f"{d} {'out' if out[d] else 'in'}" for d in m.darts]
    return "\n".join(lines) + "\n"


def write_tmap(path: Path | str, m: CombMap, out: tuple[bool, ...] | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(m, out))
    return path


# ===== EXPORT =====


def to_json(m: CombMap, out: tuple[bool, ...] | None = None) -> str:
    doc = {
        "darts": m.n_darts,
        "alpha": {str(d): m.alpha[d] for d in m.darts},
        "sigma": {str(d): m.sigma[d] for d in m.darts},
        "vertices": [list(c) for c in m.vertices],
        "faces": [list(c) for c in m.faces],
        "genus": m.genus,
        "root": m.root,
    }
    if m.colors is not None:
        doc["colors"] = {str(d): m.colors[d].value for d in m.darts}
    if out is not None:
        doc["orient"] = {str(d): "out" if out[d] else "in" for d in m.darts}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def to_dot(m: CombMap, out: tuple[bool, ...] | None = None) -> str:
    """
    Graphviz source: one node per vertex labelled with its rotation, one edge
    per alpha pair labelled with its two darts.
    """
    lines = ["graph map {"]
    for v, cycle in enumerate(m.vertices):
        attrs = [f'label="v{v}: ({" ".join(map(str, cycle))})"']
        color = m.color_of_vertex(v)
        if color is not None:
            attrs.append(f'style=filled fillcolor="{"black" if color.value == "black" else "white"}"')
            attrs.append(f'fontcolor="{"white" if color.value == "black" else "black"}"')
        lines.append(f"  v{v} [{' '.join(attrs)}];")
    for a, b in m.edges:
        attrs = [f'taillabel="{a}" headlabel="{b}"']
        if out is not None:
            if out[a] and not out[b]:
                attrs.append("dir=forward")
            elif out[b] and not out[a]:
                attrs.append("dir=back")
            else:
                attrs.append("dir=both")
        lines.append(f"  v{m.tail(a)} -- v{m.tail(b)} [{' '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
