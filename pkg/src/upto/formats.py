"""Parsers and serializers: Aldebaran .aut systems, relation and lattice files.

The .aut grammar is the single interchange format for transition systems;
relations and lattices use small JSON documents (with a plain line-per-pair
text form for relations).  All rendered output is canonically sorted so
repeated runs are byte-identical.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .lattice import FiniteLattice, LatticeProgression, validate_lattice
from .lts import Lts, Relation


class AutParseError(ValueError):
    pass


class RelationParseError(ValueError):
    pass


class LatticeParseError(ValueError):
    pass


_HEADER_RE = re.compile(r"^des\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")
_EDGE_RE = re.compile(r"^\(\s*(\d+)\s*,\s*\"(.*)\"\s*,\s*(\d+)\s*\)\s*$")


@dataclass(frozen=True)
class AutDocument:
    header: tuple[int, int, int]  # (initial state, transition count, state count)
    body: tuple[tuple[int, str, int], ...]

    def __post_init__(self):
        initial, m, n = self.header
        if len(self.body) != m:
            raise ValueError("transition count in header does not match body")
        if n > 0 and not 0 <= initial < n:
            raise ValueError("initial state out of range")
        for src, _, dst in self.body:
            if not (0 <= src < n and 0 <= dst < n):
                raise ValueError("transition endpoint out of range")


def parse_aut_document(text: str) -> AutDocument:
    numbered = [
        (i, line.strip()) for i, line in enumerate(text.splitlines(), start=1) if line.strip()
    ]
    if not numbered:
        raise AutParseError("line 1: missing header 'des (initial, transitions, states)'")
    line_no, header = numbered[0]
    hm = _HEADER_RE.match(header)
    if hm is None:
        raise AutParseError(f"line {line_no}: malformed header {header!r}")
    initial, m, n = (int(g) for g in hm.groups())
    if n > 0 and initial >= n:
        raise AutParseError(f"line {line_no}: initial state {initial} out of range for {n} states")
    if n == 0:
        raise AutParseError(f"line {line_no}: state count must be positive")

    body = []
    for line_no, line in numbered[1:]:
        em = _EDGE_RE.match(line)
        if em is None:
            if line.count('"') < 2:
                raise AutParseError(f"line {line_no}: unterminated quote in {line!r}")
            raise AutParseError(f"line {line_no}: malformed transition {line!r}")
        src, label, dst = int(em.group(1)), em.group(2), int(em.group(3))
        if not label:
            raise AutParseError(f"line {line_no}: empty label")
        if src >= n or dst >= n:
            raise AutParseError(
                f"line {line_no}: state index out of range (states: 0..{n - 1})"
            )
        body.append((src, label, dst))
    if len(body) != m:
        raise AutParseError(
            f"line {numbered[0][0]}: header declares {m} transitions, found {len(body)}"
        )
    return AutDocument(header=(initial, m, n), body=tuple(body))


def parse_aut(text: str) -> Lts:
    doc = parse_aut_document(text)
    n = doc.header[2]
    return Lts([str(i) for i in range(n)], doc.body)


def render_aut(lts: Lts, initial: int = 0) -> str:
    lines = [f"des ({initial},{lts.n_transitions},{lts.n_states})"]
    lines.extend(f'({src},"{label}",{dst})' for src, label, dst in lts.triples())
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RelationDocument:
    pairs: tuple[tuple[str, str], ...]
    name: Optional[str] = None


def parse_relation_document(text: str) -> RelationDocument:
    stripped = text.strip()
    if not stripped:
        return RelationDocument(pairs=())
    if stripped[0] in "{[":
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise RelationParseError(f"invalid JSON relation document: {e}") from None
        name = None
        if isinstance(data, dict):
            name = data.get("name")
            data = data.get("pairs")
        if not isinstance(data, list):
            raise RelationParseError("relation document must contain a list of pairs")
        pairs = []
        for entry in data:
            if not (isinstance(entry, list) and len(entry) == 2):
                raise RelationParseError(f"bad relation pair {entry!r}")
            pairs.append((str(entry[0]), str(entry[1])))
        return RelationDocument(pairs=tuple(pairs), name=name)

    pairs = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise RelationParseError(
                f"line {line_no}: expected two states per line, got {line!r}"
            )
        pairs.append((tokens[0], tokens[1]))
    return RelationDocument(pairs=tuple(pairs))


def _resolve_state(token: str, lts: Lts) -> int:
    # display names win over raw indices when both could apply
    for i, name in enumerate(lts.state_names):
        if name == token:
            return i
    if token.isdigit() and int(token) < lts.n_states:
        return int(token)
    raise RelationParseError(f"cannot resolve state {token!r}")


def resolve_relation(doc: RelationDocument, lts: Lts) -> Relation:
    return Relation.from_pairs(
        lts.n_states, [(_resolve_state(a, lts), _resolve_state(b, lts)) for a, b in doc.pairs]
    )


def parse_relation(text: str, lts: Lts) -> Relation:
    """Parse a relation file (JSON or one pair per line); duplicates collapse."""
    return resolve_relation(parse_relation_document(text), lts)


def render_relation(r: Relation, names: Optional[tuple[str, ...]] = None) -> str:
    if names is None:
        inner = ", ".join(f"({p},{q})" for p, q in r.pairs)
    else:
        inner = ", ".join(f"({names[p]},{names[q]})" for p, q in r.pairs)
    return "{" + inner + "}"


@dataclass(frozen=True)
class LatticeDocument:
    elements: tuple[str, ...]
    pairs: tuple[tuple[str, str], ...]
    kind: str  # "cover" or "leq"


def parse_lattice_document(text: str) -> LatticeDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise LatticeParseError(f"invalid JSON lattice document: {e}") from None
    if not isinstance(data, dict) or "elements" not in data:
        raise LatticeParseError("lattice document must be an object with 'elements'")
    elements = tuple(str(e) for e in data["elements"])
    have = [k for k in ("cover", "leq") if k in data]
    if len(have) != 1:
        raise LatticeParseError("lattice document needs exactly one of 'cover' or 'leq'")
    kind = have[0]
    pairs = []
    for entry in data[kind]:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise LatticeParseError(f"bad order pair {entry!r}")
        pairs.append((str(entry[0]), str(entry[1])))
    return LatticeDocument(elements=elements, pairs=tuple(pairs), kind=kind)


def parse_lattice(text: str) -> FiniteLattice:
    """Parse and validate a lattice; cover input is closed before validation."""
    doc = parse_lattice_document(text)
    index = {name: i for i, name in enumerate(doc.elements)}
    m = len(doc.elements)
    mat = np.zeros((m, m), dtype=bool)
    for a, b in doc.pairs:
        if a not in index or b not in index:
            raise LatticeParseError(f"order pair ({a!r}, {b!r}) names unknown elements")
        mat[index[a], index[b]] = True
    if doc.kind == "cover":
        mat |= np.eye(m, dtype=bool)
        while True:
            closed = mat | (mat @ mat)
            if np.array_equal(closed, mat):
                break
            mat = closed
    return validate_lattice(doc.elements, mat)


def parse_progression(text: str, lattice: FiniteLattice) -> LatticeProgression:
    """Parse a relation over lattice elements and validate it as a progression."""
    doc = parse_relation_document(text)
    m = lattice.size
    mat = np.zeros((m, m), dtype=bool)
    for a, b in doc.pairs:
        try:
            mat[lattice.index(a), lattice.index(b)] = True
        except KeyError as e:
            raise LatticeParseError(str(e.args[0])) from None
    return LatticeProgression(lattice, mat)


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(lts: Lts, graph_name: str = "lts") -> str:
    """DOT rendering of the transition graph, canonically ordered."""
    lines = [f"digraph {graph_name} {{", "  rankdir=LR;"]
    for i, name in enumerate(lts.state_names):
        lines.append(f'  {i} [label="{_dot_escape(name)}"];')
    for src, label, dst in lts.triples():
        lines.append(f'  {src} -> {dst} [label="{_dot_escape(label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
