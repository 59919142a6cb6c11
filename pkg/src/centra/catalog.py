"""Group file formats and corpus manifests.

GRP v1 (explicit Cayley table)::

    %grp 1
    name D8
    order 8
    table
    0 1 2 3 4 5 6 7
    ...

PERMGRP v1 (permutation generators, 0-based images)::

    %permgrp 1
    name S3
    degree 3
    gen 1 2 0
    gen 1 0 2

Lines starting with ``#`` are comments in both formats. The identity is
always element 0.

A manifest lists one group per line, ``file <path>`` or ``construct <spec>``,
each optionally followed by indented ``assert <key> <value>`` lines. Relative
paths resolve against the manifest's directory.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .constructors import from_spec
from .errors import CentraError, NotAPermutation, OrderCapExceeded, ParseError
from .group import Group, from_table, order_cap

log = logging.getLogger(__name__)

BUILTIN = "builtin"


def _lines(data: bytes | str) -> list[tuple[int, str]]:
    """Meaningful ``(line number, text)`` pairs with comments and blanks removed."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(0, f"not UTF-8: {exc}") from None
    out = []
    for no, raw in enumerate(data.splitlines(), start=1):
        text = raw.strip()
        if text and not text.startswith("#"):
            out.append((no, text))
    return out


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line, f"{what} must be a decimal integer, got {token!r}") from None


def _header(lines: list[tuple[int, str]], magic: str) -> None:
    if not lines:
        raise ParseError(0, "empty file")
    no, text = lines[0]
    if text.split() != [magic, "1"]:
        raise ParseError(no, f"expected header '{magic} 1', got {text!r}")


# ---------------------------------------------------------------------------
# GRP v1


def read_grp(data: bytes | str, *, cap: int | None = None) -> Group:
    lines = _lines(data)
    _header(lines, "%grp")
    name = None
    order = None
    pos = 1
    while pos < len(lines):
        no, text = lines[pos]
        key, _, rest = text.partition(" ")
        pos += 1
        if key == "name":
            name = rest.strip() or None
        elif key == "order":
            order = _int(rest.strip(), no, "order")
            if order < 1:
                raise ParseError(no, "order must be positive")
        elif key == "table":
            break
        else:
            raise ParseError(no, f"unexpected directive {key!r}")
    else:
        raise ParseError(lines[-1][0], "missing 'table' section")
    if order is None:
        raise ParseError(lines[pos - 1][0], "'order' must precede 'table'")
    cap = order_cap() if cap is None else cap
    if order > cap:
        raise OrderCapExceeded(f"order {order} exceeds the order cap {cap}")
    body = lines[pos:]
    if len(body) != order:
        where = body[order][0] if len(body) > order else (body[-1][0] if body else lines[-1][0])
        raise ParseError(where, f"expected {order} table rows, found {len(body)}")
    rows = []
    for no, text in body:
        row = [_int(tok, no, "table entry") for tok in text.split()]
        if len(row) != order:
            raise ParseError(no, f"expected {order} entries, found {len(row)}")
        if min(row) < 0 or max(row) >= order:
            raise ParseError(no, f"entries must lie in 0..{order - 1}")
        if len(set(row)) != order:
            raise ParseError(no, "row repeats an index (Latin square violation)")
        rows.append(row)
    return from_table(rows, name=name, cap=cap)


def write_grp(G: Group) -> bytes:
    parts = ["%grp 1"]
    if G.name:
        parts.append(f"name {G.name}")
    parts.append(f"order {G.order}")
    parts.append("table")
    parts.extend(" ".join(map(str, row)) for row in G.mul.tolist())
    return ("\n".join(parts) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# PERMGRP v1


def read_permgrp(data: bytes | str, *, cap: int | None = None) -> Group:
    """Materialise the permutation group generated by the file's generators.

    Elements are numbered in breadth-first discovery order from the identity,
    applying generators in file order; products act left to right
    (``i^(gh) = (i^g)^h``).
    """
    lines = _lines(data)
    _header(lines, "%permgrp")
    name = None
    degree = None
    gens: list[tuple[int, ...]] = []
    for no, text in lines[1:]:
        key, _, rest = text.partition(" ")
        if key == "name":
            name = rest.strip() or None
        elif key == "degree":
            degree = _int(rest.strip(), no, "degree")
            if degree < 1:
                raise ParseError(no, "degree must be positive")
        elif key == "gen":
            if degree is None:
                raise ParseError(no, "'degree' must precede 'gen' lines")
            images = tuple(_int(tok, no, "image") for tok in rest.split())
            if len(images) != degree:
                raise NotAPermutation(no, f"expected {degree} images, found {len(images)}")
            if sorted(images) != list(range(degree)):
                raise NotAPermutation(no, "images are not a permutation of 0..degree-1")
            gens.append(images)
        else:
            raise ParseError(no, f"unexpected directive {key!r}")
    if degree is None:
        raise ParseError(lines[-1][0], "missing 'degree'")
    if not gens:
        raise ParseError(lines[-1][0], "at least one 'gen' line is required")
    return permutation_group(gens, name=name, cap=cap)


def permutation_group(gens: list[tuple[int, ...]], name: str | None = None, *, cap: int | None = None) -> Group:
    cap = order_cap() if cap is None else cap
    degree = len(gens[0])
    identity = tuple(range(degree))
    index = {identity: 0}
    elements = [identity]
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for h in gens:
            gh = tuple(h[i] for i in g)
            if gh not in index:
                index[gh] = len(elements)
                elements.append(gh)
                if len(elements) > cap:
                    raise OrderCapExceeded(f"closure exceeds the order cap {cap}")
                queue.append(gh)
    perms = np.array(elements, dtype=np.int64)
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        # row i: products g_i * g_j, i.e. g_j applied after g_i
        prods = perms[:, perms[i]]
        table[i] = [index[tuple(r)] for r in prods.tolist()]
    return from_table(table, name=name, cap=cap)


# ---------------------------------------------------------------------------
# files and manifests


def read_group(data: bytes | str, *, cap: int | None = None) -> Group:
    """Read either format, dispatching on the header line."""
    lines = _lines(data)
    head = lines[0][1].split()[0] if lines else ""
    if head == "%permgrp":
        return read_permgrp(data, cap=cap)
    return read_grp(data, cap=cap)


def load_group_file(path: str | Path, *, cap: int | None = None) -> Group:
    path = Path(path)
    G = read_group(path.read_bytes(), cap=cap)
    if G.name is None:
        G.name = path.stem
    return G


@dataclass
class ManifestEntry:
    kind: str  # "file" or "construct"
    source: str
    line: int
    assertions: list[tuple[str, str]] = field(default_factory=list)
    base: Path | None = None

    @property
    def label(self) -> str:
        return self.source if self.kind == "construct" else Path(self.source).stem

    def materialize(self, cap: int | None = None) -> Group:
        if self.kind == "construct":
            G = from_spec(self.source)
            G.name = self.source
            return G
        path = Path(self.source)
        if not path.is_absolute() and self.base is not None:
            path = self.base / path
        G = load_group_file(path, cap=cap)
        return G


def parse_manifest(text: str, base: Path | None = None) -> list[ManifestEntry]:
    entries: list[ManifestEntry] = []
    for no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.strip().startswith("#"):
            continue
        indented = raw[0].isspace()
        key, _, rest = raw.strip().partition(" ")
        rest = rest.strip()
        if indented:
            if key != "assert":
                raise ParseError(no, f"indented lines must be 'assert <key> <value>', got {raw.strip()!r}")
            if not entries:
                raise ParseError(no, "assert before any group entry")
            akey, _, value = rest.partition(" ")
            if not akey or not value.strip():
                raise ParseError(no, "assert needs a key and a value")
            entries[-1].assertions.append((akey, value.strip()))
        elif key in ("file", "construct"):
            if not rest:
                raise ParseError(no, f"'{key}' needs an argument")
            entries.append(ManifestEntry(key, rest, no, base=base))
        else:
            raise ParseError(no, f"unknown manifest directive {key!r}")
    return entries


def builtin_manifest_text() -> str:
    return resources.files("centra").joinpath("data/builtin.manifest").read_text("utf-8")


def data_path(name: str) -> Path:
    return Path(str(resources.files("centra").joinpath("data").joinpath(name)))


def read_manifest(source: str | Path) -> list[ManifestEntry]:
    """Parse a manifest file, or the bundled suite when ``source`` is ``builtin``."""
    if str(source) == BUILTIN:
        return parse_manifest(builtin_manifest_text(), base=data_path(""))
    path = Path(source)
    return parse_manifest(path.read_text("utf-8"), base=path.parent)


@dataclass
class CorpusItem:
    entry: ManifestEntry
    group: Group | None = None
    error: str | None = None

    @property
    def name(self) -> str:
        if self.group is not None and self.group.name:
            return self.group.name
        return self.entry.label

    @property
    def assertions(self) -> list[tuple[str, str]]:
        return self.entry.assertions


def load_corpus(manifest: list[ManifestEntry] | str | Path, *, cap: int | None = None) -> list[CorpusItem]:
    """Materialise every entry; failures are recorded per item and loading continues."""
    entries = manifest if isinstance(manifest, list) else read_manifest(manifest)
    items = []
    for entry in entries:
        try:
            items.append(CorpusItem(entry, group=entry.materialize(cap)))
        except (CentraError, OSError) as exc:
            log.warning("failed to load %s %s: %s", entry.kind, entry.source, exc)
            items.append(CorpusItem(entry, error=f"{type(exc).__name__}: {exc}"))
    return items
