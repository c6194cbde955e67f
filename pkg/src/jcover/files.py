"""Readers and writers for the on-disk artifact formats.

Four formats are shared across the library, the CLI, and the fixtures:

* cover files: JSON with fields n, k, and a clique list, each clique a
  {"type": "A"|"B", "set": [sorted integers]} object;
* block-design files: text, header line "v s", then one block per line as
  space-separated integers in 1..v;
* word-list (code) files: text, header "n w count convention", then one
  word per line as space-separated sorted elements;
* solver logs: one line per incumbent improvement, "elapsed value bound".

Parse failures raise FormatError with a line number where applicable.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from .errors import FormatError, PreconditionError
from .graph import Clique, CliqueKind, Cover, GraphParams, KSubset

CONVENTION_NONE = "none"


def cover_to_dict(cover: Cover) -> dict:
    return {
        "n": cover.params.n,
        "k": cover.params.k,
        "cliques": [
            {"type": c.kind.value, "set": list(c.generator_elements)}
            for c in cover.cliques
        ],
    }


def cover_from_dict(data: dict) -> Cover:
    try:
        params = GraphParams(int(data["n"]), int(data["k"]))
        cliques = []
        for i, entry in enumerate(data["cliques"]):
            kind_raw = entry["type"]
            if kind_raw not in ("A", "B"):
                raise FormatError(f"clique {i}: unknown type {kind_raw!r}")
            cliques.append(
                Clique.from_elements(CliqueKind(kind_raw), entry["set"], params)
            )
    except FormatError:
        raise
    except PreconditionError as exc:
        raise FormatError(f"invalid cover data: {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed cover document: {exc}") from exc
    return Cover(params, tuple(cliques))


def save_cover(cover: Cover, path: str | Path) -> None:
    Path(path).write_text(json.dumps(cover_to_dict(cover), indent=1) + "\n")


def load_cover(path: str | Path) -> Cover:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    try:
        return cover_from_dict(data)
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def save_blocks(v: int, blocks: Sequence[Sequence[int]], path: str | Path) -> None:
    if not blocks:
        raise PreconditionError("refusing to write an empty block file")
    s = len(blocks[0])
    lines = [f"{v} {s}"]
    for block in blocks:
        lines.append(" ".join(map(str, sorted(block))))
    Path(path).write_text("\n".join(lines) + "\n")


def load_blocks(path: str | Path) -> tuple[int, int, list[tuple[int, ...]]]:
    """Read a block-design file; returns (v, block size s, blocks)."""
    lines = Path(path).read_text().splitlines()
    rows = [
        (i + 1, line.strip()) for i, line in enumerate(lines) if line.strip()
    ]
    if not rows:
        raise FormatError(f"{path}: empty file")
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise FormatError(f"{path}: line {lineno}: header must be 'v s'")
    try:
        v, s = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise FormatError(f"{path}: line {lineno}: non-integer header") from exc
    if not 1 <= s <= v:
        raise FormatError(f"{path}: line {lineno}: need 1 <= s <= v")
    blocks: list[tuple[int, ...]] = []
    for lineno, line in rows[1:]:
        try:
            block = tuple(sorted(int(tok) for tok in line.split()))
        except ValueError as exc:
            raise FormatError(f"{path}: line {lineno}: non-integer entry") from exc
        if len(block) != s:
            raise FormatError(
                f"{path}: line {lineno}: block has {len(block)} elements, header says {s}"
            )
        if len(set(block)) != s:
            raise FormatError(f"{path}: line {lineno}: repeated element in block")
        if block and (block[0] < 1 or block[-1] > v):
            raise FormatError(f"{path}: line {lineno}: element outside 1..{v}")
        blocks.append(block)
    if not blocks:
        raise FormatError(f"{path}: no blocks after header")
    return v, s, blocks


def save_words(
    n: int,
    w: int,
    words: Iterable[Sequence[int]],
    path: str | Path,
    convention: str = CONVENTION_NONE,
) -> int:
    """Write a word list; returns the number of words written."""
    words = [tuple(sorted(word)) for word in words]
    body = "\n".join(" ".join(map(str, word)) for word in words)
    header = f"{n} {w} {len(words)} {convention}"
    Path(path).write_text(header + ("\n" + body if body else "") + "\n")
    return len(words)


def load_words(path: str | Path) -> tuple[GraphParams, str, list[KSubset]]:
    """Read a word list; returns (params, convention, words)."""
    lines = Path(path).read_text().splitlines()
    rows = [(i + 1, line.strip()) for i, line in enumerate(lines) if line.strip()]
    if not rows:
        raise FormatError(f"{path}: empty file")
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 4:
        raise FormatError(f"{path}: line {lineno}: header must be 'n w count convention'")
    try:
        n, w, count = int(parts[0]), int(parts[1]), int(parts[2])
    except ValueError as exc:
        raise FormatError(f"{path}: line {lineno}: non-integer header field") from exc
    convention = parts[3]
    try:
        params = GraphParams(n, w)
    except PreconditionError as exc:
        raise FormatError(f"{path}: line {lineno}: {exc}") from exc
    words: list[KSubset] = []
    for lineno, line in rows[1:]:
        try:
            elements = [int(tok) for tok in line.split()]
            words.append(KSubset.from_elements(params, elements))
        except (ValueError, PreconditionError) as exc:
            raise FormatError(f"{path}: line {lineno}: {exc}") from exc
    if len(words) != count:
        raise FormatError(
            f"{path}: header promises {count} words, found {len(words)}"
        )
    return params, convention, words


def write_solver_log(stream: TextIO, events: Iterable[tuple[float, int, int]]) -> None:
    """Write incumbent-improvement events as 'elapsed value bound' lines."""
    for elapsed, value, bound in events:
        stream.write(f"{elapsed:.3f} {value} {bound}\n")
