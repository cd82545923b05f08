"""Reading and writing JSON code files.

Permutation codes::

    {"type": "permutation", "n": 4, "members": [[2, 1, 3, 4], [1, 2, 3, 4]]}

Matching codes (pairs in any order and orientation)::

    {"type": "matching", "n": 3, "members": [[[1, 2], [3, 4], [5, 6]]]}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from covrad.errors import CodeFileError, CovradError
from covrad.matchings import MatchingCode, PerfectMatching
from covrad.perms import Permutation, PermutationCode

_decoder = json.JSONDecoder()


def _member_lines(text: str) -> list[int]:
    """1-based line number of each element of the top-level "members" array."""
    key = text.find('"members"')
    if key < 0:
        return []
    pos = text.find("[", key)
    if pos < 0:
        return []
    lines = []
    pos += 1
    while True:
        while pos < len(text) and text[pos] in " \t\r\n,":
            pos += 1
        if pos >= len(text) or text[pos] == "]":
            return lines
        try:
            _, end = _decoder.raw_decode(text, pos)
        except json.JSONDecodeError:
            return lines
        lines.append(text.count("\n", 0, pos) + 1)
        pos = end


def _where(lines: list[int], i: int) -> str:
    line = f"line {lines[i]}, " if i < len(lines) else ""
    return f"{line}member {i}"


def _perm_member(row: Any, n: int, where: str) -> Permutation:
    if not isinstance(row, list) or len(row) != n:
        raise CodeFileError(f"{where}: expected a list of {n} images, got {row!r}")
    seen: dict[int, int] = {}
    for idx, v in enumerate(row):
        if not isinstance(v, int) or not 1 <= v <= n:
            raise CodeFileError(f"{where}, index {idx}: value {v!r} is not in 1..{n}")
        if v in seen:
            raise CodeFileError(f"{where}, index {idx}: value {v} already used at index {seen[v]} (not a bijection)")
        seen[v] = idx
    return Permutation(tuple(row))


def _matching_member(row: Any, n: int, where: str) -> PerfectMatching:
    if not isinstance(row, list) or len(row) != n:
        raise CodeFileError(f"{where}: expected a list of {n} pairs, got {row!r}")
    seen: dict[int, int] = {}
    for idx, pair in enumerate(row):
        if not isinstance(pair, list) or len(pair) != 2:
            raise CodeFileError(f"{where}, index {idx}: {pair!r} is not a pair")
        for v in pair:
            if not isinstance(v, int) or not 1 <= v <= 2 * n:
                raise CodeFileError(f"{where}, index {idx}: vertex {v!r} is not in 1..{2 * n}")
            if v in seen:
                raise CodeFileError(f"{where}, index {idx}: vertex {v} already covered by pair {seen[v]}")
            seen[v] = idx
    return PerfectMatching(row)


def parse_code(text: str, source: str = "<string>") -> PermutationCode | MatchingCode:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodeFileError(f"{source}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise CodeFileError(f"{source}: top level must be an object")
    kind = data.get("type")
    n = data.get("n")
    members = data.get("members")
    if kind not in ("permutation", "matching"):
        raise CodeFileError(f"{source}: \"type\" must be \"permutation\" or \"matching\", got {kind!r}")
    if not isinstance(n, int) or n < 1:
        raise CodeFileError(f"{source}: \"n\" must be a positive integer, got {n!r}")
    if not isinstance(members, list) or not members:
        raise CodeFileError(f"{source}: \"members\" must be a nonempty list")
    lines = _member_lines(text)
    build = _perm_member if kind == "permutation" else _matching_member
    parsed = [build(row, n, f"{source}: {_where(lines, i)}") for i, row in enumerate(members)]
    try:
        if kind == "permutation":
            return PermutationCode(parsed, n=n)
        return MatchingCode(parsed, n=n)
    except CovradError as exc:
        raise CodeFileError(f"{source}: {exc}") from None


def load_code(path: str | Path) -> PermutationCode | MatchingCode:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CodeFileError(f"cannot read {path}: {exc.strerror}") from None
    return parse_code(text, str(path))


def point_to_json(point: Permutation | PerfectMatching) -> list:
    if isinstance(point, Permutation):
        return list(point.images)
    return [list(e) for e in point.edges]


def code_to_dict(code: PermutationCode | MatchingCode) -> dict:
    return {"type": code.kind, "n": code.n, "members": [point_to_json(p) for p in code]}


def dump_code(code: PermutationCode | MatchingCode, path: str | Path) -> None:
    Path(path).write_text(json.dumps(code_to_dict(code)) + "\n")
