"""Tree wire formats: JSON and the compact BTRE binary form.

Both formats round-trip bit-exactly.  The binary layout is the magic bytes
"BTRE" followed by little-endian u64 values: base, dim, height, then per
level a u64 count and that many u64 packed addresses.
"""

from __future__ import annotations

import json
import struct
from typing import Any

from .errors import AddressOverflow, SpecParseError
from .trees import CodedTree, TreeParams

_MAGIC = b"BTRE"
_U64_MAX = 2**64 - 1


def tree_to_json(tree: CodedTree) -> dict[str, Any]:
    return {
        "schema": 1,
        "base": tree.params.base,
        "dim": tree.params.dim,
        "height": tree.height,
        "levels": [list(level) for level in tree.levels],
    }


def tree_from_json(obj: dict[str, Any]) -> CodedTree:
    try:
        params = TreeParams(base=int(obj["base"]), dim=int(obj["dim"]))
        levels = [[int(p) for p in level] for level in obj["levels"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecParseError(f"malformed tree JSON: {exc}") from exc
    if len(levels) != int(obj["height"]) + 1:
        raise SpecParseError("height field disagrees with level count")
    return CodedTree(params, levels)


def tree_dumps(tree: CodedTree) -> str:
    return json.dumps(tree_to_json(tree), sort_keys=True)


def tree_loads(text: str) -> CodedTree:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return tree_from_json(obj)


def tree_to_bytes(tree: CodedTree) -> bytes:
    parts = [_MAGIC]
    parts.append(struct.pack("<3Q", tree.params.base, tree.params.dim, tree.height))
    for level in tree.levels:
        parts.append(struct.pack("<Q", len(level)))
        for p in level:
            if p > _U64_MAX:
                raise AddressOverflow(
                    f"packed address {p} exceeds u64; use the JSON format"
                )
            parts.append(struct.pack("<Q", p))
    return b"".join(parts)


def tree_from_bytes(data: bytes) -> CodedTree:
    if data[:4] != _MAGIC:
        raise SpecParseError("bad magic; not a BTRE blob")
    off = 4
    try:
        base, dim, height = struct.unpack_from("<3Q", data, off)
        off += 24
        levels = []
        for _ in range(height + 1):
            (count,) = struct.unpack_from("<Q", data, off)
            off += 8
            level = struct.unpack_from(f"<{count}Q", data, off)
            off += 8 * count
            levels.append(list(level))
    except struct.error as exc:
        raise SpecParseError(f"truncated BTRE blob: {exc}") from exc
    if off != len(data):
        raise SpecParseError("trailing bytes after BTRE payload")
    return CodedTree(TreeParams(base=base, dim=dim), levels)
