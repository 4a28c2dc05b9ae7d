"""Matrix file formats.

JSON: ``{"rows": m, "cols": n, "entries": [[re, im], ...]}`` row-major.
CSV: one matrix row per line, entries like ``1``, ``0.5``, ``0.5+0.25i``,
``-0.3i``, ``i``.  Serialization uses shortest-repr floats, so JSON
round-trips bit-identically and CSV well inside 1e-15 per entry.
"""
from __future__ import annotations

import hashlib
import json
import math
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ParseError, ShapeError
from .linalg import as_matrix


def golden_path(name: str):
    """Path to a bundled example matrix (without the .json suffix)."""
    return resources.files("schurmult").joinpath("golden", f"{name}.json")


def golden_names() -> list[str]:
    folder = resources.files("schurmult").joinpath("golden")
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


def load_golden(name: str) -> np.ndarray:
    with golden_path(name).open("r") as fh:
        return parse_matrix(fh, "json")


def _read_text(source, fmt: str) -> tuple[str, str]:
    """Returns (text, resolved_format)."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        path = Path(source)
        text = path.read_text()
        if fmt == "auto":
            suffix = path.suffix.lower()
            if suffix == ".json":
                fmt = "json"
            elif suffix == ".csv":
                fmt = "csv"
    if fmt == "auto":
        fmt = "json" if text.lstrip()[:1] == "{" else "csv"
    return text, fmt


def parse_matrix(source, fmt: str = "auto") -> np.ndarray:
    """Parse a matrix from a path or file-like object."""
    text, fmt = _read_text(source, fmt)
    if fmt == "json":
        return _parse_json(text)
    if fmt == "csv":
        return _parse_csv(text)
    raise ParseError(f"unknown format {fmt!r}")


def _parse_json(text: str) -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno)
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object")
    for key in ("rows", "cols", "entries"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    rows, cols, entries = doc["rows"], doc["cols"], doc["entries"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows >= 1 and cols >= 1):
        raise ParseError("rows and cols must be positive integers")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise ShapeError(
            f"expected {rows * cols} entries for a {rows}x{cols} matrix, "
            f"got {len(entries) if isinstance(entries, list) else 'non-list'}")
    data = np.empty(rows * cols, dtype=np.complex128)
    for i, item in enumerate(entries):
        if (not isinstance(item, (list, tuple)) or len(item) != 2
                or not all(isinstance(v, (int, float)) for v in item)):
            raise ParseError(f"entry {i} must be a [re, im] pair")
        re_v, im_v = float(item[0]), float(item[1])
        if not (math.isfinite(re_v) and math.isfinite(im_v)):
            raise ParseError(f"entry {i} is not finite")
        data[i] = complex(re_v, im_v)
    return data.reshape(rows, cols)


def _parse_complex_token(token: str, line: int, col: int) -> complex:
    t = token.strip().replace(" ", "")
    if not t:
        raise ParseError("empty entry", line=line, column=col)
    if t in ("i", "+i"):
        return 1j
    if t == "-i":
        return -1j
    if t.endswith("i"):
        body = t[:-1]
        split = None
        for pos in range(len(body) - 1, 0, -1):
            if body[pos] in "+-" and body[pos - 1] not in "eE":
                split = pos
                break
        if split is None:
            re_part, im_part = "", body
        else:
            re_part, im_part = body[:split], body[split:]
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        try:
            re_v = float(re_part) if re_part else 0.0
            im_v = float(im_part)
        except ValueError:
            raise ParseError(f"bad entry {token.strip()!r}", line=line, column=col)
    else:
        try:
            re_v, im_v = float(t), 0.0
        except ValueError:
            raise ParseError(f"bad entry {token.strip()!r}", line=line, column=col)
    if not (math.isfinite(re_v) and math.isfinite(im_v)):
        raise ParseError(f"entry {token.strip()!r} is not finite", line=line, column=col)
    return complex(re_v, im_v)


def _parse_csv(text: str) -> np.ndarray:
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        tokens = raw.split(",")
        if width is None:
            width = len(tokens)
        elif len(tokens) != width:
            raise ParseError(
                f"row has {len(tokens)} entries, expected {width}", line=lineno, column=1)
        rows.append([_parse_complex_token(tok, lineno, k + 1)
                     for k, tok in enumerate(tokens)])
    if not rows:
        raise ParseError("no rows found")
    return np.array(rows, dtype=np.complex128)


def _format_complex(z: complex) -> str:
    re_v, im_v = float(z.real), float(z.imag)
    if im_v == 0.0:
        return repr(re_v)
    if re_v == 0.0:
        return f"{im_v!r}i"
    sign = "+" if im_v >= 0 else "-"
    return f"{re_v!r}{sign}{abs(im_v)!r}i"


def matrix_payload(mat) -> dict:
    m = as_matrix(mat)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in m.reshape(-1)],
    }


def serialize_matrix(mat, fmt: str = "json") -> str:
    m = as_matrix(mat)
    if fmt == "json":
        return json.dumps(matrix_payload(m), sort_keys=True)
    if fmt == "csv":
        return "\n".join(
            ",".join(_format_complex(z) for z in row) for row in m) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def write_matrix(mat, path, fmt: str = "auto") -> None:
    p = Path(path)
    if fmt == "auto":
        fmt = "csv" if p.suffix.lower() == ".csv" else "json"
    p.write_text(serialize_matrix(mat, fmt))


def matrix_digest(mat) -> str:
    """sha256 over the canonical JSON form of the parsed matrix, so the
    digest is format-independent."""
    canonical = serialize_matrix(mat, "json")
    return "sha256:" + hashlib.sha256(canonical.encode()).hexdigest()
