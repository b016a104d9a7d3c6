"""
Text formats.

.dg  - "# comment" lines, then "n <count>", then one "<u> <v>" arc per line.
.op  - "n <base>", "k <arity>", then n**k whitespace-separated values.
"""

import hashlib
import json
import os

from .digraph import new_digraph
from .errors import ArityError, FormatError
from .operations import OperationTable


def _lines(text):
    """(line number, tokens) for every non-blank, non-comment line"""
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def _int(token, number, path):
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"expected an integer, got {token!r}", number, path)


def _header(lines, key, path):
    try:
        number, tokens = next(lines)
    except StopIteration:
        raise FormatError(f"missing '{key} <value>' header", None, path)
    if len(tokens) != 2 or tokens[0] != key:
        raise FormatError(f"expected '{key} <value>', got {' '.join(tokens)!r}", number, path)
    value = _int(tokens[1], number, path)
    if value < 1:
        raise FormatError(f"'{key}' must be positive, got {value}", number, path)
    return value


def parse_digraph(text, path=None):
    lines = _lines(text)
    n = _header(lines, "n", path)
    arcs = []
    for number, tokens in lines:
        if len(tokens) != 2:
            raise FormatError(f"expected '<u> <v>', got {' '.join(tokens)!r}", number, path)
        u, v = (_int(t, number, path) for t in tokens)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"arc ({u}, {v}) out of range for n={n}", number, path)
        arcs.append((u, v))
    return new_digraph(n, arcs)


def format_digraph(g):
    lines = [f"n {g.n}"]
    lines += [f"{u} {v}" for u, v in g.arcs() if u != v]
    return "\n".join(lines) + "\n"


def read_digraph(path):
    with open(path, "r", encoding="utf-8") as f:
        return parse_digraph(f.read(), path)


def write_digraph(g, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_digraph(g))


def parse_op(text, path=None):
    lines = _lines(text)
    n = _header(lines, "n", path)
    k = _header(lines, "k", path)
    values = []
    for number, tokens in lines:
        for token in tokens:
            value = _int(token, number, path)
            if not 0 <= value < n:
                raise FormatError(f"value {value} out of range for base {n}", number, path)
            values.append(value)
    if len(values) != n ** k:
        raise FormatError(f"expected {n ** k} values, got {len(values)}", None, path)
    try:
        return OperationTable(n, k, values)
    except ArityError as e:
        raise FormatError(str(e), None, path)


def format_op(f, per_line=None):
    per_line = per_line or f.n
    values = [str(v) for v in f.as_tuple()]
    rows = [" ".join(values[i:i + per_line]) for i in range(0, len(values), per_line)]
    return "\n".join([f"n {f.n}", f"k {f.k}"] + rows) + "\n"


def read_op(path):
    with open(path, "r", encoding="utf-8") as f:
        return parse_op(f.read(), path)


def write_op(f, path):
    with open(path, "w", encoding="utf-8") as out:
        out.write(format_op(f))


def write_hom_sidecar(hom, path):
    """<name>.tables.json next to the Hom-digraph file"""
    root, _ = os.path.splitext(path)
    sidecar = f"{root}.tables.json"
    with open(sidecar, "w", encoding="utf-8") as f:
        json.dump(hom.tables_json(), f, indent=2)
    return sidecar


def file_digest(path):
    sha = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            sha.update(chunk)
    return sha.hexdigest()
