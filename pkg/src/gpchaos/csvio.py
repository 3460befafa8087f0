"""Delimited output: ``#``-prefixed metadata block, a column header, then rows.

Floats are written with 17 significant digits so a re-read is bit-exact.
"""
from __future__ import annotations

import io
import math

import numpy as np

from . import __version__

FORMAT_VERSION = 1


def fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        return format(value, ".17g")
    return str(value)


def _meta_lines(metadata):
    yield f"# format_version: {FORMAT_VERSION}"
    yield f"# generator: gpchaos {__version__}"
    for key, value in metadata.items():
        if isinstance(value, dict):
            for k, v in value.items():
                yield f"# {key}.{k}: {fmt(v)}"
        else:
            yield f"# {key}: {fmt(value)}"


def render(columns, rows, metadata=None):
    buf = io.StringIO()
    for line in _meta_lines(metadata or {}):
        buf.write(line + "\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def write(path, columns, rows, metadata=None):
    text = render(columns, rows, metadata)
    if path is None or path == "-":
        import sys
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text


def read(path_or_text):
    """Return (metadata dict of strings, column names, list of row string lists)."""
    if "\n" in path_or_text:
        text = path_or_text
    else:
        with open(path_or_text) as fh:
            text = fh.read()
    meta, header, rows = {}, None, []
    for line in text.splitlines():
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(":")
            meta[key.strip()] = value.strip()
        elif header is None:
            header = line.split(",")
        else:
            rows.append(line.split(","))
    return meta, header, rows
