#!/usr/bin/env python3
"""Convert GAP transitive-groups library data files into catalog files.

Usage: export_transgrp.py DATA_DIR OUT_DIR DEGREE [DEGREE ...]

DATA_DIR is the `data/` directory of the GAP `transgrp` package (the files
`trans<n>.grp.gz`, `trans<n>a.grp.gz`, ...). Each degree is written to
OUT_DIR/deg<n>.cat in the `name|degree|gen1;gen2;...` format, with a
`#complete degree=<n>` header once the group count matches the library's
own count.
"""

import gzip
import re
import sys
from pathlib import Path


def read_text(path):
    with gzip.open(path, "rt", encoding="latin-1") as fh:
        lines = [ln for ln in fh if not ln.lstrip().startswith("#")]
    return "".join(lines)


def balanced(text, start):
    """Return the bracketed expression starting at text[start] == '['."""
    depth = 0
    in_str = False
    for i in range(start, len(text)):
        c = text[i]
        if in_str:
            if c == "\\":
                continue
            if c == '"':
                in_str = False
            continue
        if c == '"':
            in_str = True
        elif c == "[":
            depth += 1
        elif c == "]":
            depth -= 1
            if depth == 0:
                return text[start : i + 1]
    raise ValueError("unbalanced list")


def split_entries(body):
    """Split the outer list into its entries (each itself a list)."""
    entries = []
    depth = 0
    in_str = False
    cur_start = None
    for i, c in enumerate(body):
        if in_str:
            if c == '"':
                in_str = False
            continue
        if c == '"':
            in_str = True
        elif c == "[":
            depth += 1
            if depth == 2:
                cur_start = i
        elif c == "]":
            if depth == 2:
                entries.append(body[cur_start : i + 1])
            depth -= 1
    return entries


CYCLE = re.compile(r"\(([0-9,\s]*)\)")


def parse_entry(entry):
    inner = re.sub(r'"[^"]*"', "", entry[1:-1])
    inner = re.sub(r"\s+", "", inner)
    gens = []
    for chunk in inner.split("),("):
        chunk = chunk.strip(",")
        if not chunk:
            continue
        if not chunk.startswith("("):
            chunk = "(" + chunk
        if not chunk.endswith(")"):
            chunk = chunk + ")"
        # a generator is a run of adjacent cycles; generators are comma separated
        gens.append(chunk)
    out = []
    for g in gens:
        if g == "()":
            out.append("()")
            continue
        cycles = CYCLE.findall(g)
        if "".join("(%s)" % c for c in cycles) != g:
            raise ValueError("unexpected generator text: %r" % g)
        out.append(g)
    return out


def load_degree(data_dir, n):
    groups = []
    expected = None
    files = sorted(data_dir.glob("trans%d*.grp.gz" % n))
    files = [f for f in files if re.fullmatch(r"trans%d[a-z]*\.grp\.gz" % n, f.name)]
    chunks = []
    for f in files:
        text = read_text(f)
        m = re.search(r"TRANSLENGTHS\[%d\]\s*:=\s*(\d+)" % n, text)
        if m:
            expected = int(m.group(1))
        for m in re.finditer(r"TRANSGRP\[%d\](\{\[(\d+)\.\.(\d+)\]\})?\s*:=\s*" % n, text):
            start = m.end()
            if text[start] != "[":
                continue
            body = balanced(text, start)
            offset = int(m.group(2)) if m.group(2) else 1
            chunks.append((offset, split_entries(body)))
    chunks.sort()
    for _, entries in chunks:
        groups.extend(parse_entry(e) for e in entries)
    if expected is None:
        expected = len(groups)
    return groups, expected


def main():
    data_dir = Path(sys.argv[1])
    out_dir = Path(sys.argv[2])
    out_dir.mkdir(parents=True, exist_ok=True)
    for n in map(int, sys.argv[3:]):
        groups, expected = load_degree(data_dir, n)
        lines = ["# transitive groups of degree %d, GAP transgrp numbering" % n]
        if len(groups) == expected:
            lines.append("#complete degree=%d" % n)
        for k, gens in enumerate(groups, start=1):
            lines.append("T%d_%d|%d|%s" % (n, k, n, ";".join(gens)))
        (out_dir / ("deg%d.cat" % n)).write_text("\n".join(lines) + "\n")
        print("degree %d: %d groups (library count %d)" % (n, len(groups), expected))


if __name__ == "__main__":
    main()
