"""
graph6 reader and writer.

Bit-exact with the published format: a size header, then the upper triangle of
the adjacency matrix read column by column, packed big-endian into 6-bit groups
offset by 63.
"""

import logging
from typing import List, NoReturn

from src.core.config import MAX_VERTICES
from src.graphs.graph import Graph

logger = logging.getLogger(__name__)

_HEADER = ">>graph6<<"


def _size_header(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    return "~" + "".join(chr(63 + (n >> shift & 0x3F)) for shift in (12, 6, 0))


def emit_graph6(graph: Graph) -> str:
    """Encode ``graph`` as a graph6 string (no trailing newline)."""
    n = graph.n
    value = 0
    count = 0
    for j in range(1, n):
        row = graph.adj[j]
        for i in range(j):
            value = value << 1 | (row >> i & 1)
            count += 1

    padding = -count % 6
    value <<= padding
    count += padding

    chunks = [chr(63 + (value >> shift & 0x3F)) for shift in range(count - 6, -1, -6)]
    return _size_header(n) + "".join(chunks)


def _fail(message: str) -> NoReturn:
    logger.error(message)
    raise ValueError(message)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string; raises ValueError on any malformation."""
    data = text.strip()
    if data.startswith(_HEADER):
        data = data[len(_HEADER):]
    if not data:
        _fail("Empty graph6 string")
    if any(not 63 <= ord(ch) <= 126 for ch in data):
        _fail(f"graph6 string has characters outside the printable range 63-126: {data!r}")

    codes = [ord(ch) - 63 for ch in data]
    if codes[0] == 63:
        if len(codes) < 4 or codes[1] == 63:
            _fail(f"Unsupported graph6 size header in {data!r} (more than {MAX_VERTICES} vertices)")
        n = codes[1] << 12 | codes[2] << 6 | codes[3]
        body = codes[4:]
    else:
        n = codes[0]
        body = codes[1:]

    if n < 1 or n > MAX_VERTICES:
        _fail(f"graph6 size {n} out of range [1, {MAX_VERTICES}]")

    bit_count = n * (n - 1) // 2
    expected = (bit_count + 5) // 6
    if len(body) != expected:
        _fail(f"graph6 body for n={n} must be {expected} characters, got {len(body)}")

    value = 0
    for code in body:
        value = value << 6 | code
    padding = expected * 6 - bit_count
    if value & ((1 << padding) - 1):
        _fail(f"graph6 string {data!r} has nonzero padding bits")
    value >>= padding

    rows = [0] * n
    position = bit_count - 1
    for j in range(1, n):
        for i in range(j):
            if value >> position & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            position -= 1
    return Graph._trusted(n, tuple(rows))


def parse_graph6_lines(text: str) -> List[Graph]:
    """Decode one graph per non-blank line."""
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]
