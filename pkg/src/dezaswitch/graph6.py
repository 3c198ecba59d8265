"""graph6 encoding and decoding (bit-exact with nauty's format)."""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from .errors import Graph6ParseError, InvalidArgument
from .graph import Graph

MAX_N = 258047
_HEADER = b">>graph6<<"


def _size_prefix(n: int) -> bytes:
    if n <= 62:
        return bytes([63 + n])
    if n <= MAX_N:
        return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    raise InvalidArgument(f"graph6 supports n <= {MAX_N}, got {n}")


def _upper_bits(adj: np.ndarray) -> np.ndarray:
    # column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    j, i = np.triu_indices(adj.shape[0], 1)[::-1]
    order = np.lexsort((i, j))
    return adj[i[order], j[order]]


def to_graph6(g: Graph) -> bytes:
    bits = _upper_bits(g.adj).astype(np.uint8)
    pad = (-len(bits)) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    groups = bits.reshape(-1, 6) @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8) if len(bits) else np.array([], dtype=np.uint8)
    return _size_prefix(g.n) + bytes((groups + 63).astype(np.uint8).tolist())


def from_graph6(s: bytes | str) -> Graph:
    if isinstance(s, str):
        s = s.encode("ascii")
    s = s.strip()
    start = 0
    if s.startswith(_HEADER):
        start = len(_HEADER)
    data = s[start:]
    for off, ch in enumerate(data):
        if not 63 <= ch <= 126:
            raise Graph6ParseError(f"invalid graph6 byte {ch!r}", start + off)
    if not data:
        raise Graph6ParseError("empty graph6 string", start)
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        raise Graph6ParseError("graphs with n > 258047 are not supported", start + 1)
    else:
        if len(data) < 4:
            raise Graph6ParseError("truncated size prefix", start + len(data))
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        pos = 4
    if n < 1:
        raise Graph6ParseError("graph must have at least one vertex", start)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise Graph6ParseError(f"expected {need} data bytes for n={n}, found {len(body)}",
                               start + pos + min(len(body), need))
    vals = np.frombuffer(body, dtype=np.uint8) - 63
    bits = ((vals[:, None] >> np.arange(5, -1, -1)) & 1).reshape(-1)
    if bits[nbits:].any():
        raise Graph6ParseError("non-zero padding bits", start + len(data) - 1)
    j, i = np.triu_indices(n, 1)[::-1]
    order = np.lexsort((i, j))
    adj = np.zeros((n, n), dtype=bool)
    adj[i[order], j[order]] = bits[:nbits].astype(bool)
    return Graph(adj | adj.T)


def write_graph6_lines(graphs: Iterable[Graph]) -> bytes:
    return b"".join(to_graph6(g) + b"\n" for g in graphs)


def read_graph6_lines(data: bytes | str) -> Iterator[Graph]:
    if isinstance(data, str):
        data = data.encode("ascii")
    for line in data.splitlines():
        line = line.strip()
        if line:
            yield from_graph6(line)
