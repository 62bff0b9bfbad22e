"""sparse6 encoding and decoding, bit-exact against the public format.

A sparse6 string is ':' + N(n) + R(x): the node count in the graph6 number
encoding followed by a bit stream of (b, x) groups, where b increments the
current vertex and x is a k-bit vertex index (k = bits needed for n-1).
Groups with x >= n or a current vertex >= n terminate the stream; trailing
bits are padding. The encoder emits the canonical minimal form (edges sorted
by larger endpoint, 1-padding with the power-of-two special case), so equal
graphs always produce identical bytes.

All ASCII whitespace is stripped before parsing: published listings often
hard-wrap long strings.
"""

from __future__ import annotations

from .graphs import MAX_NODES, Graph

HEADER = b">>sparse6<<"
_WS = b" \t\r\n\x0b\x0c"


class Sparse6Error(ValueError):
    """Raised for any malformed sparse6 input."""


def _parse_n(data: bytes, pos: int) -> tuple[int, int]:
    """Decode N(n) starting at pos; returns (n, next position)."""
    if pos >= len(data):
        raise Sparse6Error("truncated sparse6: missing node count")
    c = data[pos] - 63
    if c < 63:
        return c, pos + 1
    if pos + 1 < len(data) and data[pos + 1] - 63 == 63:
        chunk = data[pos + 2 : pos + 8]
        if len(chunk) < 6:
            raise Sparse6Error("truncated sparse6: incomplete 36-bit node count")
        n = 0
        for b in chunk:
            n = (n << 6) | (b - 63)
        return n, pos + 8
    chunk = data[pos + 1 : pos + 4]
    if len(chunk) < 3:
        raise Sparse6Error("truncated sparse6: incomplete 18-bit node count")
    n = 0
    for b in chunk:
        n = (n << 6) | (b - 63)
    return n, pos + 4


def _groups(body: bytes, pos: int, k: int):
    """Yield (b, x) groups of 1 + k bits; an incomplete final group is padding."""
    d = 0
    dlen = 0
    i = pos
    while True:
        if dlen < 1:
            if i >= len(body):
                return
            d = body[i] - 63
            i += 1
            dlen = 6
        dlen -= 1
        b = (d >> dlen) & 1
        x = d & ((1 << dlen) - 1)
        xlen = dlen
        while xlen < k:
            if i >= len(body):
                return
            d = body[i] - 63
            i += 1
            x = (x << 6) | d
            xlen += 6
        x >>= xlen - k
        dlen = xlen - k
        yield b, x


def decode_sparse6(data: bytes | str) -> Graph:
    """Parse a sparse6 byte-string (optionally with header) into a Graph.

    Duplicate edges and loops in the stream are rejected: the archive holds
    simple graphs only.
    """
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = bytes(data).translate(None, _WS)
    if data.startswith(HEADER):
        data = data[len(HEADER) :]
    if not data.startswith(b":"):
        raise Sparse6Error("sparse6 data must start with ':'")
    body = data[1:]
    for ch in body:
        if not 63 <= ch <= 126:
            raise Sparse6Error(f"byte {ch} outside the sparse6 alphabet")
    n, pos = _parse_n(body, 0)
    if n < 1 or n > MAX_NODES:
        raise Sparse6Error(f"node count {n} outside supported range 1..{MAX_NODES}")
    k = 1
    while (1 << k) < n:
        k += 1

    rows = [0] * n
    edges = 0
    v = 0
    for b, x in _groups(body, pos, k):
        if b:
            v += 1
        if v >= n or x >= n:
            break  # remainder is padding
        if x > v:
            v = x
            continue
        if x == v:
            raise Sparse6Error(f"loop at node {v} in sparse6 stream")
        if (rows[x] >> v) & 1:
            raise Sparse6Error(f"duplicate edge ({x}, {v}) in sparse6 stream")
        rows[x] |= 1 << v
        rows[v] |= 1 << x
        edges += 1
    return Graph(n, tuple(rows), edges)


def encode_sparse6(g: Graph, *, header: bool = False) -> bytes:
    """Canonical sparse6 encoding of g (':' form, no trailing newline)."""
    n = g.n
    if n <= 62:
        prefix = bytes([n + 63])
    else:
        prefix = bytes([126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    k = 1
    while (1 << k) < n:
        k += 1

    bits: list[int] = []

    def put(value: int, width: int) -> None:
        for i in range(width - 1, -1, -1):
            bits.append((value >> i) & 1)

    curv = 0
    for u in range(n):
        m = g.rows[u] & ((1 << u) - 1)  # edges (v, u) with v < u, sorted by u
        while m:
            b = m & -m
            v = b.bit_length() - 1
            m ^= b
            if u == curv:
                bits.append(0)
                put(v, k)
            elif u == curv + 1:
                curv += 1
                bits.append(1)
                put(v, k)
            else:
                curv = u
                bits.append(1)
                put(u, k)
                bits.append(0)
                put(v, k)
    pad = (-len(bits)) % 6
    if k < 6 and n == (1 << k) and pad >= k and curv < n - 1:
        # all-1 padding would decode as a loop on node n-1; lead with a 0
        bits.append(0)
        pad = (-len(bits)) % 6
    bits.extend([1] * pad)

    out = bytearray()
    if header:
        out += HEADER
    out += b":" + prefix
    for i in range(0, len(bits), 6):
        acc = 0
        for b in bits[i : i + 6]:
            acc = (acc << 1) | b
        out.append(acc + 63)
    return bytes(out)
