"""Simple undirected graphs on bitset rows, graph6 I/O and SRG checks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .srg_params import SrgParams

__all__ = [
    "Graph",
    "Graph6Error",
    "SrgCheckReport",
    "SrgWitness",
    "iter_bits",
    "parse_graph6",
    "encode_graph6",
    "read_graph6_lines",
    "complement",
    "verify_srg",
    "second_neighborhood",
    "check_n2_connected",
    "is_connected",
    "find_isomorphism",
]

MAX_VERTICES = 10_000


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Graph on vertices ``0..n-1``; ``adj[u]`` is the neighbour bitset of ``u``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} out of range")
        if len(self.adj) != self.n:
            raise ValueError("need one adjacency row per vertex")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {u} mentions a vertex >= n")
            if row >> u & 1:
                raise ValueError(f"loop at vertex {u}")
            for v in iter_bits(row):
                if not self.adj[v] >> u & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix: Iterable[Iterable[int]]) -> Graph:
        rows = [bits_to_mask(j for j, x in enumerate(r) if x) for r in matrix]
        return cls(len(rows), tuple(rows))

    @property
    def all_vertices(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def neighbors(self, u: int) -> list[int]:
        return list(iter_bits(self.adj[u]))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in iter_bits(self.adj[u] >> (u + 1)):
                yield u, u + 1 + v

    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def adjacency_matrix(self) -> list[list[int]]:
        return [[row >> j & 1 for j in range(self.n)] for row in self.adj]

    def is_clique(self, mask: int) -> bool:
        return all(self.adj[v] | (1 << v) | ~mask == -1 for v in iter_bits(mask))

    def is_coclique(self, mask: int) -> bool:
        return all(not self.adj[v] & mask for v in iter_bits(mask))

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled to ``0..len-1`` in the given order."""
        vs = list(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        rows = []
        for v in vs:
            rows.append(bits_to_mask(pos[w] for w in iter_bits(self.adj[v]) if w in pos))
        return Graph(len(vs), tuple(rows))

    def relabel(self, perm: list[int]) -> Graph:
        """Graph with vertex ``u`` renamed ``perm[u]``."""
        rows = [0] * self.n
        for u in range(self.n):
            rows[perm[u]] = bits_to_mask(perm[w] for w in iter_bits(self.adj[u]))
        return Graph(self.n, tuple(rows))

    def contract(self, u: int, v: int) -> tuple[Graph, list[int]]:
        """Identify non-adjacent ``u`` and ``v``.

        Returns the quotient graph and the map from old to new vertices.
        """
        if u == v or self.has_edge(u, v):
            raise ValueError("can only identify distinct non-adjacent vertices")
        keep = v if v < u else u
        drop = u if keep == v else v
        old_to_new = []
        for w in range(self.n):
            if w == drop:
                old_to_new.append(-1)
            else:
                old_to_new.append(w - (w > drop))
        old_to_new[drop] = old_to_new[keep]
        edges = {tuple(sorted((old_to_new[a], old_to_new[b]))) for a, b in self.edges()}
        return Graph.from_edges(self.n - 1, edges), old_to_new

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges()})"


# -- graph6 ---------------------------------------------------------------


class Graph6Error(ValueError):
    """Malformed graph6 input.  ``kind`` is BadLength, BadChar or UnsupportedSize."""

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


HEADER = b">>graph6<<"


def _decode_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise Graph6Error("BadLength", "empty input")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("BadLength", "truncated 8-byte size field")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        if n >= 1 << 36:
            raise Graph6Error("UnsupportedSize", f"n={n}")
        return n, 8
    if len(data) < 4:
        raise Graph6Error("BadLength", "truncated 4-byte size field")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def parse_graph6(text: bytes | str) -> Graph:
    """Decode one graph6 line (header and trailing newline allowed)."""
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    for i, c in enumerate(data):
        if not 63 <= c <= 126:
            raise Graph6Error("BadChar", f"byte {c} at offset {i}")
    n, off = _decode_size(data)
    if n > MAX_VERTICES:
        raise Graph6Error("UnsupportedSize", f"n={n} exceeds {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    body = data[off:]
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error("BadLength", f"expected {(nbits + 5) // 6} body bytes, got {len(body)}")
    value = 0
    for c in body:
        value = (value << 6) | (c - 63)
    pad = 6 * len(body) - nbits
    value >>= pad
    rows = [0] * n
    k = nbits
    for j in range(1, n):
        for i in range(j):
            k -= 1
            if value >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def _encode_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 1 << 36:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise Graph6Error("UnsupportedSize", f"n={n}")


def encode_graph6(g: Graph) -> bytes:
    """Canonical graph6 line for ``g``, without header or newline."""
    n = g.n
    out = bytearray(_encode_size(n))
    acc = 0
    nb = 0
    for j in range(1, n):
        col = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            nb += 1
            if nb == 6:
                out.append(acc + 63)
                acc = nb = 0
    if nb:
        out.append((acc << (6 - nb)) + 63)
    return bytes(out)


def read_graph6_lines(lines: Iterable[bytes | str]) -> Iterator[tuple[int, Graph | Graph6Error]]:
    """Parse a multi-line graph6 stream; bad lines yield their error."""
    for lineno, line in enumerate(lines, 1):
        raw = line.encode("ascii", "replace") if isinstance(line, str) else line
        raw = raw.strip()
        if not raw:
            continue
        try:
            yield lineno, parse_graph6(raw)
        except Graph6Error as exc:
            yield lineno, exc


# -- structure --------------------------------------------------------------


def complement(g: Graph) -> Graph:
    full = g.all_vertices
    return Graph(g.n, tuple(full & ~row & ~(1 << u) for u, row in enumerate(g.adj)))


def is_connected(g: Graph, mask: int | None = None) -> bool:
    """Connectivity of ``g`` (or of the subgraph induced by ``mask``)."""
    mask = g.all_vertices if mask is None else mask
    if not mask:
        return True
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & mask & ~seen
        seen |= frontier
    return seen == mask


@dataclass(frozen=True)
class SrgWitness:
    reason: str
    pair: tuple[int, int] | None
    observed: int | None = None
    expected: int | None = None


@dataclass(frozen=True)
class SrgCheckReport:
    is_srg: bool
    params: SrgParams | None = None
    primitive: bool = False
    failure_witness: SrgWitness | None = None


def verify_srg(g: Graph) -> SrgCheckReport:
    """Check strong regularity by counting common neighbours for every pair."""
    n = g.n
    if n < 2:
        return SrgCheckReport(False, failure_witness=SrgWitness("fewer than two vertices", None))
    k = g.degree(0)
    for u in range(1, n):
        if g.degree(u) != k:
            return SrgCheckReport(False, failure_witness=SrgWitness("not regular", (0, u), g.degree(u), k))
    if k == 0:
        return SrgCheckReport(False, failure_witness=SrgWitness("edgeless", (0, 1), 0, None))
    lam = mu = None
    for u in range(n):
        row = g.adj[u]
        for v in range(u + 1, n):
            c = (row & g.adj[v]).bit_count()
            if row >> v & 1:
                if lam is None:
                    lam = c
                elif c != lam:
                    return SrgCheckReport(False, failure_witness=SrgWitness("lambda", (u, v), c, lam))
            else:
                if mu is None:
                    mu = c
                elif c != mu:
                    return SrgCheckReport(False, failure_witness=SrgWitness("mu", (u, v), c, mu))
    # complete graph: no non-adjacent pairs, mu is vacuous
    params = SrgParams(n, k, lam, 0 if mu is None else mu)
    primitive = 1 <= params.mu < k and is_connected(g) and is_connected(complement(g))
    return SrgCheckReport(True, params, primitive)


def distances_from(g: Graph, v: int) -> list[int]:
    """BFS distances from ``v``; unreachable vertices get -1."""
    dist = [-1] * g.n
    dist[v] = 0
    q = deque([v])
    while q:
        u = q.popleft()
        for w in iter_bits(g.adj[u]):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def second_neighborhood(g: Graph, v: int) -> set[int]:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range")
    return {u for u, d in enumerate(distances_from(g, v)) if d == 2}


def check_n2_connected(g: Graph) -> list[bool]:
    """For each vertex, whether its distance-2 set induces a connected subgraph."""
    flags = []
    for v in range(g.n):
        closed = g.adj[v] | (1 << v)
        reach2 = 0
        for w in iter_bits(g.adj[v]):
            reach2 |= g.adj[w]
        flags.append(is_connected(g, reach2 & ~closed))
    return flags


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """Backtracking isomorphism search with degree and adjacency pruning.

    Returns ``perm`` with ``h == g.relabel(perm)``, or ``None``.
    """
    if g.n != h.n or g.num_edges() != h.num_edges():
        return None
    n = g.n

    def signature(x: Graph, u: int) -> tuple[int, tuple[int, ...]]:
        return x.degree(u), tuple(sorted(x.degree(w) for w in iter_bits(x.adj[u])))

    sg = [signature(g, u) for u in range(n)]
    sh = [signature(h, u) for u in range(n)]
    if sorted(sg) != sorted(sh):
        return None
    order = sorted(range(n), key=lambda u: (-g.degree(u), u))
    # grow the order along edges so adjacency constraints bite early
    placed: list[int] = []
    left = set(order)
    while left:
        best = max(left, key=lambda u: (sum(g.has_edge(u, p) for p in placed), g.degree(u), -u))
        placed.append(best)
        left.remove(best)
    perm = [-1] * n
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        u = placed[i]
        for x in range(n):
            if used >> x & 1 or sh[x] != sg[u]:
                continue
            ok = True
            for p in placed[:i]:
                if g.has_edge(u, p) != h.has_edge(x, perm[p]):
                    ok = False
                    break
            if ok:
                perm[u] = x
                used |= 1 << x
                if extend(i + 1):
                    return True
                used &= ~(1 << x)
                perm[u] = -1
        return False

    return list(perm) if extend(0) else None
