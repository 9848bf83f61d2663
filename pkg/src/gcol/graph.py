"""Simple undirected graphs as per-vertex neighbor bitsets.

Vertex labels are ``0..n-1``.  Row ``adj[v]`` is a Python int whose bit ``u``
is set when ``u`` and ``v`` are adjacent.  Vertex sets are ints in the same
encoding throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def bits_list(mask: int) -> list[int]:
    return list(iter_bits(mask))


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length differs from n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbor index >= n")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def neighbors(self, v: int) -> list[int]:
        return bits_list(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(min, max)`` pairs in lexicographic order."""
        out = []
        for u, row in enumerate(self.adj):
            for v in iter_bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def is_independent(self, mask: int) -> bool:
        return all(not (self.adj[v] & mask) for v in iter_bits(mask))

    def is_vertex_cover(self, mask: int) -> bool:
        outside = self.full & ~mask
        return self.is_independent(outside)

    def complement(self) -> Graph:
        full = self.full
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def induced_edges(self, mask: int) -> list[tuple[int, int]]:
        return [(u, v) for u, v in self.edges() if mask >> u & 1 and mask >> v & 1]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Assignment:
    """Oracle input: one bit per vertex."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("assignment bits must be 0 or 1")

    @classmethod
    def from_string(cls, text: str) -> Assignment:
        text = text.strip()
        if not text or any(c not in "01" for c in text):
            raise ValueError(f"not a bitstring: {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_ones(cls, n: int, ones: Iterable[int]) -> Assignment:
        bits = [0] * n
        for v in ones:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range for n={n}")
            bits[v] = 1
        return cls(tuple(bits))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> Assignment:
        return cls(tuple(mask >> v & 1 for v in range(n)))

    @property
    def mask(self) -> int:
        return sum(1 << v for v, b in enumerate(self.bits) if b)

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, v: int) -> int:
        return self.bits[v]

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def as_assignment(x: Assignment | Sequence[int] | str) -> Assignment:
    if isinstance(x, Assignment):
        return x
    if isinstance(x, str):
        return Assignment.from_string(x)
    return Assignment(tuple(int(b) for b in x))


def new_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) has an endpoint out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def _from_rows(n: int, adj: list[int]) -> Graph:
    return Graph(n, tuple(adj))


def gen_circulant(n: int, a: int, b: int) -> Graph:
    """CI(n, a, b): ``k ~ l`` iff the circular distance lies in ``[a, b]``."""
    if not (1 <= a <= b and 2 * b <= n):
        raise ValueError(f"need 1 <= a <= b <= n/2, got n={n}, a={a}, b={b}")
    adj = [0] * n
    for k in range(n):
        for d in range(a, b + 1):
            adj[k] |= 1 << ((k + d) % n)
            adj[k] |= 1 << ((k - d) % n)
    return _from_rows(n, adj)


def square_lengths(n: int) -> list[int]:
    """Perfect squares ``j*j`` with ``j >= 1`` and ``j*j <= n/2``."""
    return [j * j for j in range(1, math.isqrt(n // 2) + 1)]


def gen_square_graph(n: int) -> Graph:
    """CS(n): ``k ~ l`` iff ``|k - l|`` is a perfect square not exceeding n/2."""
    if n < 1:
        raise ValueError("CS(n) needs n >= 1")
    adj = [0] * n
    for s in square_lengths(n):
        for k in range(n - s):
            adj[k] |= 1 << (k + s)
            adj[k + s] |= 1 << k
    return _from_rows(n, adj)


def gen_join_empty_complete(n: int) -> Graph:
    """Join of the empty graph on ``0..n-1`` with the clique on ``n..2n-1``."""
    if n < 1:
        raise ValueError("join needs n >= 1")
    left = (1 << n) - 1
    right = left << n
    adj = [right] * n + [(left | right) & ~(1 << v) for v in range(n, 2 * n)]
    return _from_rows(2 * n, adj)


def gen_complete(n: int) -> Graph:
    full = (1 << n) - 1
    return _from_rows(n, [full & ~(1 << v) for v in range(n)])


def gen_empty(n: int) -> Graph:
    return _from_rows(n, [0] * n)


def gen_path(n: int) -> Graph:
    return new_graph(n, [(v, v + 1) for v in range(n - 1)])


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return new_graph(n, [(v, (v + 1) % n) for v in range(n)])


def gen_star(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    return new_graph(leaves + 1, [(0, v) for v in range(1, leaves + 1)])


def gen_random(n: int, p: float, rng) -> Graph:
    """Erdos-Renyi G(n, p) drawn from ``rng`` (a ``random.Random``)."""
    return new_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def has_collision(G: Graph, x: Assignment | Sequence[int] | str) -> bool:
    """Ground truth: some edge has both endpoints set to 1."""
    x = as_assignment(x)
    if len(x) != G.n:
        raise ValueError(f"assignment length {len(x)} != n={G.n}")
    return collides_mask(G, x.mask)


def collides_mask(G: Graph, ones: int) -> bool:
    adj = G.adj
    return any(adj[v] & ones for v in iter_bits(ones))


class EdgeListError(ValueError):
    pass


def write_edge_list(G: Graph) -> str:
    edges = G.edges()
    lines = [f"{G.n} {len(edges)}"]
    lines += [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header plus ``m`` lines of ``u v``.

    Blank lines and lines starting with ``#`` are skipped.
    """
    header = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"line {lineno}: expected two integers, got {raw!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise EdgeListError(f"line {lineno}: negative header value")
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise EdgeListError(f"line {lineno}: endpoint out of range for n={n}")
        if a == b:
            raise EdgeListError(f"line {lineno}: self-loop at {a}")
        edges.append((a, b))
    if header is None:
        raise EdgeListError("missing 'n m' header")
    n, m = header
    if len(edges) != m:
        raise EdgeListError(f"header announces {m} edges, found {len(edges)}")
    return new_graph(n, edges)
