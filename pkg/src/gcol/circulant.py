"""Collision detection on CI(n, a, b) with O(sqrt(n)) charged queries.

Vertices are split into consecutive chunks of ``b - a`` labels.  For one
chunk, let ``r`` and ``l`` be its smallest and largest 1-vertices.  Every
vertex at forward distance ``a..b`` from some chunk 1-vertex lies on the arc
``[r + a, l + b]`` (mod n), and every 1-vertex on that arc is at forward
distance ``a..b`` from ``r`` or from ``l``.  So a chunk has a forward
collision iff the arc holds a 1, and since every edge is forward from one
of its endpoints, scanning all chunks decides the whole problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import sqrt
from typing import NamedTuple

from gcol.cost import CostLedger, grover_cost, min_find_cost
from gcol.graph import Assignment, as_assignment


class Chunk(NamedTuple):
    start: int
    len: int

    @property
    def mask(self) -> int:
        return ((1 << self.len) - 1) << self.start


class Window(NamedTuple):
    u: int
    v: int

    def size(self, n: int) -> int:
        return (self.v - self.u) % n + 1

    def mask(self, n: int) -> int:
        return arc_mask(n, self.u, self.size(n))

    def contains(self, n: int, s: int) -> bool:
        return (s - self.u) % n < self.size(n)


def arc_mask(n: int, start: int, length: int) -> int:
    """Bitmask of ``start, start+1, ..., start+length-1`` taken mod n."""
    run = (1 << length) - 1
    full = (1 << n) - 1
    return ((run << start) | (run >> (n - start))) & full


def check_params(n: int, a: int, b: int) -> None:
    if not (1 <= a <= b and 2 * b <= n):
        raise ValueError(f"need 1 <= a <= b <= n/2, got n={n}, a={a}, b={b}")


def chunk_size(a: int, b: int) -> int:
    # a == b would give empty chunks
    return max(b - a, 1)


def make_chunks(n: int, a: int, b: int) -> list[Chunk]:
    check_params(n, a, b)
    size = chunk_size(a, b)
    return [Chunk(k, min(size, n - k)) for k in range(0, n, size)]


def forward_mask(n: int, a: int, b: int, m: int) -> int:
    """Vertices at forward (increasing-label) distance ``a..b`` from ``m``."""
    return arc_mask(n, (m + a) % n, b - a + 1)


def sub_window(chunk: Chunk, x: Assignment | int, n: int, a: int, b: int) -> Window | None:
    ones = _mask(x, n) >> chunk.start & ((1 << chunk.len) - 1)
    if not ones:
        return None
    r = chunk.start + (ones & -ones).bit_length() - 1
    l = chunk.start + ones.bit_length() - 1
    return Window((r + a) % n, (l + b) % n)


@dataclass
class SubResult:
    found: bool
    window: Window | None
    cost: float


def sub(chunk: Chunk, x: Assignment | int, n: int, a: int, b: int, ledger: CostLedger | None = None) -> bool:
    """Does some 1-vertex of the chunk have a forward partner that is also 1?"""
    res = _sub(chunk, _mask(x, n), n, a, b)
    if ledger is not None:
        ledger.charge(f"SUB chunk@{chunk.start}", res.cost)
    return res.found


def _sub(chunk: Chunk, ones: int, n: int, a: int, b: int) -> SubResult:
    local = ones >> chunk.start & ((1 << chunk.len) - 1)
    find = min_find_cost(chunk.len)
    if not local:
        return SubResult(False, None, find)
    r = chunk.start + (local & -local).bit_length() - 1
    l = chunk.start + local.bit_length() - 1
    win = Window((r + a) % n, (l + b) % n)
    size = (l + b) - (r + a) + 1
    found = bool(ones & arc_mask(n, win.u, size))
    return SubResult(found, win, 2 * find + grover_cost(size))


def worst_sub_cost(n: int, a: int, b: int) -> float:
    """Largest cost any single SUB call can be charged."""
    size = chunk_size(a, b)
    return 2 * min_find_cost(size) + grover_cost(size - 1 + b - a + 1)


def _mask(x: Assignment | int, n: int) -> int:
    if isinstance(x, int):
        if x >> n:
            raise ValueError("assignment mask has bits >= n")
        return x
    x = as_assignment(x)
    if len(x) != n:
        raise ValueError(f"assignment length {len(x)} != n={n}")
    return x.mask


def col_ci(n: int, a: int, b: int, x: Assignment | int) -> tuple[bool, CostLedger]:
    """Run SUB on every chunk; charge sqrt(#chunks) times the dearest SUB."""
    chunks = _chunk_table(n, a, b)
    ones = _mask(x, n)
    full = (1 << n) - 1
    found = False
    worst = 0.0
    # same arithmetic as _sub, inlined: this is the hot loop of the exhaustive checks
    for start, length, low, find in chunks:
        local = ones >> start & low
        if not local:
            cost = find
        else:
            r = start + (local & -local).bit_length() - 1
            size = local.bit_length() + start - 1 + b - r - a + 1
            u = (r + a) % n
            run = (1 << size) - 1
            if not found and ones & ((run << u) | (run >> (n - u))) & full:
                found = True
            cost = 2 * find + sqrt(size)
        if cost > worst:
            worst = cost
    ledger = CostLedger()
    ledger.charge(f"grover over {len(chunks)} chunks x SUB (max {worst:.4f})", grover_cost(len(chunks)) * worst)
    return found, ledger


@lru_cache(maxsize=256)
def _chunk_table(n: int, a: int, b: int) -> tuple[tuple[int, int, int, float], ...]:
    return tuple((c.start, c.len, (1 << c.len) - 1, min_find_cost(c.len)) for c in make_chunks(n, a, b))


def col_ci_answer(n: int, chunks: list[Chunk], a: int, b: int, ones: int) -> bool:
    """Answer only, stopping at the first chunk that reports a collision."""
    for ch in chunks:
        local = ones >> ch.start & ((1 << ch.len) - 1)
        if not local:
            continue
        r = ch.start + (local & -local).bit_length() - 1
        l = ch.start + local.bit_length() - 1
        if ones & arc_mask(n, (r + a) % n, l + b - r - a + 1):
            return True
    return False


class CostRow(NamedTuple):
    n: int
    a: int
    b: int
    chunk_count: int
    worst_sub_cost: float
    total_cost: float
    ratio: float

    HEADER = ("n", "a", "b", "chunk_count", "worst_sub_cost", "total_cost", "total_cost/sqrt(n)")


def cost_row(n: int, a: int, b: int) -> CostRow:
    """Charged cost on the all-ones input, where every SUB pays in full."""
    _, ledger = col_ci(n, a, b, (1 << n) - 1)
    chunks = len(make_chunks(n, a, b))
    total = ledger.total
    return CostRow(n, a, b, chunks, worst_sub_cost(n, a, b), total, total / n ** 0.5)
