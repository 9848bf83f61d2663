"""Tree decompositions: validation, exact treewidth, smoothing and chunking.

A decomposition is a list of bags (vertex bitmasks) plus tree edges on the
bag indices.  The chunking step walks an Euler tour of a smooth
decomposition and merges consecutive runs of ``t`` bags, which yields
``ceil((2n - 2t - 1) / t)`` vertex sets of size at most ``2t + 1`` such that
every graph edge lies inside one of them.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from gcol.budget import Budget, as_budget
from gcol.cost import CostLedger, grover_cost, subroutine_cost
from gcol.graph import Assignment, Graph, as_assignment, bits_list, iter_bits, mask_of


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[int, ...]
    tree_edges: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_lists(cls, bags, tree_edges=()) -> TreeDecomposition:
        return cls(tuple(mask_of(b) for b in bags), tuple((int(i), int(j)) for i, j in tree_edges))

    @property
    def width(self) -> int:
        return max((b.bit_count() for b in self.bags), default=0) - 1

    def __len__(self) -> int:
        return len(self.bags)

    def bag_lists(self) -> list[list[int]]:
        return [bits_list(b) for b in self.bags]

    def neighbors(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in self.bags]
        for i, j in self.tree_edges:
            nb[i].append(j)
            nb[j].append(i)
        for row in nb:
            row.sort()
        return nb


@dataclass(frozen=True)
class Violation:
    kind: str  # "index", "tree", "coverage", "edge", "connectivity"
    detail: str


def _tree_violations(count: int, edges) -> list[Violation]:
    out = []
    if count == 0:
        return [Violation("tree", "decomposition has no bags")]
    for i, j in edges:
        if not (0 <= i < count and 0 <= j < count) or i == j:
            out.append(Violation("index", f"bad tree edge ({i}, {j})"))
    if out:
        return out
    if len(edges) != count - 1:
        out.append(Violation("tree", f"{len(edges)} tree edges for {count} bags"))
    parent = list(range(count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri == rj:
            out.append(Violation("tree", f"tree edge ({i}, {j}) closes a cycle"))
        parent[ri] = rj
    roots = {find(i) for i in range(count)}
    if len(roots) > 1:
        out.append(Violation("tree", f"tree has {len(roots)} components"))
    return out


def validate_decomposition(G: Graph, D: TreeDecomposition) -> list[Violation]:
    """Every failed condition of the tree-decomposition definition."""
    out = _tree_violations(len(D.bags), D.tree_edges)
    if any(v.kind == "index" for v in out):
        return out
    union = 0
    for i, bag in enumerate(D.bags):
        if bag & ~G.full:
            out.append(Violation("index", f"bag {i} holds a vertex >= n"))
        union |= bag
    missing = G.full & ~union
    if missing:
        out.append(Violation("coverage", f"vertices {bits_list(missing)} are in no bag"))
    for u, v in G.edges():
        pair = (1 << u) | (1 << v)
        if not any(bag & pair == pair for bag in D.bags):
            out.append(Violation("edge", f"edge ({u}, {v}) lies in no bag"))
    nbrs = D.neighbors()
    for v in range(G.n):
        holders = [i for i, bag in enumerate(D.bags) if bag >> v & 1]
        if len(holders) <= 1:
            continue
        seen = {holders[0]}
        stack = [holders[0]]
        while stack:
            i = stack.pop()
            for j in nbrs[i]:
                if j not in seen and D.bags[j] >> v & 1:
                    seen.add(j)
                    stack.append(j)
        if len(seen) != len(holders):
            out.append(Violation("connectivity", f"bags holding vertex {v} are not connected: {holders}"))
    return out


def is_valid(G: Graph, D: TreeDecomposition) -> bool:
    return not validate_decomposition(G, D)


def is_smooth(D: TreeDecomposition) -> bool:
    k = D.width
    if any(b.bit_count() != k + 1 for b in D.bags):
        return False
    return all((D.bags[i] & D.bags[j]).bit_count() == k for i, j in D.tree_edges)


# -- elimination orderings --------------------------------------------------


def _reach_outside(adj, S: int, v: int) -> int:
    """Vertices outside ``S + v`` reachable from ``v`` through ``S``."""
    visited = 1 << v
    stack = [v]
    out = 0
    while stack:
        u = stack.pop()
        nb = adj[u] & ~visited
        visited |= nb
        out |= nb & ~S
        for w in iter_bits(nb & S):
            stack.append(w)
    return out & ~(1 << v)


def elimination_width(G: Graph, order) -> int:
    """Width of the elimination ordering (largest higher neighbourhood)."""
    adj = list(G.adj)
    alive = G.full
    width = 0
    for v in order:
        nb = adj[v] & alive & ~(1 << v)
        width = max(width, nb.bit_count())
        for u in iter_bits(nb):
            adj[u] |= nb & ~(1 << u)
        alive &= ~(1 << v)
    return width


def min_fill_order(G: Graph) -> list[int]:
    """Greedy min-fill elimination ordering, ties broken by degree then label."""
    adj = list(G.adj)
    alive = G.full
    order = []
    while alive:
        best = None
        for v in iter_bits(alive):
            nb = adj[v] & alive
            fill = 0
            for u in iter_bits(nb):
                fill += (nb & ~adj[u] & ~(1 << u)).bit_count()
            key = (fill // 2, nb.bit_count(), v)
            if best is None or key < best:
                best = key
        v = best[2]
        nb = adj[v] & alive
        for u in iter_bits(nb):
            adj[u] |= nb & ~(1 << u)
        alive &= ~(1 << v)
        order.append(v)
    return order


def decomposition_from_order(G: Graph, order) -> TreeDecomposition:
    """Bag per vertex: itself plus its higher neighbours in the filled graph."""
    n = G.n
    if n == 0:
        return TreeDecomposition((0,), ())
    pos = {v: i for i, v in enumerate(order)}
    adj = list(G.adj)
    alive = G.full
    bags = []
    parents = []
    for v in order:
        nb = adj[v] & alive & ~(1 << v)
        bags.append(nb | (1 << v))
        parents.append(min((pos[u] for u in iter_bits(nb)), default=None))
        for u in iter_bits(nb):
            adj[u] |= nb & ~(1 << u)
        alive &= ~(1 << v)
    edges = []
    roots = []
    for i, p in enumerate(parents):
        if p is None:
            roots.append(i)
        else:
            edges.append((i, p))
    # components of the graph give separate trees; chain their roots
    for r1, r2 in zip(roots, roots[1:]):
        edges.append((r1, r2))
    return TreeDecomposition(tuple(bags), tuple(edges))


def heuristic_decomposition(G: Graph) -> TreeDecomposition:
    return compress(decomposition_from_order(G, min_fill_order(G)))


def exact_treewidth(G: Graph, budget: Budget | int | None = None) -> tuple[int, TreeDecomposition]:
    """Exact treewidth via dynamic programming over eliminated vertex sets.

    For an eliminated prefix ``S`` the cost of eliminating ``v`` next is the
    number of vertices outside ``S + v`` reachable from ``v`` through ``S``.
    Sets whose best cost already reaches the min-fill upper bound are
    dropped, so the table only holds prefixes that could still win.
    """
    budget = as_budget(budget)
    n = G.n
    if n == 0:
        return -1, TreeDecomposition((0,), ())
    upper_order = min_fill_order(G)
    upper = elimination_width(G, upper_order)
    adj = G.adj
    full = G.full
    level: dict[int, int] = {0: -1}
    back: dict[int, tuple[int, int]] = {}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for S, cost in level.items():
            for v in iter_bits(full & ~S):
                budget.tick()
                q = _reach_outside(adj, S, v).bit_count()
                new = max(cost, q)
                if new >= upper:
                    continue
                T = S | (1 << v)
                old = nxt.get(T)
                if old is None or new < old:
                    nxt[T] = new
                    back[T] = (S, v)
        level = nxt
        if not level:
            break
    if full in level:
        order = []
        T = full
        while T:
            S, v = back[T]
            order.append(v)
            T = S
        order.reverse()
        width = level[full]
    else:
        order, width = upper_order, upper
    D = compress(decomposition_from_order(G, order))
    return width, D


def compress(D: TreeDecomposition) -> TreeDecomposition:
    """Contract tree edges whose one bag is contained in the other."""
    bags = list(D.bags)
    nbrs = defaultdict(set)
    for i, j in D.tree_edges:
        nbrs[i].add(j)
        nbrs[j].add(i)
    alive = set(range(len(bags)))
    changed = True
    while changed:
        changed = False
        for i in sorted(alive):
            for j in sorted(nbrs[i]):
                if bags[i] & ~bags[j] == 0:
                    # absorb i into j
                    for k in nbrs[i]:
                        if k != j:
                            nbrs[k].discard(i)
                            nbrs[k].add(j)
                            nbrs[j].add(k)
                    nbrs[j].discard(i)
                    del nbrs[i]
                    alive.discard(i)
                    changed = True
                    break
            if changed:
                break
    return _reindex(bags, alive, nbrs)


def _reindex(bags, alive, nbrs) -> TreeDecomposition:
    keep = sorted(alive)
    index = {old: new for new, old in enumerate(keep)}
    edges = set()
    for i in keep:
        for j in nbrs.get(i, ()):
            a, b = index[i], index[j]
            edges.add((min(a, b), max(a, b)))
    return TreeDecomposition(tuple(bags[i] for i in keep), tuple(sorted(edges)))


class DecompositionError(ValueError):
    pass


def smooth(G: Graph, D: TreeDecomposition, width: int | None = None) -> TreeDecomposition:
    """Turn a valid decomposition into a smooth one.

    Steps: contract nested neighbouring bags, pad every bag to ``width + 1``
    vertices using vertices of a neighbouring bag, contract again, then
    subdivide every tree edge whose bags share fewer than ``width`` vertices
    with interpolating bags that swap one vertex at a time.  ``width``
    defaults to the width of ``D``; a larger one is allowed up to ``n - 1``.
    """
    problems = validate_decomposition(G, D)
    if problems:
        raise DecompositionError(f"invalid decomposition: {problems[0].detail}")
    k = D.width if width is None else width
    if k < D.width or k > G.n - 1:
        raise DecompositionError(f"cannot smooth width {D.width} to {k} on {G.n} vertices")
    target = k + 1
    D = compress(D)
    if len(D.bags) == 1:
        bag = D.bags[0]
        # a single bag already holds all vertices, so n == k + 1 is forced
        if bag.bit_count() != target:
            raise DecompositionError("single-bag decomposition must hold width + 1 vertices")
        return D
    while True:
        bags = list(D.bags)
        nb = D.neighbors()
        grew = False
        for i in range(len(bags)):
            if bags[i].bit_count() >= target:
                continue
            # pad from the neighbour offering the most new vertices
            j = max(nb[i], key=lambda j: ((bags[j] & ~bags[i]).bit_count(), -j))
            extra = bags[j] & ~bags[i]
            while extra and bags[i].bit_count() < target:
                low = extra & -extra
                bags[i] |= low
                extra ^= low
                grew = True
        D = compress(TreeDecomposition(tuple(bags), D.tree_edges))
        if not grew:
            break
        if len(D.bags) == 1:
            return D
    if any(b.bit_count() != target for b in D.bags):
        raise DecompositionError("padding did not reach uniform bag size")

    bags = list(D.bags)
    edges = []
    for i, j in D.tree_edges:
        a, b = bags[i], bags[j]
        drop = bits_list(a & ~b)
        add = bits_list(b & ~a)
        prev = i
        cur = a
        for s in range(len(drop) - 1):
            cur = (cur & ~(1 << drop[s])) | (1 << add[s])
            bags.append(cur)
            idx = len(bags) - 1
            edges.append((prev, idx))
            prev = idx
        edges.append((prev, j))
    out = TreeDecomposition(tuple(bags), tuple(edges))
    if not is_smooth(out) or len(out.bags) != G.n - k:
        raise AssertionError("smoothing produced a non-smooth decomposition")
    return out


def euler_sequence(D: TreeDecomposition, root: int = 0) -> list[int]:
    """Closed walk from ``root`` traversing every tree edge twice.

    Children are visited in ascending index order.
    """
    if not D.bags:
        raise ValueError("empty decomposition")
    nbrs = D.neighbors()
    seq = [root]
    stack = [(root, -1, iter(nbrs[root]))]
    while stack:
        node, parent, it = stack[-1]
        child = next(it, None)
        if child is None:
            stack.pop()
            if stack:
                seq.append(stack[-1][0])
            continue
        if child == parent:
            continue
        seq.append(child)
        stack.append((child, node, iter(nbrs[child])))
    return seq


@dataclass(frozen=True)
class ChunkCover:
    chunks: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.chunks)

    @property
    def max_size(self) -> int:
        return max((c.bit_count() for c in self.chunks), default=0)

    def chunk_lists(self) -> list[list[int]]:
        return [bits_list(c) for c in self.chunks]

    def covers(self, G: Graph) -> bool:
        for u, v in G.edges():
            pair = (1 << u) | (1 << v)
            if not any(c & pair == pair for c in self.chunks):
                return False
        return True


def chunk_count_bound(n: int, t: int) -> int:
    return max(1, -(-(2 * n - 2 * t - 1) // t))


def chunk_cover(G: Graph, D: TreeDecomposition, t: int | None = None) -> ChunkCover:
    """Union bags along consecutive length-``t`` slices of the Euler tour."""
    if t is None:
        t = D.width
    if t < 1:
        raise DecompositionError("chunking needs width t >= 1; smooth to width 1 first")
    if D.width != t or not is_smooth(D):
        raise DecompositionError(f"chunking needs a smooth decomposition of width {t}")
    seq = euler_sequence(D)
    chunks = []
    for start in range(0, len(seq), t):
        w = 0
        for i in seq[start:start + t]:
            w |= D.bags[i]
        chunks.append(w)
    return ChunkCover(tuple(chunks))


def prepare_chunks(G: Graph, budget: Budget | int | None = None, exact: bool = True) -> tuple[int, TreeDecomposition, ChunkCover]:
    """Full preprocessing: decomposition, smoothing to width >= 1, chunking."""
    if G.n < 2:
        raise DecompositionError("chunking needs at least two vertices")
    if exact:
        _, D = exact_treewidth(G, budget)
    else:
        D = heuristic_decomposition(G)
    t = max(D.width, 1)
    S = smooth(G, D, t)
    return t, S, chunk_cover(G, S, t)


def collision_via_chunks(
    G: Graph,
    x: Assignment,
    W: ChunkCover,
    ledger: CostLedger | None = None,
    check_cover: bool = True,
) -> bool:
    """Search the chunks for one whose induced subgraph has a collision.

    The classical run inspects every chunk; the ledger is charged the
    quantum cost: a Grover search over ``len(W)`` chunks whose subroutine
    costs ``|W_i| ** (2/3)`` on the largest chunk.
    """
    x = as_assignment(x)
    if len(x) != G.n:
        raise ValueError(f"assignment length {len(x)} != n={G.n}")
    if check_cover and not W.covers(G):
        raise DecompositionError("chunk cover misses an edge")
    found = chunks_collide(G.adj, W.chunks, x.mask)
    if ledger is not None:
        inner = max((subroutine_cost(c.bit_count()) for c in W.chunks), default=0.0)
        ledger.charge(f"grover over {len(W)} chunks x |W_i|^(2/3) subroutine", grover_cost(len(W)) * inner)
    return found


def chunks_collide(adj, chunks, ones: int) -> bool:
    for c in chunks:
        live = ones & c
        for v in iter_bits(live):
            if adj[v] & live:
                return True
    return False


# -- text format ------------------------------------------------------------


def write_td(D: TreeDecomposition) -> str:
    lines = [f"s {len(D.bags)} {D.width}"]
    for i, bag in enumerate(D.bags):
        lines.append(" ".join(["b", str(i)] + [str(v) for v in iter_bits(bag)]))
    for i, j in D.tree_edges:
        lines.append(f"e {i} {j}")
    return "\n".join(lines) + "\n"


def parse_td(text: str) -> TreeDecomposition:
    header = None
    bags: dict[int, int] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            nums = [int(p) for p in parts[1:]]
        except ValueError:
            raise DecompositionError(f"line {lineno}: non-integer field in {raw!r}") from None
        tag = parts[0]
        if tag == "s":
            if header is not None:
                raise DecompositionError(f"line {lineno}: duplicate header")
            if len(nums) != 2:
                raise DecompositionError(f"line {lineno}: header is 's <bags> <width>'")
            header = nums
        elif tag == "b":
            if not nums:
                raise DecompositionError(f"line {lineno}: bag line needs an index")
            if nums[0] in bags:
                raise DecompositionError(f"line {lineno}: bag {nums[0]} defined twice")
            if any(v < 0 for v in nums[1:]):
                raise DecompositionError(f"line {lineno}: negative vertex")
            bags[nums[0]] = mask_of(nums[1:])
        elif tag == "e":
            if len(nums) != 2:
                raise DecompositionError(f"line {lineno}: edge line is 'e i j'")
            edges.append((nums[0], nums[1]))
        else:
            raise DecompositionError(f"line {lineno}: unknown line type {tag!r}")
    if header is None:
        raise DecompositionError("missing 's' header")
    count, width = header
    if sorted(bags) != list(range(count)):
        raise DecompositionError(f"expected bags 0..{count - 1}")
    D = TreeDecomposition(tuple(bags[i] for i in range(count)), tuple(edges))
    if D.width != width:
        raise DecompositionError(f"header width {width} but bags give {D.width}")
    return D


def chunk_bounds_hold(n: int, t: int, W: ChunkCover) -> bool:
    return len(W) <= chunk_count_bound(n, t) and W.max_size <= 2 * t + 1

