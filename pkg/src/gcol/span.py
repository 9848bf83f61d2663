"""Span programs over the rationals and the vertex-cover collision program.

A span program accepts ``x`` when its target vector lies in the span of the
vectors whose label ``(i, b)`` agrees with ``x[i] == b``.  Everything here is
exact: membership, minimum-norm positive witnesses and negative-witness
certificates use :class:`fractions.Fraction` and no tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import NamedTuple, Sequence

from gcol.budget import Budget, as_budget
from gcol.graph import Assignment, Graph, as_assignment, bits_list, collides_mask
from gcol.params import alpha_star_star

Vector = tuple[Fraction, ...]


class SpanProgramError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledVector:
    index: int
    bit: int
    vec: Vector


@dataclass(frozen=True)
class SpanProgram:
    dim: int
    n_inputs: int
    target: Vector
    vectors: tuple[LabeledVector, ...]

    def __post_init__(self):
        if len(self.target) != self.dim:
            raise SpanProgramError("target length differs from dim")
        for lv in self.vectors:
            if len(lv.vec) != self.dim:
                raise SpanProgramError("program vector length differs from dim")
            if not 0 <= lv.index < self.n_inputs or lv.bit not in (0, 1):
                raise SpanProgramError(f"bad label ({lv.index}, {lv.bit})")

    def available_indices(self, x: Assignment) -> list[int]:
        x = as_assignment(x)
        if len(x) != self.n_inputs:
            raise SpanProgramError(f"assignment length {len(x)} != {self.n_inputs} inputs")
        bits = x.bits
        return [k for k, lv in enumerate(self.vectors) if bits[lv.index] == lv.bit]


def vec(*entries) -> Vector:
    return tuple(Fraction(e) for e in entries)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


# -- exact linear algebra ---------------------------------------------------


def _reduce(basis: dict[int, list[Fraction]], row: list[Fraction]) -> list[Fraction]:
    """Reduce ``row`` against an echelon basis keyed by pivot column."""
    for col, b in basis.items():
        c = row[col]
        if c:
            for k in range(len(row)):
                if b[k]:
                    row[k] -= c * b[k]
    return row


def _insert(basis: dict[int, list[Fraction]], row: list[Fraction]) -> bool:
    row = _reduce(basis, row)
    pivot = next((k for k, c in enumerate(row) if c), None)
    if pivot is None:
        return False
    p = row[pivot]
    row = [c / p for c in row]
    # keep the basis fully reduced so _reduce can work column by column
    for b in basis.values():
        c = b[pivot]
        if c:
            for k in range(len(b)):
                if row[k]:
                    b[k] -= c * row[k]
    basis[pivot] = row
    return True


def in_span(vectors: Sequence[Vector], target: Vector) -> bool:
    return _in_span(frozenset(vectors), target)


@lru_cache(maxsize=1 << 16)
def _in_span(vectors: frozenset[Vector], target: Vector) -> bool:
    # memoized: exhaustive sweeps evaluate the same few vector sets many times
    basis: dict[int, list[Fraction]] = {}
    for v in vectors:
        _insert(basis, list(v))
    return not any(_reduce(basis, list(target)))


def solve_any(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Some solution of ``A y = b`` by Gauss-Jordan elimination, or None."""
    rows = len(A)
    cols = len(A[0]) if A else 0
    M = [list(A[r]) + [b[r]] for r in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        p = M[r][c]
        M[r] = [e / p for e in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [e - f * g for e, g in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if any(M[i][cols] for i in range(r, rows)):
        return None
    y = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        y[c] = M[i][cols]
    return y


# -- generic span-program operations ----------------------------------------


def available_vectors(P: SpanProgram, x: Assignment) -> list[Vector]:
    return [P.vectors[k].vec for k in P.available_indices(x)]


def evaluate(P: SpanProgram, x: Assignment) -> bool:
    """True iff the target lies in the span of the available vectors."""
    return in_span(available_vectors(P, x), P.target)


@dataclass(frozen=True)
class PositiveWitness:
    coefficients: tuple[tuple[int, Fraction], ...]  # (program vector index, weight)
    norm_sq: Fraction

    def combination(self, P: SpanProgram) -> Vector:
        total = [Fraction(0)] * P.dim
        for k, w in self.coefficients:
            for j, e in enumerate(P.vectors[k].vec):
                total[j] += w * e
        return tuple(total)

    def certifies(self, P: SpanProgram, x: Assignment) -> bool:
        avail = set(P.available_indices(x))
        if any(k not in avail for k, _ in self.coefficients):
            return False
        if self.norm_sq != sum((w * w for _, w in self.coefficients), Fraction(0)):
            return False
        return self.combination(P) == P.target


def min_positive_witness(P: SpanProgram, x: Assignment) -> PositiveWitness:
    """Minimum-norm coefficients reproducing the target from available vectors.

    With the available vectors as the columns of ``A`` the minimum-norm
    solution of ``A w = t`` is ``A^T y`` for any ``y`` solving
    ``A A^T y = t``.
    """
    idx = P.available_indices(x)
    cols = [P.vectors[k].vec for k in idx]
    gram = [[sum((c[i] * c[j] for c in cols), Fraction(0)) for j in range(P.dim)] for i in range(P.dim)]
    y = solve_any(gram, list(P.target))
    if y is None:
        raise SpanProgramError("target is not spanned: x is a 0-input of this program")
    coeffs = tuple((k, dot(c, y)) for k, c in zip(idx, cols))
    norm_sq = sum((w * w for _, w in coeffs), Fraction(0))
    w = PositiveWitness(coeffs, norm_sq)
    if w.combination(P) != P.target:
        raise AssertionError("normal-equation solution does not reproduce the target")
    return w


@dataclass(frozen=True)
class NegativeWitness:
    w: Vector
    size: Fraction


def negative_witness_size(P: SpanProgram, w: Sequence[Fraction]) -> Fraction:
    """Sum of squared overlaps of ``w`` with every program vector."""
    return sum((dot(lv.vec, w) ** 2 for lv in P.vectors), Fraction(0))


def check_negative_witness(P: SpanProgram, x: Assignment, w: Sequence[Fraction]) -> list[str]:
    """Empty list iff ``w`` is a negative witness for ``x``."""
    problems = []
    if dot(P.target, w) != 1:
        problems.append(f"<t|w> = {dot(P.target, w)}, expected 1")
    for k in P.available_indices(x):
        ov = dot(P.vectors[k].vec, w)
        if ov:
            problems.append(f"available vector {k} has overlap {ov}")
    return problems


# -- the vertex-cover program for graph collision ---------------------------


@dataclass(frozen=True)
class ColProgram:
    """The collision program plus the basis bookkeeping used to build it."""

    program: SpanProgram
    cover: tuple[int, ...]  # basis position p + 1 holds vertex cover[p]

    def basis_index(self, v: int) -> int:
        return self.cover.index(v) + 1


def build_col_program(G: Graph, VC: int | Sequence[int]) -> SpanProgram:
    return build_col(G, VC).program


def build_col(G: Graph, VC: int | Sequence[int]) -> ColProgram:
    """Basis ``|0>`` plus ``|v>`` for each cover vertex; target ``|0>``.

    For each ``v`` in the cover: ``|0> - |v>`` labelled ``(v, 1)``; then, for
    each cover vertex ``v`` and each neighbour ``u`` of ``v``, a copy of
    ``|v>`` labelled ``(u, 1)``.
    """
    mask = VC if isinstance(VC, int) else sum(1 << v for v in set(VC))
    if mask & ~G.full:
        raise SpanProgramError("cover holds a vertex >= n")
    if not G.is_vertex_cover(mask):
        raise SpanProgramError("the given vertex set is not a vertex cover")
    cover = tuple(bits_list(mask))
    dim = len(cover) + 1
    one, zero = Fraction(1), Fraction(0)

    def unit(p: int) -> list[Fraction]:
        e = [zero] * dim
        e[p] = one
        return e

    vectors = []
    for p, v in enumerate(cover, 1):
        e = unit(0)
        e[p] = -one
        vectors.append(LabeledVector(v, 1, tuple(e)))
    for p, v in enumerate(cover, 1):
        e = tuple(unit(p))
        for u in G.neighbors(v):
            vectors.append(LabeledVector(u, 1, e))
    program = SpanProgram(dim, G.n, tuple(unit(0)), tuple(vectors))
    return ColProgram(program, cover)


def col_negative_witness(G: Graph, VC: int | Sequence[int], x: Assignment) -> NegativeWitness:
    """``w = |0> + sum of |v>`` over cover vertices with ``x_v = 1``."""
    x = as_assignment(x)
    if len(x) != G.n:
        raise SpanProgramError(f"assignment length {len(x)} != n={G.n}")
    if collides_mask(G, x.mask):
        raise SpanProgramError("x has a collision, so no negative witness exists")
    col = build_col(G, VC)
    P = col.program
    w = [Fraction(0)] * P.dim
    w[0] = Fraction(1)
    for p, v in enumerate(col.cover, 1):
        if x[v]:
            w[p] = Fraction(1)
    w = tuple(w)
    problems = check_negative_witness(P, x, w)
    if problems:
        raise AssertionError("constructed negative witness fails: " + "; ".join(problems))
    return NegativeWitness(w, negative_witness_size(P, w))


class WsizeReport(NamedTuple):
    wsize1_bound: int
    wsize0_bound: int
    query_bound: float
    alpha_star_star: int
    cover: int


def wsize_report(G: Graph, budget: Budget | int | None = None) -> WsizeReport:
    """Certified witness-size bounds for the program on an optimal cover."""
    a_ss, cover = alpha_star_star(G, as_budget(budget))
    w0 = G.n + a_ss
    return WsizeReport(2, w0, math.sqrt(2 * w0), a_ss, cover)


# -- text dump ---------------------------------------------------------------


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def dump_program(P: SpanProgram) -> str:
    lines = [f"{P.dim} {P.n_inputs}", " ".join(_fmt(q) for q in P.target)]
    for lv in P.vectors:
        lines.append(" ".join([str(lv.index), str(lv.bit)] + [_fmt(q) for q in lv.vec]))
    return "\n".join(lines) + "\n"


def parse_program(text: str) -> SpanProgram:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) < 2:
        raise SpanProgramError("program dump needs a header and a target row")
    try:
        dim, n_inputs = (int(t) for t in lines[0])
        target = tuple(Fraction(t) for t in lines[1])
        vectors = []
        for parts in lines[2:]:
            i, b = int(parts[0]), int(parts[1])
            vectors.append(LabeledVector(i, b, tuple(Fraction(t) for t in parts[2:])))
    except (ValueError, ZeroDivisionError) as exc:
        raise SpanProgramError(f"malformed program dump: {exc}") from None
    return SpanProgram(dim, n_inputs, target, tuple(vectors))
