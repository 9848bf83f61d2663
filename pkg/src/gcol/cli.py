"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 budget exceeded, 4 internal
invariant violation (an algorithm disagreed with the brute-force oracle).
"""

from __future__ import annotations

import argparse
import ast
import csv
import io
import logging
import math
import operator
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from gcol import circulant, params, span, treedecomp
from gcol.budget import Budget, BudgetExceeded
from gcol.compare import BoundRow, compare_bounds
from gcol.cost import CostLedger
from gcol.graph import (
    Assignment,
    EdgeListError,
    Graph,
    gen_circulant,
    gen_complete,
    gen_cycle,
    gen_empty,
    gen_join_empty_complete,
    gen_path,
    gen_square_graph,
    gen_star,
    has_collision,
    parse_edge_list,
    write_edge_list,
)

log = logging.getLogger("gcol")

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INVARIANT = 0, 2, 3, 4


class InvariantViolation(RuntimeError):
    pass


class PartialOutput(BudgetExceeded):
    """Budget ran out part-way; whatever was produced has been written."""


GENERATORS = {
    "cs": (gen_square_graph, 1),
    "ci": (gen_circulant, 3),
    "join": (gen_join_empty_complete, 1),
    "star": (gen_star, 1),
    "path": (gen_path, 1),
    "cycle": (gen_cycle, 1),
    "complete": (gen_complete, 1),
    "empty": (gen_empty, 1),
}


# -- safe parameter expressions ------------------------------------------------

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Div: operator.floordiv,
    ast.Mod: operator.mod,
    ast.Pow: operator.pow,
}
_FUNCS = {"min": min, "max": max, "isqrt": math.isqrt}


def eval_param(expr: str, n: int) -> int:
    """Evaluate an integer expression in ``n`` such as ``n//10`` or ``max(1, n/5)``.

    ``/`` is floor division so results stay integral.
    """

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name) and node.id == "n":
            return n
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCS
            and not node.keywords
        ):
            return _FUNCS[node.func.id](*(ev(a) for a in node.args))
        raise ValueError(f"unsupported expression element in {expr!r}")

    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError:
        raise ValueError(f"cannot parse expression {expr!r}") from None
    return int(ev(tree))


def parse_range(text: str) -> list[int]:
    """``"75"`` -> [75]; ``"10:20"`` -> 10..20; ``"100,1000"`` -> list."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ":" in part:
            lo, hi = (int(p) for p in part.split(":", 1))
            out.extend(range(lo, hi + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise ValueError(f"empty range {text!r}")
    return out


@dataclass
class SweepConfig:
    family: str
    ns: list[int]
    a_expr: str = "n//10"
    b_expr: str = "n//5"
    out: str | None = None
    budget: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.family not in ("cs", "ci", "join", "file"):
            raise ValueError(f"unknown family {self.family!r}")
        if not self.ns:
            raise ValueError("sweep range is empty")
        if self.budget is not None and self.budget <= 0:
            raise ValueError("budget must be positive")

    def ab(self, n: int) -> tuple[int, int]:
        return eval_param(self.a_expr, n), eval_param(self.b_expr, n)

    def graph(self, n: int) -> Graph:
        if self.family == "cs":
            return gen_square_graph(n)
        if self.family == "join":
            return gen_join_empty_complete(n)
        if self.family == "ci":
            return gen_circulant(n, *self.ab(n))
        raise ValueError("the 'file' family has no generator")


# -- I/O helpers -------------------------------------------------------------


def read_graph(path: str) -> Graph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_edge_list(text)


def emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def table(header, rows, fmt: str) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="\t" if fmt == "tsv" else ",", lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([f"{v:.6f}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def parse_assignment(args, n: int) -> Assignment | None:
    if getattr(args, "x", None) is not None:
        x = Assignment.from_string(args.x)
    elif getattr(args, "ones", None) is not None:
        ones = [int(v) for v in args.ones.split(",") if v.strip()]
        x = Assignment.from_ones(n, ones)
    else:
        return None
    if len(x) != n:
        raise ValueError(f"assignment has {len(x)} bits but the graph has {n} vertices")
    return x


def parse_vertex_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def detect_circulant(G: Graph) -> tuple[int, int] | None:
    """(a, b) if ``G`` equals some CI(n, a, b), else None."""
    n = G.n
    if n < 2 or not G.adj[0]:
        return None
    dists = sorted({min(v, n - v) for v in G.neighbors(0)})
    a, b = dists[0], dists[-1]
    if 2 * b > n or dists != list(range(a, b + 1)):
        return None
    return (a, b) if gen_circulant(n, a, b) == G else None


# -- subcommands ---------------------------------------------------------------


def cmd_gen(args) -> int:
    fn, arity = GENERATORS[args.family]
    if len(args.params) != arity:
        raise ValueError(f"'{args.family}' takes {arity} integer parameter(s)")
    emit(write_edge_list(fn(*args.params)), args.out)
    return EXIT_OK


def cmd_params(args) -> int:
    G = read_graph(args.graph)
    report = params.param_report(G, Budget(args.budget))
    text = table(params.ParamReport.CSV_HEADER, [report.csv_row()], args.format)
    emit(text, args.out)
    return EXIT_OK


def _decomposition(args, G: Graph) -> treedecomp.TreeDecomposition:
    if getattr(args, "td", None):
        D = treedecomp.parse_td(Path(args.td).read_text())
        problems = treedecomp.validate_decomposition(G, D)
        if problems:
            raise treedecomp.DecompositionError("; ".join(p.detail for p in problems))
        return D
    if getattr(args, "heuristic", False):
        return treedecomp.heuristic_decomposition(G)
    return treedecomp.exact_treewidth(G, Budget(args.budget))[1]


def cmd_treewidth(args) -> int:
    G = read_graph(args.graph)
    D = _decomposition(args, G)
    if treedecomp.validate_decomposition(G, D):
        raise InvariantViolation("computed decomposition failed validation")
    emit(treedecomp.write_td(D), args.out)
    return EXIT_OK


def cmd_smooth(args) -> int:
    G = read_graph(args.graph)
    D = _decomposition(args, G)
    width = args.width if args.width is not None else max(D.width, 1 if G.n > 1 else 0)
    S = treedecomp.smooth(G, D, width)
    emit(treedecomp.write_td(S), args.out)
    return EXIT_OK


def cmd_chunks(args) -> int:
    G = read_graph(args.graph)
    D = _decomposition(args, G)
    t = max(D.width, 1)
    S = treedecomp.smooth(G, D, t)
    W = treedecomp.chunk_cover(G, S, t)
    if not W.covers(G) or not treedecomp.chunk_bounds_hold(G.n, t, W):
        raise InvariantViolation("chunk cover breaks the count/size/coverage guarantees")
    lines = [f"# t={t} chunks={len(W)} bound={treedecomp.chunk_count_bound(G.n, t)} max_size={W.max_size}"]
    lines += [" ".join(map(str, c)) for c in W.chunk_lists()]
    emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cover(args, G: Graph) -> int:
    if args.vc in (None, "optimal"):
        return params.alpha_star_star(G, Budget(args.budget))[1]
    if args.vc == "all":
        return G.full
    return sum(1 << v for v in parse_vertex_list(args.vc))


def cmd_span(args) -> int:
    G = read_graph(args.graph)
    VC = _cover(args, G)
    P = span.build_col_program(G, VC)
    x = parse_assignment(args, G.n)
    if x is None or args.dump:
        emit(span.dump_program(P), args.out if x is None else None)
        if x is None:
            return EXIT_OK
    emit(_span_report(G, VC, P, x), args.out)
    return EXIT_OK


def _span_report(G, VC, P, x) -> str:
    accepted = span.evaluate(P, x)
    if accepted != has_collision(G, x):
        raise InvariantViolation("span program disagrees with the collision oracle")
    lines = [f"cover: {sorted(v for v in range(G.n) if VC >> v & 1)}", f"accepts: {accepted}"]
    if accepted:
        w = span.min_positive_witness(P, x)
        lines.append(f"positive witness norm^2: {w.norm_sq}")
        lines += [f"  vector {k}: {c}" for k, c in w.coefficients if c]
    else:
        nw = span.col_negative_witness(G, VC, x)
        lines.append(f"negative witness: {' '.join(str(q) for q in nw.w)}")
        lines.append(f"negative witness size: {nw.size}")
    return "\n".join(lines) + "\n"


def cmd_ci(args) -> int:
    cfg = SweepConfig("ci", parse_range(args.n), args.a, args.b, args.out, args.budget)
    rows = []
    for n in cfg.ns:
        a, b = cfg.ab(n)
        rows.append(tuple(circulant.cost_row(n, a, b)))
    emit(table(circulant.CostRow.HEADER, rows, args.format), args.out)
    return EXIT_OK


def cmd_run(args) -> int:
    if args.ci is not None:
        n, a, b = args.ci
        G = gen_circulant(n, a, b)
    elif args.graph is not None:
        G = read_graph(args.graph)
    else:
        raise ValueError("give a graph file or --ci N A B")
    x = parse_assignment(args, G.n)
    if x is None:
        rng = random.Random(args.seed)
        xs = [Assignment.from_mask(G.n, rng.getrandbits(G.n)) for _ in range(args.samples)]
    else:
        xs = [x]
    out = []
    for x in xs:
        answer, ledger, extra = _run_one(args.algorithm, G, x, args)
        truth = has_collision(G, x)
        if answer != truth:
            raise InvariantViolation(f"{args.algorithm} answered {answer} but the oracle says {truth} on x={x}")
        out.append(f"x={x} collision={answer}")
        out += ["  " + line for line in ledger.format().splitlines()]
        out += ["  " + line for line in extra]
    emit("\n".join(out) + "\n", args.out)
    return EXIT_OK


def _run_one(algorithm: str, G: Graph, x: Assignment, args) -> tuple[bool, CostLedger, list[str]]:
    ledger = CostLedger()
    if algorithm == "tw":
        t, _, W = treedecomp.prepare_chunks(G, Budget(args.budget), exact=G.n <= 20)
        found = treedecomp.collision_via_chunks(G, x, W, ledger)
        return found, ledger, [f"t={t} chunks={len(W)} max_chunk={W.max_size}"]
    if algorithm == "span":
        VC = params.alpha_star_star(G, Budget(args.budget))[1]
        P = span.build_col_program(G, VC)
        report = _span_report(G, VC, P, x).splitlines()
        found = span.evaluate(P, x)
        wr = span.wsize_report(G, Budget(args.budget))
        ledger.charge("span program witness size sqrt(wsize0 * wsize1)", math.sqrt(wr.wsize0_bound * wr.wsize1_bound))
        return found, ledger, report
    if algorithm == "ci":
        ab = detect_circulant(G)
        if ab is None:
            raise ValueError("the ci algorithm needs a circulant graph CI(n, a, b)")
        found, led = circulant.col_ci(G.n, *ab, x)
        return found, led, [f"a={ab[0]} b={ab[1]} chunks={len(circulant.make_chunks(G.n, *ab))}"]
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _alpha_cs(job: tuple[int, int | None]) -> int:
    n, budget = job
    return params.independence_number(gen_square_graph(n), Budget(budget))


GNUPLOT = """set terminal pngcairo size 800,560
set output '{png}'
set xlabel 'n'
set ylabel 'alpha(CS(n))'
set xrange [0:80]
set yrange [0:*]
set key off
plot '{dat}' using 1:2 with points pointtype 7
"""


def cmd_sweep_cs(args) -> int:
    cfg = SweepConfig("cs", list(range(1, args.n_max + 1)), out=args.out, budget=args.budget)
    rows = []
    failure = None
    jobs = [(n, cfg.budget) for n in cfg.ns]
    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                for n, alpha in zip(cfg.ns, pool.map(_alpha_cs, jobs)):
                    rows.append((n, alpha))
        else:
            for job in jobs:
                rows.append((job[0], _alpha_cs(job)))
    except BudgetExceeded as exc:
        failure = exc
    emit(table(("n", "alpha"), rows, args.format), cfg.out)
    if cfg.out and cfg.out != "-":
        base = Path(cfg.out).with_suffix("")
        dat = base.with_suffix(".dat")
        dat.write_text("".join(f"{n} {a}\n" for n, a in rows))
        base.with_suffix(".gp").write_text(GNUPLOT.format(png=base.with_suffix(".png").name, dat=dat.name))
    if failure is not None:
        done = rows[-1][0] if rows else 0
        raise PartialOutput(f"stopped after n={done}: {failure}")
    return EXIT_OK


def cmd_compare(args) -> int:
    graphs: list[tuple[str, Graph]] = []
    for path in args.graphs:
        graphs.append((Path(path).stem, read_graph(path)))
    if args.family:
        cfg = SweepConfig(args.family, parse_range(args.n), args.a, args.b)
        for n in cfg.ns:
            graphs.append((f"{args.family}{n}", cfg.graph(n)))
    if not graphs:
        raise ValueError("nothing to compare: give graph files or --family")
    rows = [compare_bounds(G, gid, Budget(args.budget)).as_tuple() for gid, G in graphs]
    emit(table(BoundRow.HEADER, rows, args.format), args.out)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None, help="node-expansion budget (env GCOL_BUDGET)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "tsv"), default="csv")
    common.add_argument("-v", "--verbose", action="store_true")

    def assignment_flags(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--x", help="assignment as a bitstring, e.g. 0101")
        g.add_argument("--ones", help="comma-separated vertices set to 1")

    parser = argparse.ArgumentParser(prog="gcol", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a generated graph as an edge list")
    p.add_argument("family", choices=sorted(GENERATORS))
    p.add_argument("params", type=int, nargs="*")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("params", parents=[common], help="alpha, alpha*, alpha** of a graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_params)

    for name, func, text in (
        ("treewidth", cmd_treewidth, "tree decomposition (exact by default)"),
        ("smooth", cmd_smooth, "smooth tree decomposition"),
        ("chunks", cmd_chunks, "vertex chunks covering every edge"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("graph")
        p.add_argument("--td", help="read the decomposition from this file instead")
        p.add_argument("--heuristic", action="store_true", help="min-fill instead of exact")
        if name == "smooth":
            p.add_argument("--width", type=int, default=None)
        p.set_defaults(func=func)

    p = sub.add_parser("span", parents=[common], help="collision span program; dump or evaluate")
    p.add_argument("graph")
    p.add_argument("--vc", default="optimal", help="'optimal', 'all' or a comma-separated cover")
    p.add_argument("--dump", action="store_true", help="also print the program")
    assignment_flags(p)
    p.set_defaults(func=cmd_span)

    p = sub.add_parser("ci", parents=[common], help="cost table of the circulant algorithm")
    p.add_argument("--n", default="100,1000,10000", help="list or range of n, e.g. 100,1000 or 10:20")
    p.add_argument("--a", default="n//10", help="expression in n")
    p.add_argument("--b", default="n//5", help="expression in n")
    p.set_defaults(func=cmd_ci)

    p = sub.add_parser("run", parents=[common], help="run an algorithm and print its cost trace")
    p.add_argument("algorithm", choices=("tw", "span", "ci"))
    p.add_argument("graph", nargs="?")
    p.add_argument("--ci", type=int, nargs=3, metavar=("N", "A", "B"))
    p.add_argument("--samples", type=int, default=5, help="random inputs when no assignment is given")
    assignment_flags(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep-cs", parents=[common], help="alpha(CS(n)) for n = 1..n_max")
    p.add_argument("--n-max", type=int, default=75)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep_cs)

    p = sub.add_parser("compare", parents=[common], help="table of query bounds")
    p.add_argument("graphs", nargs="*")
    p.add_argument("--family", choices=("cs", "ci", "join"))
    p.add_argument("--n", default="10:20")
    p.add_argument("--a", default="n//10")
    p.add_argument("--b", default="n//5")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"gcol: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvariantViolation, AssertionError) as exc:
        print(f"gcol: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ValueError, OSError, EdgeListError) as exc:
        print(f"gcol: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
