"""Command-line entry point: ``kneser-tw <verb> [options]``.

Results go to stdout (tab-separated where tabular), diagnostics to stderr.
Exit status: 0 success, 1 failed verdict, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys
from contextlib import contextmanager
from fractions import Fraction

from . import ekr, exact, formats, report, separators, setsys, treedec
from .graph import Graph
from .kneser import KneserGraph, KneserParams, build
from .setsys import BudgetExceeded, KSet

log = logging.getLogger("kneser_tw")

EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected <num>/<den>, got {text!r}") from None


@contextmanager
def _open_out(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as f:
            yield f


def _graph(args) -> Graph:
    if getattr(args, "input", None):
        with open(args.input) as f:
            return formats.read_gr(f)
    if args.n is None or args.k is None:
        raise UsageError("give --n and --k, or --in <graph.gr>")
    return build(KneserParams(args.n, args.k))


def _kneser(args) -> KneserGraph:
    if args.n is None or args.k is None:
        raise UsageError("this verb needs --n and --k")
    return build(KneserParams(args.n, args.k))


def _read_td(path: str) -> treedec.TreeDecomposition:
    with open(path) as f:
        T, _ = formats.read_td(f)
    return T


def _parse_sets(text: str) -> list[KSet]:
    return [KSet.of(int(e) for e in item.split(",")) for item in text.split(";") if item.strip()]


# --- verbs ------------------------------------------------------------------

def cmd_gen(args) -> int:
    G = _kneser(args)
    with _open_out(args.out) as f:
        formats.write_gr(G, f, comments=[f"Kneser graph K({args.n},{args.k}), vertex i+1 = colex rank i"])
    log.info("K(%d,%d): %d vertices, %d edges", args.n, args.k, G.n, G.num_edges())
    return EXIT_OK


def cmd_tw(args) -> int:
    G = _graph(args)
    res = exact.treewidth_exact(G, vertex_limit=args.limit, fallback_to_bounds=args.bounds_fallback)
    if res.exact:
        print(res.value)
    else:
        print(f"{res.lower}\t{res.upper}")
    if args.out and res.witness is not None:
        with _open_out(args.out) as f:
            formats.write_td(res.witness, G.n, f)
    return EXIT_OK


def cmd_bounds(args) -> int:
    G = _graph(args)
    seed = None
    if isinstance(G, KneserGraph) and G.params.k >= 2 and G.params.n >= 2 * G.params.k + 1:
        seed = treedec.kneser_upper_decomposition(G.params, G)
    res = exact.treewidth_bounds(G, seed=seed)
    print("lower\tupper\tconstruction")
    print(f"{res.lower}\t{res.upper}\t{'' if res.seed_upper is None else res.seed_upper}")
    if args.out:
        with _open_out(args.out) as f:
            formats.write_td(res.witness, G.n, f)
    return EXIT_OK


def cmd_validate(args) -> int:
    if not args.td:
        raise UsageError("validate needs --td <decomposition.td>")
    G = _graph(args)
    T = _read_td(args.td)
    verdict = treedec.validate(G, T)
    if verdict.valid:
        print(f"valid\t{T.width()}")
        return EXIT_OK
    print("invalid")
    for v in verdict.violations:
        print(f"{v.kind}\t{v.detail}")
    return EXIT_VERDICT


def cmd_decomp(args) -> int:
    G = _kneser(args)
    if args.kind == "upper":
        T = treedec.kneser_upper_decomposition(G.params, G)
    elif args.kind == "improved":
        W = _parse_sets(args.w) if args.w else None
        try:
            T = treedec.improved_decomposition(G.params, W, G)
        except treedec.WPreconditionError as e:
            print(f"precondition\t{e}")
            return EXIT_VERDICT
    else:
        T = exact.treewidth_exact(G, vertex_limit=args.limit).witness
    verdict = treedec.validate(G, T)
    with _open_out(args.out) as f:
        formats.write_td(T, G.n, f, comments=[f"{args.kind} decomposition of K({args.n},{args.k})"])
    if args.out:
        print(f"{'valid' if verdict.valid else 'invalid'}\t{T.width()}")
    return EXIT_OK if verdict.valid else EXIT_VERDICT


def cmd_normalize(args) -> int:
    if not args.td:
        raise UsageError("normalize needs --td <decomposition.td>")
    G = _graph(args)
    T = _read_td(args.td)
    if not treedec.validate(G, T).valid:
        print("invalid input decomposition")
        return EXIT_VERDICT
    N = treedec.normalize(T)
    with _open_out(args.out) as f:
        formats.write_td(N, G.n, f)
    log.info("normalised %d nodes to %d, width %d -> %d", T.num_nodes, N.num_nodes, T.width(), N.width())
    return EXIT_OK


def cmd_sep(args) -> int:
    G = _graph(args)
    if args.td:
        T = _read_td(args.td)
    else:
        T = exact.treewidth_exact(G, vertex_limit=args.limit, fallback_to_bounds=True).witness
    X = separators.separator_from_bag(G, T, args.p)
    rep = separators.check_separator(G, X, args.p)
    print(f"order\t{rep.order}")
    print(f"separator\t{' '.join(str(v + 1) for v in X)}")
    print(f"components\t{','.join(map(str, rep.component_sizes))}")
    if rep.rest_size:
        part = separators.bipartition(rep)
        if part is None:
            print("bipartition\tinfeasible")
        else:
            print(f"bipartition\t{part.A.bit_count()}\t{part.B.bit_count()}\t{','.join(part.profiles)}")
    return EXIT_OK


def cmd_minsep(args) -> int:
    G = _graph(args)
    cap = G.n if args.cap is None else args.cap
    res = separators.min_separator_order(G, args.p, cap, budget=args.budget or 50_000_000, threads=args.threads)
    if res.exceeds_cap:
        print(f"exceeds cap\t{cap}")
    else:
        print(f"{res.order}\t{' '.join(str(v + 1) for v in res.separator)}")
    log.info("%d candidate sets checked", res.checked)
    return EXIT_OK


def cmd_ekr(args) -> int:
    G = _kneser(args)
    I = ekr.max_independent_set(G)
    print(f"alpha\t{len(I)}")
    print(f"formula\t{setsys.binom(args.n - 1, args.k - 1)}")
    print("set\t" + " ".join(str(G.label(v)) for v in I))
    return EXIT_OK


def cmd_cross(args) -> int:
    G = _kneser(args)
    res = ekr.max_cross_product(G, vertex_budget=args.budget or 22)
    stars = [ekr.is_star(G, A) is not None and ekr.is_star(G, A) == ekr.is_star(G, B) for A, B in res.optima]
    print(f"product\t{res.product}")
    print(f"formula\t{setsys.binom(args.n - 1, args.k - 1) ** 2}")
    print(f"optima\t{len(res.optima)}")
    print(f"all_star_pairs\t{'yes' if all(stars) else 'no'}")
    return EXIT_OK


def cmd_shadow(args) -> int:
    if None in (args.m, args.a, args.b, args.c):
        raise UsageError("shadow needs --m, --a, --b and --c")
    first = setsys.min_shadow_size(args.m, args.a, args.b, args.c)
    print(f"first_family\t{first}")
    if args.brute:
        brute = setsys.brute_min_shadow(args.m, args.a, args.b, args.c, budget=args.budget or 2_000_000)
        print(f"brute_force\t{brute}")
        return EXIT_OK if brute == first else EXIT_VERDICT
    return EXIT_OK


def cmd_hunt(args) -> int:
    params = KneserParams(args.n, args.k)
    init = ekr.split_star_witness(params, args.p) if args.init_star else None
    res = ekr.hunt_multipartite(params, args.p, budget=args.budget or 100_000, seed=args.seed, init=init)
    print(f"best\t{res.best_size}")
    print(f"bound\t{res.bound}")
    print(f"in_scope\t{'yes' if res.in_scope else 'no'}")
    if args.out:
        with _open_out(args.out) as f:
            formats.write_witness(res.best_witness.classes, f)
    return EXIT_VERDICT if res.alarm else EXIT_OK


def cmd_report(args) -> int:
    with _open_out(args.out) as f:
        if args.theorem == 2:
            rows = report.theorem2_rows(args.nmax, nmin=args.nmin or 1)
        elif args.theorem == 1:
            rows = report.theorem1_rows(args.k or 3, args.nmax, nmin=args.nmin)
        else:
            k = args.k or 2
            nmin = args.nmin or 4 * k * k - 4 * k + 3
            rows = report.theorem3_rows(k, nmin, args.nmax, args.p, args.budget or 100_000, args.seed)
        report.write_table(rows, f)
    return EXIT_OK


VERBS = {
    "gen": (cmd_gen, "write K(n,k) as a PACE .gr graph"),
    "tw": (cmd_tw, "exact treewidth (subset DP)"),
    "bounds": (cmd_bounds, "lower/upper treewidth bounds"),
    "validate": (cmd_validate, "check a .td decomposition against a graph"),
    "decomp": (cmd_decomp, "build a decomposition of K(n,k)"),
    "normalize": (cmd_normalize, "contract nested adjacent bags"),
    "sep": (cmd_sep, "p-separator inside a bag of a decomposition"),
    "minsep": (cmd_minsep, "exhaustive minimum p-separator search"),
    "ekr": (cmd_ekr, "maximum independent set of K(n,k)"),
    "cross": (cmd_cross, "maximum cross-intersecting product"),
    "shadow": (cmd_shadow, "minimum shadow size via the first family"),
    "hunt": (cmd_hunt, "randomised multipartite counterexample search"),
    "report": (cmd_report, "tables reproducing the treewidth results"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--p", type=parse_fraction, default=Fraction(2, 3), help="rational, e.g. 2/3")
    common.add_argument("--cap", type=int)
    common.add_argument("--budget", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--out")
    common.add_argument("--in", dest="input")
    common.add_argument("--td", help="tree decomposition file (.td)")
    common.add_argument("--limit", type=int, default=exact.DEFAULT_VERTEX_LIMIT, help="exact-solver vertex limit")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="kneser-tw", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)
    for name, (_, help_text) in VERBS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if name == "tw":
            sp.add_argument("--bounds-fallback", action="store_true", help="report bounds above the vertex limit")
        elif name == "decomp":
            sp.add_argument("--kind", choices=["upper", "improved", "exact"], default="upper")
            sp.add_argument("--w", help="W for the improved construction, e.g. '2,3,4;4,5,6'")
        elif name == "shadow":
            for flag in ("--m", "--a", "--b", "--c"):
                sp.add_argument(flag, type=int)
            sp.add_argument("--brute", action="store_true", help="also run the exhaustive oracle")
        elif name == "hunt":
            sp.add_argument("--init-star", action="store_true", help="start from the split star family")
        elif name == "report":
            sp.add_argument("--theorem", type=int, choices=[1, 2, 3], required=True)
            sp.add_argument("--nmax", type=int, required=True)
            sp.add_argument("--nmin", type=int)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.p is not None and not Fraction(2, 3) <= args.p < 1:
        print(f"error: --p must lie in [2/3, 1), got {args.p}", file=sys.stderr)
        return EXIT_USAGE
    func = VERBS[args.verb][0]
    try:
        return func(args)
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, formats.FormatError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
