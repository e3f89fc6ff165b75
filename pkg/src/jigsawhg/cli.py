"""Command-line front end.

Exit codes: 0 success, 1 validation failure (one-line diagnostic on stderr),
2 runtime failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import percolate
from .errors import ValidationError
from .experiments import estimate_crossing, run_sweep
from .hypergraph import j_components
from .io import (
    decode_hypergraph,
    encode_hypergraph,
    load_sweep_config,
    sweep_rows_to_csv,
)
from .reductions import bipartition_projection, link_double_hypergraph
from .sampling import MODEL_LINE, MODEL_MULTI, SampleSpec, sample
from .traversability import census_triples, enumerate_Q


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; bad flags are validation
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _fmt(x: float) -> str:
    return format(float(x), ".10g")


def _write(path: str, content: str) -> None:
    Path(path).write_bytes(content.encode("utf-8"))


def _read_hypergraph(path: str):
    return decode_hypergraph(Path(path).read_text(encoding="utf-8"))


def _cmd_sample(args) -> int:
    probabilities = tuple(float(x) for x in args.p.split(","))
    model = MODEL_MULTI if args.model == "multi" else MODEL_LINE
    spec = SampleSpec(args.n, args.k, args.s, probabilities, model=model, seed=args.seed)
    _write(args.out, encode_hypergraph(sample(spec)))
    return 0


def _cmd_percolate(args) -> int:
    hypergraph = _read_hypergraph(getattr(args, "in"))
    result = percolate(hypergraph, args.j, args.r_threshold)
    print(f"percolated={'true' if result.percolated else 'false'}")
    print(f"rounds={result.rounds}")
    print(f"final_clusters={result.final_cluster_count}")
    if args.trajectory:
        for t, clusters, max_cluster in result.trajectory:
            print(f"{t},{clusters},{max_cluster}")
    return 0


def _cmd_components(args) -> int:
    hypergraph = _read_hypergraph(getattr(args, "in"))
    partition = j_components(hypergraph, args.colour, args.j)
    sizes = partition.class_sizes().tolist()
    print(f"components={partition.num_classes}")
    print("sizes=" + ",".join(str(x) for x in sizes))
    return 0


def _cmd_census(args) -> int:
    fn = enumerate_Q if args.q else census_triples
    print(len(fn(args.n, args.k, args.j, args.ell, args.r, args.b)))
    return 0


def _cmd_link(args) -> int:
    hypergraph = _read_hypergraph(getattr(args, "in"))
    _write(args.out, encode_hypergraph(link_double_hypergraph(hypergraph, args.vertex)))
    return 0


def _cmd_project(args) -> int:
    hypergraph = _read_hypergraph(getattr(args, "in"))
    q = [int(x) for x in args.q.split(",")]
    _write(args.out, encode_hypergraph(bipartition_projection(hypergraph, q)))
    return 0


def _cmd_sweep(args) -> int:
    config, _ = load_sweep_config(Path(args.config).read_text(encoding="utf-8"))
    _write(args.out, sweep_rows_to_csv(run_sweep(config)))
    return 0


def _cmd_crossing(args) -> int:
    config, extras = load_sweep_config(Path(args.config).read_text(encoding="utf-8"))
    result = estimate_crossing(config, **extras)
    print(f"c_star={_fmt(result.c_star)}")
    print(sweep_rows_to_csv(list(result.rows)), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jigsawhg", description="Jigsaw percolation on multi-coloured hypergraphs")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sample", help="sample a random hypergraph and write its document")
    p.add_argument("--model", choices=["multi", "line"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--p", required=True, help="comma-separated colour probabilities")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("percolate", help="run jigsaw percolation on a document")
    p.add_argument("--in", required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--r-threshold", dest="r_threshold", type=int, default=None)
    p.add_argument("--trajectory", action="store_true")
    p.set_defaults(func=_cmd_percolate)

    p = sub.add_parser("components", help="j-connected components of one colour")
    p.add_argument("--in", required=True)
    p.add_argument("--colour", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.set_defaults(func=_cmd_components)

    p = sub.add_parser("census", help="count edge-minimal traversable triples (or generator outputs)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--q", action="store_true", help="count generator outputs instead")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("link", help="link of a vertex (uniformity drops by one)")
    p.add_argument("--in", required=True)
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_link)

    p = sub.add_parser("project", help="pair projection onto a vertex block")
    p.add_argument("--in", required=True)
    p.add_argument("--q", required=True, help="comma-separated vertex list")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser("sweep", help="Monte Carlo sweep over a c grid, CSV output")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("crossing", help="bisect for the c where percolation crosses the target")
    p.add_argument("--config", required=True)
    p.set_defaults(func=_cmd_crossing)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return code
    except (ValidationError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # runtime failure
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
