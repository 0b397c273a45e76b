"""Command-line interface wiring the pipeline end to end.

Subcommands: ingest (corpus -> index), train (index + judgments -> model),
search (index + model + query -> ranked results), eval (model accuracy on
judgments), gradcheck (finite-difference verification of the backward
pass).

Exit codes: 0 success, 1 usage error, 2 data error, 3 check failure.
"""

from __future__ import annotations

import argparse
import sys

from . import corpus, neural, ranker, scoring, training
from .errors import DataError
from .query import build_syntax_tree

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_CHECK = 3

DEFAULT_EPOCHS = 5000
DEFAULT_LR = 0.5
DEFAULT_SEED = 42
DEFAULT_HIDDEN = 4


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; we reserve 2 for data errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _probability(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in [0, 1], got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0.0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {text}")
    return value


def cmd_ingest(args) -> int:
    docs = corpus.parse_corpus_file(args.corpus)
    index = corpus.build_index(docs)
    corpus.save_index(index, args.index)
    print(f"ingested {index.doc_count} documents, {len(index.postings)} distinct tokens")
    print(f"saved index -> {args.index}")
    return EXIT_OK


def cmd_train(args) -> int:
    index = corpus.load_index(args.index)
    judgments = training.parse_judgments_file(args.judgments)
    examples = training.judgments_to_examples(judgments, index)
    if not examples and args.epochs > 0:
        raise DataError(f"judgments file {args.judgments} contains no judgments")
    net = neural.init_weights([2, args.hidden, 1], args.seed)
    net, trace = neural.train(net, examples, args.epochs, args.lr, args.seed)
    neural.save_model(net, args.model)
    print(f"trained on {len(examples)} examples for {args.epochs} epochs")
    if trace:
        print(f"initial mean error: {trace[0]:.6f}")
        print(f"final mean error: {trace[-1]:.6f}")
    elif judgments:
        report = training.evaluate(net, judgments, index)
        print(f"final mean error: {report['mean_error']:.6f}")
    print(f"saved model -> {args.model}")
    return EXIT_OK


def cmd_search(args) -> int:
    index = corpus.load_index(args.index)
    net = neural.load_model(args.model)
    tree = build_syntax_tree(args.query)
    candidates = scoring.analyze(tree, index)
    ranked = ranker.attach_probabilities(candidates, net)
    page = ranker.format_results(ranked, args.cutoff, args.top_k, query=args.query)
    print(ranker.render(page, args.format))
    return EXIT_OK


def cmd_eval(args) -> int:
    index = corpus.load_index(args.index)
    net = neural.load_model(args.model)
    judgments = training.parse_judgments_file(args.judgments)
    if not judgments:
        raise DataError(f"judgments file {args.judgments} contains no judgments")
    report = training.evaluate(net, judgments, index)
    print(f"count: {report['count']}")
    print(f"mean error: {report['mean_error']:.6f}")
    print(f"accuracy@0.5: {report['accuracy_at_0.5']:.4f}")
    return EXIT_OK


def cmd_gradcheck(args) -> int:
    worst = neural.gradient_check_suite(args.seed)
    print(f"max relative error: {worst:.3e}")
    if worst <= neural.GRADIENT_TOLERANCE:
        print("gradient check passed")
        return EXIT_OK
    print(f"gradient check FAILED (tolerance {neural.GRADIENT_TOLERANCE:.0e})", file=sys.stderr)
    return EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pswm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse a corpus file and build + save the index")
    p.add_argument("--corpus", required=True, help="line-delimited JSON corpus file")
    p.add_argument("--index", required=True, help="output index file")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("train", help="train the ranking network from judgments")
    p.add_argument("--index", required=True, help="index file written by ingest")
    p.add_argument("--judgments", required=True, help="tab-separated judgments file")
    p.add_argument("--model", required=True, help="output model file")
    p.add_argument("--epochs", type=_non_negative_int, default=DEFAULT_EPOCHS)
    p.add_argument("--lr", type=_positive_float, default=DEFAULT_LR)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--hidden", type=_positive_int, default=DEFAULT_HIDDEN)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("search", help="run a query through the full pipeline")
    p.add_argument("query", help="query string")
    p.add_argument("--index", required=True, help="index file written by ingest")
    p.add_argument("--model", required=True, help="model file written by train")
    p.add_argument("--cutoff", type=_probability, default=ranker.DEFAULT_CUTOFF)
    p.add_argument("--top-k", type=_positive_int, default=None)
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("eval", help="report model accuracy against judgments")
    p.add_argument("--index", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--judgments", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("gradcheck", help="verify backward-pass derivatives numerically")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_gradcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse --help exits 0; our usage errors exit 1
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    raise SystemExit(main())
