"""Command-line driver for colored link signatures

Run ``python clasp.py <verb> --help`` for the flags of each verb. Results go to
standard output, logs and error messages to standard error. Exit codes: 0 on
success, 1 on domain errors, 2 on usage errors.
"""
import argparse
import json
import os
import sys

from api import __version__
from api.conway import potential
from api.errors import InvalidModelError, exception_handler
from api.invariants import (ColoringView, delta0, diagonal_specialize, grid_scan, merge_colors,
                            presentation_matrix, signature)
from api.library import PROVENANCE, bundled_path, emit, names
from api.model import load, validate
from api.obstructions import SurgeryData, casson_gordon, casson_gordon_invariants, slice_obstruction
from api.settings import message, read_config
from api.torus import TorusPoint
from api.verify import Verifier


def load_model(spec, check=True):
    """Loads a model from a path, or by bundled name when no such file exists

    Raises
    ------
    InvalidModelError : check is set and the model violates an invariant
    """
    path = spec if os.path.exists(spec) or spec not in PROVENANCE else bundled_path(spec)
    model = load(path)
    if check:
        violations = validate(model)
        if violations:
            raise InvalidModelError(message("model", "msg_model_invalid", model.name, "; ".join(violations)))
    return model


def parse_int_list(text):
    return [int(part) for part in text.split(",") if part.strip()]


def target_of(args):
    model = load_model(args.model)
    if getattr(args, "colors", None):
        return ColoringView(model, parse_int_list(args.colors))
    return model


def write_or_print(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


@exception_handler
def cmd_eval(args):
    result = signature(target_of(args), TorusPoint.parse(args.omega), args.approx_tol)
    print(result)
    return 0


@exception_handler
def cmd_grid(args):
    scan = grid_scan(target_of(args), args.q)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            scan.to_csv(handle)
    else:
        scan.to_csv(sys.stdout)
    return 0


@exception_handler
def cmd_delta(args):
    print(delta0(load_model(args.model)))
    print(message("invariants", "msg_delta_caveat"))
    return 0


@exception_handler
def cmd_presentation(args):
    print(presentation_matrix(load_model(args.model)))
    return 0


@exception_handler
def cmd_potential(args):
    pot = potential(load_model(args.model))
    print("numerator: {}".format(pot.numerator))
    print("denominator: {}".format(pot.denominator))
    return 0


@exception_handler
def cmd_obstruct(args):
    report = slice_obstruction(target_of(args), args.max_q)
    write_or_print(report.dumps() + "\n", args.out)
    return 0


@exception_handler
def cmd_casson_gordon(args):
    matrix = json.loads(args.linking)
    if not isinstance(matrix, list) or not all(isinstance(row, list) for row in matrix):
        raise ValueError("--linking must be a JSON list of lists")
    data = SurgeryData(len(matrix), tuple(tuple(int(v) for v in row) for row in matrix),
                       args.q, tuple(parse_int_list(args.n)))
    if args.model:
        sigma_m, eta_m = casson_gordon_invariants(data, load_model(args.model))
        print("sigma={} eta={}".format(sigma_m, eta_m))
    else:
        print("sigma={}".format(casson_gordon(data, args.sigma)))
    return 0


@exception_handler
def cmd_merge(args):
    print(merge_colors(target_of(args), TorusPoint.parse(args.omega)))
    return 0


@exception_handler
def cmd_diagonal(args):
    sigma, eta = diagonal_specialize(target_of(args), TorusPoint.parse(args.omega))
    print("sigma={} eta={}".format(sigma, eta))
    return 0


@exception_handler
def cmd_examples(args):
    if args.action == "list":
        for name in names():
            print("{}: {}".format(name, PROVENANCE[name]))
        return 0
    if not args.name:
        raise ValueError("examples emit needs a model name")
    print(emit(args.name, args.out or "{}.json".format(args.name)))
    return 0


@exception_handler
def cmd_verify(args):
    specs = args.model or names()
    models = [load_model(spec, check=False) for spec in specs]
    results = Verifier(models, args.q).run()
    for result in results:
        print(result.line())
    return 0 if all(result.passed for result in results) else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="clasp", description="Signatures and nullities of colored links")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    verbs = parser.add_subparsers(dest="verb", required=True)

    def verb(name, handler, help_text, model=True, colors=False):
        sub = verbs.add_parser(name, help=help_text)
        if model:
            sub.add_argument("--model", required=True, help="model JSON path or bundled model name")
        if colors:
            sub.add_argument("--colors", help="coarser coloring, new color of each old color, e.g. 1,1,2")
        sub.set_defaults(handler=handler)
        return sub

    sub = verb("eval", cmd_eval, "signature and nullity at one point", colors=True)
    sub.add_argument("--omega", required=True, help="point, e.g. 1/4,1/4 or ~0.785")
    sub.add_argument("--approx-tol", type=float, default=None, help="relative tolerance for ~ points")

    sub = verb("grid", cmd_grid, "exact scan of all points k/q as CSV", colors=True)
    sub.add_argument("--q", type=int, required=True)
    sub.add_argument("--out", help="CSV path, standard output when omitted")

    verb("delta", cmd_delta, "normalized det A(t)")
    verb("presentation", cmd_presentation, "Alexander module presentation matrix")
    verb("potential", cmd_potential, "Conway potential function")

    sub = verb("obstruct", cmd_obstruct, "slice obstruction witnesses on prime-power points", colors=True)
    sub.add_argument("--max-q", type=int, required=True)
    sub.add_argument("--out", help="JSON path, standard output when omitted")

    sub = verb("casson-gordon", cmd_casson_gordon, "Casson-Gordon invariant from surgery data", model=False)
    sub.add_argument("--linking", required=True, help="framed linking matrix as JSON, e.g. [[2]]")
    sub.add_argument("--q", type=int, required=True)
    sub.add_argument("--n", required=True, help="character values, comma separated")
    source = sub.add_mutually_exclusive_group(required=True)
    source.add_argument("--sigma", type=int, help="signature of the link at the character point")
    source.add_argument("--model", help="model to evaluate at the character point")

    sub = verb("merge", cmd_merge, "signature after merging the last two colors", colors=True)
    sub.add_argument("--omega", required=True, help="point whose last two coordinates agree")

    sub = verb("diagonal", cmd_diagonal, "Levine-Tristram signature of the underlying link", colors=True)
    sub.add_argument("--omega", required=True, help="single coordinate, e.g. 1/3")

    sub = verb("examples", cmd_examples, "bundled example models", model=False)
    sub.add_argument("action", choices=("list", "emit"))
    sub.add_argument("name", nargs="?", choices=names())
    sub.add_argument("--out", help="destination of emit, NAME.json when omitted")

    sub = verb("verify", cmd_verify, "property suites over models", model=False)
    sub.add_argument("--model", action="append", help="model path or bundled name, repeatable; all bundled by default")
    sub.add_argument("--q", type=int, default=int(read_config()["verify"]["default_q"]))
    return parser


def run(argv):
    """Parses argv and runs one verb, returning the exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return exit_request.code if isinstance(exit_request.code, int) else 2
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
