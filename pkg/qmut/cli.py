"""Command-line front end: ``python -m qmut <command> ...``.

Standard output carries only machine-readable results (JSON, CSV or SVG);
diagnostics go to standard error.

Exit codes: 0 ok or bounded, 1 I/O or runtime failure, 2 usage or parse
error, 3 unbounded verdict, 4 witness requested for a bounded class.
"""

from __future__ import annotations

import json
import logging
import math
import sys
from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from qmut.classifier import classify
from qmut.config import DEFAULT_TARGET, MAX_ORBIT_LENGTH, UNIT_TOLERANCE, Settings, configure_logging, load_settings
from qmut.divergence import divergence_witness
from qmut.errors import (
    ContractViolation,
    ExportError,
    InvalidConfigurationError,
    QuiverArgumentError,
    QuiverError,
)
from qmut.geometry import LineConfig, config_from_dict, trace_lines, trace_points
from qmut.orbit import (
    SummaryTracker,
    export_csv,
    export_json,
    load_reference_sequences,
    reference_orbit_names,
    random_alternating_sequence,
    render_svg_scatter,
    run_orbit,
)
from qmut.quiver_core import markov_constant, parse_sequence, parse_triple

logger = logging.getLogger(__name__)

PROG = "qmut"
DESCRIPTION = "Mutation dynamics of rank 3 real quivers."

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_UNBOUNDED = 3
EXIT_BOUNDED_WITNESS = 4

FORMATS = ("csv", "json", "svg")
CONTAINMENT_SLACK = 1e-6
GEOMETRY_WEIGHT_CAP = 1e12

# options whose values may start with '-'
VALUE_OPTIONS = {"-q": "--quiver", "--quiver": "--quiver", "-s": "--sequence", "--sequence": "--sequence"}


class UsageError(Exception):
    pass


class _Parser(ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def join_option_values(argv: Sequence[str]) -> List[str]:
    """Rewrite `-q -0.6,...` as `--quiver=-0.6,...` so argparse does not read the value as a flag"""
    joined = []
    tokens = iter(argv)
    for token in tokens:
        long_name = VALUE_OPTIONS.get(token)
        if long_name is None:
            joined.append(token)
            continue
        value = next(tokens, None)
        joined.append(token if value is None else f"{long_name}={value}")
    return joined


def _add_quiver(parser: ArgumentParser) -> None:
    parser.add_argument(
        "-q", "--quiver", type=str, required=True, help="Signed exchange triple 'b12,b23,b13', e.g. '2,2,-2'."
    )


def _add_output(parser: ArgumentParser, formats: Sequence[str] = FORMATS) -> None:
    parser.add_argument("-o", "--output", type=str, help="Output file; standard output when omitted.")
    parser.add_argument("--format", choices=formats, default=formats[0], help="Output format.")


def build_parser(settings: Settings) -> ArgumentParser:
    parser = _Parser(prog=PROG, description=DESCRIPTION)
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    classify_parser = commands.add_parser("classify", help="Decide whether the mutation class is bounded.")
    _add_quiver(classify_parser)

    mutate_parser = commands.add_parser("mutate", help="Apply a mutation sequence and print the trajectory.")
    _add_quiver(mutate_parser)
    mutate_parser.add_argument("-s", "--sequence", type=str, required=True, help="Vertices, e.g. '2,1,3'.")
    _add_output(mutate_parser, ("csv", "json"))

    witness_parser = commands.add_parser("witness", help="Certificate of divergence for an unbounded class.")
    _add_quiver(witness_parser)
    witness_parser.add_argument("--target", type=float, default=DEFAULT_TARGET, help="Norm to reach.")
    witness_parser.add_argument("-o", "--output", type=str, help="Output file; standard output when omitted.")

    orbit_parser = commands.add_parser("orbit", help="Random alternating mutation orbit.")
    _add_quiver(orbit_parser)
    orbit_parser.add_argument("-n", "--length", type=int, required=True, help="Number of mutations.")
    orbit_parser.add_argument("--seed", type=int, default=settings.seed, help="Generator seed (env QMUT_SEED).")
    _add_output(orbit_parser)

    geom_parser = commands.add_parser("geom", help="Geometric mutation checked against algebraic mutation.")
    geom_parser.add_argument("kind", choices=("points", "lines"))
    geom_parser.add_argument("--config", type=str, required=True, help="JSON file {form, vectors}.")
    geom_parser.add_argument("-s", "--sequence", type=str, help="Vertices, e.g. '1,2,1,2'.")
    geom_parser.add_argument("-n", "--length", type=int, help="Random sequence length when -s is omitted.")
    geom_parser.add_argument("--seed", type=int, default=settings.seed, help="Generator seed (env QMUT_SEED).")

    replay_parser = commands.add_parser("replay", help="Replay the vendored reference orbits.")
    replay_parser.add_argument("names", nargs="*", help=f"Reference orbits, default all of {reference_orbit_names()}.")
    replay_parser.add_argument("-o", "--output", type=str, help="Directory for one SVG per sequence.")

    return parser


def _emit_json(document: Dict[str, Any], output: Optional[str]) -> None:
    text = json.dumps(document, indent=2) + "\n"
    if output is None:
        sys.stdout.write(text)
        return
    try:
        Path(output).write_text(text, encoding="utf-8")
    except OSError as e:
        raise ExportError(output, e.strerror or str(e)) from e


def _destination(output: Optional[str]) -> Any:
    return sys.stdout if output is None else output


def _check_length(length: int) -> None:
    if not 0 <= length <= MAX_ORBIT_LENGTH:
        raise QuiverArgumentError(f"Length must lie in [0, {MAX_ORBIT_LENGTH}], got {length}")


def cmd_classify(args: Namespace, settings: Settings) -> int:
    verdict = classify(parse_triple(args.quiver))
    _emit_json(verdict.to_dict(), None)
    return EXIT_OK if verdict.bounded else EXIT_UNBOUNDED


def cmd_mutate(args: Namespace, settings: Settings) -> int:
    triple, sequence = parse_triple(args.quiver), parse_sequence(args.sequence)
    records = run_orbit(triple, sequence)
    if args.format == "json":
        export_json(records, _destination(args.output), sequence=sequence)
    else:
        export_csv(records, _destination(args.output))
    return EXIT_OK


def cmd_witness(args: Namespace, settings: Settings) -> int:
    triple = parse_triple(args.quiver)
    try:
        certificate = divergence_witness(triple, args.target, max_steps=settings.max_steps)
    except ContractViolation as e:
        print(f"{PROG}: {e}", file=sys.stderr)
        return EXIT_BOUNDED_WITNESS
    _emit_json(certificate.to_dict(), args.output)
    return EXIT_OK


def cmd_orbit(args: Namespace, settings: Settings) -> int:
    _check_length(args.length)
    triple = parse_triple(args.quiver)
    sequence = random_alternating_sequence(args.length, args.seed)
    tracker = SummaryTracker(args.seed)
    records = tracker.watch(run_orbit(triple, sequence))
    destination = _destination(args.output)
    if args.format == "csv":
        export_csv(records, destination)
    elif args.format == "json":
        export_json(records, destination, seed=args.seed, sequence=sequence)
    else:
        render_svg_scatter(records, destination, title=f"{args.quiver} seed {args.seed} length {args.length}")
    print(json.dumps(tracker.summary().to_dict()), file=sys.stderr)
    return EXIT_OK


def _read_config(path: str) -> Dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ExportError(path, e.strerror or str(e)) from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidConfigurationError(f"{path} is not valid JSON: {e}")


def cmd_geom(args: Namespace, settings: Settings) -> int:
    cfg = config_from_dict(_read_config(args.config), args.kind)
    if args.sequence is not None:
        sequence = parse_sequence(args.sequence)
    elif args.length is not None:
        _check_length(args.length)
        sequence = random_alternating_sequence(args.length, args.seed)
    else:
        raise QuiverArgumentError("geom needs a sequence (-s) or a length (-n)")

    if isinstance(cfg, LineConfig):
        steps = trace_lines(cfg, sequence, max_weight=GEOMETRY_WEIGHT_CAP)
        form = cfg.form.value
    else:
        steps = trace_points(cfg, sequence, max_weight=GEOMETRY_WEIGHT_CAP)
        form = "Hyperbolic"

    maxima = [max(step.weights) for step in steps]
    deviation = max(step.deviation for step in steps)
    report = {
        "steps": len(steps) - 1,
        "max_weight": max(maxima),
        "min_weight": min(min(step.weights) for step in steps),
        "max_deviation": deviation,
        "agrees": deviation <= UNIT_TOLERANCE,
        "monotone": all(later >= earlier for earlier, later in zip(maxima, maxima[1:])),
        "grows": maxima[-1] > maxima[0],
    }
    _emit_json({"kind": args.kind, "form": form, "report": report, "steps": [s.to_dict() for s in steps]}, None)
    print(json.dumps(report), file=sys.stderr)
    return EXIT_OK


def cmd_replay(args: Namespace, settings: Settings) -> int:
    names = args.names or reference_orbit_names()
    folder = Path(args.output) if args.output else None
    if folder is not None:
        try:
            folder.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ExportError(str(folder), e.strerror or str(e)) from e

    results = []
    for name in names:
        reference = load_reference_sequences(name)
        bound = math.sqrt(max(markov_constant(reference.quiver), 0.0))
        for index, sequence in enumerate(reference.sequences, start=1):
            records = list(run_orbit(reference.quiver, sequence))
            max_norm = max(record.norm for record in records)
            if folder is not None:
                render_svg_scatter(records, folder / f"{name}_{index}.svg", title=f"{name} sequence {index}")
            results.append(
                {
                    "name": name,
                    "sequence": index,
                    "length": len(sequence),
                    "quiver": list(reference.quiver.as_tuple()),
                    "max_norm": max_norm,
                    "norm_bound": bound,
                    "contained": max_norm <= bound + CONTAINMENT_SLACK,
                }
            )
    _emit_json({"orbits": results}, None)
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "mutate": cmd_mutate,
    "witness": cmd_witness,
    "orbit": cmd_orbit,
    "geom": cmd_geom,
    "replay": cmd_replay,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        settings = load_settings()
        configure_logging(settings.log_level)
        args = build_parser(settings).parse_args(join_option_values(argv))
        return COMMANDS[args.command](args, settings)
    except UsageError as e:
        print(f"{PROG}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ExportError as e:
        print(f"{PROG}: {e}", file=sys.stderr)
        return EXIT_IO
    except (QuiverArgumentError, InvalidConfigurationError) as e:
        print(f"{PROG}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except QuiverError as e:
        logger.error("%s failed: %s", argv[0] if argv else PROG, e)
        return EXIT_IO
