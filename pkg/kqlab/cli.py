"""
kqlab command-line interface.

Usage: python -m kqlab <command> [options]

Complexes are given either as a path to an SSX v1 file or by name:
point, empty, delta:N, boundary:N, horn:N:I, sphere:N.
"""

import argparse
import logging
import os
import sys
from typing import Any, Dict, List, Optional

from .bisimplicial import const_geo, counit_level, diag_extend
from .config import PROFILES, Config
from .core import (SimplicialSet, boundary, empty, horn, point, product, pushout,
                   standard_simplex, standard_sphere)
from .errors import CodecError, ConfigError, KQError, ResourceCapExceeded
from .ex import ex
from .harness import run_all
from .harness.report import EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_SKIP
from .lifting import GeneratingSet, LiftingProblem, find_lift, kan_check, soa_factorize
from .oracles import euler_agrees, homology, homology_groups, pi0
from .serialize import BSSXEncoder, SSXEncoder, dumps, load_complex, load_map, write_document
from .subdivision import sd_iter

logger = logging.getLogger("kqlab")


def setup_logging(level: str = "info"):
    """Log to stderr so that JSON on stdout stays clean."""
    log_level = getattr(logging, level.upper(), logging.INFO)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(
        "[%(asctime)s] %(levelname)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    ))

    logger.handlers.clear()
    logger.setLevel(log_level)
    logger.addHandler(handler)


def named_complex(text: str, top_dim_cap: Optional[int] = None) -> SimplicialSet:
    """A complex from an SSX file path or a name such as horn:2:1."""
    complex_ = _named_complex(text)
    if top_dim_cap is not None:
        within_top_dim(complex_, top_dim_cap)
    return complex_


def within_top_dim(complex_: SimplicialSet, top_dim_cap: int) -> SimplicialSet:
    if complex_.top_dim > top_dim_cap:
        raise ResourceCapExceeded("top dimension", top_dim_cap,
                                  {"complex": complex_.name, "dim": complex_.top_dim})
    return complex_


def _named_complex(text: str) -> SimplicialSet:
    if os.path.exists(text):
        return load_complex(text)
    name, *args = text.strip().lower().split(":")
    try:
        numbers = [int(a) for a in args]
        if name == "point" and not numbers:
            return point()
        if name == "empty" and not numbers:
            return empty()
        if name == "delta" and len(numbers) == 1:
            return standard_simplex(numbers[0])
        if name == "boundary" and len(numbers) == 1:
            return boundary(numbers[0])
        if name == "horn" and len(numbers) == 2:
            return horn(*numbers)
        if name == "sphere" and len(numbers) == 1:
            return standard_sphere(numbers[0])
    except ValueError:
        pass
    raise CodecError(f"'{text}' is neither a file nor a complex name")


def emit(doc: Dict[str, Any], output: Optional[str]) -> None:
    if output:
        write_document(output, doc)
    else:
        print(dumps(doc))


def load_config(args: argparse.Namespace) -> Config:
    """Profile, then the configuration file, then --set overrides."""
    config = Config.for_profile(getattr(args, "profile", None))
    if getattr(args, "config", None):
        config = Config.from_file(args.config, base=config)
    for item in getattr(args, "set", None) or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"expected key=value, got '{item}'")
        config = config.with_value(key.strip().lower(), value.strip())
    config.validate()
    return config


# ==================== Commands ====================

def cmd_build(args: argparse.Namespace, config: Config) -> int:
    complex_ = named_complex(args.complex, config.top_dim_cap)
    if args.bisimplicial == "diag":
        emit(BSSXEncoder.encode(diag_extend(complex_)), args.output)
    elif args.bisimplicial == "const":
        emit(BSSXEncoder.encode(const_geo(complex_)), args.output)
    else:
        emit(SSXEncoder.encode(complex_), args.output)
    return EXIT_OK


def cmd_map(args: argparse.Namespace, config: Config) -> int:
    if args.op == "pushout":
        inputs = args.inputs
    else:
        inputs = [named_complex(text, config.top_dim_cap) for text in args.inputs]
    if args.op == "sd":
        _, last_vertex = sd_iter(inputs[0], args.times, max_cells=config.max_cells,
                                 top_dim_cap=config.top_dim_cap)
        emit(SSXEncoder.encode_map(last_vertex), args.output)
    elif args.op == "ex":
        result = ex(inputs[0], args.trunc or config.trunc_dim, max_maps=config.max_maps)
        emit(SSXEncoder.encode(result.underlying), args.output)
    elif args.op == "diag":
        emit(BSSXEncoder.encode(diag_extend(inputs[0])), args.output)
    elif args.op == "counit":
        emit(SSXEncoder.encode_map(counit_level(inputs[0], args.level)), args.output)
    elif args.op == "product":
        if len(inputs) != 2:
            raise CodecError("product needs two complexes")
        square = within_top_dim(product(inputs[0], inputs[1]), config.top_dim_cap)
        emit(SSXEncoder.encode(square), args.output)
    elif args.op == "pushout":
        if len(inputs) != 2:
            raise CodecError("pushout needs two maps with a common source")
        glued, _, _ = pushout(load_map(inputs[0]), load_map(inputs[1]))
        emit(SSXEncoder.encode(glued), args.output)
    return EXIT_OK


def cmd_lift(args: argparse.Namespace, config: Config) -> int:
    left, right, top, bottom = (load_map(path) for path in (args.left, args.right, args.top,
                                                            args.bottom))
    lift = find_lift(LiftingProblem(left, right, top, bottom))
    doc: Dict[str, Any] = {"lift_exists": lift is not None}
    if lift is not None:
        doc["lift"] = SSXEncoder.encode_map(lift)
    emit(doc, args.output)
    return EXIT_OK


def cmd_soa(args: argparse.Namespace, config: Config) -> int:
    f = load_map(args.map)
    dim_cap = args.dim or config.small_horn_dim
    if args.generators == "I":
        generators = GeneratingSet.i_kq(dim_cap)
    else:
        generators = GeneratingSet.j_kq(dim_cap)
    rounds = config.round_cap if args.rounds is None else args.rounds
    factorization = soa_factorize(f, generators, rounds, max_cells=config.max_cells,
                                  limit=config.max_maps)
    doc = {"factorization": factorization.summary(),
           "residual": [sq.describe() for sq in factorization.residual],
           "first": SSXEncoder.encode_map(factorization.first),
           "second": SSXEncoder.encode_map(factorization.second)}
    emit(doc, args.output)
    return EXIT_OK if factorization.fixed_point else EXIT_SKIP


def cmd_homology(args: argparse.Namespace, config: Config) -> int:
    complex_ = named_complex(args.complex, config.top_dim_cap)
    result = homology(complex_)
    doc = dict(result.summary(), name=complex_.name, groups=homology_groups(result),
               components=pi0(complex_).count, euler_agrees=euler_agrees(complex_, result))
    emit(doc, args.output)
    return EXIT_OK


def cmd_kan(args: argparse.Namespace, config: Config) -> int:
    complex_ = named_complex(args.complex, config.top_dim_cap)
    report = kan_check(complex_, args.dim or config.small_horn_dim, limit=config.max_maps)
    emit(report.summary(), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: Config) -> int:
    if args.scenario:
        config = config.with_value("scenarios", ",".join(args.scenario))
    if args.workers:
        config = config.with_value("workers", str(args.workers))
    if args.text:
        config = config.with_value("format", "text")
    elif args.json:
        config = config.with_value("format", "json")
    report = run_all(config)
    path = args.output or config.report_path
    if path:
        write_document(path, report.to_dict())
    if config.format == "text":
        print(report.render_text())
    elif not path:
        print(dumps(report.to_dict()))
    return report.exit_code()


COMMANDS = {
    "build": cmd_build,
    "map": cmd_map,
    "lift": cmd_lift,
    "soa": cmd_soa,
    "homology": cmd_homology,
    "kan": cmd_kan,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kqlab",
                                     description="Exact simplicial and bisimplicial computations")
    parser.add_argument("--profile", choices=sorted(PROFILES),
                        help="Resource-cap preset (default: $KQLAB_PROFILE or 'default')")
    parser.add_argument("--config", "-c", type=str, help="Configuration file")
    parser.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="Override one configuration value")
    parser.add_argument("--loglevel", "-l", type=str,
                        choices=["debug", "info", "warning", "error"], help="Log level")
    parser.add_argument("--output", "-o", type=str, help="Write the result to a file")
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="Write a named complex as SSX or BSSX")
    build.add_argument("complex")
    build.add_argument("--bisimplicial", choices=["diag", "const"],
                       help="Write diag_! K or const K instead of K")

    apply = sub.add_parser("map", help="Apply a construction")
    apply.add_argument("op", choices=["sd", "ex", "diag", "counit", "product", "pushout"])
    apply.add_argument("inputs", nargs="+")
    apply.add_argument("--times", type=int, default=1, help="Subdivision iterations")
    apply.add_argument("--trunc", type=int, help="Truncation dimension for ex")
    apply.add_argument("--level", type=int, default=0, help="Vertical degree for counit")

    lift = sub.add_parser("lift", help="Solve a lifting problem given as four SSX maps")
    for name in ("left", "right", "top", "bottom"):
        lift.add_argument(name)

    soa = sub.add_parser("soa", help="Small object argument factorization")
    soa.add_argument("map")
    soa.add_argument("--generators", "-g", choices=["I", "J"], default="J")
    soa.add_argument("--dim", type=int, help="Generating set dimension cap")
    soa.add_argument("--rounds", type=int, help="Round cap")

    hom = sub.add_parser("homology", help="Integral homology and π_0")
    hom.add_argument("complex")

    kan = sub.add_parser("kan", help="Kan condition up to a dimension")
    kan.add_argument("complex")
    kan.add_argument("--dim", type=int)

    verify = sub.add_parser("verify", help="Run the verification scenarios")
    verify.add_argument("--scenario", "-s", action="append", help="Scenario id (repeatable)")
    verify.add_argument("--workers", "-w", type=int)
    fmt = verify.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--text", action="store_true")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = load_config(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_INPUT
    setup_logging(args.loglevel or config.loglevel)

    try:
        return COMMANDS[args.command](args, config)
    except (ConfigError, CodecError) as e:
        logger.error(str(e))
        return EXIT_INPUT
    except ResourceCapExceeded as e:
        logger.error(f"resource cap: {e}")
        return EXIT_SKIP
    except KQError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
