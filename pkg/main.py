"""
Main entry point for ls_scatter.

    python main.py verify --config configs/reference_gaussian.json
"""
import argparse
import io
import logging
import cProfile
import pstats
import sys
from typing import List, Optional

from cli import COMMANDS, EXIT_CONFIG, load_run_config
from utils.errors import ConfigError, GridError, PotentialError
from utils.logger import start_new_session, get_logger, set_global_log_level
from utils.threads import configure_threads

# Initialize logger
logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="ls_scatter: Lippmann-Schwinger scattering and S-matrix spectra")
    parser.add_argument("command", choices=["scatter", "phaseshifts", "verify", "boundstates"],
                        help="Which computation to run")
    parser.add_argument("--config", "-c", required=True, help="Path to the JSON run configuration")
    parser.add_argument("--out", "-o", default=None, help="Output directory (overrides output.directory)")
    parser.add_argument("--format", dest="formats", action="append", choices=["csv", "json"], default=None,
                        help="Output format; repeat for both (overrides output.formats)")
    parser.add_argument("--dump-grids", action="store_true", help="Write the quadrature grids as text files")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--debug", action="store_true", help="Log at DEBUG level")
    verbosity.add_argument("--quiet", "-q", action="store_true", help="Log warnings and errors only")
    parser.add_argument(
        "--profile",
        "-p",
        nargs="?",
        const="profile.stats",
        default=None,
        help="Enable cProfile and write stats to the given file (default: profile.stats if flag provided without path)",
    )
    parser.add_argument(
        "--profile-print",
        action="store_true",
        help="If set when profiling, print top functions to stdout after run",
    )
    parser.add_argument(
        "--profile-top",
        type=int,
        default=50,
        help="Number of top functions to print when --profile-print is used (default: 50)",
    )
    return parser


def main(args: argparse.Namespace) -> int:
    """
    Load the configuration, run the requested command and map failures onto exit codes.

    Returns:
        int: 0 on success, 1 when a numeric criterion failed, 2 on configuration or input errors
    """
    start_new_session()
    if args.debug:
        set_global_log_level(logging.DEBUG)
    elif args.quiet:
        set_global_log_level(logging.WARNING)
    logger.info(f"Starting ls_scatter {args.command}")

    try:
        config = load_run_config(args.config).with_overrides(
            out=args.out, formats=tuple(args.formats) if args.formats else None, dump_grids=args.dump_grids
        )
        configure_threads(config.solver.threads)
        logger.info(f"Config hash {config.config_hash}")
        status = COMMANDS[args.command](config)
    except (ConfigError, PotentialError, GridError) as e:
        logger.error(f"Input error: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as e:
        logger.exception(f"Unhandled exception: {str(e)}")
        print(f"An error occurred: {str(e)}", file=sys.stderr)
        return EXIT_CONFIG
    finally:
        logger.info("ls_scatter shutdown complete")

    logger.info(f"{args.command} finished with exit status {status}")
    return status


def _run_with_cprofile(args: argparse.Namespace, output_path: str, print_top: bool, top_n: int = 50) -> int:
    """Run main() under cProfile and save stats to output_path.

    If print_top is True, print the top_n functions by cumulative time to stdout.
    """
    profiler = cProfile.Profile()
    status = 2
    try:
        profiler.enable()
        status = main(args)
    finally:
        profiler.disable()
        try:
            profiler.dump_stats(output_path)
            print(f"Profile saved to: {output_path}")
        except Exception as e:
            print(f"Failed to write profile to {output_path}: {e}")

        if print_top:
            s = io.StringIO()
            ps = pstats.Stats(profiler, stream=s).sort_stats("cumtime")
            ps.print_stats(top_n)
            print(s.getvalue())
    return status


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.profile:
        return _run_with_cprofile(args, args.profile, args.profile_print, args.profile_top)
    return main(args)


if __name__ == "__main__":
    sys.exit(run())
