import argparse
import logging
from typing import List, Optional

from ..errors import RaceError
from ..pipeline import RacePipeline
from ..empirical.experiments import DEFAULT_POINTS, DEFAULT_X, mirror_correlation, race_tally
from .output import add_output_arguments, write_results

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s [%(levelname)8s] %(message)s (%(filename)s:%(lineno)s)'
)
logger = logging.getLogger(__name__)

LOGDENSITY_POINTS = 10 ** 4


def run_logdensity(pipeline: RacePipeline, q: int, a: int, b: int, X: float, npoints: int) -> List[dict]:
    """Empirical share of sample points where a leads, with ties and losses"""
    counter = pipeline.counter(q, X)
    wins, ties, losses = race_tally(q, a, b, X, npoints, counter=counter)
    logger.info(f"Race {q};{a},{b} up to {X:g}: {a} leads at {wins:.4f} of {npoints} points")
    return [{"q": q, "a": a, "b": b, "X": X, "npoints": npoints, "value": wins, "ties": ties, "losses": losses}]


def run_mirror(pipeline: RacePipeline, q: int, X: float, npoints: int, a: Optional[int] = None, b: Optional[int] = None) -> List[dict]:
    """Mirror-variance groups modulo q, or the correlation of one pair"""
    if a is not None and b is not None:
        counter = pipeline.counter(q, X)
        correlation = mirror_correlation(q, a, b, X, npoints, counter=counter)
        return [{"q": q, "a": a, "b": b, "X": X, "npoints": npoints, "correlation": correlation}]
    return pipeline.mirror_groups(q, X, npoints).to_dict(orient="records")


def main(argv: Optional[List[str]] = None):
    """Main entry point for the empirical CLI"""
    parser = argparse.ArgumentParser(
        description="Race experiments on actual prime counts"
    )

    parser.add_argument(
        "experiment",
        choices=["logdensity", "mirror"],
        help="Experiment to run"
    )

    parser.add_argument(
        "--q",
        type=int,
        required=True,
        help="Modulus"
    )

    parser.add_argument(
        "--a",
        type=int,
        help="First residue"
    )

    parser.add_argument(
        "--b",
        type=int,
        help="Second residue"
    )

    parser.add_argument(
        "--X",
        type=float,
        default=float(DEFAULT_X),
        help="Largest x sampled"
    )

    parser.add_argument(
        "--npoints",
        type=int,
        help=f"Grid points (default {LOGDENSITY_POINTS} for logdensity, {DEFAULT_POINTS} for mirror)"
    )

    parser.add_argument(
        "--prime-cache",
        type=str,
        help="On-disk prime cache (defaults to RACE_PRIME_CACHE)"
    )

    add_output_arguments(parser)

    args = parser.parse_args(argv)

    # Set logging level
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    if args.experiment == "logdensity" and (args.a is None or args.b is None):
        parser.error("logdensity needs --a and --b")

    try:
        pipeline = RacePipeline(prime_cache=args.prime_cache)
        if args.experiment == "logdensity":
            rows = run_logdensity(pipeline, args.q, args.a, args.b, args.X, args.npoints or LOGDENSITY_POINTS)
        else:
            rows = run_mirror(pipeline, args.q, args.X, args.npoints or DEFAULT_POINTS, args.a, args.b)
        write_results(rows, args.output_format, args.output_file)

    except (RaceError, ValueError, OSError) as e:
        logger.error(f"Error running {args.experiment}: {str(e)}", exc_info=True)
        return 1

    return 0


if __name__ == "__main__":
    exit(main())
