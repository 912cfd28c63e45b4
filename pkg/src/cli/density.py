import argparse
import logging
from typing import List, Optional

from ..errors import RaceError
from ..pipeline import DENSITY_METHODS, RacePipeline
from .output import add_output_arguments, write_results

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s [%(levelname)8s] %(message)s (%(filename)s:%(lineno)s)'
)
logger = logging.getLogger(__name__)


def compute_density(
    q: int,
    a: Optional[int] = None,
    b: Optional[int] = None,
    nr: bool = False,
    method: str = "auto",
    K: int = 1,
    zeros_dir: Optional[str] = None,
    zero_height: Optional[float] = None
) -> dict:
    """Compute one density row

    Args:
        q: Modulus
        a: First residue (ignored with nr)
        b: Second residue (ignored with nr)
        nr: Race all nonsquares against all squares instead
        method: Density method; for nr only 'erf' and 'zeros' apply
        K: Series order
        zeros_dir: Directory of zero files
        zero_height: Height for zero finding

    Returns:
        Result record
    """
    # Initialize pipeline
    pipeline = RacePipeline(zeros_dir=zeros_dir, zero_height=zero_height)

    if nr:
        nr_method = "zeros" if method == "zeros" else "erf"
        result = pipeline.density_NR(q, method=nr_method)
    else:
        result = pipeline.density(q, a, b, method=method, K=K)

    logger.info(f"delta({result.label}) = {result.value:.9f} in [{result.lower:.9f}, {result.upper:.9f}] ({result.method})")
    return result.to_record()


def main(argv: Optional[List[str]] = None):
    """Main entry point for the density CLI"""
    parser = argparse.ArgumentParser(
        description="Compute the logarithmic density delta(q;a,b) of a two-way prime race"
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
        help="Residue class expected to lead"
    )

    parser.add_argument(
        "--b",
        type=int,
        help="Residue class expected to trail"
    )

    parser.add_argument(
        "--nr",
        action="store_true",
        help="Race all nonsquares against all squares (needs rho(q) = 2)"
    )

    parser.add_argument(
        "--method",
        choices=list(DENSITY_METHODS),
        default="auto",
        help="Computation method"
    )

    parser.add_argument(
        "--K",
        type=int,
        default=1,
        help="Order of the asymptotic series (series method)"
    )

    parser.add_argument(
        "--zeros-dir",
        type=str,
        help="Directory of zero files (defaults to RACE_ZEROS_DIR)"
    )

    parser.add_argument(
        "--zero-height",
        type=float,
        help="Height for zero finding (defaults to RACE_ZERO_HEIGHT)"
    )

    add_output_arguments(parser)

    args = parser.parse_args(argv)

    # Set logging level
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    if not args.nr and (args.a is None or args.b is None):
        parser.error("--a and --b are required unless --nr is given")

    try:
        record = compute_density(
            q=args.q,
            a=args.a,
            b=args.b,
            nr=args.nr,
            method=args.method,
            K=args.K,
            zeros_dir=args.zeros_dir,
            zero_height=args.zero_height
        )
        write_results([record], args.output_format, args.output_file)

    except (RaceError, ValueError, OSError) as e:
        logger.error(f"Error computing density: {str(e)}", exc_info=True)
        return 1

    return 0


if __name__ == "__main__":
    exit(main())
